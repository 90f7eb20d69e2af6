//! Richardson-type transformations: polynomial extrapolation to `x = 0`.
//!
//! The members here have the constant denominator `k!`, so no remainder
//! estimates are involved. Tables are indexed like the ω-based ones: row `k`
//! holds the entries for `n = start, start + 1, ...`.

use crate::error::{Error, Result};
use crate::poly::pochhammer;
use crate::scalar::Scalar;
use crate::schedule::QSchedule;
use crate::sequence::Sequence;

/// Triangular table; `rows[k][i]` is the entry at `n = start + i`.
pub type Triangle<S> = Vec<Vec<S>>;

/// Interpolation points `x_0 > x_1 > ... > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpolationPoints<S> {
    x: Vec<S>,
}

impl<S: Scalar> InterpolationPoints<S> {
    pub fn new(x: Vec<S>) -> Result<Self> {
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_positive() {
                return Err(Error::InvalidPoints(i));
            }
            if i > 0 {
                if *xi == x[i - 1] {
                    return Err(Error::CoincidentPoints(i - 1, i));
                }
                if *xi > x[i - 1] {
                    return Err(Error::InvalidPoints(i));
                }
            }
        }
        Ok(InterpolationPoints { x })
    }

    /// `x_n = 1/(β + n)` for `n = start, ..., start + count − 1`.
    pub fn reciprocal(beta: &S, start: usize, count: usize) -> Result<Self> {
        let x = (start..start + count)
            .map(|n| (beta.clone() + S::from_i64(n as i64)).recip())
            .collect::<Result<_>>()?;
        Self::new(x)
    }

    pub fn values(&self) -> &[S] {
        &self.x
    }
}

fn check_window<S>(s: &Sequence<S>, k_max: usize) -> Result<()>
where
    S: Scalar,
{
    if s.is_empty() || k_max >= s.len() {
        Err(Error::InsufficientData { needed: k_max + 1, available: s.len() })
    } else {
        Ok(())
    }
}

fn position<S: Scalar>(s: &Sequence<S>, k: usize, n: usize) -> Result<usize> {
    let i = n
        .checked_sub(s.start())
        .ok_or(Error::InsufficientData { needed: n + 1, available: s.len() })?;
    if i + k >= s.len() {
        return Err(Error::InsufficientData { needed: i + k + 1, available: s.len() });
    }
    Ok(i)
}

/// Neville's scheme for the value at `x = 0` of the interpolating polynomials.
pub fn neville_at_zero<S: Scalar>(
    s: &Sequence<S>,
    x: &InterpolationPoints<S>,
    k_max: usize,
) -> Result<Triangle<S>> {
    if x.x.len() != s.len() {
        return Err(Error::InvalidParameter(format!(
            "{} interpolation points for {} sequence elements",
            x.x.len(),
            s.len()
        )));
    }
    check_window(s, k_max)?;
    let xs = &x.x;
    let mut rows = vec![s.values().to_vec()];
    for k in 0..k_max {
        let prev = &rows[k];
        let row = (0..prev.len() - 1)
            .map(|i| {
                let a = &xs[i];
                let b = &xs[i + k + 1];
                let num = a.clone() * prev[i + 1].clone() - b.clone() * prev[i].clone();
                num.checked_div(&(a.clone() - b.clone()))
                    .map_err(|_| Error::CoincidentPoints(i, i + k + 1))
            })
            .collect::<Result<Vec<S>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Sum `(−1)^k Σ_j (−1)^j w(j) / (j!(k−j)!) s_{n+j}` shared by the closed forms.
fn closed_sum<S: Scalar>(
    s: &Sequence<S>,
    k: usize,
    n: usize,
    outer_sign: bool,
    weight: impl Fn(usize) -> Result<S>,
) -> Result<S> {
    let i = position(s, k, n)?;
    let mut fact = vec![S::one()];
    for j in 1..=k {
        let next = fact[j - 1].clone() * S::from_i64(j as i64);
        fact.push(next);
    }
    let mut acc = S::zero();
    for j in 0..=k {
        let term = (weight(j)? * s.values()[i + j].clone())
            .checked_div(&(fact[j].clone() * fact[k - j].clone()))?;
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    Ok(if outer_sign && k % 2 == 1 { -acc } else { acc })
}

/// Runs `R_{k+1}^(n) = R_k^(n+1) + f(k, n) ΔR_k^(n)`.
fn run_recursion<S: Scalar>(
    s: &Sequence<S>,
    k_max: usize,
    factor: impl Fn(usize, &S) -> Result<S>,
) -> Result<Triangle<S>> {
    check_window(s, k_max)?;
    let mut rows = vec![s.values().to_vec()];
    for k in 0..k_max {
        let prev = &rows[k];
        let row = (0..prev.len() - 1)
            .map(|i| {
                let n = S::from_i64((s.start() + i) as i64);
                let delta = prev[i + 1].clone() - prev[i].clone();
                Ok(prev[i + 1].clone() + factor(k, &n)? * delta)
            })
            .collect::<Result<Vec<S>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// `Λ_k^(n)(β) = (−1)^k Σ_j (−1)^j (β+n+j)^k / (j!(k−j)!) s_{n+j}`.
pub fn lambda_closed<S: Scalar>(beta: &S, s: &Sequence<S>, k: usize, n: usize) -> Result<S> {
    closed_sum(s, k, n, true, |j| {
        (beta.clone() + S::from_i64((n + j) as i64)).powi(k as i32)
    })
}

/// `Λ_{k+1}^(n) = Λ_k^(n+1) + (β+n)/(k+1) ΔΛ_k^(n)`.
pub fn lambda_recursive<S: Scalar>(beta: &S, s: &Sequence<S>, k_max: usize) -> Result<Triangle<S>> {
    run_recursion(s, k_max, |k, n| {
        (beta.clone() + n.clone()).checked_div(&S::from_i64(k as i64 + 1))
    })
}

/// A schedule extended by `q_0` for the Richardson-type variant.
#[derive(Debug, Clone, PartialEq)]
pub struct RichardsonSchedule<S> {
    pub q: QSchedule<S>,
    /// Overrides the schedule's natural `q_0`.
    pub q0: Option<S>,
}

impl<S: Scalar> RichardsonSchedule<S> {
    pub fn new(q: QSchedule<S>) -> Self {
        RichardsonSchedule { q, q0: None }
    }

    pub fn with_q0(q: QSchedule<S>, q0: S) -> Self {
        RichardsonSchedule { q, q0: Some(q0) }
    }

    /// `q_m` for `m ≥ 0`.
    pub fn q(&self, m: usize) -> Result<S> {
        match (m, &self.q0) {
            (0, Some(q0)) => Ok(q0.clone()),
            (0, None) => self.q.default_q0(),
            _ => self.q.q(m),
        }
    }
}

/// `(−1)^k Σ_{j=0}^{k} (−1)^j Π_{m=0}^{k−1}(n+j+q_m) / (j!(k−j)!) s_{n+j}`.
pub fn rg_explicit<S: Scalar>(
    r: &RichardsonSchedule<S>,
    s: &Sequence<S>,
    k: usize,
    n: usize,
) -> Result<S> {
    let qs: Vec<S> = (0..k).map(|m| r.q(m)).collect::<Result<_>>()?;
    closed_sum(s, k, n, true, |j| {
        let nj = S::from_i64((n + j) as i64);
        Ok(qs.iter().fold(S::one(), |acc, qm| acc * (nj.clone() + qm.clone())))
    })
}

/// `R_{k+1}^(n) = R_k^(n+1) + (n+q_k)/(k+1) ΔR_k^(n)`.
pub fn rg_recursive<S: Scalar>(
    r: &RichardsonSchedule<S>,
    s: &Sequence<S>,
    k_max: usize,
) -> Result<Triangle<S>> {
    let qs: Vec<S> = (0..k_max).map(|m| r.q(m)).collect::<Result<_>>()?;
    run_recursion(s, k_max, |k, n| {
        (n.clone() + qs[k].clone()).checked_div(&S::from_i64(k as i64 + 1))
    })
}

/// `F_k^(n)(χ)`, `q_m = χ + m`, by recursion with factor `(χ+n+k)/(k+1)`.
pub fn f_variant<S: Scalar>(chi: &S, s: &Sequence<S>, k_max: usize) -> Result<Triangle<S>> {
    run_recursion(s, k_max, |k, n| {
        let kk = S::from_i64(k as i64);
        (chi.clone() + n.clone() + kk.clone()).checked_div(&(kk + S::one()))
    })
}

/// Closed form `(−1)^k Σ_j (−1)^j (χ+n+j)_k / (j!(k−j)!) s_{n+j}`.
pub fn f_closed<S: Scalar>(chi: &S, s: &Sequence<S>, k: usize, n: usize) -> Result<S> {
    closed_sum(s, k, n, true, |j| {
        Ok(pochhammer(&(chi.clone() + S::from_i64((n + j) as i64)), k))
    })
}

/// `P_k^(n)(ζ)`, `q_m = ζ − m`, by recursion with factor `(ζ+n−k)/(k+1)`.
pub fn p_variant<S: Scalar>(zeta: &S, s: &Sequence<S>, k_max: usize) -> Result<Triangle<S>> {
    run_recursion(s, k_max, |k, n| {
        let kk = S::from_i64(k as i64);
        (zeta.clone() + n.clone() - kk.clone()).checked_div(&(kk + S::one()))
    })
}

/// Closed form `Σ_j (−1)^j (−ζ−n−j)_k / (j!(k−j)!) s_{n+j}`.
pub fn p_closed<S: Scalar>(zeta: &S, s: &Sequence<S>, k: usize, n: usize) -> Result<S> {
    closed_sum(s, k, n, false, |j| {
        Ok(pochhammer(&(-zeta.clone() - S::from_i64((n + j) as i64)), k))
    })
}

/// `R-C_k^(n)(α, χ)`, `q_m = χ + m/α`, by recursion with factor `(χ+n+k/α)/(k+1)`.
pub fn rc_variant<S: Scalar>(alpha: &S, chi: &S, s: &Sequence<S>, k_max: usize) -> Result<Triangle<S>> {
    run_recursion(s, k_max, |k, n| {
        let kk = S::from_i64(k as i64);
        (chi.clone() + n.clone() + kk.checked_div(alpha)?).checked_div(&(kk + S::one()))
    })
}

/// Closed form `(−1)^k α^{−k} Σ_j (−1)^j (α[χ+n+j])_k / (j!(k−j)!) s_{n+j}`.
pub fn rc_closed<S: Scalar>(alpha: &S, chi: &S, s: &Sequence<S>, k: usize, n: usize) -> Result<S> {
    let scale = alpha.powi(k as i32)?;
    closed_sum(s, k, n, true, |j| {
        let x = alpha.clone() * (chi.clone() + S::from_i64((n + j) as i64));
        pochhammer(&x, k).checked_div(&scale)
    })
}

/// Richardson-type members addressable by name.
#[derive(Debug, Clone, PartialEq)]
pub enum RichardsonFamily<S> {
    Lambda { beta: S },
    F { chi: S },
    P { zeta: S },
    RC { alpha: S, chi: S },
    G(RichardsonSchedule<S>),
}

impl<S: Scalar> RichardsonFamily<S> {
    /// Table by the member's recursion.
    pub fn table(&self, s: &Sequence<S>, k_max: usize) -> Result<Triangle<S>> {
        match self {
            RichardsonFamily::Lambda { beta } => lambda_recursive(beta, s, k_max),
            RichardsonFamily::F { chi } => f_variant(chi, s, k_max),
            RichardsonFamily::P { zeta } => p_variant(zeta, s, k_max),
            RichardsonFamily::RC { alpha, chi } => rc_variant(alpha, chi, s, k_max),
            RichardsonFamily::G(r) => rg_recursive(r, s, k_max),
        }
    }

    /// Single entry by the member's closed form.
    pub fn closed(&self, s: &Sequence<S>, k: usize, n: usize) -> Result<S> {
        match self {
            RichardsonFamily::Lambda { beta } => lambda_closed(beta, s, k, n),
            RichardsonFamily::F { chi } => f_closed(chi, s, k, n),
            RichardsonFamily::P { zeta } => p_closed(zeta, s, k, n),
            RichardsonFamily::RC { alpha, chi } => rc_closed(alpha, chi, s, k, n),
            RichardsonFamily::G(r) => rg_explicit(r, s, k, n),
        }
    }

    /// The member as a general schedule extended by `q_0`.
    pub fn schedule(&self) -> RichardsonSchedule<S> {
        match self {
            RichardsonFamily::Lambda { beta } => RichardsonSchedule::new(QSchedule::Constant(beta.clone())),
            RichardsonFamily::F { chi } => {
                RichardsonSchedule::new(QSchedule::FactorialShift(chi.clone() + S::one()))
            }
            RichardsonFamily::P { zeta } => {
                RichardsonSchedule::new(QSchedule::ReverseShift(zeta.clone() - S::one()))
            }
            RichardsonFamily::RC { alpha, chi } => {
                let beta = chi.clone() + alpha.recip().unwrap_or_else(|_| S::zero());
                RichardsonSchedule::new(QSchedule::Interpolating { alpha: alpha.clone(), beta })
            }
            RichardsonFamily::G(r) => r.clone(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RichardsonFamily::Lambda { .. } => "lambda",
            RichardsonFamily::F { .. } => "F",
            RichardsonFamily::P { .. } => "P",
            RichardsonFamily::RC { .. } => "RC",
            RichardsonFamily::G(_) => "RG",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{factorial, finite_difference};
    use crate::scalar::Rational;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d).unwrap()
    }

    #[test]
    fn points_are_validated() {
        assert!(InterpolationPoints::new(vec![q(1, 1), q(1, 2)]).is_ok());
        assert_eq!(InterpolationPoints::new(vec![q(1, 1), q(2, 1)]), Err(Error::InvalidPoints(1)));
        assert_eq!(
            InterpolationPoints::new(vec![q(1, 1), q(1, 1)]),
            Err(Error::CoincidentPoints(0, 1))
        );
        assert_eq!(InterpolationPoints::new(vec![q(0, 1)]), Err(Error::InvalidPoints(0)));
    }

    #[test]
    fn neville_examples() {
        let x = InterpolationPoints::reciprocal(&q(1, 1), 0, 4).unwrap();
        let constant = Sequence::from_partial_sums(0, vec![q(3, 1); 4]);
        let table = neville_at_zero(&constant, &x, 3).unwrap();
        assert!(table.iter().flatten().all(|v| *v == q(3, 1)));
        let linear = Sequence::from_partial_sums(0, x.values().iter().map(|xi| q(5, 1) + xi.clone()).collect());
        let table = neville_at_zero(&linear, &x, 1).unwrap();
        assert!(table[1].iter().all(|v| *v == q(5, 1)));
    }

    #[test]
    fn lambda_hand_value() {
        let s = Sequence::from_partial_sums(0, vec![q(6, 1), q(11, 2)]);
        assert_eq!(lambda_closed(&q(1, 1), &s, 1, 0).unwrap(), q(5, 1));
        assert_eq!(lambda_recursive(&q(1, 1), &s, 1).unwrap()[1][0], q(5, 1));
    }

    #[test]
    fn rg_small_case_by_hand() {
        // s_n = n, q_m = m², q_0 = 0: R_1^(0) = s_1 + q_0 Δs_0 = 1
        let s = Sequence::from_partial_sums(0, vec![q(0, 1), q(1, 1), q(2, 1)]);
        let r = RichardsonSchedule::new(QSchedule::Square);
        assert_eq!(rg_explicit(&r, &s, 1, 0).unwrap(), q(1, 1));
        assert_eq!(rg_recursive(&r, &s, 1).unwrap()[1][0], q(1, 1));
        let r = RichardsonSchedule::with_q0(QSchedule::Square, q(3, 1));
        assert_eq!(rg_explicit(&r, &s, 1, 0).unwrap(), q(4, 1));
        assert_eq!(rg_recursive(&r, &s, 1).unwrap()[1][0], q(4, 1));
    }

    #[test]
    fn constants_are_fixed_points() {
        let s = Sequence::from_partial_sums(0, vec![q(7, 3); 6]);
        for fam in [
            RichardsonFamily::F { chi: q(1, 2) },
            RichardsonFamily::P { zeta: q(9, 1) },
            RichardsonFamily::RC { alpha: q(3, 1), chi: q(1, 1) },
            RichardsonFamily::Lambda { beta: q(2, 1) },
        ] {
            assert!(fam.table(&s, 5).unwrap().iter().flatten().all(|v| *v == q(7, 3)));
        }
    }

    #[test]
    fn denominator_is_k_factorial() {
        for sched in [
            QSchedule::Constant(q(1, 1)),
            QSchedule::FactorialShift(q(1, 1)),
            QSchedule::Interpolating { alpha: q(3, 1), beta: q(1, 1) },
            QSchedule::Square,
        ] {
            let r = RichardsonSchedule::new(sched);
            for k in 0..=6usize {
                let p: Vec<Rational> = (0..12)
                    .map(|n| (0..k).fold(q(1, 1), |acc, m| acc * (q(n, 1) + r.q(m).unwrap())))
                    .collect();
                for n in 0..5 {
                    assert_eq!(finite_difference(&p, k, n).unwrap(), factorial::<Rational>(k));
                }
            }
        }
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-30i64..=30, 1i64..=7).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn closed_forms_recursions_and_neville_agree(
            values in prop::collection::vec(rational(), 7),
            beta in 1i64..5,
            chi in 1i64..5,
            alpha in 1i64..4,
        ) {
            let s = Sequence::from_partial_sums(0, values);
            let beta = q(beta, 2);
            let x = InterpolationPoints::reciprocal(&beta, 0, 7).unwrap();
            let neville = neville_at_zero(&s, &x, 6).unwrap();
            let fams = [
                RichardsonFamily::Lambda { beta: beta.clone() },
                RichardsonFamily::F { chi: q(chi, 3) },
                RichardsonFamily::P { zeta: q(chi + 10, 1) },
                RichardsonFamily::RC { alpha: q(alpha, 1), chi: q(chi, 3) },
            ];
            for fam in &fams {
                let table = fam.table(&s, 6).unwrap();
                let general = rg_recursive(&fam.schedule(), &s, 6).unwrap();
                prop_assert_eq!(&table, &general);
                for (k, row) in table.iter().enumerate() {
                    for (n, entry) in row.iter().enumerate() {
                        prop_assert_eq!(&fam.closed(&s, k, n).unwrap(), entry);
                        prop_assert_eq!(&rg_explicit(&fam.schedule(), &s, k, n).unwrap(), entry);
                    }
                }
            }
            prop_assert_eq!(&lambda_recursive(&beta, &s, 6).unwrap(), &neville);
        }

        #[test]
        fn neville_reproduces_polynomial_limits(
            coeffs in prop::collection::vec(rational(), 1..5),
            limit in rational(),
        ) {
            let k = coeffs.len();
            let x = InterpolationPoints::reciprocal(&q(1, 1), 0, k + 2).unwrap();
            let values = x
                .values()
                .iter()
                .map(|xi| {
                    coeffs.iter().enumerate().fold(limit.clone(), |acc, (j, c)| {
                        acc + c.clone() * xi.powi(j as i32 + 1).unwrap()
                    })
                })
                .collect();
            let s = Sequence::from_partial_sums(0, values);
            let table = neville_at_zero(&s, &x, k).unwrap();
            prop_assert!(table[k].iter().all(|v| *v == limit));
        }
    }
}
