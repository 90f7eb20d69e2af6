//! Rational approximants obtained by transforming power-series partial sums.
//!
//! With `ω_n` built from the coefficients `γ_ν z^ν`, every member of the
//! family turns the partial sums `f_n(z)` into a ratio of polynomials in `z`.
//! Its Taylor expansion reproduces the series through a known order and the
//! following coefficients serve as predictions.

use crate::engine::explicit_coefficients;
use crate::error::{Error, Result};
use crate::estimate::EstimateKind;
use crate::poly::{series_divide, Polynomial, PowerSeriesCoefficients};
use crate::scalar::{Scalar, ZeroPolicy};
use crate::schedule::QSchedule;

/// Coefficient tolerance used by float order counting.
pub const FLOAT_MATCH_TOLERANCE: f64 = 1e-10;

/// `numerator(z) / denominator(z)` with `denominator(0) = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalApproximant<S> {
    pub numerator: Polynomial<S>,
    pub denominator: Polynomial<S>,
    pub variant: EstimateKind,
    pub k: usize,
    pub n: usize,
    pub schedule: QSchedule<S>,
    /// `λ_j` before normalization.
    pub lambda: Vec<S>,
    /// `μ_j` before normalization (v-variant only, empty otherwise).
    pub mu: Vec<S>,
    /// Whether the estimates came from asymptotic coefficients `γ^(∞)`.
    pub asymptotic: bool,
}

impl<S: Scalar> RationalApproximant<S> {
    pub fn eval(&self, z: &S) -> Result<S> {
        self.numerator.eval(z).checked_div(&self.denominator.eval(z))
    }

    /// Number of leading series coefficients the construction guarantees.
    pub fn guaranteed_order(&self) -> usize {
        let refined = !self.asymptotic
            && self.k >= 1
            && matches!(self.variant, EstimateKind::D | EstimateKind::V);
        self.k + self.n + if refined { 2 } else { 1 }
    }

    /// Taylor coefficients through `z^order`.
    pub fn taylor(&self, order: usize) -> Result<Vec<S>> {
        series_divide(&self.numerator.coeffs, &self.denominator.coeffs, order)
    }
}

/// Approximant of the u/t/d/v member with data-based estimates.
///
/// Requires `γ_0..γ_{k+n}` (u/t) or `γ_0..γ_{k+n+1}` (d/v). The u-variant
/// uses `q_0 = q_1`.
pub fn build_variant_approximant<S: Scalar>(
    variant: EstimateKind,
    q: &QSchedule<S>,
    k: usize,
    n: usize,
    gamma: &PowerSeriesCoefficients<S>,
) -> Result<RationalApproximant<S>> {
    let needed = k + n + 1 + variant.lookahead();
    if gamma.len() < needed {
        return Err(Error::InsufficientData { needed, available: gamma.len() });
    }
    let est = |i: usize| Ok(gamma.gamma[i].clone());
    build(variant, q, k, n, gamma, &est, false)
}

/// Approximant whose estimates use `γ_ν^(∞)` in place of `γ_ν`.
pub fn build_asymptotic_approximant<S: Scalar>(
    variant: EstimateKind,
    q: &QSchedule<S>,
    k: usize,
    n: usize,
    gamma: &PowerSeriesCoefficients<S>,
    gamma_inf: &dyn Fn(usize) -> S,
) -> Result<RationalApproximant<S>> {
    if gamma.len() < k + n + 1 {
        return Err(Error::InsufficientData { needed: k + n + 1, available: gamma.len() });
    }
    let est = |i: usize| Ok(gamma_inf(i));
    build(variant, q, k, n, gamma, &est, true)
}

fn build<S: Scalar>(
    variant: EstimateKind,
    q: &QSchedule<S>,
    k: usize,
    n: usize,
    gamma: &PowerSeriesCoefficients<S>,
    est: &dyn Fn(usize) -> Result<S>,
    asymptotic: bool,
) -> Result<RationalApproximant<S>> {
    let w = explicit_coefficients(q, k, n as i64)?;
    let q0 = q.first()?;
    let inv = |i: usize| -> Result<S> {
        est(i)?.recip().map_err(|_| Error::ZeroCoefficient(i))
    };
    let mut lambda = Vec::with_capacity(k + 1);
    let mut mu = Vec::new();
    for (j, wj) in w.iter().enumerate() {
        let l = match variant {
            EstimateKind::U => {
                let factor = S::from_i64((n + j) as i64) + q0.clone();
                let d = factor.recip().map_err(|_| Error::ZeroEstimate(n + j))?;
                wj.clone() * d * inv(n + j)?
            }
            EstimateKind::T => wj.clone() * inv(n + j)?,
            EstimateKind::D | EstimateKind::V => wj.clone() * inv(n + j + 1)?,
        };
        lambda.push(l);
        if variant == EstimateKind::V {
            mu.push(-wj.clone() * inv(n + j)?);
        }
    }
    let extra = usize::from(variant == EstimateKind::V);
    let mut den = vec![S::zero(); k + 1 + extra];
    let mut num = vec![S::zero(); k + n + 1 + extra];
    let mut add_scaled = |coef: &S, shift: usize, j: usize| {
        den[shift] = den[shift].clone() + coef.clone();
        for (i, g) in gamma.gamma[..=n + j].iter().enumerate() {
            num[shift + i] = num[shift + i].clone() + coef.clone() * g.clone();
        }
    };
    for (j, l) in lambda.iter().enumerate() {
        add_scaled(l, k - j, j);
    }
    for (j, m) in mu.iter().enumerate() {
        add_scaled(m, k - j + 1, j);
    }
    let c0 = den[0].clone();
    if c0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let normalize = |v: Vec<S>| -> Result<Vec<S>> { v.into_iter().map(|c| c.checked_div(&c0)).collect() };
    Ok(RationalApproximant {
        numerator: Polynomial::new(normalize(num)?),
        denominator: Polynomial::new(normalize(den)?),
        variant,
        k,
        n,
        schedule: q.clone(),
        lambda,
        mu,
        asymptotic,
    })
}

/// Largest `M` such that the Taylor coefficients `0..M` of the approximant
/// equal `γ_0..γ_{M−1}`.
///
/// Exact scalars compare exactly; floats use [`FLOAT_MATCH_TOLERANCE`]. When
/// every supplied coefficient matches, the result is `gamma.len()`, a lower
/// bound on the true order.
pub fn check_order<S: Scalar>(
    approx: &RationalApproximant<S>,
    gamma: &PowerSeriesCoefficients<S>,
) -> Result<usize> {
    if gamma.is_empty() {
        return Ok(0);
    }
    let taylor = approx.taylor(gamma.len() - 1)?;
    Ok(taylor
        .iter()
        .zip(&gamma.gamma)
        .take_while(|(t, g)| t.matches(g, FLOAT_MATCH_TOLERANCE))
        .count())
}

/// Taylor coefficients beyond the guaranteed order.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction<S> {
    pub approximant: RationalApproximant<S>,
    /// Coefficients `γ_0..γ_{guaranteed−1}` are reproduced by construction.
    pub guaranteed: usize,
    /// `(ν, predicted γ_ν)` for `ν = guaranteed, guaranteed + 1, ...`.
    pub predicted: Vec<(usize, S)>,
}

/// Predicts `count` coefficients following the guaranteed order.
pub fn predict<S: Scalar>(
    variant: EstimateKind,
    q: &QSchedule<S>,
    k: usize,
    n: usize,
    gamma: &PowerSeriesCoefficients<S>,
    count: usize,
) -> Result<Prediction<S>> {
    let approximant = build_variant_approximant(variant, q, k, n, gamma)?;
    let guaranteed = approximant.guaranteed_order();
    let taylor = approximant.taylor(guaranteed + count)?;
    let predicted = (guaranteed..guaranteed + count).map(|i| (i, taylor[i].clone())).collect();
    Ok(Prediction { approximant, guaranteed, predicted })
}

/// Wynn's epsilon table `ε_k^(n)`; `None` marks an entry reached through a
/// vanishing difference.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonTable<S> {
    /// `columns[k][n] = ε_k^(n)`.
    pub columns: Vec<Vec<Option<S>>>,
}

impl<S: Scalar> EpsilonTable<S> {
    pub fn get(&self, k: usize, n: usize) -> Option<&S> {
        self.columns.get(k)?.get(n)?.as_ref()
    }

    /// `ε_{2k}^(n)`, the `[n+k/k]` Padé value.
    pub fn even(&self, k: usize, n: usize) -> Option<&S> {
        self.get(2 * k, n)
    }

    /// Estimate using `s_0..s_m`: `ε_{2j}^(m−2j)` with `j = ⌊m/2⌋`.
    pub fn using_first(&self, m: usize) -> Option<&S> {
        let j = m / 2;
        self.even(j, m - 2 * j)
    }
}

/// Runs `ε_{k+1}^(n) = ε_{k−1}^(n+1) + 1/(ε_k^(n+1) − ε_k^(n))` from
/// `ε_{−1} = 0`, `ε_0^(n) = s_n`.
///
/// A vanishing difference makes the entry invalid (infinite). Invalid
/// operands contribute a zero reciprocal to the next column, so constant
/// sequences keep every even column constant.
pub fn pade_epsilon<S: Scalar>(sums: &[S], policy: &ZeroPolicy) -> EpsilonTable<S> {
    let mut columns: Vec<Vec<Option<S>>> = vec![sums.iter().cloned().map(Some).collect()];
    let mut before: Vec<Option<S>> = vec![Some(S::zero()); sums.len() + 1];
    while columns.last().map_or(0, Vec::len) > 1 {
        let cur = columns.last().unwrap();
        let next: Vec<Option<S>> = (0..cur.len() - 1)
            .map(|n| {
                let recip = match (&cur[n + 1], &cur[n]) {
                    (Some(a), Some(b)) => {
                        let d = a.clone() - b.clone();
                        if d.is_negligible(a.magnitude() + b.magnitude(), policy) {
                            None
                        } else {
                            d.recip().ok()
                        }
                    }
                    _ => Some(S::zero()),
                };
                Some(before[n + 1].clone()? + recip?)
            })
            .collect();
        before = cur.clone();
        columns.push(next);
    }
    EpsilonTable { columns }
}

/// Epsilon table of the partial sums `f_n(z)` of a power series.
pub fn epsilon_for_series<S: Scalar>(gamma: &PowerSeriesCoefficients<S>, z: &S) -> EpsilonTable<S> {
    pade_epsilon(&gamma.partial_sums_at(z), &ZeroPolicy::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::transform;
    use crate::estimate::RemainderEstimator;
    use crate::poly::factorial;
    use crate::scalar::Rational;
    use crate::sequence::Sequence;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d).unwrap()
    }

    fn exp_series(len: usize) -> PowerSeriesCoefficients<Rational> {
        PowerSeriesCoefficients::new((0..len).map(|n| Scalar::recip(&factorial::<Rational>(n)).unwrap()).collect())
    }

    fn geometric(len: usize) -> PowerSeriesCoefficients<Rational> {
        PowerSeriesCoefficients::new(vec![q(1, 1); len])
    }

    const VARIANTS: [EstimateKind; 4] = [EstimateKind::U, EstimateKind::T, EstimateKind::D, EstimateKind::V];

    #[test]
    fn exp_d_variant_order_one() {
        let a = build_variant_approximant(EstimateKind::D, &QSchedule::FactorialShift(q(1, 1)), 1, 0, &exp_series(3))
            .unwrap();
        assert_eq!(a.numerator.coeffs, vec![q(1, 1), q(1, 2)]);
        assert_eq!(a.denominator.coeffs, vec![q(1, 1), q(-1, 2)]);
        assert_eq!(check_order(&a, &exp_series(8)).unwrap(), 3);
        let p = predict(EstimateKind::D, &QSchedule::FactorialShift(q(1, 1)), 1, 0, &exp_series(3), 2).unwrap();
        assert_eq!(p.guaranteed, 3);
        assert_eq!(p.predicted[0], (3, q(1, 4)));
    }

    #[test]
    fn t_variant_on_geometric_series() {
        let a = build_variant_approximant(EstimateKind::T, &QSchedule::Constant(q(1, 1)), 1, 0, &geometric(2)).unwrap();
        assert_eq!(a.numerator.coeffs, vec![q(1, 1), q(0, 1)]);
        assert_eq!(a.denominator.coeffs, vec![q(1, 1), q(-1, 1)]);
        let p = predict(EstimateKind::T, &QSchedule::Constant(q(1, 1)), 2, 0, &geometric(3), 4).unwrap();
        assert!(p.predicted.iter().all(|(_, v)| *v == q(1, 1)));
    }

    #[test]
    fn order_zero_is_the_partial_sum() {
        let gamma = exp_series(6);
        for variant in VARIANTS {
            let a = build_variant_approximant(variant, &QSchedule::Square, 0, 3, &gamma).unwrap();
            let taylor = a.taylor(6).unwrap();
            assert_eq!(taylor[..4], gamma.gamma[..4]);
            assert!(taylor[4..].iter().all(|c| *c == q(0, 1)));
            if variant != EstimateKind::V {
                assert_eq!(a.denominator.coeffs, vec![q(1, 1)]);
            }
            assert!(check_order(&a, &gamma).unwrap() >= 4);
            let p = predict(variant, &QSchedule::Square, 0, 3, &gamma, 3).unwrap();
            assert!(p.predicted.iter().all(|(_, v)| *v == q(0, 1)));
        }
    }

    #[test]
    fn insufficient_or_zero_coefficients() {
        let short = exp_series(2);
        assert!(matches!(
            build_variant_approximant(EstimateKind::D, &QSchedule::Square, 1, 0, &short),
            Err(Error::InsufficientData { needed: 3, available: 2 })
        ));
        let ln1p = PowerSeriesCoefficients::new(vec![q(0, 1), q(1, 1), q(-1, 2), q(1, 3)]);
        assert_eq!(
            build_variant_approximant(EstimateKind::T, &QSchedule::Square, 1, 0, &ln1p),
            Err(Error::ZeroCoefficient(0))
        );
    }

    #[test]
    fn asymptotic_estimates_lose_refinement_and_fix_poles() {
        let gamma = exp_series(10);
        let rule = |n: usize| Scalar::recip(&factorial::<Rational>(n + 1)).unwrap();
        let sched = QSchedule::FactorialShift(q(1, 1));
        for k in 1..=3 {
            for n in 0..=2 {
                let a = build_asymptotic_approximant(EstimateKind::D, &sched, k, n, &gamma, &rule).unwrap();
                assert_eq!(a.guaranteed_order(), k + n + 1);
                assert_eq!(check_order(&a, &gamma).unwrap(), k + n + 1, "k={k} n={n}");
            }
        }
        let other = PowerSeriesCoefficients::new((0..10).map(|i| q(i as i64 + 2, 3)).collect());
        let a = build_asymptotic_approximant(EstimateKind::V, &sched, 3, 1, &gamma, &rule).unwrap();
        let b = build_asymptotic_approximant(EstimateKind::V, &sched, 3, 1, &other, &rule).unwrap();
        assert_eq!(a.denominator, b.denominator);
        assert_ne!(a.numerator, b.numerator);
    }

    #[test]
    fn epsilon_examples() {
        let t = pade_epsilon(&[q(1, 1), q(3, 2), q(7, 4)], &ZeroPolicy::default());
        assert_eq!(t.even(1, 0), Some(&q(2, 1)));
        let c = pade_epsilon(&vec![q(5, 1); 7], &ZeroPolicy::default());
        for k in (0..c.columns.len()).step_by(2) {
            assert!(c.columns[k].iter().all(|v| v.as_ref() == Some(&q(5, 1))));
        }
        assert!(c.get(1, 0).is_none());
        let z = q(1, 3);
        let e = epsilon_for_series(&exp_series(3), &z);
        assert_eq!(e.even(1, 0), Some(&((q(2, 1) + z.clone()) / (q(2, 1) - z))));
    }

    fn nonzero() -> impl Strategy<Value = Rational> {
        (1i64..=20, 1i64..=5, any::<bool>()).prop_map(|(n, d, neg)| q(if neg { -n } else { n }, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn degrees_and_engine_consistency(
            gamma in prop::collection::vec(nonzero(), 10),
            k in 0usize..5,
            n in 0usize..4,
            zn in 1i64..5,
            vi in 0usize..4,
        ) {
            let variant = VARIANTS[vi];
            let gamma = PowerSeriesCoefficients::new(gamma);
            let sched = QSchedule::FactorialShift(q(1, 1));
            let a = match build_variant_approximant(variant, &sched, k, n, &gamma) {
                Ok(a) => a,
                Err(Error::ZeroConstantTerm) => return Ok(()),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            };
            let extra = usize::from(variant == EstimateKind::V);
            let policy = ZeroPolicy::default();
            prop_assert!(a.numerator.degree(&policy).is_none_or(|d| d <= k + n + extra));
            prop_assert!(a.denominator.degree(&policy).is_none_or(|d| d <= k + extra));

            let z = q(1, zn + 1);
            let terms: Vec<Rational> = gamma.gamma.iter().enumerate()
                .map(|(i, g)| g.clone() * z.powi(i as i32).unwrap()).collect();
            let s = Sequence::from_terms(0, terms);
            let est = RemainderEstimator::standard(variant);
            if let Ok(table) = transform(&sched, &s, &est, k + n) {
                if let (Some(v), Ok(d)) = (table.value(k, n), Scalar::recip(&a.denominator.eval(&z))) {
                    prop_assert_eq!(v.clone(), a.numerator.eval(&z) * d);
                }
            }
        }
    }
}
