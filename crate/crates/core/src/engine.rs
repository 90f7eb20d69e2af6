//! The transformation family `G_k^(n)(q_m, s_n, ω_n)` and its members L, S, M, C.
//!
//! Numerators and denominators are computed in normalized form: the
//! finite difference `Δ^k [Π_{m=1}^{k−1}(n+q_m) u_n]` divided by
//! `Π_{m=1}^{k−1}(n+k+q_m)`. Both the explicit sums and every recursion
//! produce the same normalized quantities, so tables can be compared
//! entrywise.

use crate::error::{Error, Result};
use crate::estimate::{EstimateKind, RemainderEstimator};
use crate::poly::{binomial_row, pochhammer};
use crate::scalar::{Scalar, ZeroPolicy};
use crate::schedule::QSchedule;
use crate::sequence::Sequence;

/// Coefficients `c_j` with `G_k^(n)[u] = Σ_j c_j u_{n+j}`:
/// `c_j = (−1)^{k−j} C(k,j) Π_{m=1}^{k−1} (n+j+q_m)/(n+k+q_m)`.
pub(crate) fn explicit_coefficients<S: Scalar>(q: &QSchedule<S>, k: usize, n: i64) -> Result<Vec<S>> {
    let binom = binomial_row(k)?;
    let qs: Vec<S> = (1..k.max(1)).map(|m| q.q(m)).collect::<Result<_>>()?;
    let nk = S::from_i64(n + k as i64);
    let norms: Vec<S> = qs.iter().map(|qm| nk.clone() + qm.clone()).collect();
    if let Some(m) = norms.iter().position(|d| d.is_zero()) {
        return Err(Error::SingularSchedule { k, n, m: m + 1 });
    }
    let mut coeffs = Vec::with_capacity(k + 1);
    for (j, c) in binom.iter().enumerate() {
        let nj = S::from_i64(n + j as i64);
        let mut w = S::from_u128(*c);
        for (qm, norm) in qs.iter().zip(&norms) {
            w = w * (nj.clone() + qm.clone()).checked_div(norm)?;
        }
        coeffs.push(if (k - j).is_multiple_of(2) { w } else { -w });
    }
    Ok(coeffs)
}

/// Normalized explicit numerator and denominator for the window
/// `u_{n..=n+k}`, plus the magnitude of the denominator's summands.
pub(crate) fn explicit_pair<S: Scalar>(
    q: &QSchedule<S>,
    k: usize,
    n: i64,
    num_u: &[S],
    den_u: &[S],
) -> Result<(S, S, f64)> {
    let c = explicit_coefficients(q, k, n)?;
    let mut num = S::zero();
    let mut den = S::zero();
    let mut scale = 0.0;
    for (j, cj) in c.iter().enumerate() {
        num = num + cj.clone() * num_u[j].clone();
        let d = cj.clone() * den_u[j].clone();
        scale += d.magnitude();
        den = den + d;
    }
    Ok((num, den, scale))
}

/// `G_k^(n)` evaluated from the explicit ratio of binomial sums.
///
/// `omega` is aligned with the sequence: `omega[i]` is `ω_{start+i}`.
pub fn g_explicit<S: Scalar>(
    k: usize,
    n: usize,
    q: &QSchedule<S>,
    s: &Sequence<S>,
    omega: &[S],
) -> Result<S> {
    let i0 = n
        .checked_sub(s.start())
        .ok_or(Error::InsufficientData { needed: n + 1, available: s.len() })?;
    if i0 + k >= s.len() || i0 + k >= omega.len() {
        return Err(Error::InsufficientData {
            needed: i0 + k + 1,
            available: s.len().min(omega.len()),
        });
    }
    let mut num_u = Vec::with_capacity(k + 1);
    let mut den_u = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let inv = omega[i0 + j].recip().map_err(|_| Error::ZeroEstimate(n + j))?;
        num_u.push(s.values()[i0 + j].clone() * inv.clone());
        den_u.push(inv);
    }
    let (num, den, scale) = explicit_pair(q, k, n as i64, &num_u, &den_u)?;
    if den.is_negligible(scale, &ZeroPolicy::default()) {
        return Err(Error::VanishingDenominator { k, n });
    }
    num.checked_div(&den)
}

/// Rows of a triangular recursion table together with running magnitudes.
struct Rows<S> {
    values: Vec<Vec<S>>,
    scales: Vec<Vec<f64>>,
}

/// Runs `G_{k+1}^(n) = G_k^(n+1) − f(k, n) G_k^(n)` with `G_0^(n) = u_n`;
/// `factor` is only consulted for `k ≥ 1` (row 1 is always `Δu`).
fn run_recursion<S: Scalar>(
    u: &[S],
    first: i64,
    k_max: usize,
    factor: impl Fn(usize, &S) -> Result<S>,
) -> Result<Rows<S>> {
    if u.is_empty() || k_max >= u.len() {
        return Err(Error::InsufficientData { needed: k_max + 1, available: u.len() });
    }
    let mut values = vec![u.to_vec()];
    let mut scales = vec![u.iter().map(Scalar::magnitude).collect::<Vec<f64>>()];
    for k in 0..k_max {
        let prev = &values[k];
        let prev_scale = &scales[k];
        let mut row = Vec::with_capacity(prev.len() - 1);
        let mut row_scale = Vec::with_capacity(prev.len() - 1);
        for i in 0..prev.len() - 1 {
            let f = if k == 0 {
                S::one()
            } else {
                factor(k, &S::from_i64(first + i as i64))?
            };
            row_scale.push(prev_scale[i + 1] + f.magnitude() * prev_scale[i]);
            row.push(prev[i + 1].clone() - f * prev[i].clone());
        }
        values.push(row);
        scales.push(row_scale);
    }
    Ok(Rows { values, scales })
}

fn general_factor<S: Scalar>(q: &QSchedule<S>, k: usize, n: &S) -> Result<S> {
    let nk1 = n.clone() + S::from_i64(k as i64 + 1);
    let singular = |m: usize| Error::SingularSchedule {
        k: k + 1,
        n: n.to_f64() as i64,
        m,
    };
    let qk = q.q(k)?;
    let mut f = (n.clone() + qk.clone())
        .checked_div(&(nk1.clone() + qk))
        .map_err(|_| singular(k))?;
    for m in 1..k {
        let qm = q.q(m)?;
        let a = nk1.clone() - S::one() + qm.clone();
        f = f * a.checked_div(&(nk1.clone() + qm)).map_err(|_| singular(m))?;
    }
    Ok(f)
}

/// Recursive numerator/denominator table for a general schedule.
///
/// Row `k` holds `G_k^(n)` for `n = first_index, first_index + 1, ...`.
pub fn g_recursive_table<S: Scalar>(
    q: &QSchedule<S>,
    u: &[S],
    first_index: usize,
    k_max: usize,
) -> Result<Vec<Vec<S>>> {
    Ok(run_recursion(u, first_index as i64, k_max, |k, n| general_factor(q, k, n))?.values)
}

/// The named members of the family.
#[derive(Debug, Clone, PartialEq)]
pub enum Family<S> {
    /// Arbitrary schedule.
    G(QSchedule<S>),
    /// Levin's transformation, `q_m = β`.
    L { beta: S },
    /// Weniger's factorial-series transformation, `q_m = β + m − 1`.
    S { beta: S },
    /// `q_m = ξ − m + 1`.
    M { xi: S },
    /// Interpolating transformation, `q_m = β + (m−1)/α`.
    C { alpha: S, beta: S },
}

impl<S: Scalar> Family<S> {
    pub fn schedule(&self) -> QSchedule<S> {
        match self {
            Family::G(q) => q.clone(),
            Family::L { beta } => QSchedule::Constant(beta.clone()),
            Family::S { beta } => QSchedule::FactorialShift(beta.clone()),
            Family::M { xi } => QSchedule::ReverseShift(xi.clone()),
            Family::C { alpha, beta } => QSchedule::Interpolating {
                alpha: alpha.clone(),
                beta: beta.clone(),
            },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::G(_) => "G",
            Family::L { .. } => "L",
            Family::S { .. } => "S",
            Family::M { .. } => "M",
            Family::C { .. } => "C",
        }
    }

    /// The member's own recursion for the rows `G_0..G_{k_max}`.
    ///
    /// For G this is the general recursion; L, S, M and C use their
    /// simplified multipliers.
    pub fn dedicated_rows(&self, u: &[S], first_index: usize, k_max: usize) -> Result<Vec<Vec<S>>> {
        self.dedicated(u, first_index as i64, k_max).map(|r| r.values)
    }

    fn dedicated(&self, u: &[S], first: i64, k_max: usize) -> Result<Rows<S>> {
        let int = |v: usize| S::from_i64(v as i64);
        let div = |a: S, b: S, k: usize, n: &S| {
            a.checked_div(&b).map_err(|_| Error::SingularSchedule {
                k: k + 1,
                n: n.to_f64() as i64,
                m: k,
            })
        };
        match self {
            Family::G(q) => run_recursion(u, first, k_max, |k, n| general_factor(q, k, n)),
            Family::L { beta } => run_recursion(u, first, k_max, |k, n| {
                // (β+n)(β+n+k)^{k−1} / (β+n+k+1)^k
                let bn = beta.clone() + n.clone();
                let a = bn.clone() + int(k);
                let b = a.clone() + S::one();
                let ratio = div(a, b.clone(), k, n)?;
                Ok(div(bn, b, k, n)? * ratio.powi(k as i32 - 1)?)
            }),
            Family::S { beta } => run_recursion(u, first, k_max, |k, n| {
                // (β+n+k−1)(β+n+k) / ((β+n+2k−1)(β+n+2k))
                let bn = beta.clone() + n.clone();
                let a = (bn.clone() + int(k) - S::one()) * (bn.clone() + int(k));
                let b = (bn.clone() + int(2 * k) - S::one()) * (bn + int(2 * k));
                div(a, b, k, n)
            }),
            Family::M { xi } => run_recursion(u, first, k_max, |k, n| {
                // (ξ+n−k+1) / (ξ+n+k+1)
                let xn = xi.clone() + n.clone();
                div(xn.clone() - int(k) + S::one(), xn + int(k) + S::one(), k, n)
            }),
            Family::C { alpha, beta } => run_recursion(u, first, k_max, |k, n| {
                // (α[β+n]+k−1) (α[β+n+k])_{k−1} / (α[β+n+k+1])_k
                let bn = beta.clone() + n.clone();
                let lead = alpha.clone() * bn.clone() + int(k) - S::one();
                let top = pochhammer(&(alpha.clone() * (bn.clone() + int(k))), k - 1);
                let bottom = pochhammer(&(alpha.clone() * (bn + int(k) + S::one())), k);
                div(lead * top, bottom, k, n)
            }),
        }
    }
}

/// One entry of a transformation table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableEntry<S> {
    pub numerator: S,
    pub denominator: S,
    /// `numerator / denominator`, or `None` when the denominator vanished.
    pub value: Option<S>,
    /// Running magnitude of the summands that produced the denominator.
    pub scale: f64,
}

/// Triangular table `T_k^(n)`; row `k` starts at `n = start`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformTable<S> {
    pub start: usize,
    pub rows: Vec<Vec<TableEntry<S>>>,
}

impl<S: Scalar> TransformTable<S> {
    pub fn k_max(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn entry(&self, k: usize, n: usize) -> Option<&TableEntry<S>> {
        self.rows.get(k)?.get(n.checked_sub(self.start)?)
    }

    pub fn value(&self, k: usize, n: usize) -> Option<&S> {
        self.entry(k, n)?.value.as_ref()
    }

    /// Valid entries `(k, T_k^(start))` of the first column.
    pub fn first_column(&self) -> Vec<(usize, S)> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(k, row)| Some((k, row.first()?.value.clone()?)))
            .collect()
    }

    /// Highest-order valid entry of the first column.
    pub fn recommended(&self) -> Option<(usize, S)> {
        self.first_column().pop()
    }

    fn assemble(start: usize, num: Vec<Vec<S>>, den: Rows<S>, policy: &ZeroPolicy) -> Self {
        let rows = num
            .into_iter()
            .zip(den.values.into_iter().zip(den.scales))
            .map(|(nrow, (drow, srow))| {
                nrow.into_iter()
                    .zip(drow.into_iter().zip(srow))
                    .map(|(numerator, (denominator, scale))| {
                        let value = if denominator.is_negligible(scale, policy) {
                            None
                        } else {
                            numerator.checked_div(&denominator).ok()
                        };
                        TableEntry { numerator, denominator, value, scale }
                    })
                    .collect()
            })
            .collect();
        TransformTable { start, rows }
    }
}

/// Initial rows `u_n = s_n/ω_n` and `1/ω_n` over the transformable window.
struct Inputs<S> {
    num: Vec<S>,
    den: Vec<S>,
    /// `s_n/ω_n`, which replaces row 0 of `num` for t-type runs.
    row0: Vec<S>,
}

fn prepare<S: Scalar>(
    q: &QSchedule<S>,
    s: &Sequence<S>,
    est: &RemainderEstimator<S>,
    k_max: usize,
) -> Result<Inputs<S>> {
    let available = s.len().saturating_sub(est.lookahead());
    if available == 0 || k_max >= available {
        return Err(Error::InsufficientData {
            needed: k_max + 1 + est.lookahead(),
            available: s.len(),
        });
    }
    let default_q0 = q.first()?;
    // t-type requests use the d-type initial values s_{n−1}/a_n; for k ≥ 1
    // the difference (s_n − s_{n−1})/a_n = 1 is annihilated by every row.
    let t_rewrite = matches!(est, RemainderEstimator::Standard { kind: EstimateKind::T, .. });
    let mut inputs = Inputs { num: vec![], den: vec![], row0: vec![] };
    for i in 0..available {
        let n = s.start() + i;
        let w = est.omega(s, n, Some(&default_q0))?;
        let inv = w.recip().map_err(|_| Error::ZeroEstimate(n))?;
        let sn = s.values()[i].clone();
        let top = if t_rewrite { s.previous_value(n)? } else { sn.clone() };
        inputs.num.push(top * inv.clone());
        inputs.row0.push(sn * inv.clone());
        inputs.den.push(inv);
    }
    Ok(inputs)
}

/// Builds the table `T_k^(n)` for `k ≤ k_max` with the general recursion.
///
/// With `N+1` elements, entries exist for `k + n ≤ N` (u/t and explicit
/// estimates) or `k + n ≤ N − 1` (d/v estimates), counting `n` from the
/// sequence start.
pub fn transform<S: Scalar>(
    q: &QSchedule<S>,
    s: &Sequence<S>,
    est: &RemainderEstimator<S>,
    k_max: usize,
) -> Result<TransformTable<S>> {
    transform_family(&Family::G(q.clone()), s, est, k_max, &ZeroPolicy::default())
}

/// As [`transform`], running the member's dedicated recursion.
pub fn transform_family<S: Scalar>(
    family: &Family<S>,
    s: &Sequence<S>,
    est: &RemainderEstimator<S>,
    k_max: usize,
    policy: &ZeroPolicy,
) -> Result<TransformTable<S>> {
    let q = family.schedule();
    q.validate_parameters()?;
    let inputs = prepare(&q, s, est, k_max)?;
    let first = s.start() as i64;
    q.check_window(k_max, first, inputs.num.len())?;
    let mut num = family.dedicated(&inputs.num, first, k_max)?.values;
    num[0] = inputs.row0;
    let den = family.dedicated(&inputs.den, first, k_max)?;
    Ok(TransformTable::assemble(s.start(), num, den, policy))
}

/// Levin's transformation `L_k^(n)(β, s_n, ω_n)`.
pub fn levin_l<S: Scalar>(
    beta: S,
    s: &Sequence<S>,
    est: &RemainderEstimator<S>,
    k_max: usize,
) -> Result<TransformTable<S>> {
    transform(&QSchedule::Constant(beta), s, est, k_max)
}

/// Weniger's transformation `S_k^(n)(β, s_n, ω_n)`.
pub fn weniger_s<S: Scalar>(
    beta: S,
    s: &Sequence<S>,
    est: &RemainderEstimator<S>,
    k_max: usize,
) -> Result<TransformTable<S>> {
    transform(&QSchedule::FactorialShift(beta), s, est, k_max)
}

/// `M_k^(n)(ξ, s_n, ω_n)`.
pub fn transform_m<S: Scalar>(
    xi: S,
    s: &Sequence<S>,
    est: &RemainderEstimator<S>,
    k_max: usize,
) -> Result<TransformTable<S>> {
    transform(&QSchedule::ReverseShift(xi), s, est, k_max)
}

/// `C_k^(n)(α, β, s_n, ω_n)`.
pub fn transform_c<S: Scalar>(
    alpha: S,
    beta: S,
    s: &Sequence<S>,
    est: &RemainderEstimator<S>,
    k_max: usize,
) -> Result<TransformTable<S>> {
    transform(&QSchedule::Interpolating { alpha, beta }, s, est, k_max)
}
