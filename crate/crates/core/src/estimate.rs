//! Remainder estimates `ω_n` and the rewrite of t-type transforms as d-type ones.

use std::fmt;
use std::sync::Arc;

use crate::engine::explicit_pair;
use crate::error::{Error, Result};
use crate::scalar::{Scalar, ZeroPolicy};
use crate::schedule::QSchedule;
use crate::sequence::Sequence;

/// The four simple estimate rules built from the terms `a_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimateKind {
    /// `(n + q_0) a_n`
    U,
    /// `a_n`
    T,
    /// `a_{n+1}`
    D,
    /// `a_n a_{n+1} / (a_n − a_{n+1})`
    V,
}

impl EstimateKind {
    /// Number of terms beyond `a_n` the rule looks at.
    pub fn lookahead(self) -> usize {
        match self {
            EstimateKind::U | EstimateKind::T => 0,
            EstimateKind::D | EstimateKind::V => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EstimateKind::U => "u",
            EstimateKind::T => "t",
            EstimateKind::D => "d",
            EstimateKind::V => "v",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "u" => Some(EstimateKind::U),
            "t" => Some(EstimateKind::T),
            "d" => Some(EstimateKind::D),
            "v" => Some(EstimateKind::V),
            _ => None,
        }
    }
}

/// Closed-form rule `n ↦ a_n^(∞)` for asymptotic estimates.
pub type TermRule<S> = Arc<dyn Fn(usize) -> S + Send + Sync>;

/// Term rule `n ↦ γ_n^(∞) z^n` of a power series.
pub fn power_series_rule<S: Scalar>(
    gamma_inf: impl Fn(usize) -> S + Send + Sync + 'static,
    z: S,
) -> TermRule<S> {
    Arc::new(move |n| {
        let zn = (0..n).fold(S::one(), |acc, _| acc * z.clone());
        gamma_inf(n) * zn
    })
}

/// Coefficient rule `γ_n^(∞) = Γ(n+1) R^n`.
pub fn factorial_power_rule<S: Scalar>(r: S) -> impl Fn(usize) -> S + Send + Sync + 'static {
    move |n| (1..=n).fold(S::one(), |acc, i| acc * S::from_i64(i as i64) * r.clone())
}

/// How `ω_n` is obtained for a transformation run.
#[derive(Clone)]
pub enum RemainderEstimator<S> {
    /// One of the u/t/d/v rules applied to the sequence terms. `q0` only
    /// matters for U; `None` means "use `q_1` of the active schedule".
    Standard { kind: EstimateKind, q0: Option<S> },
    /// `ω_n` supplied directly, aligned with the sequence start.
    Explicit(Vec<S>),
    /// A rule applied to asymptotic terms `a_n^(∞)` instead of the data.
    Asymptotic { kind: EstimateKind, terms: TermRule<S>, q0: Option<S> },
}

impl<S: fmt::Debug> fmt::Debug for RemainderEstimator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RemainderEstimator::Standard { kind, q0 } => {
                f.debug_struct("Standard").field("kind", kind).field("q0", q0).finish()
            }
            RemainderEstimator::Explicit(v) => f.debug_tuple("Explicit").field(v).finish(),
            RemainderEstimator::Asymptotic { kind, q0, .. } => {
                f.debug_struct("Asymptotic").field("kind", kind).field("q0", q0).finish()
            }
        }
    }
}

impl<S: Scalar> RemainderEstimator<S> {
    pub fn u() -> Self {
        RemainderEstimator::Standard { kind: EstimateKind::U, q0: None }
    }
    pub fn u_with(q0: S) -> Self {
        RemainderEstimator::Standard { kind: EstimateKind::U, q0: Some(q0) }
    }
    pub fn t() -> Self {
        RemainderEstimator::Standard { kind: EstimateKind::T, q0: None }
    }
    pub fn d() -> Self {
        RemainderEstimator::Standard { kind: EstimateKind::D, q0: None }
    }
    pub fn v() -> Self {
        RemainderEstimator::Standard { kind: EstimateKind::V, q0: None }
    }
    pub fn standard(kind: EstimateKind) -> Self {
        RemainderEstimator::Standard { kind, q0: None }
    }
    pub fn asymptotic(kind: EstimateKind, terms: TermRule<S>) -> Self {
        RemainderEstimator::Asymptotic { kind, terms, q0: None }
    }

    /// Extra sequence elements needed beyond the last transformed index.
    pub fn lookahead(&self) -> usize {
        match self {
            RemainderEstimator::Standard { kind, .. } => kind.lookahead(),
            _ => 0,
        }
    }

    pub fn label(&self) -> String {
        match self {
            RemainderEstimator::Standard { kind, .. } => kind.name().to_string(),
            RemainderEstimator::Explicit(_) => "explicit-omega".to_string(),
            RemainderEstimator::Asymptotic { kind, .. } => format!("{}-asymptotic", kind.name()),
        }
    }

    /// `ω_n`. `default_q0` resolves a U estimate without its own `q0`.
    pub fn omega(&self, s: &Sequence<S>, n: usize, default_q0: Option<&S>) -> Result<S> {
        let resolve = |q0: &Option<S>| -> Result<S> {
            q0.as_ref().or(default_q0).cloned().ok_or_else(|| {
                Error::InvalidParameter("u estimate needs q0 (or beta)".to_string())
            })
        };
        match self {
            RemainderEstimator::Standard { kind, q0 } => {
                let q0 = match kind {
                    EstimateKind::U => resolve(q0)?,
                    _ => S::zero(),
                };
                estimate_from_terms(*kind, &q0, |i| s.term(i), n)
            }
            RemainderEstimator::Explicit(values) => {
                let w = n
                    .checked_sub(s.start())
                    .and_then(|i| values.get(i))
                    .cloned()
                    .ok_or(Error::InsufficientData {
                        needed: n + 1 - s.start(),
                        available: values.len(),
                    })?;
                if w.is_zero() {
                    Err(Error::ZeroEstimate(n))
                } else {
                    Ok(w)
                }
            }
            RemainderEstimator::Asymptotic { kind, terms, q0 } => {
                let q0 = match kind {
                    EstimateKind::U => resolve(q0)?,
                    _ => S::zero(),
                };
                estimate_from_terms(*kind, &q0, |i| Ok(terms(i)), n)
            }
        }
    }
}

/// Applies one of the u/t/d/v formulas to a term accessor.
pub fn estimate_from_terms<S: Scalar>(
    kind: EstimateKind,
    q0: &S,
    a: impl Fn(usize) -> Result<S>,
    n: usize,
) -> Result<S> {
    let w = match kind {
        EstimateKind::U => (S::from_i64(n as i64) + q0.clone()) * a(n)?,
        EstimateKind::T => a(n)?,
        EstimateKind::D => a(n + 1)?,
        EstimateKind::V => {
            let an = a(n)?;
            let an1 = a(n + 1)?;
            let diff = an.clone() - an1.clone();
            if diff.is_negligible(an.magnitude() + an1.magnitude(), &ZeroPolicy::default()) {
                return Err(Error::DegenerateV(n));
            }
            (an * an1).checked_div(&diff)?
        }
    };
    if w.is_zero() {
        Err(Error::ZeroEstimate(n))
    } else {
        Ok(w)
    }
}

/// `ω_n` of `est` at index `n`; U without `q0` is rejected.
pub fn estimate<S: Scalar>(est: &RemainderEstimator<S>, s: &Sequence<S>, n: usize) -> Result<S> {
    est.omega(s, n, None)
}

/// The estimate rule applied to `a_n^(∞) = γ_n^(∞) z^n`.
pub fn asymptotic_estimate<S: Scalar>(
    kind: EstimateKind,
    q0: &S,
    gamma_inf: &dyn Fn(usize) -> S,
    z: &S,
    n: usize,
) -> Result<S> {
    let term = |i: usize| -> Result<S> { Ok(gamma_inf(i) * z.powi(i as i32)?) };
    estimate_from_terms(kind, q0, term, n)
}

/// A t-type problem restated as a d-type problem.
///
/// `t_k^(n)(q_m, s) = d_k^(n−1)(q_m + 1, s)`: the d-transform is evaluated
/// one index earlier with every `q_m` raised by one. The stored window
/// starts at `s_{start−1}` (zero when `start = 0`), so the `n = 0` column of
/// the t-transform becomes the d-value at index −1, whose `j = 0` numerator
/// term vanishes.
#[derive(Debug, Clone)]
pub struct TRewrite<S> {
    pub schedule: QSchedule<S>,
    pub first_index: i64,
    pub values: Vec<S>,
}

/// Builds the d-type restatement of a t-type transformation.
pub fn t_as_d_rewrite<S: Scalar>(q: &QSchedule<S>, s: &Sequence<S>) -> Result<TRewrite<S>> {
    let mut values = Vec::with_capacity(s.len() + 1);
    values.push(s.previous_value(s.start())?);
    values.extend(s.values().iter().cloned());
    Ok(TRewrite {
        schedule: q.shifted(S::one()),
        first_index: s.start() as i64 - 1,
        values,
    })
}

impl<S: Scalar> TRewrite<S> {
    /// `d_k^(index)` of the restated problem; `index = n − 1` reproduces `t_k^(n)`.
    pub fn d_value(&self, k: usize, index: i64) -> Result<S> {
        let p = usize::try_from(index - self.first_index)
            .map_err(|_| Error::InvalidParameter(format!("index {index} precedes the window")))?;
        if p + k + 1 >= self.values.len() {
            return Err(Error::InsufficientData { needed: p + k + 2, available: self.values.len() });
        }
        let mut num_u = Vec::with_capacity(k + 1);
        let mut den_u = Vec::with_capacity(k + 1);
        for j in 0..=k {
            let w = self.values[p + j + 1].clone() - self.values[p + j].clone();
            let t_index = (index + j as i64 + 1) as usize;
            let inv = w.recip().map_err(|_| Error::ZeroEstimate(t_index))?;
            num_u.push(self.values[p + j].clone() * inv.clone());
            den_u.push(inv);
        }
        let (num, den, scale) = explicit_pair(&self.schedule, k, index, &num_u, &den_u)?;
        if den.is_negligible(scale, &ZeroPolicy::default()) {
            return Err(Error::VanishingDenominator { k, n: (index + 1) as usize });
        }
        num.checked_div(&den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::g_explicit;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d).unwrap()
    }

    fn ln2_sums(count: usize) -> Sequence<Rational> {
        Sequence::from_terms(0, (0..count).map(|n| q(if n % 2 == 0 { 1 } else { -1 }, n as i64 + 1)).collect())
    }

    fn geometric_terms(count: usize) -> Sequence<Rational> {
        Sequence::from_terms(0, (0..count).map(|n| q(1, 1 << n)).collect())
    }

    #[test]
    fn simple_rules() {
        let geo = geometric_terms(4);
        assert_eq!(estimate(&RemainderEstimator::v(), &geo, 0).unwrap(), q(1, 1));
        assert_eq!(estimate(&RemainderEstimator::d(), &geo, 0).unwrap(), q(1, 2));
        assert_eq!(estimate(&RemainderEstimator::t(), &geo, 2).unwrap(), q(1, 4));
        let ln2 = ln2_sums(4);
        assert_eq!(estimate(&RemainderEstimator::u_with(q(1, 1)), &ln2, 1).unwrap(), q(-1, 1));
        assert!(estimate(&RemainderEstimator::u(), &ln2, 1).is_err());
    }

    #[test]
    fn zero_estimates_name_the_index() {
        let s = Sequence::from_terms(0, vec![q(1, 1), q(0, 1), q(1, 1)]);
        assert_eq!(estimate(&RemainderEstimator::t(), &s, 1), Err(Error::ZeroEstimate(1)));
        assert_eq!(estimate(&RemainderEstimator::d(), &s, 0), Err(Error::ZeroEstimate(0)));
        let flat = Sequence::from_terms(0, vec![q(1, 1), q(1, 1)]);
        assert_eq!(estimate(&RemainderEstimator::v(), &flat, 0), Err(Error::DegenerateV(0)));
        let explicit = RemainderEstimator::Explicit(vec![q(1, 1), q(0, 1)]);
        assert_eq!(estimate(&explicit, &flat, 1), Err(Error::ZeroEstimate(1)));
    }

    #[test]
    fn asymptotic_rules() {
        let rule = factorial_power_rule(q(1, 1));
        assert_eq!(rule(3), q(6, 1));
        // γ^(∞) = γ reproduces the data-based estimate
        let gamma = |n: usize| q(1, 1 + n as i64);
        let z = q(1, 2);
        let terms: Vec<Rational> = (0..5).map(|n| gamma(n) * z.powi(n as i32).unwrap()).collect();
        let s = Sequence::from_terms(0, terms);
        for kind in [EstimateKind::U, EstimateKind::T, EstimateKind::D, EstimateKind::V] {
            let data = RemainderEstimator::Standard { kind, q0: Some(q(1, 1)) }
                .omega(&s, 2, None)
                .unwrap();
            let asy = asymptotic_estimate(kind, &q(1, 1), &gamma, &z, 2).unwrap();
            assert_eq!(data, asy, "{kind:?}");
            let via_rule = RemainderEstimator::Asymptotic {
                kind,
                terms: power_series_rule(gamma, z.clone()),
                q0: Some(q(1, 1)),
            }
            .omega(&s, 2, None)
            .unwrap();
            assert_eq!(via_rule, asy);
        }
    }

    #[test]
    fn t_equals_shifted_d() {
        let s = ln2_sums(6);
        let rewrite = t_as_d_rewrite(&QSchedule::Constant(q(1, 1)), &s).unwrap();
        assert_eq!(rewrite.schedule.q(1).unwrap(), q(2, 1));
        let omega: Vec<Rational> = (0..6).map(|n| s.term(n).unwrap()).collect();
        for n in 0..4 {
            for k in 1..=(4 - n) {
                let t = g_explicit(k, n, &QSchedule::Constant(q(1, 1)), &s, &omega).unwrap();
                assert_eq!(rewrite.d_value(k, n as i64 - 1).unwrap(), t, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn rewrite_on_geometric_is_exact() {
        let s = geometric_terms(6);
        let rewrite = t_as_d_rewrite(&QSchedule::FactorialShift(q(1, 1)), &s).unwrap();
        for k in 1..=4 {
            assert_eq!(rewrite.d_value(k, -1).unwrap(), q(2, 1));
        }
    }

    #[test]
    fn rewrite_first_column_drops_leading_term() {
        // k=1, n=0: numerator s_0/a_1 − s_{−1}/a_0 = s_0/a_1
        let s = ln2_sums(3);
        let rewrite = t_as_d_rewrite(&QSchedule::Constant(q(1, 1)), &s).unwrap();
        assert_eq!(rewrite.values[0], q(0, 1));
        let expected = (q(1, 1) / q(-1, 2)) / (q(1, 1) / q(-1, 2) - q(1, 1));
        assert_eq!(rewrite.d_value(1, -1).unwrap(), expected);
    }
}
