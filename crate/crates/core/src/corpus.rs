//! Model sequences with known limits and reference problems with
//! independently computed values.

use std::f64::consts::{E, LN_2, PI};

use crate::error::{Error, Result};
use crate::estimate::TermRule;
use crate::poly::{factorial, PowerSeriesCoefficients};
use crate::scalar::Scalar;
use crate::schedule::QSchedule;
use crate::sequence::Sequence;

/// Families of model sequences.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelFamily<S> {
    /// `s_n = s + ω_n Σ_j c_j / Π_{m=1}^{j} (n + q_m)` for any schedule.
    G(QSchedule<S>),
    /// Inverse powers `(β+n)^{−j}`.
    Levin { beta: S },
    /// Inverse Pochhammer symbols `(β+n)_j^{−1}`.
    Factorial { beta: S },
    /// `q_m = ξ − m + 1`.
    M { xi: S },
    /// `q_m = β + (m−1)/α`.
    C { alpha: S, beta: S },
    /// `s_n = s + z^{n+1} n^θ [α_0 + α_1/n + α_2/n²]`, defined for `n ≥ 1`.
    Asy { z: S, theta: i32, alpha: [S; 3] },
}

/// A model sequence: family, limit, correction coefficients and `ω` rule.
#[derive(Clone)]
pub struct ModelSequenceSpec<S> {
    pub family: ModelFamily<S>,
    pub limit: S,
    /// `c_0, ..., c_{k−1}`; ignored by `Asy`.
    pub coefficients: Vec<S>,
    /// `n ↦ ω_n`; ignored by `Asy`.
    pub omega: Option<TermRule<S>>,
    /// Index of the first generated element.
    pub start: usize,
}

impl<S: Scalar> ModelSequenceSpec<S> {
    pub fn new(family: ModelFamily<S>, limit: S, coefficients: Vec<S>, omega: TermRule<S>) -> Self {
        ModelSequenceSpec { family, limit, coefficients, omega: Some(omega), start: 0 }
    }

    pub fn asy(z: S, theta: i32, alpha: [S; 3], limit: S) -> Self {
        ModelSequenceSpec {
            family: ModelFamily::Asy { z, theta, alpha },
            limit,
            coefficients: vec![],
            omega: None,
            start: 1,
        }
    }

    pub fn starting_at(mut self, start: usize) -> Self {
        self.start = start;
        self
    }

    /// The schedule whose transformation is exact on this model.
    pub fn schedule(&self) -> Option<QSchedule<S>> {
        match &self.family {
            ModelFamily::G(q) => Some(q.clone()),
            ModelFamily::Levin { beta } => Some(QSchedule::Constant(beta.clone())),
            ModelFamily::Factorial { beta } => Some(QSchedule::FactorialShift(beta.clone())),
            ModelFamily::M { xi } => Some(QSchedule::ReverseShift(xi.clone())),
            ModelFamily::C { alpha, beta } => Some(QSchedule::Interpolating {
                alpha: alpha.clone(),
                beta: beta.clone(),
            }),
            ModelFamily::Asy { .. } => None,
        }
    }

    /// `ω_n` for the generated window.
    pub fn omega_values(&self, count: usize) -> Result<Vec<S>> {
        let rule = self
            .omega
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("model has no omega rule".to_string()))?;
        Ok((self.start..self.start + count).map(|n| rule(n)).collect())
    }
}

/// Generates `count` elements starting at `spec.start`.
pub fn generate<S: Scalar>(spec: &ModelSequenceSpec<S>, count: usize) -> Result<Sequence<S>> {
    if let ModelFamily::Asy { z, theta, alpha } = &spec.family {
        if spec.start == 0 {
            return Err(Error::InvalidParameter("asymptotic model starts at n = 1".to_string()));
        }
        let values = (spec.start..spec.start + count)
            .map(|n| {
                let nn = S::from_i64(n as i64);
                let bracket = alpha[0].clone()
                    + alpha[1].checked_div(&nn)?
                    + alpha[2].checked_div(&(nn.clone() * nn.clone()))?;
                Ok(spec.limit.clone() + z.powi(n as i32 + 1)? * nn.powi(*theta)? * bracket)
            })
            .collect::<Result<_>>()?;
        return Ok(Sequence::from_partial_sums(spec.start, values));
    }
    let q = spec.schedule().expect("non-asymptotic family has a schedule");
    q.validate_parameters()?;
    match spec.coefficients.first() {
        Some(c0) if !c0.is_zero() => {}
        _ => return Err(Error::InvalidParameter("c_0 must be nonzero".to_string())),
    }
    let omega = spec.omega_values(count)?;
    let qs: Vec<S> = (1..spec.coefficients.len()).map(|m| q.q(m)).collect::<Result<_>>()?;
    let values = (spec.start..spec.start + count)
        .zip(omega)
        .map(|(n, w)| {
            let nn = S::from_i64(n as i64);
            let mut sum = spec.coefficients[0].clone();
            let mut prod = S::one();
            for (c, qm) in spec.coefficients[1..].iter().zip(&qs) {
                prod = prod * (nn.clone() + qm.clone());
                let term = c.checked_div(&prod).map_err(|_| {
                    Error::InvalidParameter(format!("model sequence undefined at n = {n}"))
                })?;
                sum = sum + term;
            }
            Ok(spec.limit.clone() + w * sum)
        })
        .collect::<Result<_>>()?;
    Ok(Sequence::from_partial_sums(spec.start, values))
}

/// Convergence type of a reference problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Linear,
    Logarithmic,
    AlternatingDivergent,
}

/// Source of the reference value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Oracle {
    Constant(f64),
    /// `∫_0^∞ e^{−t}/(1 + z t) dt`, the Stieltjes value of `Σ (−1)^n n! z^n`.
    EulerIntegral { z: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Series {
    Ln2,
    Zeta2,
    Euler,
    Geometric,
    Exp,
    Ln1p,
}

/// A series `Σ γ_n z^n` with a known value.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceProblem {
    pub name: &'static str,
    pub description: &'static str,
    pub classification: Classification,
    pub oracle: Oracle,
    series: Series,
}

impl ReferenceProblem {
    /// Coefficient `γ_n`.
    pub fn coefficient<S: Scalar>(&self, n: usize) -> S {
        let sign = |n: usize| S::from_i64(if n.is_multiple_of(2) { 1 } else { -1 });
        let inv = |v: S| v.recip().expect("positive denominators");
        match self.series {
            Series::Ln2 => sign(n) * inv(S::from_i64(n as i64 + 1)),
            Series::Zeta2 => inv(S::from_i64(n as i64 + 1).powi(2).expect("integer power")),
            Series::Euler => sign(n) * factorial::<S>(n),
            Series::Geometric => S::one(),
            Series::Exp => inv(factorial::<S>(n)),
            Series::Ln1p if n == 0 => S::zero(),
            Series::Ln1p => -sign(n) * inv(S::from_i64(n as i64)),
        }
    }

    /// The expansion variable `z`.
    pub fn z<S: Scalar>(&self) -> S {
        match self.series {
            Series::Geometric => S::ratio(1, 2).expect("nonzero"),
            _ => S::one(),
        }
    }

    /// Term `a_n = γ_n z^n`.
    pub fn term<S: Scalar>(&self, n: usize) -> S {
        self.coefficient::<S>(n) * self.z::<S>().powi(n as i32).expect("integer power")
    }

    pub fn partial_sums<S: Scalar>(&self, count: usize) -> Sequence<S> {
        Sequence::from_terms(0, (0..count).map(|n| self.term(n)).collect())
    }

    pub fn coefficients<S: Scalar>(&self, count: usize) -> PowerSeriesCoefficients<S> {
        PowerSeriesCoefficients::new((0..count).map(|n| self.coefficient(n)).collect())
    }
}

/// All registered problems.
pub fn registry() -> Vec<ReferenceProblem> {
    vec![
        ReferenceProblem {
            name: "ln2",
            description: "alternating harmonic series, sum (-1)^n/(n+1) = ln 2",
            classification: Classification::Linear,
            oracle: Oracle::Constant(LN_2),
            series: Series::Ln2,
        },
        ReferenceProblem {
            name: "zeta2",
            description: "sum 1/(n+1)^2 = pi^2/6",
            classification: Classification::Logarithmic,
            oracle: Oracle::Constant(PI * PI / 6.0),
            series: Series::Zeta2,
        },
        ReferenceProblem {
            name: "euler-z1",
            description: "Euler series sum (-1)^n n! at z = 1, Stieltjes value",
            classification: Classification::AlternatingDivergent,
            oracle: Oracle::EulerIntegral { z: 1.0 },
            series: Series::Euler,
        },
        ReferenceProblem {
            name: "geometric-half",
            description: "geometric series sum (1/2)^n = 2",
            classification: Classification::Linear,
            oracle: Oracle::Constant(2.0),
            series: Series::Geometric,
        },
        ReferenceProblem {
            name: "exp",
            description: "exponential series sum 1/n! = e",
            classification: Classification::Linear,
            oracle: Oracle::Constant(E),
            series: Series::Exp,
        },
        ReferenceProblem {
            name: "ln1p",
            description: "series of ln(1+z) at z = 1, gamma_0 = 0",
            classification: Classification::Linear,
            oracle: Oracle::Constant(LN_2),
            series: Series::Ln1p,
        },
    ]
}

pub fn find_problem(name: &str) -> Result<ReferenceProblem> {
    registry()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::UnknownProblem(name.to_string()))
}

/// Reference value of a problem.
pub fn oracle_value(problem: &ReferenceProblem) -> Result<f64> {
    match problem.oracle {
        Oracle::Constant(v) => Ok(v),
        Oracle::EulerIntegral { z } => euler_integral(z),
    }
}

/// `∫_0^∞ e^{−t}/(1 + z t) dt` for `z ≥ 0`, evaluated as
/// `∫_0^1 dx/(1 − z ln x)` by double-exponential quadrature. Fails unless the
/// quadrature error estimate stays below `1e−12`.
pub fn euler_integral(z: f64) -> Result<f64> {
    if !(z >= 0.0 && z.is_finite()) {
        return Err(Error::InvalidParameter(format!("Euler integral needs z >= 0, got {z}")));
    }
    let out = quadrature::double_exponential::integrate(
        |x| if x > 0.0 { 1.0 / (1.0 - z * x.ln()) } else { 0.0 },
        0.0,
        1.0,
        1e-14,
    );
    if out.error_estimate <= 1e-12 && out.integral.is_finite() {
        Ok(out.integral)
    } else {
        Err(Error::Quadrature(out.error_estimate))
    }
}
