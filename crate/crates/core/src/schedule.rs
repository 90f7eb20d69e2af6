//! Parameter schedules `q_m` that select a member of the transformation family.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The sequence `q_1, q_2, ...` entering the polynomial weights
/// `Π_{m=1}^{k−1} (n + j + q_m)`.
///
/// Formula schedules extend naturally to `m = 0`, which the Richardson-type
/// variants use.
#[derive(Debug, Clone, PartialEq)]
pub enum QSchedule<S> {
    /// `q_m = β` (Levin's family L).
    Constant(S),
    /// `q_m = β + m − 1` (Weniger's factorial family S).
    FactorialShift(S),
    /// `q_m = ξ − m + 1` (family M).
    ReverseShift(S),
    /// `q_m = β + (m − 1)/α` (family C, between S at α = 1 and L as α → ∞).
    Interpolating { alpha: S, beta: S },
    /// `q_m = m²`.
    Square,
    /// User supplied `q_1, ..., q_K`.
    Explicit(Vec<S>),
    /// `q_m + offset` for an underlying schedule.
    Shifted { base: Box<QSchedule<S>>, offset: S },
}

impl<S: Scalar> QSchedule<S> {
    /// `q_m` for `m ≥ 1`; formula schedules also accept `m = 0`.
    pub fn q(&self, m: usize) -> Result<S> {
        let mi = S::from_i64(m as i64);
        Ok(match self {
            QSchedule::Constant(beta) => beta.clone(),
            QSchedule::FactorialShift(beta) => beta.clone() + mi - S::one(),
            QSchedule::ReverseShift(xi) => xi.clone() - mi + S::one(),
            QSchedule::Interpolating { alpha, beta } => {
                beta.clone() + (mi - S::one()).checked_div(alpha)?
            }
            QSchedule::Square => mi.clone() * mi,
            QSchedule::Explicit(list) => match m.checked_sub(1).and_then(|i| list.get(i)) {
                Some(v) => v.clone(),
                None => {
                    return Err(Error::InvalidParameter(format!(
                        "explicit schedule defines q_1..q_{} but q_{m} was requested",
                        list.len()
                    )))
                }
            },
            QSchedule::Shifted { base, offset } => base.q(m)? + offset.clone(),
        })
    }

    /// The `q_0` used when none is given: the formula at `m = 0`, or the
    /// first entry of an explicit list.
    pub fn default_q0(&self) -> Result<S> {
        match self {
            QSchedule::Explicit(list) => list.first().cloned().ok_or_else(|| {
                Error::InvalidParameter("explicit schedule is empty".to_string())
            }),
            QSchedule::Shifted { base, offset } => Ok(base.default_q0()? + offset.clone()),
            _ => self.q(0),
        }
    }

    /// `q_1` of the schedule, the default `q_0` of the u estimate.
    pub fn first(&self) -> Result<S> {
        self.q(1)
    }

    pub fn shifted(&self, offset: S) -> Self {
        QSchedule::Shifted { base: Box::new(self.clone()), offset }
    }

    /// Positivity requirements on the named parameters.
    pub fn validate_parameters(&self) -> Result<()> {
        let positive = |v: &S, name: &str| {
            if v.is_positive() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")))
            }
        };
        match self {
            QSchedule::Constant(beta) | QSchedule::FactorialShift(beta) => positive(beta, "beta"),
            QSchedule::ReverseShift(xi) => positive(xi, "xi"),
            QSchedule::Interpolating { alpha, beta } => {
                positive(alpha, "alpha")?;
                positive(beta, "beta")
            }
            QSchedule::Square | QSchedule::Shifted { .. } => Ok(()),
            QSchedule::Explicit(list) if list.is_empty() => {
                Err(Error::InvalidParameter("explicit schedule is empty".to_string()))
            }
            QSchedule::Explicit(_) => Ok(()),
        }
    }

    /// Checks every divisor `n + k + q_m` (1 ≤ m ≤ k−1) used by the table
    /// entries `(k, n)` with `first ≤ n` and `n − first + k < count`.
    ///
    /// These are the normalization factors of the explicit sums and the
    /// divisors of the recursion; vanishing weight factors in numerators
    /// are harmless and not rejected.
    pub fn check_window(&self, k_max: usize, first: i64, count: usize) -> Result<()> {
        let qs: Vec<S> = (1..k_max.max(1)).map(|m| self.q(m)).collect::<Result<_>>()?;
        for k in 2..=k_max {
            for i in 0..count.saturating_sub(k) {
                let n = first + i as i64;
                let nk = S::from_i64(n + k as i64);
                for (idx, qm) in qs.iter().take(k - 1).enumerate() {
                    if (nk.clone() + qm.clone()).is_zero() {
                        return Err(Error::SingularSchedule { k, n, m: idx + 1 });
                    }
                }
            }
        }
        Ok(())
    }

    /// Compact textual form, e.g. `const:1`, `m^2`, `list:1,4,9`.
    pub fn describe(&self) -> String {
        match self {
            QSchedule::Constant(b) => format!("const:{b}"),
            QSchedule::FactorialShift(b) => format!("shift:{b}"),
            QSchedule::ReverseShift(x) => format!("reverse:{x}"),
            QSchedule::Interpolating { alpha, beta } => format!("interp:{alpha},{beta}"),
            QSchedule::Square => "m^2".to_string(),
            QSchedule::Explicit(list) => {
                let parts: Vec<String> = list.iter().map(|v| v.to_string()).collect();
                format!("list:{}", parts.join(","))
            }
            QSchedule::Shifted { base, offset } => format!("{}+{offset}", base.describe()),
        }
    }

    /// Parses the textual forms produced by [`QSchedule::describe`].
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "m^2" || t == "square" {
            return Ok(QSchedule::Square);
        }
        let (kind, args) = t
            .split_once(':')
            .ok_or_else(|| Error::InvalidParameter(format!("unrecognized schedule {text:?}")))?;
        let values: Vec<S> = args
            .split(',')
            .map(S::parse_literal)
            .collect::<Result<_>>()?;
        let one = |values: Vec<S>| -> Result<S> {
            match <[S; 1]>::try_from(values) {
                Ok([v]) => Ok(v),
                Err(_) => Err(Error::InvalidParameter(format!("{kind} takes one parameter"))),
            }
        };
        match kind {
            "const" => Ok(QSchedule::Constant(one(values)?)),
            "shift" => Ok(QSchedule::FactorialShift(one(values)?)),
            "reverse" => Ok(QSchedule::ReverseShift(one(values)?)),
            "interp" => match <[S; 2]>::try_from(values) {
                Ok([alpha, beta]) => Ok(QSchedule::Interpolating { alpha, beta }),
                Err(_) => Err(Error::InvalidParameter("interp takes alpha,beta".to_string())),
            },
            "list" => Ok(QSchedule::Explicit(values)),
            _ => Err(Error::InvalidParameter(format!("unrecognized schedule {text:?}"))),
        }
    }
}
