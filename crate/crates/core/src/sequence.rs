//! Input sequences of partial sums with optional explicit terms.

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ZeroPolicy};

/// Elements `s_n` for `n = start, start+1, ...`, optionally with terms
/// `a_n = s_n − s_{n−1}`.
///
/// When terms are absent, `a_n` is recovered by differencing; at `n = 0`
/// the convention `s_{−1} = 0` gives `a_0 = s_0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sequence<S> {
    start: usize,
    values: Vec<S>,
    terms: Option<Vec<S>>,
}

impl<S: Scalar> Sequence<S> {
    pub fn from_partial_sums(start: usize, values: Vec<S>) -> Self {
        Sequence { start, values, terms: None }
    }

    /// Accumulates terms into partial sums `s_n = Σ_{j=start}^{n} a_j`.
    pub fn from_terms(start: usize, terms: Vec<S>) -> Self {
        let mut acc = S::zero();
        let values = terms
            .iter()
            .map(|a| {
                acc = acc.clone() + a.clone();
                acc.clone()
            })
            .collect();
        Sequence { start, values, terms: Some(terms) }
    }

    /// Partial sums together with their terms; consistency is checked for
    /// every stored `n > start`.
    pub fn with_terms(start: usize, values: Vec<S>, terms: Vec<S>) -> Result<Self> {
        if values.len() != terms.len() {
            return Err(Error::InvalidParameter(format!(
                "{} values but {} terms",
                values.len(),
                terms.len()
            )));
        }
        let policy = ZeroPolicy { relative: 1e4 };
        for i in 1..values.len() {
            let diff = values[i].clone() - values[i - 1].clone() - terms[i].clone();
            let scale = values[i].magnitude() + values[i - 1].magnitude() + terms[i].magnitude();
            if !diff.is_negligible(scale, &policy) {
                return Err(Error::InvalidParameter(format!(
                    "term a_{} disagrees with s_{} - s_{}",
                    start + i,
                    start + i,
                    start + i - 1
                )));
            }
        }
        Ok(Sequence { start, values, terms: Some(terms) })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of the last stored element.
    pub fn last_index(&self) -> Option<usize> {
        (self.start + self.values.len()).checked_sub(1)
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn value(&self, n: usize) -> Result<S> {
        n.checked_sub(self.start)
            .and_then(|i| self.values.get(i))
            .cloned()
            .ok_or(Error::InsufficientData { needed: n + 1, available: self.start + self.len() })
    }

    /// The term `a_n`.
    pub fn term(&self, n: usize) -> Result<S> {
        let missing = Error::InsufficientData { needed: n + 1, available: self.start + self.len() };
        let i = n.checked_sub(self.start).ok_or(missing.clone())?;
        if i >= self.values.len() {
            return Err(missing);
        }
        if let Some(t) = &self.terms {
            return Ok(t[i].clone());
        }
        if i > 0 {
            Ok(self.values[i].clone() - self.values[i - 1].clone())
        } else if n == 0 {
            Ok(self.values[0].clone())
        } else {
            Err(Error::InsufficientData { needed: self.len() + 1, available: self.len() })
        }
    }

    /// `s_{n−1}`, with `s_{−1} = 0`.
    pub fn previous_value(&self, n: usize) -> Result<S> {
        Ok(self.value(n)? - self.term(n)?)
    }

    /// Adds `lambda` to every element. Stored terms stay unchanged except
    /// `a_0`, which absorbs the shift when the sequence starts at zero.
    pub fn shifted_by(&self, lambda: &S) -> Self {
        let values = self.values.iter().map(|v| v.clone() + lambda.clone()).collect();
        let terms = self.terms.as_ref().map(|t| {
            let mut t = t.clone();
            if let (0, Some(first)) = (self.start, t.first_mut()) {
                *first = first.clone() + lambda.clone();
            }
            t
        });
        Sequence { start: self.start, values, terms }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Sequence<T> {
        Sequence {
            start: self.start,
            values: self.values.iter().map(&f).collect(),
            terms: self.terms.as_ref().map(|t| t.iter().map(&f).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d).unwrap()
    }

    #[test]
    fn terms_from_differences() {
        let s = Sequence::from_partial_sums(0, vec![q(1, 1), q(1, 2), q(5, 6)]);
        assert_eq!(s.term(0).unwrap(), q(1, 1));
        assert_eq!(s.term(2).unwrap(), q(1, 3));
        assert_eq!(s.previous_value(0).unwrap(), q(0, 1));
        assert!(s.term(3).is_err());
    }

    #[test]
    fn late_start_needs_explicit_first_term() {
        let s = Sequence::from_partial_sums(1, vec![q(1, 1), q(1, 2)]);
        assert!(s.term(1).is_err());
        assert_eq!(s.term(2).unwrap(), q(-1, 2));
    }

    #[test]
    fn accumulated_terms_round_trip() {
        let s = Sequence::from_terms(0, vec![q(1, 1), q(-1, 2), q(1, 3)]);
        assert_eq!(s.values(), &[q(1, 1), q(1, 2), q(5, 6)]);
        assert!(Sequence::with_terms(0, s.values().to_vec(), vec![q(1, 1), q(-1, 2), q(1, 3)]).is_ok());
        assert!(Sequence::with_terms(0, s.values().to_vec(), vec![q(1, 1), q(1, 2), q(1, 3)]).is_err());
    }
}
