//! Polynomials, truncated power series and finite differences.

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ZeroPolicy};

/// Dense polynomial; `coeffs[i]` multiplies `z^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<S> {
    pub coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        Polynomial { coeffs }
    }

    /// Highest index with a non-negligible coefficient, `None` for the zero polynomial.
    pub fn degree(&self, policy: &ZeroPolicy) -> Option<usize> {
        let scale = self.coeffs.iter().map(Scalar::magnitude).fold(0.0, f64::max);
        self.coeffs
            .iter()
            .rposition(|c| !c.is_negligible(scale, policy))
    }

    pub fn eval(&self, z: &S) -> S {
        poly_eval(&self.coeffs, z)
    }

    /// Coefficient of `z^i`, zero beyond storage.
    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn scale(&self, c: &S) -> Self {
        Polynomial::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }
}

/// Coefficients `gamma[ν]` of a formal power series `Σ γ_ν z^ν`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeriesCoefficients<S> {
    pub gamma: Vec<S>,
}

impl<S: Scalar> PowerSeriesCoefficients<S> {
    pub fn new(gamma: Vec<S>) -> Self {
        PowerSeriesCoefficients { gamma }
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    /// The partial sum `f_n(z) = Σ_{ν≤n} γ_ν z^ν` as a polynomial.
    pub fn partial_sum(&self, n: usize) -> Result<Polynomial<S>> {
        if n >= self.gamma.len() {
            return Err(Error::InsufficientData { needed: n + 1, available: self.gamma.len() });
        }
        Ok(Polynomial::new(self.gamma[..=n].to_vec()))
    }

    /// Values `f_0(z), ..., f_N(z)`.
    pub fn partial_sums_at(&self, z: &S) -> Vec<S> {
        let mut out = Vec::with_capacity(self.gamma.len());
        let mut acc = S::zero();
        let mut zp = S::one();
        for g in &self.gamma {
            acc = acc + g.clone() * zp.clone();
            out.push(acc.clone());
            zp = zp * z.clone();
        }
        out
    }
}

/// Horner evaluation of `Σ p_i z^i`.
pub fn poly_eval<S: Scalar>(p: &[S], z: &S) -> S {
    p.iter()
        .rev()
        .fold(S::zero(), |acc, c| acc * z.clone() + c.clone())
}

/// First `order + 1` coefficients of the formal quotient `num / den`.
pub fn series_divide<S: Scalar>(num: &[S], den: &[S], order: usize) -> Result<Vec<S>> {
    let d0 = match den.first() {
        Some(d) if !d.is_zero() => d.clone(),
        _ => return Err(Error::ZeroConstantTerm),
    };
    let mut out: Vec<S> = Vec::with_capacity(order + 1);
    for i in 0..=order {
        let mut acc = num.get(i).cloned().unwrap_or_else(S::zero);
        for j in 1..=i.min(den.len().saturating_sub(1)) {
            acc = acc - den[j].clone() * out[i - j].clone();
        }
        out.push(acc.checked_div(&d0)?);
    }
    Ok(out)
}

/// Truncated product of two series through `z^order`.
pub fn series_multiply<S: Scalar>(a: &[S], b: &[S], order: usize) -> Vec<S> {
    (0..=order)
        .map(|i| {
            (0..=i).fold(S::zero(), |acc, j| match (a.get(j), b.get(i - j)) {
                (Some(x), Some(y)) => acc + x.clone() * y.clone(),
                _ => acc,
            })
        })
        .collect()
}

/// `Δ^k f(n) = (−1)^k Σ_j (−1)^j C(k,j) f(n+j)`, with `values[i] = f(i)`.
pub fn finite_difference<S: Scalar>(values: &[S], k: usize, n: usize) -> Result<S> {
    if n + k >= values.len() {
        return Err(Error::InsufficientData { needed: n + k + 1, available: values.len() });
    }
    let binom = binomial_row(k)?;
    let mut acc = S::zero();
    for (j, c) in binom.iter().enumerate() {
        let term = S::from_u128(*c) * values[n + j].clone();
        // sign (−1)^(k−j)
        if (k - j).is_multiple_of(2) {
            acc = acc + term;
        } else {
            acc = acc - term;
        }
    }
    Ok(acc)
}

/// Row `C(k, 0..=k)` of Pascal's triangle by the multiplicative recurrence.
pub fn binomial_row(k: usize) -> Result<Vec<u128>> {
    let mut row = Vec::with_capacity(k + 1);
    let mut c: u128 = 1;
    row.push(c);
    for j in 0..k {
        c = c
            .checked_mul((k - j) as u128)
            .ok_or(Error::OrderTooLarge(k))?
            / (j as u128 + 1);
        row.push(c);
    }
    Ok(row)
}

/// Rising factorial `(x)_j = x (x+1) ... (x+j−1)`.
pub fn pochhammer<S: Scalar>(x: &S, j: usize) -> S {
    (0..j).fold(S::one(), |acc, i| acc * (x.clone() + S::from_i64(i as i64)))
}

pub fn factorial<S: Scalar>(n: usize) -> S {
    (1..=n).fold(S::one(), |acc, i| acc * S::from_i64(i as i64))
}
