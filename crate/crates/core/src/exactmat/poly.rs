use std::fmt;

use super::{GaussMatrix, GaussRational};
use crate::error::Result;

/// Univariate polynomial in `t` with Gaussian rational coefficients,
/// stored lowest degree first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<GaussRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<GaussRational>) -> Self {
        while coeffs.last().is_some_and(GaussRational::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussRational::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::new(vec![c])
    }

    /// `t - root`.
    pub fn linear(root: &GaussRational) -> Self {
        Self::new(vec![-root, GaussRational::one()])
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&GaussRational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = GaussRational::zero();
        let c = (0..n)
            .map(|k| self.coeffs.get(k).unwrap_or(&zero) + other.coeffs.get(k).unwrap_or(&zero))
            .collect();
        Self::new(c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = GaussRational::zero();
        let c = (0..n)
            .map(|k| self.coeffs.get(k).unwrap_or(&zero) - other.coeffs.get(k).unwrap_or(&zero))
            .collect();
        Self::new(c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![GaussRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += &(a * b);
            }
        }
        Self::new(c)
    }

    pub fn scale(&self, k: &GaussRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Long division, returning `(quotient, remainder)`. Panics when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d_deg = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.leading().and_then(GaussRational::inv).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let Some(n_deg) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if n_deg < d_deg {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![GaussRational::zero(); n_deg - d_deg + 1];
        for k in (0..=n_deg - d_deg).rev() {
            let q = &rem[k + d_deg] * &lead_inv;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let prod = &q * dc;
                rem[k + j] -= &prod;
            }
            quot[k] = q;
        }
        rem.truncate(d_deg);
        (Self::new(quot), Self::new(rem))
    }

    pub fn eval(&self, t: &GaussRational) -> GaussRational {
        self.coeffs.iter().rev().fold(GaussRational::zero(), |acc, c| &(&acc * t) + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, a: &GaussMatrix) -> Result<GaussMatrix> {
        let n = a.require_square("eval_matrix")?;
        let mut acc = GaussMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a)?.add(&GaussMatrix::identity(n).scale(c))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let unit = *c == GaussRational::one();
            match (k, unit) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "({c})t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "({c})t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn div_rem_exact_and_inexact() {
        // (t^2 - 1) / (t - 1) = t + 1
        let p = Poly::from_ints(&[-1, 0, 1]);
        let (q, r) = p.div_rem(&Poly::from_ints(&[-1, 1]));
        assert_eq!(q, Poly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        // (t^2 - 2) / (t - 1) leaves -1
        let (_, r) = Poly::from_ints(&[-2, 0, 1]).div_rem(&Poly::from_ints(&[-1, 1]));
        assert_eq!(r, Poly::from_ints(&[-1]));
    }

    #[test]
    fn eval_and_display() {
        let p = Poly::from_ints(&[-1, 0, 1]);
        assert_eq!(p.eval(&GaussRational::from_int(3)), GaussRational::from_int(8));
        assert_eq!(p.to_string(), "t^2 + -1");
        assert_eq!(Poly::new(vec![GaussRational::zero(); 3]).degree(), None);
    }
}
