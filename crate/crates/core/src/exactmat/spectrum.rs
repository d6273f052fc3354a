use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{GaussMatrix, GaussRational, Poly};
use crate::error::{Error, Result};

/// Integer eigenvalue → algebraic multiplicity.
pub type Spectrum = BTreeMap<i64, usize>;

macro_rules! poly_entry {
    ($m:expr, $i:expr, $j:expr, $n:expr) => {
        $m[$i * $n + $j]
    };
}

/// `tI - a` as a row-major matrix of polynomials.
fn shifted(a: &GaussMatrix) -> Vec<Poly> {
    let n = a.rows();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let neg = -a.get(i, j);
            out.push(if i == j {
                Poly::new(vec![neg, GaussRational::one()])
            } else {
                Poly::constant(neg)
            });
        }
    }
    out
}

fn cofactor_det(m: &[Poly], n: usize) -> Poly {
    match n {
        0 => Poly::constant(GaussRational::one()),
        1 => m[0].clone(),
        2 => m[0].mul(&m[3]).sub(&m[1].mul(&m[2])),
        _ => {
            let mut det = Poly::zero();
            for col in 0..n {
                let head = &m[col];
                if head.is_zero() {
                    continue;
                }
                let mut minor = Vec::with_capacity((n - 1) * (n - 1));
                for i in 1..n {
                    for j in (0..n).filter(|&j| j != col) {
                        minor.push(m[i * n + j].clone());
                    }
                }
                let term = head.mul(&cofactor_det(&minor, n - 1));
                det = if col % 2 == 0 { det.add(&term) } else { det.sub(&term) };
            }
            det
        }
    }
}

/// `det(tI - a)` by Laplace expansion along the first row.
pub fn char_poly_cofactor(a: &GaussMatrix) -> Result<Poly> {
    let n = a.require_square("char_poly")?;
    Ok(cofactor_det(&shifted(a), n))
}

/// `det(tI - a)` by Bareiss fraction-free elimination over `ℚ(i)[t]`.
///
/// Every pivot is a leading principal minor of `tI - a`, which is monic of
/// degree `k + 1`, so no pivoting is needed and each division is exact.
pub fn char_poly_bareiss(a: &GaussMatrix) -> Result<Poly> {
    let n = a.require_square("char_poly")?;
    if n == 0 {
        return Ok(Poly::constant(GaussRational::one()));
    }
    let mut m = shifted(a);
    let mut prev = Poly::constant(GaussRational::one());
    for k in 0..n - 1 {
        let pivot = poly_entry!(m, k, k, n).clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = pivot
                    .mul(&poly_entry!(m, i, j, n))
                    .sub(&poly_entry!(m, i, k, n).mul(&poly_entry!(m, k, j, n)));
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                poly_entry!(m, i, j, n) = q;
            }
        }
        prev = pivot;
    }
    Ok(poly_entry!(m, n - 1, n - 1, n).clone())
}

/// Exact characteristic polynomial `det(tI - a)`: cofactor expansion up to
/// size 4, fraction-free elimination above.
pub fn char_poly(a: &GaussMatrix) -> Result<Poly> {
    if a.rows() <= 4 {
        char_poly_cofactor(a)
    } else {
        char_poly_bareiss(a)
    }
}

fn big_to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64().ok_or_else(|| Error::NonIntegerSpectrum(format!("eigenvalue {v} out of range")))
}

/// Synthetic division of an integer polynomial (low degree first) by `t - r`.
fn divide_root(coeffs: &[BigInt], r: &BigInt) -> Option<Vec<BigInt>> {
    let n = coeffs.len() - 1;
    let mut q = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for k in (0..=n).rev() {
        let cur = &coeffs[k] + &carry * r;
        if k == 0 {
            return cur.is_zero().then_some(q);
        }
        q[k - 1] = cur.clone();
        carry = cur;
    }
    unreachable!()
}

/// Splits `char_poly(a)` into integer linear factors.
///
/// Candidate roots are the integer divisors of the (zero-root-stripped)
/// constant coefficient whose square is at most `Σ rᵢ²`, which Newton's
/// identities give from the two leading coefficients.
pub fn integer_spectrum(a: &GaussMatrix) -> Result<Spectrum> {
    let cp = char_poly(a)?;
    let mut coeffs = cp
        .coeffs()
        .iter()
        .map(|c| {
            c.as_integer()
                .ok_or_else(|| Error::NonIntegerSpectrum(format!("coefficient {c} of {cp} is not a rational integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut spectrum = Spectrum::new();

    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        spectrum.insert(0, zeros);
        coeffs.drain(..zeros);
    }
    if coeffs.len() <= 1 {
        return Ok(spectrum);
    }

    let n = coeffs.len() - 1;
    let c1 = &coeffs[n - 1];
    let c2 = if n >= 2 { coeffs[n - 2].clone() } else { BigInt::zero() };
    let sum_sq: BigInt = c1 * c1 - BigInt::from(2) * c2;
    if sum_sq.is_negative() {
        return Err(Error::NonIntegerSpectrum(format!("{cp} has non-real roots")));
    }
    let bound = sum_sq.sqrt();

    let mut r = BigInt::one();
    while r <= bound && coeffs.len() > 1 {
        for cand in [r.clone(), -r.clone()] {
            while coeffs.len() > 1 && coeffs[0].is_multiple_of(&cand) {
                match divide_root(&coeffs, &cand) {
                    Some(q) => {
                        *spectrum.entry(big_to_i64(&cand)?).or_insert(0) += 1;
                        coeffs = q;
                    }
                    None => break,
                }
            }
        }
        r += 1;
    }
    if coeffs.len() > 1 {
        return Err(Error::NonIntegerSpectrum(format!("{cp} does not split over the integers")));
    }
    Ok(spectrum)
}

/// `Π_μ (a - μI)` over the distinct eigenvalues vanishes.
pub fn is_semisimple(a: &GaussMatrix, spectrum: &Spectrum) -> Result<bool> {
    let n = a.require_square("is_semisimple")?;
    let mut prod = GaussMatrix::identity(n);
    for &mu in spectrum.keys() {
        let shifted = a.sub(&GaussMatrix::identity(n).scale_int(mu))?;
        prod = prod.mul(&shifted)?;
    }
    Ok(prod.is_zero())
}

/// Spectral projector `P_λ = Π_{μ≠λ} (a - μI)/(λ - μ)`.
pub fn eigenprojection(a: &GaussMatrix, lambda: i64, spectrum: &Spectrum) -> Result<GaussMatrix> {
    let n = a.require_square("eigenprojection")?;
    if !spectrum.contains_key(&lambda) {
        return Err(Error::UnknownEigenvalue(lambda));
    }
    if !is_semisimple(a, spectrum)? {
        return Err(Error::NotSemisimple);
    }
    let mut p = GaussMatrix::identity(n);
    for &mu in spectrum.keys().filter(|&&mu| mu != lambda) {
        let factor = a
            .sub(&GaussMatrix::identity(n).scale_int(mu))?
            .scale(&GaussRational::from_fractions(1, lambda - mu, 0, 1));
        p = p.mul(&factor)?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermsym::Su11Basis;

    fn spec(pairs: &[(i64, usize)]) -> Spectrum {
        pairs.iter().copied().collect()
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_poly(&GaussMatrix::diag_ints(&[1, -1])).unwrap(), Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(char_poly(&GaussMatrix::zeros(3, 3)).unwrap(), Poly::from_ints(&[0, 0, 0, 1]));
        assert_eq!(char_poly(&Su11Basis::new().u).unwrap(), Poly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn bareiss_matches_cofactor_on_fixed_matrix() {
        let a = GaussMatrix::from_int_pairs(&[
            &[(1, 0), (2, 1), (0, 0), (0, -1), (3, 0)],
            &[(0, 1), (-1, 0), (1, 1), (0, 0), (0, 0)],
            &[(2, 0), (0, 0), (0, 2), (1, 0), (-1, -1)],
            &[(0, 0), (1, -1), (0, 0), (4, 0), (2, 0)],
            &[(1, 1), (0, 0), (3, 0), (0, 1), (0, 0)],
        ]);
        assert_eq!(char_poly_bareiss(&a).unwrap(), char_poly_cofactor(&a).unwrap());
    }

    #[test]
    fn integer_spectrum_examples() {
        assert_eq!(integer_spectrum(&GaussMatrix::diag_ints(&[1, -1])).unwrap(), spec(&[(1, 1), (-1, 1)]));
        assert_eq!(
            integer_spectrum(&GaussMatrix::diag_ints(&[1, 1, -1, -1])).unwrap(),
            spec(&[(1, 2), (-1, 2)])
        );
        // companion of t^2 - 2
        let sqrt2 = GaussMatrix::from_real_ints(&[&[0, 2], &[1, 0]]);
        assert!(matches!(integer_spectrum(&sqrt2), Err(Error::NonIntegerSpectrum(_))));
        // rotation generator: roots ±i
        let rot = GaussMatrix::from_real_ints(&[&[0, -1], &[1, 0]]);
        assert!(matches!(integer_spectrum(&rot), Err(Error::NonIntegerSpectrum(_))));
        // half-integers are rejected by the coefficient test
        let half = GaussMatrix::diag(&[GaussRational::from_fractions(1, 2, 0, 1), GaussRational::zero()]);
        assert!(integer_spectrum(&half).is_err());
        let big = GaussMatrix::diag_ints(&[15, 13, 0, 0, -13, -15, 7, 7]);
        assert_eq!(
            integer_spectrum(&big).unwrap(),
            spec(&[(-15, 1), (-13, 1), (0, 2), (7, 2), (13, 1), (15, 1)])
        );
    }

    #[test]
    fn eigenprojection_examples() {
        let d = GaussMatrix::diag_ints(&[1, -1]);
        let s = integer_spectrum(&d).unwrap();
        assert_eq!(eigenprojection(&d, 1, &s).unwrap(), GaussMatrix::diag_ints(&[1, 0]));
        let id = GaussMatrix::identity(3);
        let s = integer_spectrum(&id).unwrap();
        assert_eq!(eigenprojection(&id, 1, &s).unwrap(), id);

        let a = GaussMatrix::diag_ints(&[1, 1, -1]);
        let s = integer_spectrum(&a).unwrap();
        let p1 = eigenprojection(&a, 1, &s).unwrap();
        let pm = eigenprojection(&a, -1, &s).unwrap();
        assert!(p1.mul(&pm).unwrap().is_zero());
        assert!(matches!(eigenprojection(&a, 5, &s), Err(Error::UnknownEigenvalue(5))));
    }

    #[test]
    fn jordan_block_is_not_semisimple() {
        let j = GaussMatrix::from_real_ints(&[&[1, 1], &[0, 1]]);
        let s = integer_spectrum(&j).unwrap();
        assert_eq!(s, spec(&[(1, 2)]));
        assert!(matches!(eigenprojection(&j, 1, &s), Err(Error::NotSemisimple)));
    }
}
