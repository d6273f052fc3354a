//! The two Lie algebras `su(1,1) ⊂ su(p,p)` in block form.
//!
//! Elements of `su(p,p)` are `2p x 2p` matrices `(A Z; Z* B)` with `A, B`
//! skew-Hermitian and `tr A + tr B = 0`. The maximal compact part `k` is the
//! block-diagonal piece and `p` the off-diagonal piece; the Cartan
//! involution is `θ(X) = JXJ` with `J = diag(I_p, -I_p)`.

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exactmat::{GaussMatrix, GaussRational};

/// Signature `(p, q)` of the ambient form. Only `q = p` is supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SuPQShape {
    p: usize,
    q: usize,
}

impl SuPQShape {
    pub fn new(p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidShape("p must be at least 1".into()));
        }
        Ok(Self { p, q: p })
    }

    pub fn with_signature(p: usize, q: usize) -> Result<Self> {
        if p != q {
            return Err(Error::InvalidShape(format!("only q = p is supported, got ({p}, {q})")));
        }
        Self::new(p)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }
}

/// `X = k_part + p_part` with `k_part` block-diagonal and `p_part` off-diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanSplit {
    pub k_part: GaussMatrix,
    pub p_part: GaussMatrix,
}

/// The fixed bases `u, v, w` of `su(1,1)` and `x, y, h` of `sl(2, C)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Su11Basis {
    pub u: GaussMatrix,
    pub v: GaussMatrix,
    pub w: GaussMatrix,
    pub x: GaussMatrix,
    pub y: GaussMatrix,
    pub h: GaussMatrix,
}

impl Default for Su11Basis {
    fn default() -> Self {
        Self::new()
    }
}

impl Su11Basis {
    /// Builds the constants and asserts the full bracket table.
    pub fn new() -> Self {
        let u = GaussMatrix::from_int_pairs(&[&[(0, 0), (1, 0)], &[(1, 0), (0, 0)]]);
        let v = GaussMatrix::from_int_pairs(&[&[(0, 0), (0, 1)], &[(0, -1), (0, 0)]]);
        let w = GaussMatrix::from_int_pairs(&[&[(0, 1), (0, 0)], &[(0, 0), (0, -1)]]);
        let half = BigRational::new(1.into(), 2.into());
        let x = u.sub(&v.mul_i()).unwrap().scale_rational(&half);
        let y = u.add(&v.mul_i()).unwrap().scale_rational(&half);
        let h = w.mul_i().neg();
        let basis = Self { u, v, w, x, y, h };
        assert!(basis.bracket_table_holds(), "su(1,1) bracket table violated");
        basis
    }

    /// `[w,u] = 2v, [w,v] = -2u, [u,v] = -2w; [h,x] = 2x, [h,y] = -2y, [x,y] = h`.
    pub fn bracket_table_holds(&self) -> bool {
        let br = |a: &GaussMatrix, b: &GaussMatrix| a.bracket(b).expect("2x2 bracket");
        br(&self.w, &self.u) == self.v.scale_int(2)
            && br(&self.w, &self.v) == self.u.scale_int(-2)
            && br(&self.u, &self.v) == self.w.scale_int(-2)
            && br(&self.h, &self.x) == self.x.scale_int(2)
            && br(&self.h, &self.y) == self.y.scale_int(-2)
            && br(&self.x, &self.y) == self.h
    }
}

fn check_dim(a: &GaussMatrix, shape: SuPQShape) -> Result<()> {
    let n = shape.dim();
    if a.shape() != (n, n) {
        return Err(Error::DimensionMismatch { op: "su(p,p)", left: a.shape(), right: (n, n) });
    }
    Ok(())
}

fn is_skew_hermitian(a: &GaussMatrix) -> bool {
    a.conj_transpose() == a.neg()
}

/// Membership in `su(p,p)`, exactly.
pub fn in_su_pp(a: &GaussMatrix, shape: SuPQShape) -> Result<bool> {
    check_dim(a, shape)?;
    let p = shape.p();
    let top = a.block(0, 0, p, p);
    let bottom = a.block(p, p, p, p);
    let upper = a.block(0, p, p, p);
    let lower = a.block(p, 0, p, p);
    Ok(is_skew_hermitian(&top)
        && is_skew_hermitian(&bottom)
        && lower == upper.conj_transpose()
        && (top.trace()? + bottom.trace()?).is_zero())
}

/// `θ(X) = JXJ`, which negates the off-diagonal blocks.
pub fn cartan_involution(a: &GaussMatrix, shape: SuPQShape) -> Result<GaussMatrix> {
    check_dim(a, shape)?;
    let p = shape.p();
    let mut out = a.clone();
    out.set_block(0, p, &a.block(0, p, p, p).neg());
    out.set_block(p, 0, &a.block(p, 0, p, p).neg());
    Ok(out)
}

/// Splits an element of `su(p,p)` into its `k` and `p` components.
pub fn cartan_decompose(a: &GaussMatrix, shape: SuPQShape) -> Result<CartanSplit> {
    if !in_su_pp(a, shape)? {
        return Err(Error::NotInSuPP { what: "cartan_decompose input".into() });
    }
    let p = shape.p();
    let mut k_part = a.clone();
    k_part.set_block(0, p, &GaussMatrix::zeros(p, p));
    k_part.set_block(p, 0, &GaussMatrix::zeros(p, p));
    let p_part = a.sub(&k_part)?;
    Ok(CartanSplit { k_part, p_part })
}

/// Whether `a` has the form `(0 Z; Z* 0)`.
pub fn is_in_p(a: &GaussMatrix, shape: SuPQShape) -> Result<bool> {
    check_dim(a, shape)?;
    let p = shape.p();
    Ok(a.block(0, 0, p, p).is_zero()
        && a.block(p, p, p, p).is_zero()
        && a.block(p, 0, p, p) == a.block(0, p, p, p).conj_transpose())
}

/// Whether `a` is block-diagonal.
pub fn is_in_k(a: &GaussMatrix, shape: SuPQShape) -> Result<bool> {
    check_dim(a, shape)?;
    let p = shape.p();
    Ok(a.block(0, p, p, p).is_zero() && a.block(p, 0, p, p).is_zero())
}

/// The complex structure `ι` on `p`: `(0 Z; Z* 0) ↦ (0 iZ; -iZ* 0)`.
pub fn complex_structure(p_elem: &GaussMatrix, shape: SuPQShape) -> Result<GaussMatrix> {
    if !is_in_p(p_elem, shape)? {
        return Err(Error::NotInP);
    }
    let p = shape.p();
    let z = p_elem.block(0, p, p, p).mul_i();
    let mut out = GaussMatrix::zeros(shape.dim(), shape.dim());
    out.set_block(0, p, &z);
    out.set_block(p, 0, &z.conj_transpose());
    Ok(out)
}

/// Coordinates of an element `(0 z; z̄ 0)` of `p_H` in the basis `{u, v}`.
fn p_h_coords(m: &GaussMatrix) -> Option<[BigRational; 2]> {
    let z = m.get(0, 1);
    let ok = m.get(0, 0).is_zero() && m.get(1, 1).is_zero() && *m.get(1, 0) == z.conj();
    ok.then(|| [z.re.clone(), z.im.clone()])
}

/// Matrix of `ad(w)` on `p_H = span{u, v}`, columns are images of `u` and `v`.
pub fn ad_w_on_p_h() -> [[BigRational; 2]; 2] {
    let b = Su11Basis::new();
    let cu = p_h_coords(&b.w.bracket(&b.u).expect("2x2")).expect("[w,u] lies in p_H");
    let cv = p_h_coords(&b.w.bracket(&b.v).expect("2x2")).expect("[w,v] lies in p_H");
    [[cu[0].clone(), cv[0].clone()], [cu[1].clone(), cv[1].clone()]]
}

/// `k_H` acts irreducibly on `p_H`: `ad(w)` has no real eigenvector there.
pub fn check_kh_irreducible() -> bool {
    let m = ad_w_on_p_h();
    let tr = &m[0][0] + &m[1][1];
    let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    let disc = &tr * &tr - BigRational::from_integer(4.into()) * det;
    disc.is_negative()
}

/// `diag(iI_p, -iI_p)`, a central direction of `k`.
pub fn central_k_element(shape: SuPQShape) -> GaussMatrix {
    let p = shape.p();
    let mut vals = vec![GaussRational::i(); p];
    vals.extend(std::iter::repeat_n(GaussRational::from_ints(0, -1), p));
    GaussMatrix::diag(&vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::SuPPSampler;
    use num_traits::Zero;

    fn shape(p: usize) -> SuPQShape {
        SuPQShape::new(p).unwrap()
    }

    #[test]
    fn shape_rules() {
        assert!(SuPQShape::new(0).is_err());
        assert!(SuPQShape::with_signature(2, 3).is_err());
        assert_eq!(SuPQShape::with_signature(3, 3).unwrap().dim(), 6);
    }

    #[test]
    fn basis_constants() {
        let b = Su11Basis::new();
        assert_eq!(b.x, GaussMatrix::from_real_ints(&[&[0, 1], &[0, 0]]));
        assert_eq!(b.y, GaussMatrix::from_real_ints(&[&[0, 0], &[1, 0]]));
        assert_eq!(b.h, GaussMatrix::diag_ints(&[1, -1]));
        assert!(b.bracket_table_holds());
    }

    #[test]
    fn membership_examples() {
        let s = shape(1);
        assert!(in_su_pp(&GaussMatrix::zeros(2, 2), s).unwrap());
        let a = GaussMatrix::from_int_pairs(&[&[(0, 1), (3, -2)], &[(3, 2), (0, -1)]]);
        assert!(in_su_pp(&a, s).unwrap());
        assert!(!in_su_pp(&GaussMatrix::diag_ints(&[1, -1]), s).unwrap());
        // skew-Hermitian blocks but nonzero trace
        assert!(!in_su_pp(&GaussMatrix::from_int_pairs(&[&[(0, 1), (0, 0)], &[(0, 0), (0, 1)]]), s).unwrap());
        assert!(in_su_pp(&GaussMatrix::zeros(3, 3), s).is_err());
    }

    #[test]
    fn decompose_examples() {
        let b = Su11Basis::new();
        let s = shape(1);
        let split = cartan_decompose(&b.w, s).unwrap();
        assert_eq!(split.k_part, b.w);
        assert!(split.p_part.is_zero());
        let split = cartan_decompose(&b.u, s).unwrap();
        assert!(split.k_part.is_zero());
        assert_eq!(split.p_part, b.u);
        assert!(cartan_decompose(&GaussMatrix::diag_ints(&[1, -1]), s).is_err());
    }

    #[test]
    fn iota_examples() {
        let b = Su11Basis::new();
        let s = shape(1);
        assert_eq!(complex_structure(&b.u, s).unwrap(), b.v);
        assert!(complex_structure(&GaussMatrix::zeros(2, 2), s).unwrap().is_zero());
        assert!(matches!(complex_structure(&b.w, s), Err(Error::NotInP)));
        let mut sampler = SuPPSampler::new(3, 11);
        for _ in 0..20 {
            let a = sampler.sample_p();
            let twice = complex_structure(&complex_structure(&a, sampler.shape()).unwrap(), sampler.shape()).unwrap();
            assert_eq!(twice, a.neg());
        }
    }

    #[test]
    fn ad_w_matrix_is_rotation_generator() {
        let m = ad_w_on_p_h();
        let int = |k: i64| BigRational::from_integer(k.into());
        assert_eq!(m, [[int(0), int(-2)], [int(2), int(0)]]);
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        assert_eq!(det, int(4));
        assert!((&m[0][0] + &m[1][1]).is_zero());
        assert!(check_kh_irreducible());
    }

    #[test]
    fn iota_commutes_with_central_direction() {
        let mut sampler = SuPPSampler::new(2, 5);
        let s = sampler.shape();
        let c = central_k_element(s);
        for _ in 0..20 {
            let a = sampler.sample_p();
            let lhs = complex_structure(&c.bracket(&a).unwrap(), s).unwrap();
            let rhs = c.bracket(&complex_structure(&a, s).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
