//! Checks a candidate homomorphism `F: su(1,1) → su(p,p)`, given by the
//! images of `u, v, w`, against the holomorphic-equivariance conditions:
//!
//! 1. `F(k_H) ⊂ k`, i.e. `F(w)` is block-diagonal;
//! 2. `F(X) = F_c(X) + F_p(X)` on `p_H`, the Cartan split of the images;
//! 3. `F_p(ι_H X) = ι_G F_p(X)`, with `ι_H u = v` and `ι_H v = -u`.
//!
//! The embedding is totally geodesic exactly when `F_c` vanishes on `p_H`.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmat::{integer_spectrum, GaussMatrix, Spectrum};
use crate::hermsym::{cartan_decompose, complex_structure, in_su_pp, is_in_k, SuPQShape};
use crate::ladder::WeightData;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingCandidate {
    shape: SuPQShape,
    pub f_u: GaussMatrix,
    pub f_v: GaussMatrix,
    pub f_w: GaussMatrix,
}

impl EmbeddingCandidate {
    /// Fails unless all three images lie in `su(p,p)`.
    pub fn new(shape: SuPQShape, f_u: GaussMatrix, f_v: GaussMatrix, f_w: GaussMatrix) -> Result<Self> {
        for (name, m) in [("F(u)", &f_u), ("F(v)", &f_v), ("F(w)", &f_w)] {
            if !in_su_pp(m, shape)? {
                return Err(Error::NotInSuPP { what: name.into() });
            }
        }
        Ok(Self { shape, f_u, f_v, f_w })
    }

    pub fn shape(&self) -> SuPQShape {
        self.shape
    }

    /// The inclusion `su(1,1) ⊂ su(1,1)`.
    pub fn identity() -> Self {
        Self::standard_plus_trivial(1, 1).expect("p = 1 identity")
    }

    /// `m` copies of the standard representation plus `2(p - m)` trivial ones:
    /// `F(u) = (0 P; P 0)`, `F(v) = (0 iP; -iP 0)`, `F(w) = diag(iP, -iP)` with
    /// `P = I_m ⊕ 0`.
    pub fn standard_plus_trivial(p: usize, m: usize) -> Result<Self> {
        let shape = SuPQShape::new(p)?;
        if m > p {
            return Err(Error::InvalidShape(format!("{m} standard summands do not fit in p = {p}")));
        }
        let proj = GaussMatrix::diag_ints(&(0..p).map(|k| i64::from(k < m)).collect::<Vec<_>>());
        let mut f_u = GaussMatrix::zeros(2 * p, 2 * p);
        f_u.set_block(0, p, &proj);
        f_u.set_block(p, 0, &proj);
        let mut f_v = GaussMatrix::zeros(2 * p, 2 * p);
        f_v.set_block(0, p, &proj.mul_i());
        f_v.set_block(p, 0, &proj.mul_i().neg());
        let mut f_w = GaussMatrix::zeros(2 * p, 2 * p);
        f_w.set_block(0, 0, &proj.mul_i());
        f_w.set_block(p, p, &proj.mul_i().neg());
        Self::new(shape, f_u, f_v, f_w)
    }

    /// `p` copies of the standard representation.
    pub fn diagonal(p: usize) -> Result<Self> {
        Self::standard_plus_trivial(p, p)
    }

    /// Recovers `F` from the images of `x, y, h`: `F(u) = X + Y`,
    /// `F(v) = i(X - Y)`, `F(w) = iH`.
    pub fn from_sl2_triple(shape: SuPQShape, x: &GaussMatrix, y: &GaussMatrix, h: &GaussMatrix) -> Result<Self> {
        let f_u = x.add(y)?;
        let f_v = x.sub(y)?.mul_i();
        let f_w = h.mul_i();
        Self::new(shape, f_u, f_v, f_w)
    }

    /// `X = (F(u) - iF(v))/2`, `Y = (F(u) + iF(v))/2`, `H = -iF(w)`.
    pub fn sl2_triple(&self) -> (GaussMatrix, GaussMatrix, GaussMatrix) {
        let half = BigRational::new(1.into(), 2.into());
        let iv = self.f_v.mul_i();
        let x = self.f_u.sub(&iv).expect("same shape").scale_rational(&half);
        let y = self.f_u.add(&iv).expect("same shape").scale_rational(&half);
        (x, y, self.operator_h())
    }

    /// `H = i⁻¹ F(w)`.
    pub fn operator_h(&self) -> GaussMatrix {
        self.f_w.mul_i().neg()
    }
}

/// Names of the basis bracket relations that fail for `c`.
pub fn bracket_violations(c: &EmbeddingCandidate) -> Vec<&'static str> {
    let br = |a: &GaussMatrix, b: &GaussMatrix| a.bracket(b).expect("candidate images share a shape");
    let mut out = Vec::new();
    if br(&c.f_w, &c.f_u) != c.f_v.scale_int(2) {
        out.push("[w,u]=2v");
    }
    if br(&c.f_w, &c.f_v) != c.f_u.scale_int(-2) {
        out.push("[w,v]=-2u");
    }
    if br(&c.f_u, &c.f_v) != c.f_w.scale_int(-2) {
        out.push("[u,v]=-2w");
    }
    out
}

pub fn check_homomorphism(c: &EmbeddingCandidate) -> bool {
    bracket_violations(c).is_empty()
}

/// Rank over ℝ of matrices viewed as real vectors `(re, im)` per entry.
pub fn real_rank(mats: &[&GaussMatrix]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = mats
        .iter()
        .map(|m| m.entries().iter().flat_map(|z| [z.re.clone(), z.im.clone()]).collect())
        .collect();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let src = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = &row[col] / &src[col];
                for k in col..width {
                    row[k] -= &f * &src[k];
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub is_homomorphism: bool,
    pub bracket_violations: Vec<&'static str>,
    pub satisfies_c1: bool,
    pub satisfies_c3: bool,
    pub injective: bool,
    pub fc_u: GaussMatrix,
    pub fc_v: GaussMatrix,
    pub fp_u: GaussMatrix,
    pub fp_v: GaussMatrix,
    pub totally_geodesic: bool,
    pub h_spectrum: std::result::Result<Spectrum, String>,
}

impl CheckReport {
    /// Homomorphism, conditions (1) and (3), and injectivity all hold.
    pub fn accepted(&self) -> bool {
        self.is_homomorphism && self.satisfies_c1 && self.satisfies_c3 && self.injective
    }
}

/// Runs every check on `c`. Condition flags stay `false` when the bracket
/// table already fails.
pub fn check_conditions(c: &EmbeddingCandidate) -> Result<CheckReport> {
    let shape = c.shape;
    let violations = bracket_violations(c);
    let is_homomorphism = violations.is_empty();
    let split_u = cartan_decompose(&c.f_u, shape)?;
    let split_v = cartan_decompose(&c.f_v, shape)?;
    let h_spectrum = integer_spectrum(&c.operator_h()).map_err(|e| e.to_string());

    let mut report = CheckReport {
        is_homomorphism,
        bracket_violations: violations,
        satisfies_c1: false,
        satisfies_c3: false,
        injective: false,
        fc_u: split_u.k_part,
        fc_v: split_v.k_part,
        fp_u: split_u.p_part,
        fp_v: split_v.p_part,
        totally_geodesic: false,
        h_spectrum,
    };
    if !is_homomorphism {
        return Ok(report);
    }

    report.satisfies_c1 = is_in_k(&c.f_w, shape)?;
    let iota_u = complex_structure(&report.fp_u, shape)?;
    let iota_v = complex_structure(&report.fp_v, shape)?;
    report.satisfies_c3 = report.fp_v == iota_u && report.fp_u == iota_v.neg();
    report.injective = real_rank(&[&c.f_u, &c.f_v, &c.f_w]) == 3;
    report.totally_geodesic = report.accepted() && report.fc_u.is_zero() && report.fc_v.is_zero();
    Ok(report)
}

/// `k_H`-equivariance of both components:
/// `[F(w), F_•(u)] = 2F_•(v)` and `[F(w), F_•(v)] = -2F_•(u)`.
pub fn components_equivariant(f_w: &GaussMatrix, report: &CheckReport) -> Result<bool> {
    let pairs = [(&report.fc_u, &report.fc_v), (&report.fp_u, &report.fp_v)];
    for (cu, cv) in pairs {
        if f_w.bracket(cu)? != cv.scale_int(2) || f_w.bracket(cv)? != cu.scale_int(-2) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn equivariance_test(c: &EmbeddingCandidate) -> Result<bool> {
    let report = check_conditions(c)?;
    components_equivariant(&c.f_w, &report)
}

/// Integer weights of `H = -iF(w)` on `V₊` and `V₋` separately. Needs a
/// homomorphism with `F(w) ∈ k`; injectivity is not required.
pub fn h_weight_analysis(c: &EmbeddingCandidate) -> Result<WeightData> {
    let report = check_conditions(c)?;
    if !report.is_homomorphism {
        return Err(Error::NotHomomorphism);
    }
    if !report.satisfies_c1 {
        return Err(Error::Inconsistent("F(w) is not block diagonal".into()));
    }
    let p = c.shape.p();
    let h = c.operator_h();
    let spectrum = |blk: GaussMatrix| {
        integer_spectrum(&blk).map_err(|e| Error::Inconsistent(format!("homomorphism has {e}")))
    };
    let plus = spectrum(h.block(0, 0, p, p))?;
    let minus = spectrum(h.block(p, p, p, p))?;
    WeightData::new(plus, minus)
}

/// `X`'s diagonal blocks vanish exactly when its `k`-part does; used for the
/// converse direction of total geodesy.
pub fn x_y_diagonal_blocks_vanish(c: &EmbeddingCandidate) -> bool {
    let p = c.shape.p();
    let (x, y, _) = c.sl2_triple();
    [&x, &y].iter().all(|m| m.block(0, 0, p, p).is_zero() && m.block(p, p, p, p).is_zero())
}

/// Machine-readable view of a [`CheckReport`].
#[derive(Debug, Clone, Serialize)]
pub struct CheckReportJson {
    pub p: usize,
    pub is_homomorphism: bool,
    pub bracket_violations: Vec<String>,
    pub satisfies_c1: bool,
    pub satisfies_c3: bool,
    pub injective: bool,
    pub accepted: bool,
    pub totally_geodesic: bool,
    pub fc_u_zero: bool,
    pub fc_v_zero: bool,
    pub h_spectrum: Option<Vec<(i64, usize)>>,
    pub h_spectrum_error: Option<String>,
}

impl CheckReportJson {
    pub fn new(p: usize, r: &CheckReport) -> Self {
        let (spec, err) = match &r.h_spectrum {
            Ok(s) => (Some(s.iter().rev().map(|(&k, &v)| (k, v)).collect()), None),
            Err(e) => (None, Some(e.clone())),
        };
        Self {
            p,
            is_homomorphism: r.is_homomorphism,
            bracket_violations: r.bracket_violations.iter().map(|s| s.to_string()).collect(),
            satisfies_c1: r.satisfies_c1,
            satisfies_c3: r.satisfies_c3,
            injective: r.injective,
            accepted: r.accepted(),
            totally_geodesic: r.totally_geodesic,
            fc_u_zero: r.fc_u.is_zero(),
            fc_v_zero: r.fc_v.is_zero(),
            h_spectrum: spec,
            h_spectrum_error: err,
        }
    }
}
