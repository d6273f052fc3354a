use super::system::{BlockSystem, UnknownKind};
use super::weights::{Side, WeightData};
use crate::embedcheck::EmbeddingCandidate;
use crate::error::{Error, Result};
use crate::exactmat::{GaussMatrix, GaussRational};
use crate::hermsym::SuPQShape;

/// Coordinates of `V = V₊ ⊕ V₋` adapted to a weight datum: each side lists
/// its weight spaces by descending weight, `V₊` first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightLayout {
    plus: Vec<(i64, usize, usize)>,
    minus: Vec<(i64, usize, usize)>,
    p_dim: usize,
    m_dim: usize,
}

impl WeightLayout {
    pub fn new(wd: &WeightData) -> Self {
        let place = |side: Side, base: usize| {
            let mut off = base;
            wd.side(side)
                .iter()
                .rev()
                .map(|(&w, &m)| {
                    let entry = (w, off, m);
                    off += m;
                    entry
                })
                .collect::<Vec<_>>()
        };
        let p_dim = wd.dim(Side::Plus);
        Self { plus: place(Side::Plus, 0), minus: place(Side::Minus, p_dim), p_dim, m_dim: wd.dim(Side::Minus) }
    }

    pub fn dim(&self) -> usize {
        self.p_dim + self.m_dim
    }

    pub fn plus_dim(&self) -> usize {
        self.p_dim
    }

    /// Offset of `V_side(weight)` in the full basis.
    pub fn offset(&self, side: Side, weight: i64) -> Option<usize> {
        let list = match side {
            Side::Plus => &self.plus,
            Side::Minus => &self.minus,
        };
        list.iter().find(|(w, _, _)| *w == weight).map(|&(_, off, _)| off)
    }

    /// Diagonal of `H` in this basis.
    pub fn weights(&self) -> Vec<i64> {
        self.plus.iter().chain(&self.minus).flat_map(|&(w, _, m)| std::iter::repeat_n(w, m)).collect()
    }

    /// `(row offset, col offset)` of an unknown inside `X`.
    pub fn block_position(&self, kind: UnknownKind, source: i64, target: i64) -> Option<(usize, usize)> {
        Some((self.offset(kind.target_side(), target)?, self.offset(kind.source_side(), source)?))
    }
}

/// Assembles `X = (E Z; 0 F)`, `Y = (-E* 0; Z* -F*)` and `H` from one exact
/// matrix per unknown of `sys`.
pub fn assemble_xyh(sys: &BlockSystem, values: &[GaussMatrix]) -> Result<(GaussMatrix, GaussMatrix, GaussMatrix)> {
    if values.len() != sys.unknowns.len() {
        return Err(Error::ShapeMismatch(format!("{} values for {} unknowns", values.len(), sys.unknowns.len())));
    }
    let layout = WeightLayout::new(&sys.data);
    let n = layout.dim();
    let mut x = GaussMatrix::zeros(n, n);
    let mut y = GaussMatrix::zeros(n, n);
    for (u, m) in sys.unknowns.iter().zip(values) {
        if m.shape() != (u.rows, u.cols) {
            return Err(Error::ShapeMismatch(format!("{} has shape {:?}", u.label(), m.shape())));
        }
        let (r, c) = layout
            .block_position(u.kind, u.source_weight, u.target_weight)
            .ok_or_else(|| Error::Inconsistent(format!("{} has no place in the layout", u.label())))?;
        x.set_block(r, c, m);
        let adj = m.conj_transpose();
        let adj = if u.kind == UnknownKind::Z { adj } else { adj.neg() };
        y.set_block(c, r, &adj);
    }
    let h = GaussMatrix::diag(&layout.weights().into_iter().map(GaussRational::from_int).collect::<Vec<_>>());
    Ok((x, y, h))
}

/// Lifts an exact solution of the block system to the candidate
/// `F(u) = X + Y`, `F(v) = i(X - Y)`, `F(w) = iH` in `su(p,p)`.
pub fn lift_to_candidate(sys: &BlockSystem, values: &[GaussMatrix]) -> Result<EmbeddingCandidate> {
    let p = sys.data.dim(Side::Plus);
    if sys.data.dim(Side::Minus) != p {
        return Err(Error::InvalidShape("V₊ and V₋ must have equal dimension".into()));
    }
    let (x, y, h) = assemble_xyh(sys, values)?;
    EmbeddingCandidate::from_sl2_triple(SuPQShape::new(p)?, &x, &y, &h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedcheck::check_conditions;
    use crate::ladder::{derive_constraints, eliminate, witness_matrices};

    #[test]
    fn layout_offsets() {
        let wd = WeightData::from_pairs(&[(1, 2), (0, 1)], &[(0, 1), (-1, 2)]).unwrap();
        let l = WeightLayout::new(&wd);
        assert_eq!(l.weights(), vec![1, 1, 0, 0, -1, -1]);
        assert_eq!(l.offset(Side::Plus, 0), Some(2));
        assert_eq!(l.offset(Side::Minus, -1), Some(4));
        assert_eq!(l.offset(Side::Minus, 1), None);
    }

    #[test]
    fn standard_witness_lifts_to_diagonal_candidate() {
        let wd = WeightData::from_pairs(&[(1, 2)], &[(-1, 2)]).unwrap();
        let sys = derive_constraints(&wd);
        let v = eliminate(&sys);
        let values = witness_matrices(&sys, v.witness.as_ref().unwrap()).unwrap();
        let c = lift_to_candidate(&sys, &values).unwrap();
        assert_eq!(c, EmbeddingCandidate::diagonal(2).unwrap());
        let r = check_conditions(&c).unwrap();
        assert!(r.accepted() && r.totally_geodesic);
    }

    #[test]
    fn assembled_triple_satisfies_bracket() {
        let wd = WeightData::from_pairs(&[(1, 1), (0, 1)], &[(0, 1), (-1, 1)]).unwrap();
        let sys = derive_constraints(&wd);
        let v = eliminate(&sys);
        let values = witness_matrices(&sys, v.witness.as_ref().unwrap()).unwrap();
        let (x, y, h) = assemble_xyh(&sys, &values).unwrap();
        assert_eq!(x.bracket(&y).unwrap(), h);
        assert_eq!(h.bracket(&x).unwrap(), x.scale_int(2));
        assert_eq!(h.bracket(&y).unwrap(), y.scale_int(-2));
    }
}
