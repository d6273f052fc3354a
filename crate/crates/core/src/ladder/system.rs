use std::fmt;

use serde::Serialize;

use super::weights::{Sector, Side, WeightData};

/// Which block of `X = (E Z; 0 F)` an unknown lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum UnknownKind {
    /// `V₊(λ) → V₊(λ+2)`
    E,
    /// `V₋(μ) → V₋(μ+2)`
    F,
    /// `V₋(μ) → V₊(μ+2)`
    Z,
}

impl UnknownKind {
    pub fn source_side(self) -> Side {
        match self {
            UnknownKind::E => Side::Plus,
            UnknownKind::F | UnknownKind::Z => Side::Minus,
        }
    }

    pub fn target_side(self) -> Side {
        match self {
            UnknownKind::E | UnknownKind::Z => Side::Plus,
            UnknownKind::F => Side::Minus,
        }
    }
}

/// A weight-raising block; as a matrix it is `rows x cols` = `target x source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BlockUnknown {
    pub kind: UnknownKind,
    pub source_weight: i64,
    pub target_weight: i64,
    pub rows: usize,
    pub cols: usize,
}

impl BlockUnknown {
    pub fn label(&self) -> String {
        format!("{:?}({}->{})", self.kind, self.source_weight, self.target_weight)
    }

    pub fn sector(&self) -> Sector {
        Sector::of(self.source_weight)
    }
}

impl fmt::Display for BlockUnknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `AA*` (on the target space) or `A*A` (on the source space).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GramForm {
    Outer,
    Inner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GramTerm {
    pub unknown: usize,
    pub form: GramForm,
    /// `+1` or `-1`.
    pub sign: i8,
}

/// `Σ sign · Gram(unknown) = rhs · I_dim` on one weight space `V_side(weight)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DiagonalEquation {
    pub side: Side,
    pub weight: i64,
    pub dim: usize,
    pub terms: Vec<GramTerm>,
    pub rhs: i64,
}

impl DiagonalEquation {
    pub fn sector(&self) -> Sector {
        Sector::of(self.weight)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Factor {
    pub unknown: usize,
    pub adjoint: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ProductTerm {
    pub sign: i8,
    pub left: Factor,
    pub right: Factor,
}

/// The `V₋(μ) → V₊(μ)` component of `E*Z - ZF* = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OffDiagonalEquation {
    pub weight: i64,
    pub rows: usize,
    pub cols: usize,
    pub terms: Vec<ProductTerm>,
}

/// The block equations of `H = [X, Y]` for one weight datum.
///
/// With `X = (E Z; 0 F)` and `Y = (-E* 0; Z* -F*)`,
///
/// ```text
/// [X, Y] = ( -[E,E*] + ZZ*     E*Z - ZF*      )
///          ( FZ* - Z*E         -[F,F*] - Z*Z  )
/// ```
///
/// and projecting onto weight spaces gives one diagonal equation per weight
/// on each side plus the off-diagonal components. The lower-left block is
/// minus the adjoint of the upper-right one and adds no constraints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSystem {
    pub data: WeightData,
    pub unknowns: Vec<BlockUnknown>,
    pub diagonal: Vec<DiagonalEquation>,
    pub off_diagonal: Vec<OffDiagonalEquation>,
}

impl BlockSystem {
    pub fn find_unknown(&self, kind: UnknownKind, source_weight: i64) -> Option<usize> {
        self.unknowns.iter().position(|u| u.kind == kind && u.source_weight == source_weight)
    }

    pub fn equation(&self, side: Side, weight: i64) -> Option<&DiagonalEquation> {
        self.diagonal.iter().find(|e| e.side == side && e.weight == weight)
    }

    pub fn equation_index(&self, side: Side, weight: i64) -> Option<usize> {
        self.diagonal.iter().position(|e| e.side == side && e.weight == weight)
    }

    pub fn is_trivial(&self) -> bool {
        self.unknowns.is_empty() && self.diagonal.iter().all(|e| e.rhs == 0)
    }

    /// Human-readable form of one diagonal equation.
    pub fn render(&self, eq: &DiagonalEquation) -> String {
        let mut lhs = String::new();
        for t in &eq.terms {
            let u = &self.unknowns[t.unknown];
            let name = u.label();
            let gram = match t.form {
                GramForm::Outer => format!("{name}{name}*"),
                GramForm::Inner => format!("{name}*{name}"),
            };
            if lhs.is_empty() {
                lhs = if t.sign < 0 { format!("-{gram}") } else { gram };
            } else {
                lhs.push_str(if t.sign < 0 { " - " } else { " + " });
                lhs.push_str(&gram);
            }
        }
        if lhs.is_empty() {
            lhs.push('0');
        }
        format!("V{}({}): {lhs} = {}·I_{}", side_symbol(eq.side), eq.weight, eq.rhs, eq.dim)
    }
}

pub(crate) fn side_symbol(side: Side) -> &'static str {
    match side {
        Side::Plus => "+",
        Side::Minus => "-",
    }
}

/// Instantiates every weight-raising block and emits the per-weight equations.
///
/// Diagonal equations come `V₊` by descending weight, then `V₋` by
/// descending weight; this order drives the elimination scan.
pub fn derive_constraints(wd: &WeightData) -> BlockSystem {
    let mut unknowns = Vec::new();
    let add = |unknowns: &mut Vec<BlockUnknown>, kind: UnknownKind, src: i64| {
        let rows = wd.mult(kind.target_side(), src + 2);
        let cols = wd.mult(kind.source_side(), src);
        if rows > 0 && cols > 0 {
            unknowns.push(BlockUnknown { kind, source_weight: src, target_weight: src + 2, rows, cols });
        }
    };
    for &w in wd.plus().keys().rev() {
        add(&mut unknowns, UnknownKind::E, w);
    }
    for &w in wd.minus().keys().rev() {
        add(&mut unknowns, UnknownKind::F, w);
    }
    for &w in wd.minus().keys().rev() {
        add(&mut unknowns, UnknownKind::Z, w);
    }
    let find = |kind: UnknownKind, src: i64| {
        unknowns.iter().position(|u: &BlockUnknown| u.kind == kind && u.source_weight == src)
    };
    let term = |idx: Option<usize>, form: GramForm, sign: i8| idx.map(|unknown| GramTerm { unknown, form, sign });

    let mut diagonal = Vec::new();
    for (&lambda, &dim) in wd.plus().iter().rev() {
        // -e_in e_in* + e_out* e_out + z_in z_in* = λ I
        let terms = [
            term(find(UnknownKind::E, lambda - 2), GramForm::Outer, -1),
            term(find(UnknownKind::E, lambda), GramForm::Inner, 1),
            term(find(UnknownKind::Z, lambda - 2), GramForm::Outer, 1),
        ];
        diagonal.push(DiagonalEquation {
            side: Side::Plus,
            weight: lambda,
            dim,
            terms: terms.into_iter().flatten().collect(),
            rhs: lambda,
        });
    }
    for (&mu, &dim) in wd.minus().iter().rev() {
        // -f_in f_in* + f_out* f_out - z_out* z_out = μ I
        let terms = [
            term(find(UnknownKind::F, mu - 2), GramForm::Outer, -1),
            term(find(UnknownKind::F, mu), GramForm::Inner, 1),
            term(find(UnknownKind::Z, mu), GramForm::Inner, -1),
        ];
        diagonal.push(DiagonalEquation {
            side: Side::Minus,
            weight: mu,
            dim,
            terms: terms.into_iter().flatten().collect(),
            rhs: mu,
        });
    }

    let mut off_diagonal = Vec::new();
    for (&mu, &cols) in wd.minus().iter().rev() {
        let rows = wd.mult(Side::Plus, mu);
        if rows == 0 {
            continue;
        }
        let mut terms = Vec::new();
        // e* z : V₋(μ) → V₊(μ+2) → V₊(μ)
        if let (Some(e), Some(z)) = (find(UnknownKind::E, mu), find(UnknownKind::Z, mu)) {
            terms.push(ProductTerm {
                sign: 1,
                left: Factor { unknown: e, adjoint: true },
                right: Factor { unknown: z, adjoint: false },
            });
        }
        // -z f* : V₋(μ) → V₋(μ-2) → V₊(μ)
        if let (Some(z), Some(f)) = (find(UnknownKind::Z, mu - 2), find(UnknownKind::F, mu - 2)) {
            terms.push(ProductTerm {
                sign: -1,
                left: Factor { unknown: z, adjoint: false },
                right: Factor { unknown: f, adjoint: true },
            });
        }
        if !terms.is_empty() {
            off_diagonal.push(OffDiagonalEquation { weight: mu, rows, cols, terms });
        }
    }

    BlockSystem { data: wd.clone(), unknowns, diagonal, off_diagonal }
}
