use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },

    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare { op: &'static str, rows: usize, cols: usize },

    #[error("spectrum is not integral: {0}")]
    NonIntegerSpectrum(String),

    #[error("matrix is not semisimple for the given spectrum")]
    NotSemisimple,

    #[error("eigenvalue {0} is not in the supplied spectrum")]
    UnknownEigenvalue(i64),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("{what} is not in su(p,p)")]
    NotInSuPP { what: String },

    #[error("element is not in the p-part (off-diagonal blocks)")]
    NotInP,

    #[error("candidate does not define a Lie algebra homomorphism")]
    NotHomomorphism,

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("{count} weight data left unresolved")]
    UnresolvedRemains { count: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
