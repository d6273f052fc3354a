//! Verification and classification of holomorphic equivariant embeddings of
//! the `SU(1,1)` disc into the `SU(p,p)` symmetric space.
//!
//! The layers, bottom up:
//!
//! - [`exactmat`]: exact Gaussian-rational matrices, characteristic
//!   polynomials, integer spectra and spectral projectors.
//! - [`hermsym`]: `su(1,1)`, `su(p,p)`, the Cartan decomposition and the
//!   complex structure on `p`.
//! - [`embedcheck`]: checks a candidate `F: su(1,1) → su(p,p)` against the
//!   holomorphic-equivariance conditions and decides total geodesy.
//! - [`ladder`]: enumerates weight data, derives the per-weight Gram
//!   equations of `H = [X, Y]` and decides them with replayable certificates.
//! - [`oracle`]: floating-point residual minimisation that corroborates the
//!   exact verdicts.
//! - [`cli`]: the `geodesy` command-line tool.

pub mod cli;
pub mod embedcheck;
pub mod error;
pub mod exactmat;
pub mod hermsym;
pub mod ladder;
pub mod oracle;
pub mod sample;

pub use error::{Error, Result};
