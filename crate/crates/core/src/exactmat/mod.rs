//! Exact dense linear algebra over the Gaussian rationals `ℚ(i)`.
//!
//! Nothing in here rounds: brackets, adjoints, characteristic polynomials
//! and spectral projectors are all computed over arbitrary-precision
//! rationals.

mod matrix;
mod poly;
mod scalar;
mod spectrum;

pub use matrix::GaussMatrix;
pub use poly::Poly;
pub use scalar::GaussRational;
pub use spectrum::{
    char_poly, char_poly_bareiss, char_poly_cofactor, eigenprojection, integer_spectrum, is_semisimple, Spectrum,
};

/// Commutator `[a, b] = ab - ba`.
pub fn bracket(a: &GaussMatrix, b: &GaussMatrix) -> crate::Result<GaussMatrix> {
    a.bracket(b)
}

/// Conjugate transpose.
pub fn conj_transpose(a: &GaussMatrix) -> GaussMatrix {
    a.conj_transpose()
}
