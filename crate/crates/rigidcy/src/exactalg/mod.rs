//! Arithmetic substrate: exact scalars and exact linear algebra.
//!
//! The scalar types are [`Rat`] (arbitrary-precision rationals), [`CycloNum`]
//! (elements of cyclotomic fields Q(ζ_n) in power-basis representation, kept at
//! their minimal conductor) and [`ParamElem`] (the rational function field Q(a,b)
//! in two parameters). All three implement the [`Field`] trait, and the generic
//! containers [`Poly`] and [`Mat`] work over any of them.

mod cyclo;
mod field;
mod jordan;
mod matrix;
mod param;
mod poly;
mod rat;

pub use cyclo::{cyclotomic_poly, CycloNum, RootOfUnity};
pub use field::Field;
pub use jordan::{jordan_block, jordan_form, jordan_matrix, JordanBlocks};
pub use matrix::Mat;
pub use param::{MPoly, ParamElem};
pub use poly::{rational_roots, roots_from_candidates, Poly};
pub use rat::{binom, divisors, euler_phi, factorize, is_integer, qq, rat, to_i64, vp, Rat};

use thiserror::Error;

/// Errors of the arithmetic layer.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgError {
    /// A characteristic polynomial had an irreducible factor that is not
    /// cyclotomic, so the eigenvalues are not all roots of unity.
    #[error("characteristic polynomial has a non-cyclotomic factor: {0}")]
    NonCyclotomicFactor(String),
    /// A matrix that was required to be quasi-unipotent is not.
    #[error("matrix is not quasi-unipotent")]
    NonQuasiUnipotent,
    /// Substituting parameter values hit a pole of a rational function.
    #[error("specialization hits a pole: {0}")]
    SpecializationPole(String),
    /// An input was degenerate for the requested operation (zero vector where a
    /// nonzero one is needed, singular matrix passed as a monodromy, …).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}
