//! Exact-arithmetic calculator for the general Lie conformal algebra `gc_N`.
//!
//! The crate provides the matrix-symbol presentation of `gc_N` (polynomials in
//! ∂ and x), its lambda-bracket and lambda-action, Virasoro elements and the
//! quasi-primary basis `Q_n`, the reduced-space product structure with its
//! `d` coefficients, the bridge to Jacobi polynomials, and verifiers for the
//! classified normalized subalgebra families. Everything is computed over
//! arbitrary-precision rationals, with symbolic parameters (σ, α, β) carried
//! as polynomial variables so that identities are checked exactly.

pub mod dcoeff;
pub mod gc;
pub mod jacobi;
pub mod matq;
pub mod reduced;
pub mod ring;
pub mod subalg;
pub mod virasoro;

use thiserror::Error as ThisError;

/// Crate-wide error type.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("matrix size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("series constant term must be 1, found {0}")]
    ConstantTermNotOne(String),
    #[error("product index k = {k} out of range (must be <= {max})")]
    ProductRange { k: usize, max: usize },
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("not a Virasoro element: {0}")]
    NotVirasoro(String),
    #[error("invalid antiinvolution: {0}")]
    BadAntiinvolution(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
