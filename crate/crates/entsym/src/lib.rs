//! Exact symbolic and numeric calculus for entropy cocycles.
//!
//! The crate has five parts:
//!
//! - [`exact`]: arbitrary-precision rationals, the dual-number ring k[t]/(t²),
//!   and prime factorization of rationals.
//! - [`symbols`]: formal linear combinations ⟨a,b⟩ and [a], the maps between
//!   them, and the canonical form in ℚ*⊗ℚ used as an exact zero-oracle.
//! - [`entropy`]: floating-point entropy semantics (extended H, Shannon,
//!   joint, conditional, mutual information) and the functional identities.
//! - [`diagram`]: a layered planar diagram calculus with a text DSL, label
//!   propagation, the boundary invariant ȷ, and boundary-wall absorption.
//! - [`deform`]: 5-term dilogarithm symbols over dual numbers and their exact
//!   linearization to the 4-term infinitesimal dilogarithm.

pub mod deform;
pub mod diagram;
pub mod entropy;
pub mod exact;
pub mod symbols;

pub use exact::{DualNumber, PrimeSignature, Rat};
pub use symbols::{BetaExpr, JExpr, TensorCanonical};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A mathematically undefined operation (division by zero, excluded
    /// argument, degenerate symbol).
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed user input (bad distribution, bad table, bad flag value).
    #[error("input error: {0}")]
    Input(String),
    /// DSL syntax error with 1-based location.
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    /// Diagram propagation failure at a given slice.
    #[error("propagation error at slice {slice}: {msg}")]
    Propagation { slice: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
