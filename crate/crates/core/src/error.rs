use alloc::string::String;

use thiserror::Error;

/// Errors raised by the algebra engine and the constructions built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("algebra mismatch: expected block sizes {expected}, found {found}")]
    AlgebraMismatch { expected: String, found: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("subalgebra closure did not stabilise within {rounds} rounds")]
    IterationCap { rounds: usize },

    #[error("subspace is not a *-subalgebra (closure residual {residual:e})")]
    NotAnAlgebra { residual: f64 },

    #[error("could not separate spectrum after {attempts} attempts (seed {seed})")]
    DegenerateSpectrum { attempts: usize, seed: u64 },

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("bialgebra axiom fails: {axiom} (residual {residual:e})")]
    BialgebraAxiom { axiom: &'static str, residual: f64 },

    #[error("partial coaction axiom fails: {axiom} (residual {residual:e})")]
    CoactionAxiom { axiom: &'static str, residual: f64 },

    #[error("partial action invalid: {0}")]
    PartialAction(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("bialgebra has no counit")]
    NoCounit,

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
