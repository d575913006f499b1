use thiserror::Error;

use crate::surface::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("symplectic pairing is rank deficient: achieved rank {achieved}, expected {expected}")]
    RankDeficient { achieved: usize, expected: usize },

    #[error("invalid surface: {0}")]
    InvalidSurface(ValidationReport),

    #[error("chain is not a relative cycle")]
    NotRelativeCycle,

    #[error("homology rank formula gives {formula} but the rank computation gives {oracle}")]
    FormulaMismatch { formula: i64, oracle: i64 },

    #[error("degenerate dual: {0}")]
    DegenerateDual(String),

    #[error("the code encodes no logical qubit")]
    NoLogicals,

    #[error("distance search needs 2^{needed} cover sheets but the budget allows 2^{budget}; use the brute-force method or raise the budget")]
    BudgetExceeded { needed: usize, budget: usize },

    #[error("no non-trivial relative cycle of weight at most {w_max}")]
    Exhausted { w_max: usize },

    #[error("out of domain: {0}")]
    OutOfDomain(String),

    #[error("unsupported topology: {0}")]
    UnsupportedTopology(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("generated lattice is faulty: {0}")]
    FaultyGeneration(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
