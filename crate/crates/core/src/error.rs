use thiserror::Error;

/// Errors produced by the exact-arithmetic routines in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lattice mismatch: expected [{expected}], found [{found}]")]
    LatticeMismatch { expected: String, found: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("quotient has torsion (invariant factors {factors:?})")]
    Torsion { factors: Vec<String> },

    #[error("q-exponent {value} is not an integer ({context})")]
    NonIntegralExponent { value: String, context: String },

    #[error("cocharacter {0:?} is not minuscule")]
    NotMinuscule(Vec<i64>),

    #[error("vector {0} is not dominant")]
    NotDominant(String),

    #[error("cocharacter {0:?} is not central in its centralizer Levi")]
    NotCentral(Vec<i64>),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("size bound of {bound} exceeded")]
    BoundExceeded { bound: usize },

    #[error("linear system has no solution: {0}")]
    NoSolution(String),

    #[error("linear system is underdetermined: {0}")]
    Underdetermined(String),

    #[error("not a vertex lattice at p = {p}: elementary divisor {divisor}")]
    NotVertexLattice { p: u64, divisor: String },

    #[error("enumeration of {candidates} candidates exceeds the guard of {guard}")]
    GuardExceeded { candidates: u128, guard: u128 },

    #[error("twist of order {0} is not supported (only order <= 2)")]
    HigherOrderTwist(usize),

    #[error("weight multiset is not stable under the twist")]
    NotSigmaStable,

    #[error("basis direction `{0}` has no symbol")]
    UnmappedSymbol(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
