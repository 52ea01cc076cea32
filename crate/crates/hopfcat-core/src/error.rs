//! Crate-wide error type.
//!
//! The split that matters downstream: a *malformed input* (wrong shapes, bad
//! group table, composite modulus, mismatched fields) is an `Err`, while a
//! *failed mathematical property* on well-formed input is reported through
//! [`crate::report::AxiomReport`] or a boolean verdict, never an `Err`.

use thiserror::Error;

use crate::report::AxiomReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not prime (or is out of range)")]
    InvalidPrime(u64),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("not a group homomorphism: {0}")]
    InvalidHomomorphism(String),

    #[error("structure axioms failed for {subject}: {}", report.summary())]
    AxiomsFailed { subject: String, report: AxiomReport },

    #[error("subspace is not closed under the ambient Hopf structure: {0}")]
    NotClosed(String),

    #[error("subalgebra is not normal: {0}")]
    NotNormal(String),

    #[error("reflexive graph is not a cat¹ structure (hopf kernels of the two legs do not commute)")]
    NotCat1,

    #[error("diagram does not commute: {0}")]
    Diagram(String),

    #[error("morphism is not surjective: {0}")]
    NotSurjective(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
