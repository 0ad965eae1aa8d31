use thiserror::Error;

use crate::coefficients::CoeffDomain;

/// Every failure the library can report.
///
/// Outcomes that are part of normal operation (an identity failing, a
/// scalar without an inverse, an inconsistent linear system) are not errors;
/// they are returned as reports or `Option`s.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain mismatch: {left} vs {right}")]
    DomainMismatch { left: CoeffDomain, right: CoeffDomain },

    #[error("invalid coefficient domain: {0}")]
    InvalidDomain(String),

    #[error("operation requires a field, got {0}")]
    NonFieldDomain(CoeffDomain),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("subspaces live in different ambient spaces ({left} vs {right})")]
    AmbientMismatch { left: usize, right: usize },

    #[error("enumeration needs {needed} items, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("2 is not invertible in {0}")]
    TwoNotInvertible(CoeffDomain),

    #[error("target is not 2-torsion free over {0}")]
    TwoTorsionTarget(CoeffDomain),

    #[error("domain {0} has 2-torsion; the anti-pre-morphism classification needs a 2-torsion free module")]
    TwoTorsionDomain(CoeffDomain),

    #[error("map is not a pre-morphism (fails at basis pair {0:?})")]
    NotAPreMorphism((usize, usize)),

    #[error("subspace is not a pre-subalgebra")]
    NotPreSubalgebra,

    #[error("subspace is not a pre-ideal")]
    NotPreIdeal,

    #[error("subspace is not an ideal")]
    NotIdeal,

    #[error("subspace is not a {0} as required by the chosen product")]
    KindMismatch(String),

    #[error("matrix is not an idempotent endomorphism of kind {0}")]
    NotIdempotentOfKind(String),

    #[error("invalid decomposition pair: {0}")]
    InvalidPair(String),

    #[error("doubling parameters violate the required constraint: {0}")]
    ParamConstraintViolated(String),

    #[error("graded elements have different base data: {0}")]
    BaseMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency fault: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
