//! Linear-algebraic toolkit for finite-dimensional nonassociative algebras:
//! identity checks, morphism classes, substructures, quotients, idempotents,
//! the doubling construction and truncated free magma algebras.

pub mod algebra;
pub mod coefficients;
pub mod error;
pub mod format;
pub mod idempotents;
pub mod identities;
pub mod linear;
pub mod morphisms;
pub mod samples;
pub mod substructures;
pub mod superalgebra;
pub mod tensor;

pub use algebra::{Algebra, ProductKind};
pub use coefficients::{CoeffDomain, DomainKind, Scalar, TwoProfile};
pub use error::{Error, Result};
pub use linear::{Matrix, Subspace, Vector, DEFAULT_BUDGET};
