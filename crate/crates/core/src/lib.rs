//! Partial group actions on finite-dimensional algebras over exact fields,
//! partial skew group rings, enveloping actions and partial representations.

pub mod algebra;
pub mod corpus;
pub mod crossed;
pub mod envelope;
pub mod error;
pub mod field;
pub mod group;
pub mod linalg;
pub mod multiplier;
pub mod paction;
pub mod preps;

pub use algebra::{Algebra, Ideal, StructureTable};
pub use error::{PactError, Result};
pub use field::{Field, Scalar};
pub use group::Group;
pub use linalg::{LinearMap, Subspace, Vector};
