//! Exact linear algebra for isotropic and coisotropic relations between
//! presymplectic and poisson spaces, with normal forms and certificates.

pub mod catalog;
pub mod decompose;
pub mod document;
pub mod duality;
pub mod error;
pub mod invariants;
pub mod matrix;
pub mod relation;
pub mod scalar;
pub mod space;
pub mod subspace;

pub use catalog::{canonical_indecomposable, canonical_sum, random_instance, IndecompType};
pub use decompose::{decompose, is_isomorphic, verify_certificate, Certificate};
pub use document::{Generator, RelationDocument};
pub use error::{Error, Result};
pub use invariants::{compute_invariants, multiplicities, multiplicities_of, InvariantVector, MultiplicityVector};
pub use matrix::Matrix;
pub use relation::LinearRelation;
pub use scalar::Scalar;
pub use space::{BilinearSpace, Flavor};
pub use subspace::Subspace;
