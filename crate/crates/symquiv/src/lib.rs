//! Symmetric quivers of tame type.
//!
//! The crate covers the combinatorics of symmetric quivers whose underlying
//! graph is an affine cycle or an affine `D` tree: classification, Coxeter
//! dynamics and tubes, exact representations with orthogonal and symplectic
//! structure, generic decompositions of symmetric dimension vectors, and
//! semi-invariant generators checked against a brute-force invariant oracle.

pub mod catalog;
pub mod decomposition;
pub mod error;
pub mod io;
pub mod oracle;
pub mod quiver;
pub mod reflections;
pub mod representations;
pub mod semiinvariants;
pub mod serde_q;
pub mod types;

pub use error::{Error, Result};
pub use quiver::{Arrow, DimVector, Quiver, Side, SymmetricQuiver};
pub use types::{build_canonical, classify, defect, null_root, region_of, Region, TameType};
