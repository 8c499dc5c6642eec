//! Semi-invariant cones of acyclic quivers: exact cone computations, face
//! lattices, generic hom/ext, well-covering decompositions, and finite-field
//! oracles to check them against.

pub mod cli;
pub mod cone;
pub mod decomposition;
pub mod dw;
pub mod error;
pub mod field;
pub mod homext;
pub mod linalg;
pub mod oracle;
pub mod quiver;

pub use cone::{build_sigma_hrep, sigma_cone, Face, HCone, VCone};
pub use decomposition::{mu, z_from_ordered, OrderedDecomposition, ZDecomposition};
pub use dw::{verify_dw, Circ, DecompositionSet, DwReport, Verdict};
pub use error::{Error, Result};
pub use homext::{GenericHomExt, HomExt, SamplingPolicy};
pub use quiver::{DimensionVector, Quiver, Weight};
