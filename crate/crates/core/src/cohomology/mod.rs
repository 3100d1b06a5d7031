//! Group cohomology via the normalized bar resolution and Smith reduction.

pub mod engine;
pub mod orbits;
pub mod space;

pub use engine::{ClassCoordinates, CohomologyGroup, Limits, Workspace};
pub use orbits::{aut_orbits, pullback, AutOrbits};
pub use space::{mapk_boundary, module_boundary, qz_boundary, BoundaryMatrix, FiniteModule};
