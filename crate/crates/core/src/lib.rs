//! Finite group cohomology with circle coefficients, the double complex of
//! an abelian extension with its second differential, and classification of
//! pointed fusion categories up to weak Morita equivalence at small global
//! dimension.
//!
//! The layers, bottom up:
//! - [`group`]: multiplication tables, subgroups, abelian structure, duals,
//!   crossed products, and a catalog of the groups of order ≤ 16;
//! - [`cochain`]: normalized cochains, the double complex and its
//!   differentials, and the explicit cocycle constructions;
//! - [`linalg`]: exact Smith/Hermite reduction over ℤ and ℤ/N;
//! - [`cohomology`]: H^q with the four coefficient modules, class
//!   coordinates, coboundary solving, triviality tests, Aut-orbits;
//! - [`lhs`]: the bottom rows of the E₂ page and the second differential;
//! - [`morita`]: duality data, pointedness of duals, and the weak Morita
//!   classification database.

pub mod circle;
pub mod cochain;
pub mod cohomology;
pub mod error;
pub mod group;
pub mod lhs;
pub mod linalg;
pub mod morita;

pub use error::{Error, Result};

/// Crate version, embedded into database provenance.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
