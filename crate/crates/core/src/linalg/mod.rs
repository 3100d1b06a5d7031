//! Exact integer and ℤ/N linear algebra backing the cohomology engine.

pub mod dense;
pub mod int;
pub mod quotient;

pub use dense::{rows_from_triplets, smith_mod, solve_mod, SmithMod, SparseRow};
pub use int::{column_lattice, IntColumnLattice};
pub use quotient::{quotient_structure, QuotientStructure};
