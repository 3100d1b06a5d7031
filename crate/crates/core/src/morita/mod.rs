//! Weak Morita equivalence of pointed fusion categories: duality data,
//! pointedness of duals, enumeration, and the classification database.

pub mod classify;
pub mod datum;
pub mod enumerate;
pub mod pointed;
pub mod unionfind;

pub use classify::{check_equivalence, classify, CheckResult, MoritaDatabase, SCHEMA};
pub use datum::{dual_node, node_of, DualityDatum, OrbitCache, PointedCategoryNode};
pub use enumerate::{enumerate_duality_data, DatumSpec, EnumeratedDatum};
pub use pointed::{pointed_dual_test, PointedVerdict};
pub use unionfind::UnionFind;
