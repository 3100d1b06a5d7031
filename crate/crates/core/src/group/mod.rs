//! Finite groups, subgroups, abelian structure, actions, extensions, and
//! the small-groups catalog.

pub mod abelian;
pub mod action;
pub mod catalog;
pub mod extension;
pub mod finite;
pub mod iso;
pub mod subgroup;

pub use abelian::{AbelianGroup, DualAbelianGroup};
pub use action::{ActionSide, GroupAction};
pub use catalog::{catalog, SmallGroupCatalog, CATALOG_MAX_ORDER};
pub use extension::{
    crossed_product, dual_crossed_product, dual_group, extension_class, DualCrossedProduct,
    ExtensionData, PairTable,
};
pub use finite::{cyclic, direct_product, FiniteGroup};
pub use iso::{are_isomorphic, automorphisms};
pub use subgroup::{quotient_with_section, subgroups, QuotientData, SubgroupInfo};
