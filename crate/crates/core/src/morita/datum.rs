//! Duality data: the complete witness of one weak Morita equivalence
//! between pointed fusion categories, and the node quotient by twist
//! orbits.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::cochain::builders::{
    build_gamma, build_omega, build_omega_hat, epsilon_matches_wedge, nu_from_gamma,
};
use crate::cochain::{CircleCochain, ModCochain};
use crate::cohomology::engine::{ClassCoordinates, Workspace};
use crate::cohomology::orbits::{aut_orbits, AutOrbits};
use crate::error::{Error, Result};
use crate::group::catalog::catalog;
use crate::group::extension::{dual_crossed_product, DualCrossedProduct, ExtensionData};
use crate::group::finite::FiniteGroup;

/// (K acting on A, F, F̂, ε with δ_K ε = F̂ ∧ F) plus everything derived:
/// Ĝ = K ⋉_F̂ 𝔸 and the twists on both sides.
#[derive(Clone)]
pub struct DualityDatum {
    pub ext: Arc<ExtensionData>,
    pub f: ModCochain,
    pub f_hat: ModCochain,
    pub epsilon: CircleCochain,
    pub dual_product: DualCrossedProduct,
    pub omega: CircleCochain,
    pub omega_hat: CircleCochain,
}

impl DualityDatum {
    pub fn new(
        ext: Arc<ExtensionData>,
        f_hat: ModCochain,
        epsilon: CircleCochain,
    ) -> Result<Self> {
        let f = ModCochain::from_pair_table(
            ext.k.clone(),
            Arc::new((*ext.a).clone()),
            ext.action.clone(),
            &ext.f,
        )?;
        if !f_hat.is_cocycle() {
            return Err(Error::InvalidDatum("F-hat is not a cocycle".into()));
        }
        if !epsilon_matches_wedge(&ext, &f_hat, &f, &epsilon) {
            return Err(Error::InvalidDatum("delta_K epsilon != F-hat wedge F".into()));
        }
        let dual_product =
            dual_crossed_product(&ext.k, &ext.dual, &ext.dual_act, &f_hat.to_pair_table())?;
        let omega = build_omega(&ext, &f_hat, &epsilon);
        let omega_hat = build_omega_hat(&ext, &dual_product, &epsilon);
        if !omega.is_cocycle() || !omega_hat.is_cocycle() {
            return Err(Error::InvalidDatum("built twist is not a cocycle".into()));
        }
        debug_assert_eq!(ext.group.order(), dual_product.group.order());
        Ok(DualityDatum {
            ext,
            f,
            f_hat,
            epsilon,
            dual_product,
            omega,
            omega_hat,
        })
    }

    /// The Grothendieck group K ⋉_ν 𝔸 computed through γ and ν = ψ(δ_K γ);
    /// isomorphic (indeed equal, since ν = F̂) to the underlying group of Ĝ.
    pub fn grothendieck_group(&self) -> Result<Arc<FiniteGroup>> {
        let gamma = build_gamma(&self.ext, &self.f_hat, &self.epsilon);
        let (_, nu) = nu_from_gamma(&gamma)?;
        let dc = dual_crossed_product(
            &self.ext.k,
            &self.ext.dual,
            &self.ext.dual_act,
            &nu.to_pair_table(),
        )?;
        Ok(dc.group)
    }
}

/// A pointed fusion category up to equivalence: a catalog key and the
/// Aut-orbit-canonical coordinates of its twist class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PointedCategoryNode {
    pub group: String,
    pub class: ClassCoordinates,
}

impl std::fmt::Display for PointedCategoryNode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} @ [{}]",
            self.group,
            self.class
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Shared cache of Aut-orbit structures per catalog key.
#[derive(Default)]
pub struct OrbitCache {
    map: Mutex<HashMap<String, Arc<AutOrbits>>>,
}

impl OrbitCache {
    pub fn get(&self, ws: &Workspace, key: &str) -> Result<Arc<AutOrbits>> {
        if let Some(o) = self.map.lock().unwrap().get(key) {
            return Ok(o.clone());
        }
        let entry = catalog()
            .by_key(key)
            .ok_or_else(|| Error::BadInput(format!("unknown catalog key {key}")))?;
        let orbits = Arc::new(aut_orbits(ws, &entry.group)?);
        let mut map = self.map.lock().unwrap();
        Ok(map.entry(key.to_string()).or_insert(orbits).clone())
    }
}

/// Pull a cochain on `group` back to the catalog representative along an
/// isomorphism `iso`: representative -> group.
pub fn transport_to_catalog(
    cat_group: &Arc<FiniteGroup>,
    iso: &[usize],
    f: &CircleCochain,
) -> CircleCochain {
    let mut out = CircleCochain::zero(cat_group.clone(), f.arity, f.modulus);
    let tuples = out.tuples();
    let mut mapped = vec![0usize; f.arity];
    for i in 0..tuples.count() {
        let t = tuples.at(i);
        for (w, &g) in mapped.iter_mut().zip(&t) {
            *w = iso[g];
        }
        out.values[i] = f.value(&mapped);
    }
    out
}

/// The node of (group, ω): canonical key, class coordinates in the catalog
/// representative's published basis, canonicalized over the Aut-orbit.
pub fn node_of(
    ws: &Workspace,
    orbits: &OrbitCache,
    group: &Arc<FiniteGroup>,
    omega: &CircleCochain,
) -> Result<PointedCategoryNode> {
    let (key, iso) = catalog().canonical_key(group)?;
    let entry = catalog().by_key(&key).unwrap();
    let transported = transport_to_catalog(&entry.group, &iso, omega);
    let orb = orbits.get(ws, &key)?;
    let coords = ws.circle_coords(&orb.h, &entry.group, &transported)?;
    Ok(PointedCategoryNode {
        group: key,
        class: orb.canonical_rep(&coords),
    })
}

/// Both endpoints of the equivalence a datum witnesses.
pub fn dual_node(
    ws: &Workspace,
    orbits: &OrbitCache,
    datum: &DualityDatum,
) -> Result<(PointedCategoryNode, PointedCategoryNode)> {
    let a = node_of(ws, orbits, &datum.ext.group, &datum.omega)?;
    let b = node_of(ws, orbits, &datum.dual_product.group, &datum.omega_hat)?;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::abelian::AbelianGroup;
    use crate::group::action::{ActionSide, GroupAction};
    use crate::group::extension::{crossed_product, PairTable};
    use crate::group::finite::cyclic;
    use crate::group::iso::are_isomorphic;

    fn z4_datum() -> DualityDatum {
        // A = Z/2, K = Z/2, F the Z/4 class, F̂ = 0, ε = 0.
        let a = AbelianGroup::from_factors(&[2]);
        let k = cyclic(2);
        let act = GroupAction::trivial(&k, &a, ActionSide::Left);
        let mut f = PairTable::zero(2);
        f.set(1, 1, 1);
        let ext = Arc::new(crossed_product(&a, &k, &act, &f).unwrap());
        let f_hat = ModCochain::zero(
            ext.k.clone(),
            Arc::new(ext.dual.carrier().clone()),
            ext.dual_act.clone(),
            2,
        );
        let eps = CircleCochain::zero(ext.k.clone(), 3, 2);
        DualityDatum::new(ext, f_hat, eps).unwrap()
    }

    #[test]
    fn z4_datum_connects_z4_to_klein_four() {
        let ws = Workspace::default();
        let orbits = OrbitCache::default();
        let d = z4_datum();
        let (from, to) = dual_node(&ws, &orbits, &d).unwrap();
        assert_eq!(from.group, "4.C");
        assert!(from.class.iter().all(|&c| c == 0));
        assert_eq!(to.group, "4.V");
        assert!(to.class.iter().any(|&c| c != 0));
        // The target class sits in an orbit of size 3 (the mixed classes).
        let orb = orbits.get(&ws, "4.V").unwrap();
        assert_eq!(orb.orbit_size(&to.class), 3);
    }

    #[test]
    fn grothendieck_group_matches_dual_group() {
        let d = z4_datum();
        let k0 = d.grothendieck_group().unwrap();
        assert!(are_isomorphic(&k0, &d.dual_product.group).is_some());
        // For this datum the dual is Klein four.
        let v4 = catalog().by_key("4.V").unwrap().group.clone();
        assert!(are_isomorphic(&k0, &v4).is_some());
    }

    #[test]
    fn invalid_epsilon_is_rejected() {
        // Nonzero F̂ against nonzero F needs a matching ε; ε = 0 must fail
        // when the wedge is a nonzero cochain.
        let a = AbelianGroup::from_factors(&[2]);
        let k = cyclic(2);
        let act = GroupAction::trivial(&k, &a, ActionSide::Left);
        let mut f = PairTable::zero(2);
        f.set(1, 1, 1);
        let ext = Arc::new(crossed_product(&a, &k, &act, &f).unwrap());
        let mut f_hat = ModCochain::zero(
            ext.k.clone(),
            Arc::new(ext.dual.carrier().clone()),
            ext.dual_act.clone(),
            2,
        );
        f_hat.set(&[1, 1], 1);
        let eps = CircleCochain::zero(ext.k.clone(), 3, 2);
        assert!(matches!(
            DualityDatum::new(ext, f_hat, eps),
            Err(Error::InvalidDatum(_))
        ));
    }
}
