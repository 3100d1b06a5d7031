//! Deterministic enumeration of duality data at a fixed global dimension:
//! factorizations n = |A|·|K|, every action, cohomology class
//! representatives for F and F̂, and the compatible ε-coset.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cochain::{CircleCochain, ModCochain};
use crate::cohomology::engine::Workspace;
use crate::error::Result;
use crate::group::abelian::{abelian_factor_lists, AbelianGroup};
use crate::group::action::all_actions;
use crate::group::catalog::catalog;
use crate::group::extension::crossed_product;
use crate::lhs::{dual_module, survives};

use super::datum::DualityDatum;

/// Provenance of one enumerated datum; serialized into edge witnesses.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DatumSpec {
    pub a_factors: Vec<usize>,
    pub k: String,
    pub action: Vec<Vec<usize>>,
    pub f_class: Vec<i64>,
    pub f_hat_class: Vec<i64>,
    pub tau_class: Vec<i64>,
}

pub struct EnumeratedDatum {
    pub spec: DatumSpec,
    pub datum: DualityDatum,
}

/// The part of the enumeration that is cheap to list up front; one prefix
/// per (|A| factors, K, action, [F]) tuple.
pub struct Prefix {
    pub a: AbelianGroup,
    pub k_key: String,
    pub action_index: usize,
    pub f_class: Vec<i64>,
}

pub fn prefixes(ws: &Workspace, n: usize) -> Result<Vec<Prefix>> {
    let mut out = Vec::new();
    for a_order in 1..=n {
        if n % a_order != 0 {
            continue;
        }
        let k_order = n / a_order;
        for a_factors in abelian_factor_lists(a_order) {
            let a = AbelianGroup::from_factors(&a_factors);
            for k_entry in catalog().of_order(k_order) {
                let actions = all_actions(&k_entry.group, &a);
                for (action_index, action) in actions.iter().enumerate() {
                    // H²(K, A) classes for this action.
                    let module = crate::cohomology::space::FiniteModule::from_action(
                        &a,
                        action,
                        k_order,
                    );
                    let h2a = ws.module_cohomology(&k_entry.group, &module, 2)?;
                    for f_class in h2a.all_class_coords() {
                        out.push(Prefix {
                            a: a.clone(),
                            k_key: k_entry.key.clone(),
                            action_index,
                            f_class,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Expand one prefix into its duality data, in deterministic order.
pub fn expand_prefix(ws: &Workspace, prefix: &Prefix) -> Result<Vec<EnumeratedDatum>> {
    let k_entry = catalog().by_key(&prefix.k_key).expect("prefix key");
    let actions = all_actions(&k_entry.group, &prefix.a);
    let action = &actions[prefix.action_index];
    // Rebuild the F representative from its class coordinates.
    let module = crate::cohomology::space::FiniteModule::from_action(
        &prefix.a,
        action,
        k_entry.group.order(),
    );
    let h2a = ws.module_cohomology(&k_entry.group, &module, 2)?;
    let f = ModCochain::from_scaled_vector(
        k_entry.group.clone(),
        Arc::new(prefix.a.clone()),
        Arc::new(action.clone()),
        2,
        h2a.modulus,
        &h2a.representative(&prefix.f_class),
    )?;
    let ext = Arc::new(crossed_product(
        &prefix.a,
        &k_entry.group,
        action,
        &f.to_pair_table(),
    )?);
    let h2dual = ws.module_cohomology(&ext.k, &dual_module(&ext), 2)?;
    let h3k = ws.circle_cohomology(&ext.k, 3, ext.k.order() as i64)?;
    let mut out = Vec::new();
    for f_hat_class in h2dual.all_class_coords() {
        let f_hat = ModCochain::from_scaled_vector(
            ext.k.clone(),
            Arc::new(ext.dual.carrier().clone()),
            ext.dual_act.clone(),
            2,
            h2dual.modulus,
            &h2dual.representative(&f_hat_class),
        )?;
        let Some(eps0) = survives(ws, &ext, &f_hat)? else {
            continue;
        };
        for tau_class in h3k.all_class_coords() {
            let tau = CircleCochain {
                base: ext.k.clone(),
                arity: 3,
                modulus: h3k.modulus,
                values: h3k.representative(&tau_class),
            };
            let epsilon = eps0.add(&tau);
            let datum = DualityDatum::new(ext.clone(), f_hat.clone(), epsilon)?;
            out.push(EnumeratedDatum {
                spec: DatumSpec {
                    a_factors: prefix.a.factors().to_vec(),
                    k: prefix.k_key.clone(),
                    action: action.maps().to_vec(),
                    f_class: prefix.f_class.clone(),
                    f_hat_class: f_hat_class.clone(),
                    tau_class,
                },
                datum,
            });
        }
    }
    Ok(out)
}

/// The full deterministic stream at dimension n.
pub fn enumerate_duality_data(ws: &Workspace, n: usize) -> Result<Vec<EnumeratedDatum>> {
    let mut out = Vec::new();
    for prefix in prefixes(ws, n)? {
        out.extend(expand_prefix(ws, &prefix)?);
    }
    Ok(out)
}
