//! Hard-coded catalog of the groups of order 1 through 16, with stable
//! string keys of the form "order.letter" ("4.C" cyclic, "4.V" Klein,
//! "8.D" dihedral, "8.Q" quaternion, ...). See docs/FORMATS.md for the
//! complete key table.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::group::abelian::AbelianGroup;
use crate::group::action::{ActionSide, GroupAction};
use crate::group::extension::{crossed_product, PairTable};
use crate::group::finite::{cyclic, direct_product, FiniteGroup, Fingerprint};
use crate::group::iso::are_isomorphic;
use crate::group::subgroup::quotient_with_section;

pub const CATALOG_MAX_ORDER: usize = 16;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub key: String,
    pub group: Arc<FiniteGroup>,
    pub abelian: bool,
    pub fingerprint: Fingerprint,
}

pub struct SmallGroupCatalog {
    entries: Vec<CatalogEntry>,
    by_key: HashMap<String, usize>,
}

impl SmallGroupCatalog {
    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn by_key(&self, key: &str) -> Option<&CatalogEntry> {
        self.by_key.get(key).map(|&i| &self.entries[i])
    }

    pub fn of_order(&self, n: usize) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| e.group.order() == n).collect()
    }

    /// The catalog key of the isomorphism type of `g`, together with an
    /// isomorphism from the catalog representative onto `g`.
    pub fn canonical_key(&self, g: &FiniteGroup) -> Result<(String, Vec<usize>)> {
        if g.order() > CATALOG_MAX_ORDER {
            return Err(Error::OrderOutOfCatalog(g.order(), CATALOG_MAX_ORDER));
        }
        let fp = g.fingerprint();
        for e in self.entries.iter().filter(|e| e.group.order() == g.order()) {
            if e.fingerprint != fp {
                continue;
            }
            if let Some(iso) = are_isomorphic(&e.group, g) {
                return Ok((e.key.clone(), iso));
            }
        }
        Err(Error::InvalidTable(
            "group of catalogued order matches no catalog entry".into(),
        ))
    }
}

/// Z/m ⋊ Z/2 with the action x -> t·x and optional central twist
/// F(1,1) = `twist`.
fn over_z2(m: usize, t: usize, twist: usize, label: &str) -> FiniteGroup {
    let a = AbelianGroup::from_factors(&[m]);
    let k = cyclic(2);
    let act_map: Vec<usize> = (0..m).map(|x| (x * t) % m).collect();
    let action = GroupAction::new(&k, &a, ActionSide::Left, vec![(0..m).collect(), act_map])
        .expect("valid involution action");
    let mut f = PairTable::zero(2);
    f.set(1, 1, twist);
    let ext = crossed_product(&a, &k, &action, &f).expect("catalog cocycle");
    let mut g = (*ext.group).clone();
    g.set_label(label);
    g
}

fn abelian(factors: &[usize], label: &str) -> FiniteGroup {
    let mut g = AbelianGroup::from_factors(factors).group().clone();
    g.set_label(label);
    g
}

fn alternating_four() -> FiniteGroup {
    // (Z/2)² ⋊ Z/3, the 3-cycle permuting the involutions.
    let a = AbelianGroup::from_factors(&[2, 2]);
    let k = cyclic(3);
    let sigma = vec![0, 2, 3, 1];
    let sigma2 = vec![0, 3, 1, 2];
    let action =
        GroupAction::new(&k, &a, ActionSide::Left, vec![(0..4).collect(), sigma, sigma2])
            .expect("3-cycle action");
    let ext = crossed_product(&a, &k, &action, &PairTable::zero(3)).expect("split");
    let mut g = (*ext.group).clone();
    g.set_label("A4");
    g
}

fn z4_semi_z4() -> FiniteGroup {
    let a = AbelianGroup::from_factors(&[4]);
    let k = cyclic(4);
    let id: Vec<usize> = (0..4).collect();
    let inv: Vec<usize> = (0..4).map(|x| a.neg(x)).collect();
    let action = GroupAction::new(
        &k,
        &a,
        ActionSide::Left,
        vec![id.clone(), inv.clone(), id, inv],
    )
    .expect("order-2 action of Z4");
    let ext = crossed_product(&a, &k, &action, &PairTable::zero(4)).expect("split");
    let mut g = (*ext.group).clone();
    g.set_label("Z/4:Z/4");
    g
}

fn v4_semi_z4() -> FiniteGroup {
    // (Z/2)² ⋊ Z/4 with the generator swapping the two coordinates.
    let a = AbelianGroup::from_factors(&[2, 2]);
    let k = cyclic(4);
    let id: Vec<usize> = (0..4).collect();
    let swap = vec![0, 2, 1, 3];
    let action = GroupAction::new(
        &k,
        &a,
        ActionSide::Left,
        vec![id.clone(), swap.clone(), id, swap],
    )
    .expect("swap action of Z4");
    let ext = crossed_product(&a, &k, &action, &PairTable::zero(4)).expect("split");
    let mut g = (*ext.group).clone();
    g.set_label("(Z/2)^2:Z/4");
    g
}

fn pauli_group() -> FiniteGroup {
    // Central product D8 ∘ Z4: quotient of D8 × Z4 by the diagonal central
    // Z/2 generated by (r², 2).
    let d8 = over_z2(4, 3, 0, "D8");
    let big = direct_product(&d8, &cyclic(4));
    let r2 = 2usize; // (a=2, k=0) in the crossed coordinates of D8
    let center_gen = r2 * 4 + 2;
    let q = quotient_with_section(&big, &[0, center_gen]).expect("central subgroup");
    let mut g = q.quotient;
    g.set_label("D8oZ/4");
    g
}

fn build() -> SmallGroupCatalog {
    let mut entries: Vec<(String, FiniteGroup)> = Vec::new();
    let mut push = |key: &str, g: FiniteGroup| {
        entries.push((key.to_string(), g));
    };

    push("1.C", abelian(&[], "1"));
    push("2.C", abelian(&[2], "Z/2"));
    push("3.C", abelian(&[3], "Z/3"));
    push("4.C", abelian(&[4], "Z/4"));
    push("4.V", abelian(&[2, 2], "(Z/2)^2"));
    push("5.C", abelian(&[5], "Z/5"));
    push("6.C", abelian(&[6], "Z/6"));
    push("6.S", over_z2(3, 2, 0, "S3"));
    push("7.C", abelian(&[7], "Z/7"));
    push("8.C", abelian(&[8], "Z/8"));
    push("8.M", abelian(&[2, 4], "Z/2xZ/4"));
    push("8.E", abelian(&[2, 2, 2], "(Z/2)^3"));
    push("8.D", over_z2(4, 3, 0, "D8"));
    push("8.Q", over_z2(4, 3, 2, "Q8"));
    push("9.C", abelian(&[9], "Z/9"));
    push("9.E", abelian(&[3, 3], "(Z/3)^2"));
    push("10.C", abelian(&[10], "Z/10"));
    push("10.D", over_z2(5, 4, 0, "D10"));
    push("11.C", abelian(&[11], "Z/11"));
    push("12.C", abelian(&[12], "Z/12"));
    push("12.M", abelian(&[2, 6], "Z/2xZ/6"));
    push("12.D", over_z2(6, 5, 0, "D12"));
    push("12.A", alternating_four());
    push("12.Q", over_z2(6, 5, 3, "Dic3"));
    push("13.C", abelian(&[13], "Z/13"));
    push("14.C", abelian(&[14], "Z/14"));
    push("14.D", over_z2(7, 6, 0, "D14"));
    push("15.C", abelian(&[15], "Z/15"));
    push("16.C", abelian(&[16], "Z/16"));
    push("16.M", abelian(&[2, 8], "Z/2xZ/8"));
    push("16.F", abelian(&[4, 4], "(Z/4)^2"));
    push("16.N", abelian(&[2, 2, 4], "(Z/2)^2xZ/4"));
    push("16.E", abelian(&[2, 2, 2, 2], "(Z/2)^4"));
    push("16.D", over_z2(8, 7, 0, "D16"));
    push("16.S", over_z2(8, 3, 0, "SD16"));
    push("16.L", over_z2(8, 5, 0, "M16"));
    push("16.Q", over_z2(8, 7, 4, "Q16"));
    push("16.G", {
        let mut g = direct_product(&over_z2(4, 3, 0, "D8"), &cyclic(2));
        g.set_label("D8xZ/2");
        g
    });
    push("16.H", {
        let mut g = direct_product(&over_z2(4, 3, 2, "Q8"), &cyclic(2));
        g.set_label("Q8xZ/2");
        g
    });
    push("16.I", z4_semi_z4());
    push("16.J", v4_semi_z4());
    push("16.P", pauli_group());

    let entries: Vec<CatalogEntry> = entries
        .into_iter()
        .map(|(key, group)| {
            let abelian = group.is_abelian();
            let fingerprint = group.fingerprint();
            CatalogEntry {
                key,
                group: Arc::new(group),
                abelian,
                fingerprint,
            }
        })
        .collect();
    let by_key = entries
        .iter()
        .enumerate()
        .map(|(i, e)| (e.key.clone(), i))
        .collect();
    SmallGroupCatalog { entries, by_key }
}

pub fn catalog() -> &'static SmallGroupCatalog {
    static CATALOG: OnceLock<SmallGroupCatalog> = OnceLock::new();
    CATALOG.get_or_init(build)
}
