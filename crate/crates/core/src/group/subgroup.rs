//! Subgroup enumeration, quotients with sections, and the κ correction.

use crate::error::{Error, Result};
use crate::group::finite::FiniteGroup;

/// Closure of a generating set, returned sorted.
pub fn closure(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut have = vec![false; g.order()];
    have[0] = true;
    let mut stack: Vec<usize> = vec![0];
    for &x in gens {
        if !have[x] {
            have[x] = true;
            stack.push(x);
        }
    }
    let mut frontier = stack.clone();
    while let Some(x) = frontier.pop() {
        for i in 0..stack.len() {
            let y = stack[i];
            for z in [g.mul(x, y), g.mul(y, x)] {
                if !have[z] {
                    have[z] = true;
                    stack.push(z);
                    frontier.push(z);
                }
            }
        }
    }
    let mut out: Vec<usize> = have
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect();
    out.sort_unstable();
    out
}

/// Closure of an already-closed indicator set extended by one element.
pub(crate) fn closure_from(g: &FiniteGroup, have: &[bool], extra: usize) -> Vec<usize> {
    let mut gens: Vec<usize> = have
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i))
        .collect();
    gens.push(extra);
    closure(g, &gens)
}

pub fn is_subgroup(g: &FiniteGroup, elems: &[usize]) -> bool {
    if !elems.contains(&0) {
        return false;
    }
    let inside = |x: usize| elems.binary_search(&x).is_ok();
    elems
        .iter()
        .all(|&a| inside(g.inv(a)) && elems.iter().all(|&b| inside(g.mul(a, b))))
}

pub fn is_normal(g: &FiniteGroup, elems: &[usize]) -> bool {
    let inside = |x: usize| elems.binary_search(&x).is_ok();
    g.elements()
        .all(|x| elems.iter().all(|&a| inside(g.conjugate(a, x))))
}

pub fn is_abelian_subset(g: &FiniteGroup, elems: &[usize]) -> bool {
    elems
        .iter()
        .all(|&a| elems.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupInfo {
    /// Sorted element indices, always containing 0.
    pub elements: Vec<usize>,
    pub normal: bool,
    pub abelian: bool,
}

/// All subgroups, each reported once, by breadth-first closure over
/// generator extensions.
pub fn subgroups(g: &FiniteGroup) -> Vec<SubgroupInfo> {
    let mut found: Vec<Vec<usize>> = vec![vec![0]];
    let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
    while let Some(h) = frontier.pop() {
        for x in 1..g.order() {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = h.clone();
            gens.push(x);
            let c = closure(g, &gens);
            if !found.contains(&c) {
                found.push(c.clone());
                frontier.push(c);
            }
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found
        .into_iter()
        .map(|elements| {
            let normal = is_normal(g, &elements);
            let abelian = is_abelian_subset(g, &elements);
            SubgroupInfo {
                elements,
                normal,
                abelian,
            }
        })
        .collect()
}

/// A quotient K = A\G with a deterministic section.
///
/// Cosets are labelled by their minimal element index, sorted, so the
/// identity coset is always label 0 and the section picks the minimal
/// representative. `u(1) = 1` holds automatically.
#[derive(Clone, Debug)]
pub struct QuotientData {
    pub group: FiniteGroup,
    pub normal: Vec<usize>,
    pub quotient: FiniteGroup,
    /// p: G -> K by element index.
    pub projection: Vec<usize>,
    /// u: K -> G, minimal coset representative.
    pub section: Vec<usize>,
}

pub fn quotient_with_section(g: &FiniteGroup, a: &[usize]) -> Result<QuotientData> {
    let mut a = a.to_vec();
    a.sort_unstable();
    a.dedup();
    if !is_subgroup(g, &a) {
        return Err(Error::BadInput("not a subgroup".into()));
    }
    if !is_normal(g, &a) {
        return Err(Error::NotNormal);
    }
    let n = g.order();
    // Right cosets Ag, labelled by minimal member.
    let mut coset_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let label = reps.len();
        reps.push(x);
        for &s in &a {
            coset_of[g.mul(s, x)] = label;
        }
    }
    let k = reps.len();
    let mut table = vec![0usize; k * k];
    for i in 0..k {
        for j in 0..k {
            table[i * k + j] = coset_of[g.mul(reps[i], reps[j])];
        }
    }
    let quotient = FiniteGroup::from_flat_table(format!("{}/A", g.label()), k, table)
        .map_err(|e| Error::InvalidTable(format!("quotient not a group: {e}")))?;
    Ok(QuotientData {
        group: g.clone(),
        normal: a,
        quotient,
        projection: coset_of,
        section: reps,
    })
}

impl QuotientData {
    /// Right action of G on coset labels: k ◁ g = p(u(k)·g).
    pub fn coset_act(&self, k: usize, g: usize) -> usize {
        self.projection[self.group.mul(self.section[k], g)]
    }

    /// The unique κ ∈ A with u(k)·g = κ · u(k ◁ g).
    pub fn kappa(&self, k: usize, g: usize) -> usize {
        let ug = self.group.mul(self.section[k], g);
        let target = self.section[self.coset_act(k, g)];
        self.group.mul(ug, self.group.inv(target))
    }
}
