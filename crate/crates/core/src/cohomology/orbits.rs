//! Orbits of H³(G, ℚ/ℤ) under Aut(G), acting by pullback on cocycles.

use std::collections::HashMap;
use std::sync::Arc;

use crate::cochain::CircleCochain;
use crate::error::Result;
use crate::group::finite::FiniteGroup;
use crate::group::iso::automorphisms;

use super::engine::{ClassCoordinates, CohomologyGroup, Workspace};

/// Pullback σ*f of a cochain along a permutation of the base group.
pub fn pullback(f: &CircleCochain, sigma: &[usize]) -> CircleCochain {
    let tuples = f.tuples();
    let mut out = f.clone();
    let mut mapped = vec![0usize; f.arity];
    for i in 0..tuples.count() {
        let t = tuples.at(i);
        for (w, &g) in mapped.iter_mut().zip(&t) {
            *w = sigma[g];
        }
        out.values[i] = f.value(&mapped);
    }
    out
}

/// The orbit partition of the classes of H³(G, ℚ/ℤ) under Aut(G), with
/// lexicographically minimal orbit representatives.
pub struct AutOrbits {
    pub h: Arc<CohomologyGroup>,
    /// Sorted members per orbit, orbits sorted by their representative.
    pub orbits: Vec<Vec<ClassCoordinates>>,
    canonical: HashMap<ClassCoordinates, usize>,
}

impl AutOrbits {
    pub fn orbit_index(&self, coords: &ClassCoordinates) -> usize {
        self.canonical[coords]
    }

    /// Lexicographically minimal member of the orbit of `coords`.
    pub fn canonical_rep(&self, coords: &ClassCoordinates) -> ClassCoordinates {
        self.orbits[self.canonical[coords]][0].clone()
    }

    pub fn orbit_size(&self, coords: &ClassCoordinates) -> usize {
        self.orbits[self.canonical[coords]].len()
    }
}

/// Compute the orbit structure. The Aut-action is represented by coordinate
/// matrices of a small generating set of automorphisms, then orbits are
/// closed by breadth-first search over the finite coordinate module.
pub fn aut_orbits(ws: &Workspace, group: &Arc<FiniteGroup>) -> Result<AutOrbits> {
    let n = group.order() as i64;
    let h = ws.circle_cohomology(group, 3, n)?;
    let auts = automorphisms(group);
    let gens = generating_automorphisms(group, &auts);
    // Coordinate matrix per generator: column j = coords of σ*(basis_j).
    let s = h.factors.len();
    let mut matrices = Vec::with_capacity(gens.len());
    for sigma in &gens {
        let mut m = vec![0i64; s * s];
        for j in 0..s {
            let b = CircleCochain {
                base: group.clone(),
                arity: 3,
                modulus: h.modulus,
                values: h.basis[j].clone(),
            };
            let coords = h.coords(&pullback(&b, sigma).values)?;
            for i in 0..s {
                m[i * s + j] = coords[i];
            }
        }
        matrices.push(m);
    }
    let apply = |m: &[i64], c: &[i64]| -> Vec<i64> {
        (0..s)
            .map(|i| {
                let mut acc = 0i64;
                for j in 0..s {
                    acc += m[i * s + j] * c[j];
                }
                acc.rem_euclid(h.factors[i])
            })
            .collect()
    };
    let mut canonical: HashMap<ClassCoordinates, usize> = HashMap::new();
    let mut orbits: Vec<Vec<ClassCoordinates>> = Vec::new();
    for start in h.all_class_coords() {
        if canonical.contains_key(&start) {
            continue;
        }
        let idx = orbits.len();
        let mut members = vec![start.clone()];
        canonical.insert(start, idx);
        let mut head = 0;
        while head < members.len() {
            let cur = members[head].clone();
            head += 1;
            for m in &matrices {
                let next = apply(m, &cur);
                if !canonical.contains_key(&next) {
                    canonical.insert(next.clone(), idx);
                    members.push(next);
                }
            }
        }
        members.sort();
        orbits.push(members);
    }
    // Orbits were discovered in odometer order, whose first member is the
    // lexicographic minimum of the orbit already; sort orbit list by rep.
    orbits.sort();
    let mut canonical = HashMap::new();
    for (i, orbit) in orbits.iter().enumerate() {
        for m in orbit {
            canonical.insert(m.clone(), i);
        }
    }
    Ok(AutOrbits {
        h,
        orbits,
        canonical,
    })
}

/// Greedy generating subset of the automorphism list, closed by products.
fn generating_automorphisms(group: &FiniteGroup, auts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = group.order();
    let id: Vec<usize> = (0..n).collect();
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut closure: Vec<Vec<usize>> = vec![id.clone()];
    for a in auts {
        if closure.contains(a) {
            continue;
        }
        gens.push(a.clone());
        // Re-close under composition.
        let mut frontier = closure.clone();
        frontier.push(a.clone());
        closure.push(a.clone());
        while let Some(x) = frontier.pop() {
            for g in gens.iter() {
                let comp: Vec<usize> = (0..n).map(|i| g[x[i]]).collect();
                if !closure.contains(&comp) {
                    closure.push(comp.clone());
                    frontier.push(comp);
                }
                let comp2: Vec<usize> = (0..n).map(|i| x[g[i]]).collect();
                if !closure.contains(&comp2) {
                    closure.push(comp2.clone());
                    frontier.push(comp2);
                }
            }
        }
        if closure.len() == auts.len() {
            break;
        }
    }
    if gens.is_empty() {
        gens.push(id);
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::catalog;

    fn orbit_sizes(key: &str) -> Vec<usize> {
        let ws = Workspace::default();
        let g = catalog().by_key(key).unwrap().group.clone();
        let orbits = aut_orbits(&ws, &g).unwrap();
        let mut sizes: Vec<usize> = orbits.orbits.iter().map(|o| o.len()).collect();
        sizes.sort_unstable();
        sizes
    }

    #[test]
    fn z4_has_four_singleton_orbits() {
        assert_eq!(orbit_sizes("4.C"), vec![1, 1, 1, 1]);
    }

    #[test]
    fn klein_four_orbit_sizes() {
        assert_eq!(orbit_sizes("4.V"), vec![1, 1, 3, 3]);
    }

    #[test]
    fn quaternion_orbits_are_singletons() {
        assert_eq!(orbit_sizes("8.Q"), vec![1; 8]);
    }

    #[test]
    fn canonical_reps_are_orbit_minima() {
        let ws = Workspace::default();
        let g = catalog().by_key("4.V").unwrap().group.clone();
        let orbits = aut_orbits(&ws, &g).unwrap();
        for orbit in &orbits.orbits {
            let rep = orbits.canonical_rep(&orbit[orbit.len() - 1]);
            assert_eq!(&rep, orbit.iter().min().unwrap());
        }
    }
}
