//! Actions of a finite group on an abelian group, and the induced right
//! action on the dual.

use crate::error::{Error, Result};
use crate::group::abelian::{AbelianGroup, DualAbelianGroup};
use crate::group::finite::FiniteGroup;
use crate::group::iso::automorphisms;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionSide {
    /// act(k₁k₂, a) = act(k₁, act(k₂, a))
    Left,
    /// act(k₁k₂, a) = act(k₂, act(k₁, a))
    Right,
}

/// An action of K on the elements of an abelian group, each `maps[k]` an
/// automorphism of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    side: ActionSide,
    maps: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(
        k: &FiniteGroup,
        target: &AbelianGroup,
        side: ActionSide,
        maps: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if maps.len() != k.order() {
            return Err(Error::Mismatch("one map per actor element required".into()));
        }
        let action = GroupAction { side, maps };
        action.validate(k, target)?;
        Ok(action)
    }

    pub fn trivial(k: &FiniteGroup, target: &AbelianGroup, side: ActionSide) -> Self {
        GroupAction {
            side,
            maps: vec![(0..target.order()).collect(); k.order()],
        }
    }

    pub fn side(&self) -> ActionSide {
        self.side
    }

    #[inline]
    pub fn act(&self, k: usize, a: usize) -> usize {
        self.maps[k][a]
    }

    pub fn map(&self, k: usize) -> &[usize] {
        &self.maps[k]
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn is_trivial(&self) -> bool {
        self.maps
            .iter()
            .all(|m| m.iter().enumerate().all(|(i, &v)| i == v))
    }

    fn validate(&self, k: &FiniteGroup, target: &AbelianGroup) -> Result<()> {
        for (ki, m) in self.maps.iter().enumerate() {
            if m.len() != target.order() {
                return Err(Error::Mismatch("map has wrong size".into()));
            }
            let mut seen = vec![false; m.len()];
            for &v in m {
                if v >= m.len() || seen[v] {
                    return Err(Error::Mismatch(format!("map {ki} is not a bijection")));
                }
                seen[v] = true;
            }
            for x in 0..target.order() {
                for y in 0..target.order() {
                    if m[target.add(x, y)] != target.add(m[x], m[y]) {
                        return Err(Error::Mismatch(format!("map {ki} is not additive")));
                    }
                }
            }
        }
        if self.maps[0] != (0..target.order()).collect::<Vec<_>>() {
            return Err(Error::Mismatch("identity must act trivially".into()));
        }
        for k1 in 0..k.order() {
            for k2 in 0..k.order() {
                let prod = &self.maps[k.mul(k1, k2)];
                for a in 0..target.order() {
                    let expect = match self.side {
                        ActionSide::Left => self.maps[k1][self.maps[k2][a]],
                        ActionSide::Right => self.maps[k2][self.maps[k1][a]],
                    };
                    if prod[a] != expect {
                        return Err(Error::Mismatch("action law fails".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The induced right action on 𝔸: ρᵏ(a) = ρ(ᵏa).
pub fn dual_action(
    k: &FiniteGroup,
    a: &AbelianGroup,
    dual: &DualAbelianGroup,
    left: &GroupAction,
) -> GroupAction {
    assert_eq!(left.side(), ActionSide::Left);
    let maps = (0..k.order())
        .map(|ki| {
            (0..dual.order())
                .map(|rho| {
                    let values: Vec<_> = (0..a.rank())
                        .map(|i| dual.pairing(rho, left.act(ki, a.generator(i))))
                        .collect();
                    dual.character_from_generator_values(&values)
                        .expect("composite of a character with an automorphism is a character")
                })
                .collect()
        })
        .collect();
    GroupAction::new(k, dual.carrier(), ActionSide::Right, maps)
        .expect("dual action satisfies the mirrored law")
}

/// Every action of K on A, i.e. every homomorphism K -> Aut(A), in a
/// deterministic order.
pub fn all_actions(k: &FiniteGroup, a: &AbelianGroup) -> Vec<GroupAction> {
    let auts = automorphisms(a.group());
    if k.order() == 1 || auts.len() == 1 {
        return vec![GroupAction::trivial(k, a, ActionSide::Left)];
    }
    let compose = |f: &[usize], g: &[usize]| -> Vec<usize> {
        // (f ∘ g)(x) = f(g(x))
        g.iter().map(|&x| f[x]).collect()
    };
    let perm_order = |f: &[usize]| -> usize {
        let id: Vec<usize> = (0..f.len()).collect();
        let mut acc = f.to_vec();
        let mut o = 1;
        while acc != id {
            acc = compose(f, &acc);
            o += 1;
        }
        o
    };
    let gens = k.generating_sequence();
    let gen_orders: Vec<usize> = gens.iter().map(|&x| k.element_order(x)).collect();
    let aut_orders: Vec<usize> = auts.iter().map(|f| perm_order(f)).collect();

    // Express every K element as a word over the generators.
    let mut word = vec![(usize::MAX, usize::MAX); k.order()];
    let mut bfs = vec![0usize];
    let mut head = 0;
    while head < bfs.len() {
        let e = bfs[head];
        head += 1;
        for (gi, &g) in gens.iter().enumerate() {
            let f = k.mul(e, g);
            if f != 0 && word[f].0 == usize::MAX {
                word[f] = (e, gi);
                bfs.push(f);
            }
        }
    }

    let mut out = Vec::new();
    let mut images = vec![0usize; gens.len()];
    fn rec(
        k: &FiniteGroup,
        a: &AbelianGroup,
        auts: &[Vec<usize>],
        aut_orders: &[usize],
        gen_orders: &[usize],
        bfs: &[usize],
        word: &[(usize, usize)],
        images: &mut Vec<usize>,
        depth: usize,
        out: &mut Vec<GroupAction>,
    ) {
        if depth == images.len() {
            // Expand to a full map and verify the homomorphism property.
            let id: Vec<usize> = (0..a.order()).collect();
            let mut maps: Vec<Vec<usize>> = vec![id; k.order()];
            for &e in &bfs[1..] {
                let (parent, gi) = word[e];
                let img = &auts[images[gi]];
                // Left action: maps[parent · gen] = maps[parent] ∘ img.
                let composed: Vec<usize> =
                    (0..a.order()).map(|x| maps[parent][img[x]]).collect();
                maps[e] = composed;
            }
            for k1 in 0..k.order() {
                for k2 in 0..k.order() {
                    let prod = &maps[k.mul(k1, k2)];
                    let a2 = &maps[k2];
                    let a1 = &maps[k1];
                    for x in 0..a.order() {
                        if prod[x] != a1[a2[x]] {
                            return;
                        }
                    }
                }
            }
            out.push(GroupAction {
                side: ActionSide::Left,
                maps,
            });
            return;
        }
        for (ai, _) in auts.iter().enumerate() {
            if gen_orders[depth] % aut_orders[ai] != 0 {
                continue;
            }
            images[depth] = ai;
            rec(
                k, a, auts, aut_orders, gen_orders, bfs, word, images, depth + 1, out,
            );
        }
    }
    rec(
        k,
        a,
        &auts,
        &aut_orders,
        &gen_orders,
        &bfs,
        &word,
        &mut images,
        0,
        &mut out,
    );
    out
}
