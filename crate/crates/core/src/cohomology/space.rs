//! Boundary matrices of the normalized bar complexes in tuple coordinates.
//!
//! Three coefficient families are supported: ℚ/ℤ with trivial action over
//! any base group, Map(K, ℚ/ℤ) over the total group of an extension, and a
//! finite module over K (A, 𝔸, or any coordinate module with action
//! matrices). Finite-module cochains are embedded into a common modulus L:
//! the coordinate for component j holds c_j · L/d_j.

use crate::cochain::Tuples;
use crate::group::abelian::AbelianGroup;
use crate::group::action::{ActionSide, GroupAction};
use crate::group::extension::ExtensionData;
use crate::group::finite::FiniteGroup;

/// Integer matrix of a differential C^q -> C^{q+1}, as signed triplets.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub rows: usize,
    pub cols: usize,
    pub triplets: Vec<(u32, u32, i64)>,
}

impl BoundaryMatrix {
    /// y = T x over the integers.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        debug_assert_eq!(x.len(), self.cols);
        let mut y = vec![0i64; self.rows];
        for &(r, c, v) in &self.triplets {
            y[r as usize] += v * x[c as usize];
        }
        y
    }

    /// Column c as a dense integer vector.
    pub fn column(&self, c: usize) -> Vec<i64> {
        let mut y = vec![0i64; self.rows];
        for &(r, cc, v) in &self.triplets {
            if cc as usize == c {
                y[r as usize] += v;
            }
        }
        y
    }
}

/// δ for normalized cochains with trivial ℚ/ℤ coefficients.
pub fn qz_boundary(group: &FiniteGroup, q: usize) -> BoundaryMatrix {
    let in_t = Tuples::new(group.order(), q);
    let out_t = Tuples::new(group.order(), q + 1);
    let mut triplets = Vec::new();
    let mut tup = vec![0usize; q + 1];
    let mut merged = vec![0usize; q];
    for row in 0..out_t.count() {
        out_t.write(row, &mut tup);
        if let Some(c) = in_t.index(&tup[1..]) {
            triplets.push((row as u32, c as u32, 1));
        }
        for i in 0..q {
            for (w, j) in merged.iter_mut().zip((0..q + 1).filter(|&j| j != i)) {
                *w = tup[j];
            }
            merged[i] = group.mul(tup[i], tup[i + 1]);
            if let Some(c) = in_t.index(&merged) {
                let sign = if i % 2 == 0 { -1 } else { 1 };
                triplets.push((row as u32, c as u32, sign));
            }
        }
        if let Some(c) = in_t.index(&tup[..q]) {
            let sign = if (q + 1) % 2 == 0 { 1 } else { -1 };
            triplets.push((row as u32, c as u32, sign));
        }
    }
    BoundaryMatrix {
        rows: out_t.count(),
        cols: in_t.count(),
        triplets,
    }
}

/// δ_G for cochains on G with Map(K, ℚ/ℤ) coefficients. Coordinates are
/// indexed tuple-major with the K-point fastest, matching `BiCochain` at
/// K-degree zero.
pub fn mapk_boundary(ext: &ExtensionData, q: usize) -> BoundaryMatrix {
    let g = &ext.group;
    let k_ord = ext.k.order();
    let in_t = Tuples::new(g.order(), q);
    let out_t = Tuples::new(g.order(), q + 1);
    let mut triplets = Vec::new();
    let mut tup = vec![0usize; q + 1];
    let mut merged = vec![0usize; q];
    for ti in 0..out_t.count() {
        out_t.write(ti, &mut tup);
        for x in 0..k_ord {
            let row = (ti * k_ord + x) as u32;
            if let Some(c) = in_t.index(&tup[1..]) {
                let col = c * k_ord + ext.coset_act(x, tup[0]);
                triplets.push((row, col as u32, 1));
            }
            for i in 0..q {
                for (w, j) in merged.iter_mut().zip((0..q + 1).filter(|&j| j != i)) {
                    *w = tup[j];
                }
                merged[i] = g.mul(tup[i], tup[i + 1]);
                if let Some(c) = in_t.index(&merged) {
                    let sign = if i % 2 == 0 { -1 } else { 1 };
                    triplets.push((row, (c * k_ord + x) as u32, sign));
                }
            }
            if let Some(c) = in_t.index(&tup[..q]) {
                let sign = if (q + 1) % 2 == 0 { 1 } else { -1 };
                triplets.push((row, (c * k_ord + x) as u32, sign));
            }
        }
    }
    BoundaryMatrix {
        rows: out_t.count() * k_ord,
        cols: in_t.count() * k_ord,
        triplets,
    }
}

/// A finite abelian coefficient module over K: coordinate orders and one
/// integer matrix per group element (column j = image of the j-th
/// generator in natural coordinates).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    pub moduli: Vec<i64>,
    pub matrices: Vec<Vec<i64>>,
    pub side: ActionSide,
}

impl FiniteModule {
    pub fn from_action(carrier: &AbelianGroup, action: &GroupAction, k_order: usize) -> Self {
        let r = carrier.rank();
        let matrices = (0..k_order)
            .map(|k| {
                let mut m = vec![0i64; r * r];
                for j in 0..r {
                    let img = action.act(k, carrier.generator(j));
                    let t = carrier.tuple_of(img);
                    for i in 0..r {
                        m[i * r + j] = t[i] as i64;
                    }
                }
                m
            })
            .collect();
        FiniteModule {
            moduli: carrier.factors().iter().map(|&d| d as i64).collect(),
            matrices,
            side: action.side(),
        }
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn lcm_modulus(&self) -> i64 {
        self.moduli.iter().fold(1, |acc, &d| crate::circle::lcm(acc, d))
    }

    /// Entry of the action matrix transported to scaled coordinates:
    /// T̃_ij = M_ij · d_j / d_i, always an integer for an additive map.
    fn scaled_entry(&self, k: usize, i: usize, j: usize) -> i64 {
        let m = self.matrices[k][i * self.rank() + j];
        let num = m * self.moduli[j];
        debug_assert_eq!(num % self.moduli[i], 0, "non-additive action matrix");
        num / self.moduli[i]
    }

    /// Stable content hash for memoization.
    pub fn content_hash(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |v: u64| {
            h ^= v;
            h = h.wrapping_mul(0x100000001b3);
        };
        for &d in &self.moduli {
            eat(d as u64);
        }
        for m in &self.matrices {
            for &v in m {
                eat(v as u64 ^ 0x5555);
            }
        }
        eat(match self.side {
            ActionSide::Left => 1,
            ActionSide::Right => 2,
        });
        h
    }
}

/// δ_K for normalized cochains on K with values in a finite module, in the
/// scaled coordinates (coordinate = tuple · rank + component). The twisted
/// term is the first for left modules and the last for right modules.
pub fn module_boundary(k: &FiniteGroup, module: &FiniteModule, p: usize) -> BoundaryMatrix {
    let r = module.rank();
    let in_t = Tuples::new(k.order(), p);
    let out_t = Tuples::new(k.order(), p + 1);
    let mut triplets = Vec::new();
    let mut tup = vec![0usize; p + 1];
    let mut merged = vec![0usize; p];
    for ti in 0..out_t.count() {
        out_t.write(ti, &mut tup);
        let row0 = ti * r;
        // Leading term f(k_2, ..., k_{p+1}), twisted for left modules.
        if let Some(c) = in_t.index(&tup[1..]) {
            match module.side {
                ActionSide::Left => {
                    for i in 0..r {
                        for j in 0..r {
                            let e = module.scaled_entry(tup[0], i, j);
                            if e != 0 {
                                triplets.push(((row0 + i) as u32, (c * r + j) as u32, e));
                            }
                        }
                    }
                }
                ActionSide::Right => {
                    for i in 0..r {
                        triplets.push(((row0 + i) as u32, (c * r + i) as u32, 1));
                    }
                }
            }
        }
        for m in 0..p {
            for (w, j) in merged.iter_mut().zip((0..p + 1).filter(|&j| j != m)) {
                *w = tup[j];
            }
            merged[m] = k.mul(tup[m], tup[m + 1]);
            if let Some(c) = in_t.index(&merged) {
                let sign = if m % 2 == 0 { -1 } else { 1 };
                for i in 0..r {
                    triplets.push(((row0 + i) as u32, (c * r + i) as u32, sign));
                }
            }
        }
        // Trailing term f(k_1, ..., k_p), twisted for right modules.
        if let Some(c) = in_t.index(&tup[..p]) {
            let sign = if (p + 1) % 2 == 0 { 1 } else { -1 };
            match module.side {
                ActionSide::Right => {
                    for i in 0..r {
                        for j in 0..r {
                            let e = module.scaled_entry(tup[p], i, j);
                            if e != 0 {
                                triplets.push(((row0 + i) as u32, (c * r + j) as u32, sign * e));
                            }
                        }
                    }
                }
                ActionSide::Left => {
                    for i in 0..r {
                        triplets.push(((row0 + i) as u32, (c * r + i) as u32, sign));
                    }
                }
            }
        }
    }
    BoundaryMatrix {
        rows: out_t.count() * r,
        cols: in_t.count() * r,
        triplets,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{CircleCochain, ModCochain};
    use crate::group::extension::{crossed_product, PairTable};
    use crate::group::finite::cyclic;
    use std::sync::Arc;

    #[test]
    fn qz_matrix_agrees_with_value_level_delta() {
        let g = Arc::new(cyclic(4));
        let t = qz_boundary(&g, 2);
        let mut state = 3u64;
        for _ in 0..10 {
            let mut f = CircleCochain::zero(g.clone(), 2, 8);
            for v in f.values.iter_mut() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                *v = ((state >> 33) % 8) as i64;
            }
            let by_matrix: Vec<i64> = t.apply(&f.values).iter().map(|&v| v.rem_euclid(8)).collect();
            assert_eq!(by_matrix, f.delta().values);
        }
    }

    #[test]
    fn mapk_matrix_agrees_with_bicochain_delta() {
        let a = crate::group::abelian::AbelianGroup::from_factors(&[2]);
        let k = cyclic(2);
        let act = GroupAction::trivial(&k, &a, ActionSide::Left);
        let mut f0 = PairTable::zero(2);
        f0.set(1, 1, 1);
        let ext = Arc::new(crossed_product(&a, &k, &act, &f0).unwrap());
        let t = mapk_boundary(&ext, 1);
        let mut state = 9u64;
        for _ in 0..10 {
            let mut f = crate::cochain::bicomplex::BiCochain::zero(ext.clone(), 0, 1, 4);
            for v in f.values.iter_mut() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                *v = ((state >> 33) % 4) as i64;
            }
            let by_matrix: Vec<i64> = t.apply(&f.values).iter().map(|&v| v.rem_euclid(4)).collect();
            assert_eq!(by_matrix, f.delta_g().values);
        }
    }

    #[test]
    fn module_matrix_agrees_with_mod_cochain_delta() {
        let k = Arc::new(cyclic(2));
        let a = Arc::new(crate::group::abelian::AbelianGroup::from_factors(&[4]));
        let inv: Vec<usize> = (0..4).map(|x| a.neg(x)).collect();
        for side in [ActionSide::Left, ActionSide::Right] {
            let act = Arc::new(
                GroupAction::new(&k, &a, side, vec![(0..4).collect(), inv.clone()]).unwrap(),
            );
            let module = FiniteModule::from_action(&a, &act, k.order());
            let l = module.lcm_modulus();
            let t = module_boundary(&k, &module, 1);
            let mut state = 17u64;
            for _ in 0..10 {
                let mut f = ModCochain::zero(k.clone(), a.clone(), act.clone(), 1);
                for v in f.values.iter_mut() {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                    *v = ((state >> 33) % 4) as usize;
                }
                let by_matrix: Vec<i64> = t
                    .apply(&f.scaled_vector(l))
                    .iter()
                    .map(|&v| v.rem_euclid(l))
                    .collect();
                assert_eq!(by_matrix, f.delta_k().scaled_vector(l));
            }
        }
    }
}
