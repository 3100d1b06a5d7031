//! Isomorphism testing and automorphism enumeration by backtracking over
//! generator images, pruned by element orders and partial closure sizes.

use crate::group::finite::FiniteGroup;
use crate::group::subgroup::closure;

/// How each element decomposes over a generating sequence: `word[e] = (parent,
/// gen_index)` with `e = parent · gens[gen_index]`, discovered breadth-first.
struct Words {
    gens: Vec<usize>,
    order: Vec<usize>,
    word: Vec<(usize, usize)>,
}

fn words(g: &FiniteGroup) -> Words {
    let gens = g.generating_sequence();
    let n = g.order();
    let mut word = vec![(usize::MAX, usize::MAX); n];
    let mut order = Vec::with_capacity(n);
    word[0] = (0, usize::MAX);
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let e = order[head];
        head += 1;
        for (gi, &gen) in gens.iter().enumerate() {
            let f = g.mul(e, gen);
            if word[f].0 == usize::MAX && f != 0 {
                word[f] = (e, gi);
                order.push(f);
            }
        }
    }
    Words { gens, order, word }
}

/// Expand generator images into a full map using the word decomposition,
/// then check it is a bijective homomorphism.
fn try_build(
    g: &FiniteGroup,
    h: &FiniteGroup,
    w: &Words,
    images: &[usize],
) -> Option<Vec<usize>> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    for &e in &w.order[1..] {
        let (parent, gi) = w.word[e];
        map[e] = h.mul(map[parent], images[gi]);
    }
    let mut seen = vec![false; n];
    for &m in &map {
        if m == usize::MAX || seen[m] {
            return None;
        }
        seen[m] = true;
    }
    for a in 0..n {
        for b in 0..n {
            if map[g.mul(a, b)] != h.mul(map[a], map[b]) {
                return None;
            }
        }
    }
    Some(map)
}

fn search(g: &FiniteGroup, h: &FiniteGroup, all: bool) -> Vec<Vec<usize>> {
    if g.order() != h.order() {
        return Vec::new();
    }
    if g.order() == 1 {
        return vec![vec![0]];
    }
    if g.fingerprint() != h.fingerprint() {
        return Vec::new();
    }
    let w = words(g);
    let n = g.order();
    // Subgroup sizes generated by each generator prefix, for pruning.
    let mut prefix_sizes = Vec::with_capacity(w.gens.len());
    for d in 1..=w.gens.len() {
        prefix_sizes.push(closure(g, &w.gens[..d]).len());
    }
    let gen_orders: Vec<usize> = w.gens.iter().map(|&x| g.element_order(x)).collect();
    let mut found = Vec::new();
    let mut images = vec![0usize; w.gens.len()];

    fn rec(
        g: &FiniteGroup,
        h: &FiniteGroup,
        w: &Words,
        prefix_sizes: &[usize],
        gen_orders: &[usize],
        images: &mut Vec<usize>,
        depth: usize,
        all: bool,
        found: &mut Vec<Vec<usize>>,
    ) {
        if depth == w.gens.len() {
            if let Some(map) = try_build(g, h, w, images) {
                found.push(map);
            }
            return;
        }
        for cand in 1..h.order() {
            if h.element_order(cand) != gen_orders[depth] {
                continue;
            }
            images[depth] = cand;
            if closure(h, &images[..=depth]).len() == prefix_sizes[depth] {
                rec(g, h, w, prefix_sizes, gen_orders, images, depth + 1, all, found);
                if !all && !found.is_empty() {
                    return;
                }
            }
        }
    }

    rec(
        g,
        h,
        &w,
        &prefix_sizes,
        &gen_orders,
        &mut images,
        0,
        all,
        &mut found,
    );
    debug_assert!(found.iter().all(|m| m.len() == n));
    found
}

/// First isomorphism G -> H in the deterministic search order, if any.
pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    search(g, h, false).into_iter().next()
}

/// All automorphisms of G, as permutations of element indices.
pub fn automorphisms(g: &FiniteGroup) -> Vec<Vec<usize>> {
    search(g, g, true)
}
