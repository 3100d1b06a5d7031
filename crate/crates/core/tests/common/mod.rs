//! Shared helpers for the integration suites: seeded random cochains,
//! extension iteration, and independent brute-force oracles.

#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use morita_core::cochain::bicomplex::BiCochain;
use morita_core::cochain::CircleCochain;
use morita_core::group::extension::{extension_class, ExtensionData};
use morita_core::group::finite::FiniteGroup;
use morita_core::group::subgroup::subgroups;
use morita_core::group::catalog;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_circle(
    rng: &mut ChaCha8Rng,
    base: &Arc<FiniteGroup>,
    arity: usize,
    modulus: i64,
) -> CircleCochain {
    let mut f = CircleCochain::zero(base.clone(), arity, modulus);
    for v in f.values.iter_mut() {
        *v = rng.gen_range(0..modulus);
    }
    f
}

pub fn random_bicochain(
    rng: &mut ChaCha8Rng,
    ext: &Arc<ExtensionData>,
    p: usize,
    q: usize,
    modulus: i64,
) -> BiCochain {
    let mut f = BiCochain::zero(ext.clone(), p, q, modulus);
    for v in f.values.iter_mut() {
        *v = rng.gen_range(0..modulus);
    }
    f
}

/// Every extension (G, normal abelian A, 1 < |A| < |G|) over catalog groups
/// of order ≤ `max_order`, in crossed-product coordinates.
pub fn catalog_extensions(max_order: usize) -> Vec<Arc<ExtensionData>> {
    let mut out = Vec::new();
    for entry in catalog::catalog().entries() {
        let g = &entry.group;
        if g.order() > max_order || g.order() < 4 {
            continue;
        }
        for sub in subgroups(g) {
            if !sub.normal || !sub.abelian {
                continue;
            }
            if sub.elements.len() == 1 || sub.elements.len() == g.order() {
                continue;
            }
            let (ext, _) = extension_class(g, &sub.elements).expect("valid extension");
            out.push(Arc::new(ext));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Independent oracle machinery. Everything below deliberately avoids the
// production linear algebra: its own tuple indexing, its own differential,
// depth-first cocycle enumeration, and subgroup closure for coboundaries.
// ---------------------------------------------------------------------------

fn tuple_count(order: usize, arity: usize) -> usize {
    (order - 1).pow(arity as u32)
}

fn tuple_at(order: usize, arity: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0usize; arity];
    for i in (0..arity).rev() {
        t[i] = idx % (order - 1) + 1;
        idx /= order - 1;
    }
    t
}

fn tuple_index(order: usize, t: &[usize]) -> Option<usize> {
    let mut idx = 0usize;
    for &g in t {
        if g == 0 {
            return None;
        }
        idx = idx * (order - 1) + (g - 1);
    }
    Some(idx)
}

/// Rows of the bar differential C^q -> C^{q+1}: per output tuple, the list
/// of (input coordinate, sign) terms.
pub fn delta_rows(g: &FiniteGroup, q: usize) -> Vec<Vec<(usize, i64)>> {
    let n = g.order();
    let mut rows = Vec::with_capacity(tuple_count(n, q + 1));
    for out in 0..tuple_count(n, q + 1) {
        let t = tuple_at(n, q + 1, out);
        let mut terms: Vec<(usize, i64)> = Vec::new();
        let mut push = |idx: Option<usize>, sign: i64| {
            if let Some(i) = idx {
                terms.push((i, sign));
            }
        };
        push(tuple_index(n, &t[1..]), 1);
        for i in 0..q {
            let mut merged: Vec<usize> = Vec::with_capacity(q);
            merged.extend_from_slice(&t[..i]);
            merged.push(g.mul(t[i], t[i + 1]));
            merged.extend_from_slice(&t[i + 2..]);
            push(tuple_index(n, &merged), if i % 2 == 0 { -1 } else { 1 });
        }
        push(
            tuple_index(n, &t[..q]),
            if (q + 1) % 2 == 0 { 1 } else { -1 },
        );
        rows.push(terms);
    }
    rows
}

/// All normalized q-cocycles mod N, by depth-first assignment with row
/// constraints checked as soon as their support is complete.
pub fn enumerate_cocycles(g: &FiniteGroup, q: usize, n: i64) -> Vec<Vec<i64>> {
    let m = tuple_count(g.order(), q);
    let rows = delta_rows(g, q);
    // Group constraint rows by the largest input coordinate they touch.
    let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); m + 1];
    for (ri, row) in rows.iter().enumerate() {
        if row.is_empty() {
            continue;
        }
        let last = row.iter().map(|&(i, _)| i).max().unwrap();
        by_last[last].push(ri);
    }
    let mut out = Vec::new();
    let mut values = vec![0i64; m];
    fn rec(
        depth: usize,
        m: usize,
        n: i64,
        rows: &[Vec<(usize, i64)>],
        by_last: &[Vec<usize>],
        values: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if depth == m {
            out.push(values.clone());
            return;
        }
        'candidate: for v in 0..n {
            values[depth] = v;
            for &ri in &by_last[depth] {
                let s: i64 = rows[ri].iter().map(|&(i, c)| c * values[i]).sum();
                if s.rem_euclid(n) != 0 {
                    continue 'candidate;
                }
            }
            rec(depth + 1, m, n, rows, by_last, values, out);
        }
        values[depth] = 0;
    }
    if m == 0 {
        // Only the empty cochain; check the (vacuous) constraints.
        let ok = rows.iter().all(|r| r.is_empty());
        if ok {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, m, n, &rows, &by_last, &mut values, &mut out);
    out
}

/// The subgroup of (Z/N)^m generated by the given vectors, as a set.
pub fn subgroup_closure(gens: &[Vec<i64>], m: usize, n: i64) -> HashSet<Vec<i64>> {
    let mut set: HashSet<Vec<i64>> = HashSet::new();
    set.insert(vec![0i64; m]);
    let mut frontier: Vec<Vec<i64>> = vec![vec![0i64; m]];
    while let Some(x) = frontier.pop() {
        for gen in gens {
            let y: Vec<i64> = x
                .iter()
                .zip(gen)
                .map(|(&a, &b)| (a + b).rem_euclid(n))
                .collect();
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

/// All coboundaries mod N in degree q: closure of the images of the
/// one-coordinate generators of C^{q-1}.
pub fn enumerate_coboundaries(g: &FiniteGroup, q: usize, n: i64) -> HashSet<Vec<i64>> {
    let m_in = tuple_count(g.order(), q - 1);
    let m_out = tuple_count(g.order(), q);
    let rows = delta_rows(g, q - 1);
    let mut gens = Vec::new();
    for j in 0..m_in {
        let mut col = vec![0i64; m_out];
        for (ri, row) in rows.iter().enumerate() {
            for &(i, c) in row {
                if i == j {
                    col[ri] = (col[ri] + c).rem_euclid(n);
                }
            }
        }
        gens.push(col);
    }
    subgroup_closure(&gens, m_out, n)
}

/// Orders of H^q(G, ℚ/ℤ) for q = 1..=q_max by counting: |H^q mod N| =
/// |Z^q|/|B^q| and the long exact sequence of 0 -> Z/N -> ℚ/ℤ -> ℚ/ℤ -> 0
/// peels off the lower ℚ/ℤ-cohomology.
pub fn oracle_circle_orders(g: &FiniteGroup, q_max: usize) -> Vec<i64> {
    let n = g.order() as i64;
    let mut mod_n_orders = Vec::new();
    for q in 1..=q_max {
        let z = enumerate_cocycles(g, q, n).len() as i64;
        let b = enumerate_coboundaries(g, q, n).len() as i64;
        assert_eq!(z % b, 0);
        mod_n_orders.push(z / b);
    }
    let mut out = Vec::new();
    let mut prev = 1i64;
    for &h in &mod_n_orders {
        assert_eq!(h % prev, 0);
        let cur = h / prev;
        out.push(cur);
        prev = cur;
    }
    out
}

/// Structure of H^q(G, ℚ/ℤ) by counting element orders of the quotient of
/// the mod-N cocycles by the subgroup of classes that die in ℚ/ℤ (mod-N
/// coboundaries together with the connecting classes δ(z)/N).
pub fn oracle_circle_structure(g: &FiniteGroup, q: usize) -> Vec<i64> {
    let n = g.order() as i64;
    let z = enumerate_cocycles(g, q, n);
    let m_out = tuple_count(g.order(), q);
    let rows = delta_rows(g, q - 1);
    let mut gens: Vec<Vec<i64>> = Vec::new();
    // Mod-N coboundary generators.
    let m_in = tuple_count(g.order(), q - 1);
    for j in 0..m_in {
        let mut col = vec![0i64; m_out];
        for (ri, row) in rows.iter().enumerate() {
            for &(i, c) in row {
                if i == j {
                    col[ri] += c;
                }
            }
        }
        for v in col.iter_mut() {
            *v = v.rem_euclid(n);
        }
        gens.push(col);
    }
    // Connecting generators δ(z)/N over the lower cocycles.
    for zlow in enumerate_cocycles(g, q - 1, n) {
        let mut img = vec![0i64; m_out];
        for (ri, row) in rows.iter().enumerate() {
            let s: i64 = row.iter().map(|&(i, c)| c * zlow[i]).sum();
            assert_eq!(s.rem_euclid(n), 0);
            img[ri] = (s / n).rem_euclid(n);
        }
        gens.push(img);
    }
    let dies = subgroup_closure(&gens, m_out, n);
    // Order multiset of the quotient, counted without coset enumeration:
    // each coset is hit |dies| times.
    let mut order_counts: std::collections::BTreeMap<i64, i64> = Default::default();
    for f in &z {
        let mut mult = vec![0i64; m_out];
        let mut o = 1i64;
        loop {
            for (w, &v) in mult.iter_mut().zip(f) {
                *w = (*w + v).rem_euclid(n);
            }
            if dies.contains(&mult) {
                break;
            }
            o += 1;
        }
        *order_counts.entry(o).or_insert(0) += 1;
    }
    let total: i64 = order_counts.values().sum();
    let dies_len = dies.len() as i64;
    assert_eq!(total % dies_len, 0);
    let h_order = total / dies_len;
    // Match the order multiset against candidate abelian groups.
    for factors in abelian_candidates(h_order) {
        if candidate_order_multiset(&factors) == quotient_multiset(&order_counts, dies_len) {
            return factors;
        }
    }
    panic!("no abelian group matches the oracle order multiset");
}

fn quotient_multiset(
    counts: &std::collections::BTreeMap<i64, i64>,
    dies: i64,
) -> std::collections::BTreeMap<i64, i64> {
    counts
        .iter()
        .map(|(&o, &c)| {
            assert_eq!(c % dies, 0);
            (o, c / dies)
        })
        .collect()
}

fn candidate_order_multiset(factors: &[i64]) -> std::collections::BTreeMap<i64, i64> {
    let mut out: std::collections::BTreeMap<i64, i64> = Default::default();
    let mut cur = vec![0i64; factors.len()];
    loop {
        let o = cur
            .iter()
            .zip(factors)
            .map(|(&c, &d)| {
                let mut k = 1i64;
                while (c * k) % d != 0 {
                    k += 1;
                }
                k
            })
            .fold(1i64, num_lcm);
        *out.entry(o).or_insert(0) += 1;
        let mut i = factors.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < factors[i] {
                break;
            }
            cur[i] = 0;
        }
    }
}

fn num_lcm(a: i64, b: i64) -> i64 {
    let mut x = a.max(b);
    let (lo, hi) = (a.min(b), a.max(b));
    while x % lo != 0 {
        x += hi;
    }
    x
}

fn abelian_candidates(order: i64) -> Vec<Vec<i64>> {
    fn rec(order: i64, min: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if order == 1 {
            // cur is ascending; keep only chains d1 | d2 | ...
            if cur.windows(2).all(|w| w[1] % w[0] == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let mut d = min;
        while d <= order {
            if order % d == 0 {
                cur.push(d);
                rec(order / d, d, cur, out);
                cur.pop();
            }
            d += 1;
        }
    }
    if order == 1 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    rec(order, 2, &mut Vec::new(), &mut out);
    // Descending construction gives ascending chains after reversal; dedupe.
    out.sort();
    out.dedup();
    out
}
