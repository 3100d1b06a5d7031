//! Finite groups as multiplication tables.
//!
//! Elements are the indices `0..order` with `0` the identity. The table is
//! validated on construction: Latin square, two-sided identity at index 0,
//! associativity on all triples, and existence of inverses. Everything else
//! in the crate builds on this representation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    /// Row-major: `table[g * order + h]` is the product g·h.
    table: Vec<usize>,
    inverse: Vec<usize>,
}

/// Serialized form: `{"label": str, "order": n, "table": [[int]]}`.
#[derive(Serialize, Deserialize)]
pub struct GroupJson {
    pub label: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn from_table(label: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            if row.len() != n {
                return Err(Error::InvalidTable("table is not square".into()));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidTable(format!("entry {v} out of range")));
                }
                flat.push(v);
            }
        }
        Self::from_flat_table(label, n, flat)
    }

    pub fn from_flat_table(label: impl Into<String>, n: usize, table: Vec<usize>) -> Result<Self> {
        assert_eq!(table.len(), n * n);
        // Latin square.
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                let r = table[i * n + j];
                let c = table[j * n + i];
                if seen_row[r] || seen_col[c] {
                    return Err(Error::InvalidTable(format!(
                        "row or column {i} repeats an element"
                    )));
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        // Identity at index 0.
        for g in 0..n {
            if table[g] != g || table[g * n] != g {
                return Err(Error::InvalidTable("index 0 is not a two-sided identity".into()));
            }
        }
        // Associativity.
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for g in 0..n {
            for h in 0..n {
                if table[g * n + h] == 0 && table[h * n + g] == 0 {
                    inverse[g] = h;
                }
            }
            if inverse[g] == usize::MAX {
                return Err(Error::InvalidTable(format!("element {g} has no inverse")));
            }
        }
        Ok(FiniteGroup {
            label: label.into(),
            order: n,
            table,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            label: "1".into(),
            order: 1,
            table: vec![0],
            inverse: vec![0],
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut acc = g;
        let mut k = 1;
        while acc != 0 {
            acc = self.mul(acc, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        for g in 0..self.order {
            for h in 0..g {
                if self.mul(g, h) != self.mul(h, g) {
                    return false;
                }
            }
        }
        true
    }

    pub fn conjugate(&self, g: usize, by: usize) -> usize {
        self.mul(self.mul(by, g), self.inv(by))
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|x| self.conjugate(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&g| (0..self.order).all(|h| self.mul(g, h) == self.mul(h, g)))
            .collect()
    }

    /// Commutator subgroup, as a sorted element set.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        for g in 0..self.order {
            for h in 0..self.order {
                let c = self.mul(
                    self.mul(g, h),
                    self.inv(self.mul(h, g)),
                );
                gens.push(c);
            }
        }
        crate::group::subgroup::closure(self, &gens)
    }

    /// Cheap isomorphism invariant used to prune searches and index the
    /// catalog: order, element-order multiset, sorted conjugacy class sizes,
    /// center size, and the order of the derived subgroup.
    pub fn fingerprint(&self) -> Fingerprint {
        let mut orders: Vec<usize> = (0..self.order).map(|g| self.element_order(g)).collect();
        orders.sort_unstable();
        let mut class_sizes: Vec<usize> =
            self.conjugacy_classes().iter().map(|c| c.len()).collect();
        class_sizes.sort_unstable();
        Fingerprint {
            order: self.order,
            element_orders: orders,
            class_sizes,
            center: self.center().len(),
            derived: self.derived_subgroup().len(),
        }
    }

    /// A deterministic generating sequence: scan elements in index order and
    /// keep those that enlarge the generated subgroup.
    pub fn generating_sequence(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut have = vec![false; self.order];
        have[0] = true;
        let mut count = 1;
        for g in 1..self.order {
            if have[g] {
                continue;
            }
            gens.push(g);
            let closed = crate::group::subgroup::closure_from(self, &have, g);
            for c in closed {
                if !have[c] {
                    have[c] = true;
                    count += 1;
                }
            }
            if count == self.order {
                break;
            }
        }
        gens
    }

    /// Relabel elements by a permutation `p` (new index `p[g]` for old `g`).
    /// `p[0]` must be 0 so the identity stays at index 0.
    pub fn relabel(&self, p: &[usize], label: impl Into<String>) -> Result<Self> {
        assert_eq!(p.len(), self.order);
        assert_eq!(p[0], 0, "identity must stay at index 0");
        let n = self.order;
        let mut table = vec![0usize; n * n];
        for g in 0..n {
            for h in 0..n {
                table[p[g] * n + p[h]] = p[self.mul(g, h)];
            }
        }
        Self::from_flat_table(label, n, table)
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            label: self.label.clone(),
            order: self.order,
            table: (0..self.order)
                .map(|g| self.table[g * self.order..(g + 1) * self.order].to_vec())
                .collect(),
        }
    }

    pub fn from_json(j: &GroupJson) -> Result<Self> {
        if j.table.len() != j.order {
            return Err(Error::BadInput("declared order disagrees with the table".into()));
        }
        Self::from_table(j.label.clone(), j.table.clone())
    }

    /// Stable content hash of the table, used as a memo key.
    pub fn table_hash(&self) -> u64 {
        // FNV-1a over the flattened table; stable across runs and platforms.
        let mut h: u64 = 0xcbf29ce484222325;
        for &v in &self.table {
            h ^= v as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        h ^= self.order as u64;
        h.wrapping_mul(0x100000001b3)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub order: usize,
    pub element_orders: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub center: usize,
    pub derived: usize,
}

/// The cyclic group ℤ/n.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let mut table = vec![0usize; n * n];
    for g in 0..n {
        for h in 0..n {
            table[g * n + h] = (g + h) % n;
        }
    }
    FiniteGroup::from_flat_table(format!("Z/{n}"), n, table).expect("cyclic table is valid")
}

/// Direct product with pair encoding `(a, b) -> a * |B| + b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut table = vec![0usize; n * n];
    for ga in 0..na {
        for gb in 0..nb {
            let g = ga * nb + gb;
            for ha in 0..na {
                for hb in 0..nb {
                    let h = ha * nb + hb;
                    table[g * n + h] = a.mul(ga, ha) * nb + b.mul(gb, hb);
                }
            }
        }
    }
    FiniteGroup::from_flat_table(format!("{}x{}", a.label(), b.label()), n, table)
        .expect("product table is valid")
}
