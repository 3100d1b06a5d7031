//! Structure of a finite abelian group presented by generator orders and
//! relation columns, via integer Smith normal form.

use crate::linalg::int::snf_int;

/// H = (⊕ᵢ ℤ/orderᵢ) / ⟨relations⟩ in coordinates: invariant factors,
/// projection of generator-coordinate vectors to H-coordinates, and lifts of
/// the H-basis back to generator coordinates.
pub struct QuotientStructure {
    pub factors: Vec<i64>,
    s: usize,
    kept: Vec<usize>,
    u: Vec<i128>,
    uinv: Vec<i128>,
}

pub fn quotient_structure(orders: &[i64], relations: &[Vec<i64>]) -> QuotientStructure {
    let s = orders.len();
    let t = relations.len();
    if s == 0 {
        return QuotientStructure {
            factors: Vec::new(),
            s,
            kept: Vec::new(),
            u: Vec::new(),
            uinv: Vec::new(),
        };
    }
    let cols = s + t;
    let mut m = vec![0i128; s * cols];
    for i in 0..s {
        m[i * cols + i] = orders[i] as i128;
    }
    for (j, rel) in relations.iter().enumerate() {
        debug_assert_eq!(rel.len(), s);
        for i in 0..s {
            m[i * cols + s + j] = rel[i] as i128;
        }
    }
    let snf = snf_int(m, s, cols);
    let mut kept = Vec::new();
    let mut factors = Vec::new();
    for (i, &d) in snf.diag.iter().enumerate() {
        debug_assert!(d > 0, "presentation lattice must have full rank");
        if d > 1 {
            kept.push(i);
            factors.push(d as i64);
        }
    }
    QuotientStructure {
        factors,
        s,
        kept,
        u: snf.u,
        uinv: snf.uinv,
    }
}

impl QuotientStructure {
    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Project generator coordinates to H-coordinates.
    pub fn project(&self, x: &[i64]) -> Vec<i64> {
        debug_assert_eq!(x.len(), self.s);
        self.kept
            .iter()
            .zip(&self.factors)
            .map(|(&i, &d)| {
                let mut acc: i128 = 0;
                for c in 0..self.s {
                    acc += self.u[i * self.s + c] * x[c] as i128;
                }
                acc.rem_euclid(d as i128) as i64
            })
            .collect()
    }

    /// Generator-coordinate lift of the j-th H-basis element, with
    /// coordinate i reduced modulo `orders[i]`.
    pub fn basis_lift(&self, j: usize, orders: &[i64]) -> Vec<i64> {
        let col = self.kept[j];
        (0..self.s)
            .map(|i| {
                (self.uinv[i * self.s + col]).rem_euclid(orders[i] as i128) as i64
            })
            .collect()
    }
}
