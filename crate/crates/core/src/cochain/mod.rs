//! Normalized cochains.
//!
//! All cochains are normalized: the value is zero whenever an argument is
//! the identity, and storage only keeps values on tuples of non-identity
//! elements, so normalization is a property of the representation. Tuple
//! order is row-major with the first argument most significant; see
//! docs/FORMATS.md for the exact layout contract.

pub mod bicomplex;
pub mod builders;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::circle::{lcm, CircleValue};
use crate::error::{Error, Result};
use crate::group::abelian::AbelianGroup;
use crate::group::action::{ActionSide, GroupAction};
use crate::group::extension::PairTable;
use crate::group::finite::FiniteGroup;

/// Indexing of q-tuples of non-identity elements of a group of order n:
/// (n-1)^q tuples, first component most significant.
#[derive(Clone, Copy, Debug)]
pub struct Tuples {
    nm1: usize,
    arity: usize,
    count: usize,
}

impl Tuples {
    pub fn new(order: usize, arity: usize) -> Self {
        let nm1 = order - 1;
        let count = nm1.pow(arity as u32);
        Tuples { nm1, arity, count }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// None when some component is the identity.
    pub fn index(&self, t: &[usize]) -> Option<usize> {
        debug_assert_eq!(t.len(), self.arity);
        let mut idx = 0usize;
        for &g in t {
            if g == 0 {
                return None;
            }
            idx = idx * self.nm1 + (g - 1);
        }
        Some(idx)
    }

    pub fn write(&self, mut idx: usize, out: &mut [usize]) {
        debug_assert_eq!(out.len(), self.arity);
        for i in (0..self.arity).rev() {
            out[i] = idx % self.nm1 + 1;
            idx /= self.nm1;
        }
    }

    pub fn at(&self, idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.arity];
        self.write(idx, &mut out);
        out
    }
}

/// A normalized q-cochain with values in (1/modulus)ℤ/ℤ and trivial action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleCochain {
    pub base: Arc<FiniteGroup>,
    pub arity: usize,
    pub modulus: i64,
    pub values: Vec<i64>,
}

/// Serialized cochain: values in row-major normalized-tuple order.
#[derive(Serialize, Deserialize)]
pub struct CochainJson {
    pub base: String,
    pub arity: usize,
    pub coefficients: String,
    pub modulus: i64,
    pub values: Vec<i64>,
}

impl CircleCochain {
    pub fn zero(base: Arc<FiniteGroup>, arity: usize, modulus: i64) -> Self {
        let t = Tuples::new(base.order(), arity);
        CircleCochain {
            base,
            arity,
            modulus,
            values: vec![0; t.count()],
        }
    }

    pub fn tuples(&self) -> Tuples {
        Tuples::new(self.base.order(), self.arity)
    }

    pub fn value(&self, t: &[usize]) -> i64 {
        match self.tuples().index(t) {
            Some(i) => self.values[i],
            None => 0,
        }
    }

    pub fn circle(&self, t: &[usize]) -> CircleValue {
        CircleValue::new(self.value(t), self.modulus)
    }

    pub fn set(&mut self, t: &[usize], v: i64) {
        let i = self.tuples().index(t).expect("cannot set an identity tuple");
        self.values[i] = v.rem_euclid(self.modulus);
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Re-express with a larger modulus (the current one must divide it).
    pub fn lift(&self, modulus: i64) -> Self {
        assert!(modulus % self.modulus == 0);
        let f = modulus / self.modulus;
        CircleCochain {
            base: self.base.clone(),
            arity: self.arity,
            modulus,
            values: self.values.iter().map(|&v| v * f).collect(),
        }
    }

    pub fn combine(&self, other: &Self, sign: i64) -> Self {
        assert_eq!(self.arity, other.arity);
        assert_eq!(self.base.order(), other.base.order());
        let m = lcm(self.modulus, other.modulus);
        let (a, b) = (m / self.modulus, m / other.modulus);
        CircleCochain {
            base: self.base.clone(),
            arity: self.arity,
            modulus: m,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&x, &y)| (x * a + sign * y * b).rem_euclid(m))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    pub fn neg(&self) -> Self {
        CircleCochain {
            base: self.base.clone(),
            arity: self.arity,
            modulus: self.modulus,
            values: self.values.iter().map(|&v| (-v).rem_euclid(self.modulus)).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        CircleCochain {
            base: self.base.clone(),
            arity: self.arity,
            modulus: self.modulus,
            values: self
                .values
                .iter()
                .map(|&v| (v * c.rem_euclid(self.modulus)).rem_euclid(self.modulus))
                .collect(),
        }
    }

    /// The bar differential for trivial coefficients.
    pub fn delta(&self) -> Self {
        let g = &self.base;
        let q = self.arity;
        let out_t = Tuples::new(g.order(), q + 1);
        let mut out = CircleCochain::zero(self.base.clone(), q + 1, self.modulus);
        let mut tup = vec![0usize; q + 1];
        let mut merged = vec![0usize; q];
        for idx in 0..out_t.count() {
            out_t.write(idx, &mut tup);
            let mut acc: i64 = self.value(&tup[1..]);
            for i in 0..q {
                for (w, j) in merged.iter_mut().zip((0..q + 1).filter(|&j| j != i)) {
                    *w = tup[j];
                }
                merged[i] = g.mul(tup[i], tup[i + 1]);
                let sign = if i % 2 == 0 { -1 } else { 1 };
                acc += sign * self.value(&merged);
            }
            let sign = if (q + 1) % 2 == 0 { 1 } else { -1 };
            acc += sign * self.value(&tup[..q]);
            out.values[idx] = acc.rem_euclid(self.modulus);
        }
        out
    }

    pub fn is_cocycle(&self) -> bool {
        self.delta().is_zero()
    }

    pub fn to_json(&self, coefficients: &str) -> CochainJson {
        CochainJson {
            base: self.base.label().to_string(),
            arity: self.arity,
            coefficients: coefficients.to_string(),
            modulus: self.modulus,
            values: self.values.clone(),
        }
    }
}

/// A normalized cochain on K with values in a finite abelian module (A with
/// a left action, or the dual 𝔸 with a right action). Values are element
/// indices of the carrier.
#[derive(Clone, Debug)]
pub struct ModCochain {
    pub k: Arc<FiniteGroup>,
    pub carrier: Arc<AbelianGroup>,
    pub action: Arc<GroupAction>,
    pub arity: usize,
    pub values: Vec<usize>,
}

impl ModCochain {
    pub fn zero(
        k: Arc<FiniteGroup>,
        carrier: Arc<AbelianGroup>,
        action: Arc<GroupAction>,
        arity: usize,
    ) -> Self {
        let t = Tuples::new(k.order(), arity);
        ModCochain {
            k,
            carrier,
            action,
            arity,
            values: vec![0; t.count()],
        }
    }

    pub fn tuples(&self) -> Tuples {
        Tuples::new(self.k.order(), self.arity)
    }

    pub fn value(&self, t: &[usize]) -> usize {
        match self.tuples().index(t) {
            Some(i) => self.values[i],
            None => 0,
        }
    }

    pub fn set(&mut self, t: &[usize], a: usize) {
        let i = self.tuples().index(t).expect("cannot set an identity tuple");
        self.values[i] = a;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (v, &w) in out.values.iter_mut().zip(&other.values) {
            *v = self.carrier.add(*v, w);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            *v = self.carrier.neg(*v);
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            let t = self.carrier.tuple_of(*v);
            let scaled: Vec<usize> = t
                .iter()
                .zip(self.carrier.factors())
                .map(|(&x, &d)| ((x as i64 * c).rem_euclid(d as i64)) as usize)
                .collect();
            *v = self.carrier.index_of(&scaled);
        }
        out
    }

    /// δ_K with the module's action: the twisted term is the first for a
    /// left module and the last for a right module.
    pub fn delta_k(&self) -> Self {
        let k = &self.k;
        let p = self.arity;
        let out_t = Tuples::new(k.order(), p + 1);
        let mut out = ModCochain::zero(
            self.k.clone(),
            self.carrier.clone(),
            self.action.clone(),
            p + 1,
        );
        let mut tup = vec![0usize; p + 1];
        let mut merged = vec![0usize; p];
        for idx in 0..out_t.count() {
            out_t.write(idx, &mut tup);
            let first = match self.action.side() {
                ActionSide::Left => self.action.act(tup[0], self.value(&tup[1..])),
                ActionSide::Right => self.value(&tup[1..]),
            };
            let mut acc = first;
            for i in 0..p {
                for (w, j) in merged.iter_mut().zip((0..p + 1).filter(|&j| j != i)) {
                    *w = tup[j];
                }
                merged[i] = k.mul(tup[i], tup[i + 1]);
                let v = self.value(&merged);
                let v = if i % 2 == 0 { self.carrier.neg(v) } else { v };
                acc = self.carrier.add(acc, v);
            }
            let last = match self.action.side() {
                ActionSide::Left => self.value(&tup[..p]),
                ActionSide::Right => self.action.act(tup[p], self.value(&tup[..p])),
            };
            let last = if (p + 1) % 2 == 1 {
                self.carrier.neg(last)
            } else {
                last
            };
            out.values[idx] = self.carrier.add(acc, last);
        }
        out
    }

    pub fn is_cocycle(&self) -> bool {
        self.delta_k().is_zero()
    }

    pub fn to_pair_table(&self) -> PairTable {
        assert_eq!(self.arity, 2);
        let nk = self.k.order();
        let mut pt = PairTable::zero(nk);
        for k1 in 0..nk {
            for k2 in 0..nk {
                pt.set(k1, k2, self.value(&[k1, k2]));
            }
        }
        pt
    }

    pub fn from_pair_table(
        k: Arc<FiniteGroup>,
        carrier: Arc<AbelianGroup>,
        action: Arc<GroupAction>,
        pt: &PairTable,
    ) -> Result<Self> {
        if !pt.is_normalized() {
            return Err(Error::NotACocycle("pair table is not normalized".into()));
        }
        let mut out = ModCochain::zero(k.clone(), carrier, action, 2);
        for k1 in 1..k.order() {
            for k2 in 1..k.order() {
                out.set(&[k1, k2], pt.get(k1, k2));
            }
        }
        Ok(out)
    }

    /// Engine coordinates: per tuple, the carrier components scaled to a
    /// common modulus L (coordinate j holds c_j · L/d_j).
    pub fn scaled_vector(&self, l: i64) -> Vec<i64> {
        let r = self.carrier.rank();
        let mut out = vec![0i64; self.values.len() * r];
        for (ti, &a) in self.values.iter().enumerate() {
            let t = self.carrier.tuple_of(a);
            for j in 0..r {
                let d = self.carrier.factors()[j] as i64;
                out[ti * r + j] = t[j] as i64 * (l / d);
            }
        }
        out
    }

    pub fn from_scaled_vector(
        k: Arc<FiniteGroup>,
        carrier: Arc<AbelianGroup>,
        action: Arc<GroupAction>,
        arity: usize,
        l: i64,
        v: &[i64],
    ) -> Result<Self> {
        let mut out = ModCochain::zero(k, carrier, action, arity);
        let r = out.carrier.rank();
        assert_eq!(v.len(), out.values.len() * r);
        for ti in 0..out.values.len() {
            let mut tuple = Vec::with_capacity(r);
            for j in 0..r {
                let d = out.carrier.factors()[j] as i64;
                let unit = l / d;
                let x = v[ti * r + j].rem_euclid(l);
                if x % unit != 0 {
                    return Err(Error::Mismatch(
                        "vector does not lie in the scaled sublattice".into(),
                    ));
                }
                tuple.push(((x / unit) % d) as usize);
            }
            out.values[ti] = out.carrier.index_of(&tuple);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::finite::cyclic;

    #[test]
    fn tuple_indexing_round_trips() {
        let t = Tuples::new(5, 3);
        assert_eq!(t.count(), 64);
        for i in 0..t.count() {
            let tup = t.at(i);
            assert_eq!(t.index(&tup), Some(i));
        }
        assert_eq!(t.index(&[1, 0, 2]), None);
    }

    #[test]
    fn delta_squared_vanishes_for_circle_cochains() {
        let g = Arc::new(cyclic(4));
        let mut state = 7u64;
        for _ in 0..20 {
            let mut f = CircleCochain::zero(g.clone(), 2, 8);
            for v in f.values.iter_mut() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                *v = ((state >> 33) % 8) as i64;
            }
            assert!(f.delta().delta().is_zero());
        }
    }

    #[test]
    fn mod_cochain_delta_squared_vanishes_both_sides() {
        use crate::group::action::{ActionSide, GroupAction};
        let k = Arc::new(cyclic(2));
        let a = Arc::new(AbelianGroup::from_factors(&[4]));
        let inv: Vec<usize> = (0..4).map(|x| a.neg(x)).collect();
        let left = Arc::new(
            GroupAction::new(&k, &a, ActionSide::Left, vec![(0..4).collect(), inv.clone()])
                .unwrap(),
        );
        let right = Arc::new(
            GroupAction::new(&k, &a, ActionSide::Right, vec![(0..4).collect(), inv]).unwrap(),
        );
        for action in [left, right] {
            let mut state = 11u64;
            for _ in 0..20 {
                let mut f = ModCochain::zero(k.clone(), a.clone(), action.clone(), 1);
                for v in f.values.iter_mut() {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                    *v = ((state >> 33) % 4) as usize;
                }
                assert!(f.delta_k().delta_k().is_zero());
            }
        }
    }

    #[test]
    fn scaled_vector_round_trips() {
        use crate::group::action::{ActionSide, GroupAction};
        let k = Arc::new(cyclic(2));
        let a = Arc::new(AbelianGroup::from_factors(&[2, 4]));
        let act = Arc::new(GroupAction::trivial(&k, &a, ActionSide::Left));
        let mut f = ModCochain::zero(k.clone(), a.clone(), act.clone(), 2);
        f.set(&[1, 1], 5);
        let v = f.scaled_vector(4);
        let back = ModCochain::from_scaled_vector(k, a, act, 2, 4, &v).unwrap();
        assert_eq!(back.values, f.values);
    }
}
