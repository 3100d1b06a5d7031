//! The double complex C^{p,q} = C^p(K, C^q(G, Map(K, ℚ/ℤ))) attached to an
//! abelian extension, with both differentials, the restriction ψ, its
//! one-sided inverse φ, inflation, and the wedge pairing.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::circle::lcm;
use crate::error::{Error, Result};
use crate::group::extension::ExtensionData;
use crate::group::finite::FiniteGroup;

use super::{CircleCochain, ModCochain, Tuples};

/// An element of C^p(K, C^q(G, Map(K, ℚ/ℤ))), normalized in both tuple
/// directions. Values are indexed by (K-tuple, G-tuple, point of K), the
/// point varying fastest.
#[derive(Clone, Debug)]
pub struct BiCochain {
    pub ext: Arc<ExtensionData>,
    pub p: usize,
    pub q: usize,
    pub modulus: i64,
    pub values: Vec<i64>,
}

impl BiCochain {
    pub fn zero(ext: Arc<ExtensionData>, p: usize, q: usize, modulus: i64) -> Self {
        let kt = Tuples::new(ext.k.order(), p);
        let gt = Tuples::new(ext.group.order(), q);
        let len = kt.count() * gt.count() * ext.k.order();
        BiCochain {
            ext,
            p,
            q,
            modulus,
            values: vec![0; len],
        }
    }

    pub fn k_tuples(&self) -> Tuples {
        Tuples::new(self.ext.k.order(), self.p)
    }

    pub fn g_tuples(&self) -> Tuples {
        Tuples::new(self.ext.group.order(), self.q)
    }

    #[inline]
    fn flat(&self, kt: usize, gt: usize, x: usize) -> usize {
        (kt * self.g_tuples().count() + gt) * self.ext.k.order() + x
    }

    pub fn value(&self, ktuple: &[usize], x: usize, gtuple: &[usize]) -> i64 {
        let (Some(kt), Some(gt)) = (self.k_tuples().index(ktuple), self.g_tuples().index(gtuple))
        else {
            return 0;
        };
        self.values[self.flat(kt, gt, x)]
    }

    pub fn set(&mut self, ktuple: &[usize], x: usize, gtuple: &[usize], v: i64) {
        let kt = self.k_tuples().index(ktuple).expect("identity K-tuple");
        let gt = self.g_tuples().index(gtuple).expect("identity G-tuple");
        let idx = self.flat(kt, gt, x);
        self.values[idx] = v.rem_euclid(self.modulus);
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn lift(&self, modulus: i64) -> Self {
        assert!(modulus % self.modulus == 0);
        let f = modulus / self.modulus;
        BiCochain {
            ext: self.ext.clone(),
            p: self.p,
            q: self.q,
            modulus,
            values: self.values.iter().map(|&v| v * f).collect(),
        }
    }

    pub fn combine(&self, other: &Self, sign: i64) -> Self {
        assert_eq!((self.p, self.q), (other.p, other.q));
        let m = lcm(self.modulus, other.modulus);
        let (a, b) = (m / self.modulus, m / other.modulus);
        BiCochain {
            ext: self.ext.clone(),
            p: self.p,
            q: self.q,
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
        BiCochain {
            ext: self.ext.clone(),
            p: self.p,
            q: self.q,
            modulus: self.modulus,
            values: self
                .values
                .iter()
                .map(|&v| (-v).rem_euclid(self.modulus))
                .collect(),
        }
    }

    /// Vertical differential δ_G (no total-complex sign), with the leading
    /// term f(k ◁ g₁; g₂, …).
    pub fn delta_g(&self) -> Self {
        let ext = self.ext.clone();
        let g = &ext.group;
        let k_ord = ext.k.order();
        let q = self.q;
        let mut out = BiCochain::zero(ext.clone(), self.p, q + 1, self.modulus);
        let ktuples = self.k_tuples();
        let out_gt = Tuples::new(g.order(), q + 1);
        let mut gtup = vec![0usize; q + 1];
        let mut merged = vec![0usize; q];
        for kt in 0..ktuples.count() {
            let ktuple = ktuples.at(kt);
            for gi in 0..out_gt.count() {
                out_gt.write(gi, &mut gtup);
                for x in 0..k_ord {
                    let mut acc = self.value(&ktuple, ext.coset_act(x, gtup[0]), &gtup[1..]);
                    for i in 0..q {
                        for (w, j) in merged.iter_mut().zip((0..q + 1).filter(|&j| j != i)) {
                            *w = gtup[j];
                        }
                        merged[i] = g.mul(gtup[i], gtup[i + 1]);
                        let sign = if i % 2 == 0 { -1 } else { 1 };
                        acc += sign * self.value(&ktuple, x, &merged);
                    }
                    let sign = if (q + 1) % 2 == 0 { 1 } else { -1 };
                    acc += sign * self.value(&ktuple, x, &gtup[..q]);
                    let idx = out.flat(kt, gi, x);
                    out.values[idx] = acc.rem_euclid(self.modulus);
                }
            }
        }
        out
    }

    /// Horizontal differential δ_K; the last term is twisted by the right
    /// action (f ◁ k)(x; …) = f(kx; …).
    pub fn delta_k(&self) -> Self {
        let ext = self.ext.clone();
        let k = &ext.k;
        let p = self.p;
        let mut out = BiCochain::zero(ext.clone(), p + 1, self.q, self.modulus);
        let out_kt = Tuples::new(k.order(), p + 1);
        let gtuples = self.g_tuples();
        let mut ktup = vec![0usize; p + 1];
        let mut merged = vec![0usize; p];
        for kt in 0..out_kt.count() {
            out_kt.write(kt, &mut ktup);
            for gi in 0..gtuples.count() {
                let gtuple = gtuples.at(gi);
                for x in 0..k.order() {
                    let mut acc = self.value(&ktup[1..], x, &gtuple);
                    for i in 0..p {
                        for (w, j) in merged.iter_mut().zip((0..p + 1).filter(|&j| j != i)) {
                            *w = ktup[j];
                        }
                        merged[i] = k.mul(ktup[i], ktup[i + 1]);
                        let sign = if i % 2 == 0 { -1 } else { 1 };
                        acc += sign * self.value(&merged, x, &gtuple);
                    }
                    let shifted = k.mul(ktup[p], x);
                    let last = self.value(&ktup[..p], shifted, &gtuple);
                    let sign = if (p + 1) % 2 == 0 { 1 } else { -1 };
                    acc += sign * last;
                    let idx = out.flat(kt, gi, x);
                    out.values[idx] = acc.rem_euclid(self.modulus);
                }
            }
        }
        out
    }

    /// Right action of K on C^{0,q}: (f ◁ y)(x; …) = f(yx; …).
    pub fn act_right(&self, y: usize) -> Self {
        assert_eq!(self.p, 0, "the K-action is used on C^{{0,q}} only");
        let k_ord = self.ext.k.order();
        let mut out = self.clone();
        for gt in 0..self.g_tuples().count() {
            for x in 0..k_ord {
                let src = self.flat(0, gt, self.ext.k.mul(y, x));
                let dst = self.flat(0, gt, x);
                out.values[dst] = self.values[src];
            }
        }
        out
    }

    /// ψ: restriction to A at the point 1_K. A sits inside G as the
    /// elements (a, 1), whose indices coincide with A's own.
    pub fn psi(&self) -> CircleCochain {
        assert_eq!(self.p, 0);
        let a = self.ext.a.group().clone();
        let mut out = CircleCochain::zero(Arc::new(a), self.q, self.modulus);
        let tup = out.tuples();
        for i in 0..tup.count() {
            let t = tup.at(i);
            out.values[i] = self.value(&[], 0, &t);
        }
        out
    }

    /// ψ on C^{p,1}: each component of a cocycle restricts to a character
    /// of A, giving a p-cochain on K with values in 𝔸.
    pub fn psi_to_dual(&self) -> Result<ModCochain> {
        assert_eq!(self.q, 1);
        let ext = &self.ext;
        let dual = &ext.dual;
        let mut out = ModCochain::zero(
            ext.k.clone(),
            Arc::new(dual.carrier().clone()),
            ext.dual_act.clone(),
            self.p,
        );
        let ktuples = self.k_tuples();
        for kt in 0..ktuples.count() {
            let ktuple = ktuples.at(kt);
            let values: Vec<_> = (0..ext.a.rank())
                .map(|j| {
                    crate::circle::CircleValue::new(
                        self.value(&ktuple, 0, &[ext.a.generator(j)]),
                        self.modulus,
                    )
                })
                .collect();
            let rho = dual.character_from_generator_values(&values)?;
            // The restriction must actually be the character, not merely
            // agree on generators.
            for a in 1..ext.a.order() {
                let got = crate::circle::CircleValue::new(self.value(&ktuple, 0, &[a]), self.modulus);
                if got != dual.pairing(rho, a) {
                    return Err(Error::Mismatch(
                        "component does not restrict to a character of A".into(),
                    ));
                }
            }
            out.values[kt] = rho;
        }
        Ok(out)
    }

    /// Is every component a δ_G-cocycle and δ_K-cocycle respectively? Used
    /// by validity checks in tests.
    pub fn is_delta_g_cocycle(&self) -> bool {
        self.delta_g().is_zero()
    }
}

/// φ(α)(k; g₁,…,g_q) = α(κ_{k,g₁}, κ_{k◁g₁,g₂}, …): a chain map splitting ψ.
pub fn phi(ext: &Arc<ExtensionData>, alpha: &CircleCochain) -> BiCochain {
    assert_eq!(alpha.base.order(), ext.a.order());
    let q = alpha.arity;
    let mut out = BiCochain::zero(ext.clone(), 0, q, alpha.modulus);
    let gtuples = out.g_tuples();
    let k_ord = ext.k.order();
    let mut args = vec![0usize; q];
    for gi in 0..gtuples.count() {
        let gtuple = gtuples.at(gi);
        for x in 0..k_ord {
            let mut k = x;
            for (arg, &g) in args.iter_mut().zip(&gtuple) {
                *arg = ext.kappa(k, g);
                k = ext.coset_act(k, g);
            }
            let idx = out.flat(0, gi, x);
            out.values[idx] = alpha.value(&args);
        }
    }
    out
}

/// φ applied componentwise to a p-cochain with values in 𝔸, landing in
/// C^{p,1}: the component at k-tuple t is (x; g) ↦ ⟨value(t), κ_{x,g}⟩.
pub fn phi_dual(ext: &Arc<ExtensionData>, c: &ModCochain) -> BiCochain {
    let e = ext.a.exponent() as i64;
    let mut out = BiCochain::zero(ext.clone(), c.arity, 1, e);
    let ktuples = out.k_tuples();
    let gtuples = out.g_tuples();
    let k_ord = ext.k.order();
    for kt in 0..ktuples.count() {
        let rho = c.values[kt];
        for gi in 0..gtuples.count() {
            let g = gtuples.at(gi)[0];
            for x in 0..k_ord {
                let val = ext.dual.pairing(rho, ext.kappa(x, g));
                let idx = out.flat(kt, gi, x);
                out.values[idx] = val.lift(e).numerator();
            }
        }
    }
    out
}

/// π*ω: the K-invariant lift of a cochain on G into C^{0,q}.
pub fn inflate(ext: &Arc<ExtensionData>, omega: &CircleCochain) -> BiCochain {
    assert_eq!(omega.base.order(), ext.group.order());
    let q = omega.arity;
    let mut out = BiCochain::zero(ext.clone(), 0, q, omega.modulus);
    let gtuples = out.g_tuples();
    let k_ord = ext.k.order();
    for gi in 0..gtuples.count() {
        let v = omega.values[gi];
        for x in 0..k_ord {
            let idx = out.flat(0, gi, x);
            out.values[idx] = v;
        }
    }
    out
}

/// Pull a cochain on K back along the projection p: G -> K.
pub fn pullback_along_p(ext: &Arc<ExtensionData>, eps: &CircleCochain) -> CircleCochain {
    assert_eq!(eps.base.order(), ext.k.order());
    let mut out = CircleCochain::zero(ext.group.clone(), eps.arity, eps.modulus);
    let tuples = out.tuples();
    let mut kt = vec![0usize; eps.arity];
    for i in 0..tuples.count() {
        let t = tuples.at(i);
        for (w, &g) in kt.iter_mut().zip(&t) {
            *w = ext.p(g);
        }
        out.values[i] = eps.value(&kt);
    }
    out
}

/// Inflation of a cochain on K along the projection of a plain group onto K
/// given by an explicit map.
pub fn pullback_along_map(
    group: &Arc<FiniteGroup>,
    proj: &[usize],
    eps: &CircleCochain,
) -> CircleCochain {
    let mut out = CircleCochain::zero(group.clone(), eps.arity, eps.modulus);
    let tuples = out.tuples();
    let mut kt = vec![0usize; eps.arity];
    for i in 0..tuples.count() {
        let t = tuples.at(i);
        for (w, &g) in kt.iter_mut().zip(&t) {
            *w = proj[g];
        }
        out.values[i] = eps.value(&kt);
    }
    out
}

/// (F̂ ∧ F)(k₁,k₂,k₃,k₄) = ⟨F̂(k₁,k₂), F(k₃,k₄)⟩.
pub fn wedge(ext: &ExtensionData, f_hat: &ModCochain, f: &ModCochain) -> CircleCochain {
    assert_eq!(f_hat.arity, 2);
    assert_eq!(f.arity, 2);
    let e = ext.a.exponent() as i64;
    let mut out = CircleCochain::zero(ext.k.clone(), 4, e);
    let tuples = out.tuples();
    for i in 0..tuples.count() {
        let t = tuples.at(i);
        let rho = f_hat.value(&t[..2]);
        let a = f.value(&t[2..]);
        out.values[i] = ext.dual.pairing(rho, a).lift(e).numerator();
    }
    out
}

/// A sparse element of the total complex: components in bidegrees p+q = n.
#[derive(Clone, Debug)]
pub struct TotalCochain {
    pub ext: Arc<ExtensionData>,
    pub degree: usize,
    pub parts: BTreeMap<usize, BiCochain>,
}

impl TotalCochain {
    pub fn new(ext: Arc<ExtensionData>, degree: usize) -> Self {
        TotalCochain {
            ext,
            degree,
            parts: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, part: BiCochain) {
        assert_eq!(part.p + part.q, self.degree);
        match self.parts.remove(&part.p) {
            Some(existing) => {
                self.parts.insert(part.p, existing.add(&part));
            }
            None => {
                self.parts.insert(part.p, part);
            }
        }
    }

    pub fn part(&self, p: usize) -> Option<&BiCochain> {
        self.parts.get(&p)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.values().all(|c| c.is_zero())
    }

    /// δ_Tot = δ_K ⊕ (δ_G)^{(-1)^p}: the vertical differential enters with
    /// a minus sign on odd K-degrees.
    pub fn delta_tot(&self) -> TotalCochain {
        let mut out = TotalCochain::new(self.ext.clone(), self.degree + 1);
        for (&p, part) in &self.parts {
            out.insert(part.delta_k());
            let vertical = part.delta_g();
            out.insert(if p % 2 == 0 { vertical } else { vertical.neg() });
        }
        out
    }

    pub fn add(&self, other: &TotalCochain) -> TotalCochain {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for part in other.parts.values() {
            out.insert(part.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::abelian::AbelianGroup;
    use crate::group::action::{ActionSide, GroupAction};
    use crate::group::extension::{crossed_product, PairTable};
    use crate::group::finite::cyclic;

    fn z4_over_z2() -> Arc<ExtensionData> {
        let a = AbelianGroup::from_factors(&[2]);
        let k = cyclic(2);
        let act = GroupAction::trivial(&k, &a, ActionSide::Left);
        let mut f = PairTable::zero(2);
        f.set(1, 1, 1);
        Arc::new(crossed_product(&a, &k, &act, &f).unwrap())
    }

    fn random_bicochain(ext: &Arc<ExtensionData>, p: usize, q: usize, m: i64, seed: u64) -> BiCochain {
        let mut out = BiCochain::zero(ext.clone(), p, q, m);
        let mut state = seed;
        for v in out.values.iter_mut() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            *v = ((state >> 33) as i64).rem_euclid(m);
        }
        out
    }

    #[test]
    fn differentials_square_to_zero_and_commute() {
        let ext = z4_over_z2();
        for seed in 0..10 {
            let f = random_bicochain(&ext, 1, 1, 4, seed);
            assert!(f.delta_g().delta_g().is_zero());
            assert!(f.delta_k().delta_k().is_zero());
            let gk = f.delta_g().delta_k();
            let kg = f.delta_k().delta_g();
            assert!(gk.sub(&kg).is_zero());
        }
    }

    #[test]
    fn delta_tot_squares_to_zero() {
        let ext = z4_over_z2();
        for seed in 0..10 {
            let mut x = TotalCochain::new(ext.clone(), 2);
            x.insert(random_bicochain(&ext, 0, 2, 4, seed));
            x.insert(random_bicochain(&ext, 1, 1, 4, seed + 100));
            x.insert(random_bicochain(&ext, 2, 0, 4, seed + 200));
            assert!(x.delta_tot().delta_tot().is_zero());
        }
    }

    #[test]
    fn psi_after_phi_is_identity() {
        let ext = z4_over_z2();
        let a_group = Arc::new(ext.a.group().clone());
        for arity in 0..=3usize {
            for seed in 0..5 {
                let mut alpha = CircleCochain::zero(a_group.clone(), arity, 4);
                let mut state = seed * 97 + 13u64;
                for v in alpha.values.iter_mut() {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(99);
                    *v = ((state >> 33) as i64).rem_euclid(4);
                }
                let lifted = phi(&ext, &alpha);
                let back = lifted.psi();
                assert_eq!(back.values, alpha.values);
            }
        }
    }

    #[test]
    fn phi_is_a_chain_map() {
        let ext = z4_over_z2();
        let a_group = Arc::new(ext.a.group().clone());
        for seed in 0..5 {
            let mut alpha = CircleCochain::zero(a_group.clone(), 2, 8);
            let mut state = seed + 5u64;
            for v in alpha.values.iter_mut() {
                state = state.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
                *v = ((state >> 33) as i64).rem_euclid(8);
            }
            let lhs = phi(&ext, &alpha.delta());
            let rhs = phi(&ext, &alpha).delta_g();
            assert!(lhs.sub(&rhs).is_zero());
        }
    }

    #[test]
    fn psi_is_a_chain_map() {
        let ext = z4_over_z2();
        for seed in 0..5 {
            let f = random_bicochain(&ext, 0, 2, 4, seed + 31);
            let lhs = f.delta_g().psi();
            let rhs = f.psi().delta();
            assert_eq!(lhs.values, rhs.values);
        }
    }

    #[test]
    fn inflation_is_k_invariant_and_psi_restricts() {
        let ext = z4_over_z2();
        let mut omega = CircleCochain::zero(ext.group.clone(), 3, 4);
        let mut state = 77u64;
        for v in omega.values.iter_mut() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(7);
            *v = ((state >> 33) as i64).rem_euclid(4);
        }
        let lifted = inflate(&ext, &omega);
        for y in 0..ext.k.order() {
            assert!(lifted.act_right(y).sub(&lifted).is_zero());
        }
        // ψ(π*ω) is the restriction of ω to A.
        let res = lifted.psi();
        let tuples = res.tuples();
        for i in 0..tuples.count() {
            let t = tuples.at(i);
            assert_eq!(res.values[i], omega.value(&t));
        }
    }
}
