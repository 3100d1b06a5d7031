//! Finite abelian groups in invariant-factor form, their duals, and the
//! perfect ℚ/ℤ-valued pairing between them.

use crate::circle::CircleValue;
use crate::error::{Error, Result};
use crate::group::finite::FiniteGroup;
use crate::group::iso::are_isomorphic;

/// An abelian group ℤ/d₁ × … × ℤ/d_r with d₁ | d₂ | … | d_r, realized as a
/// [`FiniteGroup`] on the mixed-radix tuple encoding (component 0 fastest).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    factors: Vec<usize>,
    strides: Vec<usize>,
    group: FiniteGroup,
}

impl AbelianGroup {
    pub fn from_factors(factors: &[usize]) -> Self {
        assert!(factors.iter().all(|&d| d >= 2), "factors must be >= 2");
        for w in factors.windows(2) {
            assert!(w[1] % w[0] == 0, "factors must divide in turn");
        }
        let mut strides = Vec::with_capacity(factors.len());
        let mut s = 1usize;
        for &d in factors {
            strides.push(s);
            s *= d;
        }
        let n = s;
        let mut table = vec![0usize; n * n];
        let tuple_of = |mut idx: usize| -> Vec<usize> {
            factors
                .iter()
                .map(|&d| {
                    let c = idx % d;
                    idx /= d;
                    c
                })
                .collect()
        };
        for x in 0..n {
            let tx = tuple_of(x);
            for y in 0..n {
                let ty = tuple_of(y);
                let mut idx = 0;
                for i in 0..factors.len() {
                    idx += ((tx[i] + ty[i]) % factors[i]) * strides[i];
                }
                table[x * n + y] = idx;
            }
        }
        let label = if factors.is_empty() {
            "1".to_string()
        } else {
            factors
                .iter()
                .map(|d| format!("Z/{d}"))
                .collect::<Vec<_>>()
                .join("x")
        };
        let group = FiniteGroup::from_flat_table(label, n, table).expect("abelian table is valid");
        AbelianGroup {
            factors: factors.to_vec(),
            strides,
            group,
        }
    }

    pub fn trivial() -> Self {
        Self::from_factors(&[])
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    /// Exponent of the group: the largest invariant factor.
    pub fn exponent(&self) -> usize {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn tuple_of(&self, mut idx: usize) -> Vec<usize> {
        self.factors
            .iter()
            .map(|&d| {
                let c = idx % d;
                idx /= d;
                c
            })
            .collect()
    }

    pub fn index_of(&self, tuple: &[usize]) -> usize {
        assert_eq!(tuple.len(), self.factors.len());
        tuple
            .iter()
            .zip(&self.factors)
            .zip(&self.strides)
            .map(|((&c, &d), &s)| (c % d) * s)
            .sum()
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.group.mul(x, y)
    }

    pub fn neg(&self, x: usize) -> usize {
        self.group.inv(x)
    }

    /// Index of the i-th standard generator (1 in component i).
    pub fn generator(&self, i: usize) -> usize {
        self.strides[i]
    }
}

/// All invariant-factor lists of abelian groups of order `m`, sorted.
pub fn abelian_factor_lists(m: usize) -> Vec<Vec<usize>> {
    if m == 1 {
        return vec![vec![]];
    }
    // Factorize and collect exponent partitions per prime.
    let mut primes = Vec::new();
    let mut rest = m;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            primes.push((p, e));
        }
        p += 1;
    }
    if rest > 1 {
        primes.push((rest, 1));
    }
    fn partitions(n: usize) -> Vec<Vec<usize>> {
        // Descending partitions of n.
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if n == 0 {
                out.push(cur.clone());
                return;
            }
            for k in (1..=max.min(n)).rev() {
                cur.push(k);
                rec(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
    // Combine one partition per prime, right-aligned, into invariant factors.
    let per_prime: Vec<(usize, Vec<Vec<usize>>)> = primes
        .iter()
        .map(|&(p, e)| (p, partitions(e)))
        .collect();
    let mut lists: Vec<Vec<usize>> = Vec::new();
    fn combine(
        per_prime: &[(usize, Vec<Vec<usize>>)],
        chosen: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == per_prime.len() {
            let rows = chosen.iter().map(|c| c.len()).max().unwrap_or(0);
            let mut factors = vec![1usize; rows];
            for (pi, part) in chosen.iter().enumerate() {
                let p = per_prime[pi].0;
                // Right-align: largest exponents go to the largest factor.
                for (j, &e) in part.iter().enumerate() {
                    factors[rows - 1 - j] *= p.pow(e as u32);
                }
            }
            out.push(factors);
            return;
        }
        let idx = chosen.len();
        for part in &per_prime[idx].1 {
            chosen.push(part.clone());
            combine(per_prime, chosen, out);
            chosen.pop();
        }
    }
    combine(&per_prime, &mut Vec::new(), &mut lists);
    lists.sort();
    lists
}

/// Combine a multiset of cyclic orders into invariant-factor form
/// d₁ | d₂ | … (used to present subgroups given by independent generators).
pub fn invariant_factors_from_orders(orders: &[i64]) -> Vec<i64> {
    let mut per_prime: std::collections::BTreeMap<i64, Vec<u32>> = std::collections::BTreeMap::new();
    for &o in orders {
        let mut rest = o;
        let mut p = 2i64;
        while p * p <= rest {
            if rest % p == 0 {
                let mut e = 0;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                per_prime.entry(p).or_default().push(e);
            }
            p += 1;
        }
        if rest > 1 {
            per_prime.entry(rest).or_default().push(1);
        }
    }
    let rows = per_prime.values().map(|v| v.len()).max().unwrap_or(0);
    let mut factors = vec![1i64; rows];
    for (p, exps) in per_prime.iter_mut() {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (t, &e) in exps.iter().enumerate() {
            factors[rows - 1 - t] *= p.pow(e);
        }
    }
    factors.retain(|&d| d > 1);
    factors
}

/// Identify an abelian subgroup (given by a sorted element set of `g`) in
/// invariant-factor form, together with the embedding A-index -> G-element.
pub fn structure_of_subgroup(
    g: &FiniteGroup,
    elems: &[usize],
) -> Result<(AbelianGroup, Vec<usize>)> {
    if !crate::group::subgroup::is_abelian_subset(g, elems) {
        return Err(Error::NotAbelian);
    }
    // Relabel the subgroup as a standalone group; elems is sorted with 0
    // first, so identity lands at index 0.
    let m = elems.len();
    let pos = |x: usize| elems.binary_search(&x).expect("closed subgroup");
    let mut table = vec![0usize; m * m];
    for i in 0..m {
        for j in 0..m {
            table[i * m + j] = pos(g.mul(elems[i], elems[j]));
        }
    }
    let sub = FiniteGroup::from_flat_table("subgroup", m, table)?;
    for factors in abelian_factor_lists(m) {
        let cand = AbelianGroup::from_factors(&factors);
        if let Some(iso) = are_isomorphic(cand.group(), &sub) {
            let embed: Vec<usize> = (0..m).map(|a| elems[iso[a]]).collect();
            return Ok((cand, embed));
        }
    }
    unreachable!("every abelian group matches an invariant-factor list")
}

/// The dual group 𝔸 = Hom(A, ℚ/ℤ). A character with tuple (c₁,…,c_r) sends
/// the generator eᵢ to cᵢ/dᵢ; the pairing below is bi-additive and perfect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualAbelianGroup {
    carrier: AbelianGroup,
}

impl DualAbelianGroup {
    pub fn of(a: &AbelianGroup) -> Self {
        DualAbelianGroup {
            carrier: AbelianGroup::from_factors(a.factors()),
        }
    }

    pub fn carrier(&self) -> &AbelianGroup {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.carrier.order()
    }

    /// ⟨ρ, a⟩ = Σ cᵢ aᵢ / dᵢ ∈ ℚ/ℤ, expressed over the exponent of A.
    pub fn pairing(&self, rho: usize, a: usize) -> CircleValue {
        let e = self.carrier.exponent() as i64;
        let rt = self.carrier.tuple_of(rho);
        let at = self.carrier.tuple_of(a);
        let mut num = 0i64;
        for i in 0..self.carrier.rank() {
            let d = self.carrier.factors()[i] as i64;
            num += (rt[i] as i64) * (at[i] as i64) * (e / d);
        }
        CircleValue::new(num, e)
    }

    /// Reconstruct a character index from its values on the standard
    /// generators of A. Fails if some value does not have the right order.
    pub fn character_from_generator_values(&self, values: &[CircleValue]) -> Result<usize> {
        assert_eq!(values.len(), self.carrier.rank());
        let mut tuple = Vec::with_capacity(values.len());
        for (i, v) in values.iter().enumerate() {
            let d = self.carrier.factors()[i] as i64;
            // c/d = num/mod  =>  c = num*d/mod, which must be integral.
            let (num, m) = (v.numerator(), v.modulus());
            if (num * d) % m != 0 {
                return Err(Error::Mismatch(format!(
                    "value {num}/{m} is not a multiple of 1/{d}"
                )));
            }
            tuple.push(((num * d / m).rem_euclid(d)) as usize);
        }
        Ok(self.carrier.index_of(&tuple))
    }
}
