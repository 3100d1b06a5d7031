//! The cohomology engine: H^q as kernel modulo image over ℤ/N via Smith
//! reduction, with basis cocycles and projection to class coordinates.
//!
//! For circle coefficients the working modulus N (a multiple of |G|) only
//! sees (1/N)ℤ/ℤ-valued cochains, and ker/im over ℤ/N computes H^q(G, ℤ/N),
//! which is too big. The connecting classes δ(z)/N for z running over the
//! mod-N cocycles one degree down are exactly the defect, so the engine
//! quotients them out as extra relations; what remains is H^q(G, ℚ/ℤ) on
//! the nose. Finite coefficient modules need no correction.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::cochain::bicomplex::BiCochain;
use crate::cochain::CircleCochain;
use crate::error::{Error, Result};
use crate::group::extension::ExtensionData;
use crate::group::finite::FiniteGroup;
use crate::linalg::dense::{rows_from_triplets, smith_mod, solve_mod, SmithMod};
use crate::linalg::int::{column_lattice, IntColumnLattice};
use crate::linalg::quotient::{quotient_structure, QuotientStructure};

use super::space::{mapk_boundary, module_boundary, qz_boundary, BoundaryMatrix, FiniteModule};

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Largest admissible coordinate dimension for a cochain space.
    pub max_cols: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_cols: 4096 }
    }
}

/// Class coordinates: component i is taken modulo the i-th invariant factor
/// of the referenced cohomology group.
pub type ClassCoordinates = Vec<i64>;

/// A computed cohomology group with basis cocycles and projection data.
pub struct CohomologyGroup {
    pub base_label: String,
    pub degree: usize,
    pub coefficients: String,
    pub modulus: i64,
    pub dims: usize,
    pub factors: Vec<i64>,
    /// One representative cocycle (coordinate vector mod `modulus`) per
    /// invariant factor; projecting basis vector i gives the i-th unit
    /// coordinate vector.
    pub basis: Vec<Vec<i64>>,
    kernel: SmithMod,
    quotient: QuotientStructure,
}

impl CohomologyGroup {
    pub fn order(&self) -> i64 {
        self.factors.iter().product()
    }

    pub fn is_trivial_group(&self) -> bool {
        self.factors.is_empty()
    }

    /// Coordinates of a cocycle given as a coordinate vector mod `modulus`.
    pub fn coords(&self, f: &[i64]) -> Result<ClassCoordinates> {
        let zc = self
            .kernel
            .kernel_coordinates(f)
            .ok_or_else(|| Error::NotACocycle("vector is not in the cocycle kernel".into()))?;
        Ok(self.quotient.project(&zc))
    }

    /// The representative cocycle Σ cᵢ · basisᵢ.
    pub fn representative(&self, coords: &[i64]) -> Vec<i64> {
        assert_eq!(coords.len(), self.factors.len());
        let mut out = vec![0i64; self.dims];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (o, &v) in out.iter_mut().zip(b) {
                *o = (*o + c * v).rem_euclid(self.modulus);
            }
        }
        out
    }

    /// Every class, in odometer order (last coordinate fastest).
    pub fn all_class_coords(&self) -> Vec<ClassCoordinates> {
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.factors.len()];
        loop {
            out.push(cur.clone());
            let mut i = self.factors.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.factors[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    pub fn to_json(&self, group_key: &str) -> serde_json::Value {
        serde_json::json!({
            "group": group_key,
            "degree": self.degree,
            "coefficients": self.coefficients,
            "modulus": self.modulus,
            "invariant_factors": self.factors,
            "basis": self.basis,
        })
    }
}

fn columns_mod(t: &BoundaryMatrix, n: i64) -> Vec<Vec<i64>> {
    let mut cols = vec![vec![0i64; t.rows]; t.cols];
    for &(r, c, v) in &t.triplets {
        let e = &mut cols[c as usize][r as usize];
        *e = (*e + v).rem_euclid(n);
    }
    cols
}

fn build_group(
    base_label: String,
    degree: usize,
    coefficients: String,
    modulus: i64,
    t_out_rows: Vec<crate::linalg::SparseRow>,
    dims: usize,
    mut b_gens: Vec<Vec<i64>>,
    limits: &Limits,
) -> Result<CohomologyGroup> {
    if dims > limits.max_cols {
        return Err(Error::ResourceBound(format!(
            "cochain space has {dims} coordinates, cap is {}",
            limits.max_cols
        )));
    }
    let kernel = smith_mod(t_out_rows, dims, modulus);
    let kernel_orders: Vec<i64> = kernel
        .kernel_generators()
        .iter()
        .map(|(_, o)| *o)
        .collect();
    let mut relations = Vec::with_capacity(b_gens.len());
    for b in b_gens.drain(..) {
        let zc = kernel.kernel_coordinates(&b).ok_or_else(|| {
            Error::NotACocycle("relation generator is not a cocycle".into())
        })?;
        relations.push(zc);
    }
    let quotient = quotient_structure(&kernel_orders, &relations);
    let gens = kernel.kernel_generators();
    let mut basis = Vec::with_capacity(quotient.factors.len());
    for j in 0..quotient.factors.len() {
        let lift = quotient.basis_lift(j, &kernel_orders);
        let mut vec = vec![0i64; dims];
        for (c, (g, _)) in lift.iter().zip(&gens) {
            for (o, &v) in vec.iter_mut().zip(g) {
                *o = (*o + c * v).rem_euclid(modulus);
            }
        }
        basis.push(vec);
    }
    let factors = quotient.factors.clone();
    Ok(CohomologyGroup {
        base_label,
        degree,
        coefficients,
        modulus,
        dims,
        factors,
        basis,
        kernel,
        quotient,
    })
}

/// Shared computation context: memoized cohomology groups and integral
/// image lattices. Results for equal keys are bit-identical regardless of
/// scheduling; concurrent duplicate computation is harmless.
pub struct Workspace {
    pub limits: Limits,
    groups: Mutex<HashMap<String, Arc<CohomologyGroup>>>,
    lattices: Mutex<HashMap<String, Option<Arc<IntColumnLattice>>>>,
}

impl Default for Workspace {
    fn default() -> Self {
        Self::new(Limits::default())
    }
}

impl Workspace {
    pub fn new(limits: Limits) -> Self {
        Workspace {
            limits,
            groups: Mutex::new(HashMap::new()),
            lattices: Mutex::new(HashMap::new()),
        }
    }

    fn memo_group<F>(&self, key: String, f: F) -> Result<Arc<CohomologyGroup>>
    where
        F: FnOnce() -> Result<CohomologyGroup>,
    {
        if let Some(g) = self.groups.lock().unwrap().get(&key) {
            return Ok(g.clone());
        }
        let computed = Arc::new(f()?);
        let mut map = self.groups.lock().unwrap();
        Ok(map.entry(key).or_insert(computed).clone())
    }

    /// H^q(base, ℚ/ℤ) at a working modulus that must be a multiple of the
    /// group order.
    pub fn circle_cohomology(
        &self,
        base: &Arc<FiniteGroup>,
        q: usize,
        modulus: i64,
    ) -> Result<Arc<CohomologyGroup>> {
        assert!(q >= 1, "degree 0 has no finite presentation here");
        assert!(
            modulus % base.order() as i64 == 0,
            "working modulus must be a multiple of the group order"
        );
        let key = format!("qz|{:x}|{q}|{modulus}", base.table_hash());
        self.memo_group(key, || {
            let t_out = qz_boundary(base, q);
            let t_in = qz_boundary(base, q - 1);
            let b_gens = qz_b_generators(&t_in, modulus);
            build_group(
                base.label().to_string(),
                q,
                format!("QZ({modulus})"),
                modulus,
                rows_from_triplets(t_out.rows, &t_out.triplets, modulus),
                t_out.cols,
                b_gens,
                &self.limits,
            )
        })
    }

    /// H^q(G, Map(K, ℚ/ℤ)) for the total group of an extension.
    pub fn mapk_cohomology(
        &self,
        ext: &Arc<ExtensionData>,
        q: usize,
        modulus: i64,
    ) -> Result<Arc<CohomologyGroup>> {
        assert!(q >= 1);
        assert!(modulus % ext.group.order() as i64 == 0);
        let key = format!(
            "mapk|{:x}|{}|{q}|{modulus}",
            ext.group.table_hash(),
            ext.a.order()
        );
        self.memo_group(key, || {
            let t_out = mapk_boundary(ext, q);
            let t_in = mapk_boundary(ext, q - 1);
            let b_gens = qz_b_generators(&t_in, modulus);
            build_group(
                ext.group.label().to_string(),
                q,
                format!("MapK({modulus})"),
                modulus,
                rows_from_triplets(t_out.rows, &t_out.triplets, modulus),
                t_out.cols,
                b_gens,
                &self.limits,
            )
        })
    }

    /// H^p(K, M) for a finite coefficient module, exactly.
    pub fn module_cohomology(
        &self,
        k: &Arc<FiniteGroup>,
        module: &FiniteModule,
        p: usize,
    ) -> Result<Arc<CohomologyGroup>> {
        let key = format!(
            "mod|{:x}|{:x}|{p}",
            k.table_hash(),
            module.content_hash()
        );
        self.memo_group(key, || {
            let l = module.lcm_modulus();
            let r = module.rank();
            let t_out = module_boundary(k, module, p);
            // Restrict the kernel to the scaled sublattice with extra rows
            // d_j · x_j ≡ 0 (mod L).
            let mut rows = rows_from_triplets(t_out.rows, &t_out.triplets, l);
            for j in 0..t_out.cols {
                let d = module.moduli[j % r];
                if d != l {
                    rows.push(vec![(j as u32, d)]);
                }
            }
            let mut b_gens = Vec::new();
            if p >= 1 {
                let t_in = module_boundary(k, module, p - 1);
                let cols = columns_mod(&t_in, l);
                for (j, col) in cols.into_iter().enumerate() {
                    let d = module.moduli[j % r];
                    let scaled: Vec<i64> =
                        col.iter().map(|&v| (v * (l / d)).rem_euclid(l)).collect();
                    b_gens.push(scaled);
                }
            }
            build_group(
                k.label().to_string(),
                p,
                format!("module[{:?}]", module.moduli),
                l,
                rows,
                t_out.cols,
                b_gens,
                &self.limits,
            )
        })
    }

    fn image_lattice(
        &self,
        base: &Arc<FiniteGroup>,
        t: &BoundaryMatrix,
        tag: &str,
    ) -> Option<Arc<IntColumnLattice>> {
        let key = format!("lat|{tag}|{:x}|{}x{}", base.table_hash(), t.rows, t.cols);
        if let Some(l) = self.lattices.lock().unwrap().get(&key) {
            return l.clone();
        }
        let lat = column_lattice(t.rows, t.cols, &t.triplets)
            .ok()
            .map(Arc::new);
        let mut map = self.lattices.lock().unwrap();
        map.entry(key).or_insert(lat).clone()
    }

    /// Exact triviality of a ℚ/ℤ-class: lift to a rational cochain with
    /// denominator N, take the integral coboundary divided by N, and test
    /// membership of that integral cocycle in the integral image lattice.
    /// Should the lattice reduction overflow, fall back to witness
    /// solvability at modulus N·|base|, which decides the same predicate
    /// (a trivial class always has a witness with that denominator).
    pub fn is_trivial_circle(&self, base: &Arc<FiniteGroup>, f: &CircleCochain) -> Result<bool> {
        if f.arity == 0 || f.is_zero() {
            return Ok(f.is_zero());
        }
        let t = qz_boundary(base, f.arity);
        let n = f.modulus;
        let image = t.apply(&f.values);
        let mut z = Vec::with_capacity(image.len());
        for v in image {
            if v % n != 0 {
                return Err(Error::NotACocycle("not a cocycle at its modulus".into()));
            }
            z.push(v / n);
        }
        if let Some(lat) = self.image_lattice(base, &t, &format!("qz{}", f.arity)) {
            if let Ok(member) = lat.contains(&z) {
                return Ok(member);
            }
        }
        Ok(self.trivial_by_witness(base, f))
    }

    fn trivial_by_witness(&self, base: &Arc<FiniteGroup>, f: &CircleCochain) -> bool {
        let lifted = f.lift(f.modulus * base.order() as i64);
        self.solve_coboundary(base, &lifted).is_some()
    }

    /// Triviality in H^q(G, Map(K, ℚ/ℤ)) via the restriction isomorphism to
    /// H^q(A, ℚ/ℤ).
    pub fn is_trivial_mapk(&self, ext: &Arc<ExtensionData>, f: &BiCochain) -> Result<bool> {
        assert_eq!(f.p, 0);
        let a_group = Arc::new(ext.a.group().clone());
        self.is_trivial_circle(&a_group, &f.psi())
    }

    /// Solve δg = f over the working modulus of f (no escalation). The
    /// witness is the deterministic one produced by the kernel reduction of
    /// the augmented system.
    pub fn solve_coboundary(
        &self,
        base: &Arc<FiniteGroup>,
        f: &CircleCochain,
    ) -> Option<CircleCochain> {
        assert!(f.arity >= 1);
        let t = qz_boundary(base, f.arity - 1);
        let rows = rows_from_triplets(t.rows, &t.triplets, f.modulus);
        let x = solve_mod(&rows, t.cols, &f.values, f.modulus)?;
        Some(CircleCochain {
            base: base.clone(),
            arity: f.arity - 1,
            modulus: f.modulus,
            values: x,
        })
    }

    /// Solve δg = f over ℚ/ℤ: guarded by the exact triviality test, with
    /// the working modulus escalated by factors of |base| until the linear
    /// system becomes solvable.
    pub fn solve_coboundary_qz(
        &self,
        base: &Arc<FiniteGroup>,
        f: &CircleCochain,
    ) -> Result<Option<CircleCochain>> {
        if !self.is_trivial_circle(base, f)? {
            return Ok(None);
        }
        let e = base.order() as i64;
        let mut m = f.modulus;
        for _ in 0..4 {
            let lifted = f.lift(m);
            if let Some(g) = self.solve_coboundary(base, &lifted) {
                return Ok(Some(g));
            }
            m *= e;
        }
        Err(Error::LiftFailure(
            "trivial class admits no witness at escalated moduli".into(),
        ))
    }

    /// Solve δ_G g = f in C^{·}(G, Map(K, ℚ/ℤ)), escalating like the circle
    /// version. Triviality is decided through ψ.
    pub fn solve_mapk_coboundary(
        &self,
        ext: &Arc<ExtensionData>,
        f: &BiCochain,
    ) -> Result<Option<BiCochain>> {
        assert_eq!(f.p, 0);
        assert!(f.q >= 1);
        if !self.is_trivial_mapk(ext, f)? {
            return Ok(None);
        }
        let t = mapk_boundary(ext, f.q - 1);
        let e = ext.group.order() as i64;
        let mut m = f.modulus;
        for _ in 0..4 {
            let lifted = f.lift(m);
            let rows = rows_from_triplets(t.rows, &t.triplets, m);
            if let Some(x) = solve_mod(&rows, t.cols, &lifted.values, m) {
                return Ok(Some(BiCochain {
                    ext: ext.clone(),
                    p: 0,
                    q: f.q - 1,
                    modulus: m,
                    values: x,
                }));
            }
            m *= e;
        }
        Err(Error::LiftFailure(
            "trivial Map(K)-class admits no witness at escalated moduli".into(),
        ))
    }

    /// Replace f by a cohomologous cochain whose values lie in
    /// (1/target)ℤ/ℤ. The class must be representable there (always true
    /// for target a multiple of |base| by torsion).
    pub fn reduce_to_modulus(
        &self,
        base: &Arc<FiniteGroup>,
        f: &CircleCochain,
        target: i64,
    ) -> Result<CircleCochain> {
        if target % f.modulus == 0 {
            return Ok(f.lift(target));
        }
        let t = qz_boundary(base, f.arity - 1);
        let e = base.order() as i64;
        let mut m = crate::circle::lcm(f.modulus, target);
        for _ in 0..4 {
            let s = m / target;
            let lifted = f.lift(m);
            let b: Vec<i64> = lifted.values.iter().map(|&v| v.rem_euclid(s)).collect();
            let rows = rows_from_triplets(t.rows, &t.triplets, s);
            if let Some(y) = solve_mod(&rows, t.cols, &b, s) {
                let g = CircleCochain {
                    base: base.clone(),
                    arity: f.arity - 1,
                    modulus: m,
                    values: y,
                };
                let reduced = lifted.sub(&g.delta());
                let mut values = Vec::with_capacity(reduced.values.len());
                for &v in &reduced.values {
                    if v % s != 0 {
                        return Err(Error::LiftFailure(
                            "modulus reduction left a fractional value".into(),
                        ));
                    }
                    values.push(v / s);
                }
                return Ok(CircleCochain {
                    base: base.clone(),
                    arity: f.arity,
                    modulus: target,
                    values,
                });
            }
            m *= e;
        }
        Err(Error::LiftFailure(format!(
            "no representative with denominator {target} found"
        )))
    }

    /// Class coordinates of a circle-valued cocycle in a computed group,
    /// reducing the modulus first when needed.
    pub fn circle_coords(
        &self,
        h: &CohomologyGroup,
        base: &Arc<FiniteGroup>,
        f: &CircleCochain,
    ) -> Result<ClassCoordinates> {
        let f = if f.modulus == h.modulus {
            f.clone()
        } else {
            self.reduce_to_modulus(base, f, h.modulus)?
        };
        h.coords(&f.values)
    }
}

fn qz_b_generators(t_in: &BoundaryMatrix, modulus: i64) -> Vec<Vec<i64>> {
    let mut b_gens = columns_mod(t_in, modulus);
    // Connecting classes: δ(z)/N for mod-N cocycles z one degree down.
    let kernel_in = smith_mod(
        rows_from_triplets(t_in.rows, &t_in.triplets, modulus),
        t_in.cols,
        modulus,
    );
    for (z, _) in kernel_in.kernel_generators() {
        let image = t_in.apply(&z);
        let conn: Vec<i64> = image
            .iter()
            .map(|&v| {
                debug_assert_eq!(v % modulus, 0);
                (v / modulus).rem_euclid(modulus)
            })
            .collect();
        b_gens.push(conn);
    }
    b_gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::catalog;
    use crate::group::finite::cyclic;

    fn h_factors(key: &str, q: usize) -> Vec<i64> {
        let ws = Workspace::default();
        let g = catalog().by_key(key).unwrap().group.clone();
        let n = g.order() as i64;
        ws.circle_cohomology(&g, q, n).unwrap().factors.clone()
    }

    #[test]
    fn circle_cohomology_of_small_cyclic_groups() {
        // H^q(Z/n, Q/Z) is Z/n in odd degrees and 0 in positive even ones.
        assert_eq!(h_factors("2.C", 1), vec![2]);
        assert_eq!(h_factors("2.C", 2), Vec::<i64>::new());
        assert_eq!(h_factors("2.C", 3), vec![2]);
        assert_eq!(h_factors("4.C", 3), vec![4]);
        assert_eq!(h_factors("3.C", 3), vec![3]);
    }

    #[test]
    fn klein_four_h3_is_three_twos() {
        assert_eq!(h_factors("4.V", 3), vec![2, 2, 2]);
    }

    #[test]
    fn basis_projects_to_unit_vectors_and_coboundaries_to_zero() {
        let ws = Workspace::default();
        let g = catalog().by_key("4.V").unwrap().group.clone();
        let h = ws.circle_cohomology(&g, 3, 4).unwrap();
        for (i, b) in h.basis.iter().enumerate() {
            let coords = h.coords(b).unwrap();
            let want: Vec<i64> = (0..h.factors.len())
                .map(|j| if i == j { 1 } else { 0 })
                .collect();
            assert_eq!(coords, want);
        }
        // A coboundary projects to zero.
        let mut c = CircleCochain::zero(g.clone(), 2, 4);
        c.set(&[1, 2], 3);
        c.set(&[3, 3], 1);
        let coords = h.coords(&c.delta().values).unwrap();
        assert!(coords.iter().all(|&v| v == 0));
    }

    #[test]
    fn triviality_test_matches_known_classes() {
        let ws = Workspace::default();
        let z2 = Arc::new(cyclic(2));
        let h3 = ws.circle_cohomology(&z2, 3, 2).unwrap();
        assert_eq!(h3.factors, vec![2]);
        let gen = CircleCochain {
            base: z2.clone(),
            arity: 3,
            modulus: 2,
            values: h3.basis[0].clone(),
        };
        assert!(!ws.is_trivial_circle(&z2, &gen).unwrap());
        let zero = CircleCochain::zero(z2.clone(), 3, 2);
        assert!(ws.is_trivial_circle(&z2, &zero).unwrap());
    }

    #[test]
    fn solve_coboundary_round_trips() {
        let ws = Workspace::default();
        let g = Arc::new(cyclic(4));
        let mut state = 5u64;
        for _ in 0..10 {
            let mut c = CircleCochain::zero(g.clone(), 1, 4);
            for v in c.values.iter_mut() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                *v = ((state >> 33) % 4) as i64;
            }
            let f = c.delta();
            let g2 = ws.solve_coboundary(&g, &f).expect("boundary is solvable");
            assert_eq!(g2.delta().values, f.values);
        }
    }

    #[test]
    fn triviality_agrees_with_escalated_solving() {
        let ws = Workspace::default();
        let g = catalog().by_key("4.C").unwrap().group.clone();
        let h = ws.circle_cohomology(&g, 3, 4).unwrap();
        for coords in h.all_class_coords() {
            let rep = CircleCochain {
                base: g.clone(),
                arity: 3,
                modulus: 4,
                values: h.representative(&coords),
            };
            let trivial = ws.is_trivial_circle(&g, &rep).unwrap();
            assert_eq!(trivial, coords.iter().all(|&c| c == 0));
            let solved = ws.solve_coboundary_qz(&g, &rep).unwrap();
            assert_eq!(solved.is_some(), trivial);
        }
    }
}
