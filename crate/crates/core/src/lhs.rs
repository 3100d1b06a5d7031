//! The spectral sequence of an abelian extension at the level this crate
//! needs: E₂ terms on the bottom two rows and the left column, the second
//! differential off row one computed by an explicit zig-zag in the double
//! complex, survival of F̂-classes, and membership in the subgroup of twists
//! whose dual is pointed.

use std::sync::Arc;

use crate::circle::lcm;
use crate::cochain::bicomplex::{phi_dual, wedge, BiCochain};
use crate::cochain::builders::build_omega;
use crate::cochain::{CircleCochain, ModCochain};
use crate::cohomology::engine::{ClassCoordinates, CohomologyGroup, Workspace};
use crate::cohomology::orbits::pullback;
use crate::cohomology::space::FiniteModule;
use crate::error::{Error, Result};
use crate::group::abelian::invariant_factors_from_orders;
use crate::group::extension::ExtensionData;
use crate::linalg::dense::{rows_from_triplets, smith_mod, solve_mod};

/// The dual group 𝔸 with its right K-action, as a coefficient module.
pub fn dual_module(ext: &ExtensionData) -> FiniteModule {
    FiniteModule::from_action(ext.dual.carrier(), &ext.dual_act, ext.k.order())
}

/// A with its left conjugation action, as a coefficient module.
pub fn a_module(ext: &ExtensionData) -> FiniteModule {
    FiniteModule::from_action(&ext.a, &ext.action, ext.k.order())
}

/// One E₂ entry. `factors` is empty for a trivial entry; `divisible` marks
/// the corner E₂^{0,0} = ℚ/ℤ.
#[derive(Clone)]
pub struct E2Term {
    pub p: usize,
    pub q: usize,
    pub factors: Vec<i64>,
    pub divisible: bool,
    pub group: Option<Arc<CohomologyGroup>>,
}

/// H^q(A, ℚ/ℤ) together with the K-action on its coordinates.
pub fn hq_a_as_k_module(
    ws: &Workspace,
    ext: &Arc<ExtensionData>,
    q: usize,
) -> Result<(Arc<CohomologyGroup>, FiniteModule)> {
    let a_group = Arc::new(ext.a.group().clone());
    let ha = ws.circle_cohomology(&a_group, q, ext.a.order() as i64)?;
    let s = ha.factors.len();
    let mut matrices = Vec::with_capacity(ext.k.order());
    for k in 0..ext.k.order() {
        let mut m = vec![0i64; s * s];
        for j in 0..s {
            let b = CircleCochain {
                base: a_group.clone(),
                arity: q,
                modulus: ha.modulus,
                values: ha.basis[j].clone(),
            };
            let coords = ha.coords(&pullback(&b, ext.action.map(k)).values)?;
            for i in 0..s {
                m[i * s + j] = coords[i];
            }
        }
        matrices.push(m);
    }
    let module = FiniteModule {
        moduli: ha.factors.clone(),
        matrices,
        side: crate::group::action::ActionSide::Right,
    };
    Ok((ha, module))
}

fn invariants_of_module(ws: &Workspace, ext: &Arc<ExtensionData>, module: &FiniteModule) -> Vec<i64> {
    // Kernel of the stacked (M_k - 1) over the coordinate module, in scaled
    // coordinates with the sublattice rows appended.
    let s = module.rank();
    if s == 0 {
        return Vec::new();
    }
    let l = module.lcm_modulus();
    let mut triplets: Vec<(u32, u32, i64)> = Vec::new();
    let mut row = 0u32;
    for k in 1..ext.k.order() {
        for i in 0..s {
            for j in 0..s {
                let m = module.matrices[k][i * s + j] - if i == j { 1 } else { 0 };
                let e = m * module.moduli[j] / module.moduli[i];
                if e != 0 {
                    triplets.push((row, j as u32, e));
                }
            }
            row += 1;
        }
    }
    for j in 0..s {
        if module.moduli[j] != l {
            triplets.push((row, j as u32, module.moduli[j]));
            row += 1;
        }
    }
    let _ = ws;
    let sm = smith_mod(rows_from_triplets(row as usize, &triplets, l), s, l);
    let orders: Vec<i64> = sm.kernel_generators().iter().map(|(_, o)| *o).collect();
    invariant_factors_from_orders(&orders)
}

/// E₂ term at a supported position: rows q ∈ {0, 1} and the column p = 0.
pub fn e2_term(ws: &Workspace, ext: &Arc<ExtensionData>, p: usize, q: usize) -> Result<E2Term> {
    if !(q <= 1 || p == 0) {
        return Err(Error::UnsupportedPosition(p, q));
    }
    e2_cell(ws, ext, p, q)
}

/// Any cell with p + q small; positions outside the supported set are
/// realized as H^p(K, H^q(A)) with the induced coordinate module. Used by
/// the page report.
pub fn e2_cell(ws: &Workspace, ext: &Arc<ExtensionData>, p: usize, q: usize) -> Result<E2Term> {
    let k = &ext.k;
    let nk = k.order() as i64;
    match (p, q) {
        (0, 0) => Ok(E2Term {
            p,
            q,
            factors: Vec::new(),
            divisible: true,
            group: None,
        }),
        (_, 0) => {
            let h = ws.circle_cohomology(k, p, nk)?;
            Ok(E2Term {
                p,
                q,
                factors: h.factors.clone(),
                divisible: false,
                group: Some(h),
            })
        }
        (_, 1) => {
            let h = ws.module_cohomology(k, &dual_module(ext), p)?;
            Ok(E2Term {
                p,
                q,
                factors: h.factors.clone(),
                divisible: false,
                group: Some(h),
            })
        }
        (0, _) => {
            let (_, module) = hq_a_as_k_module(ws, ext, q)?;
            let factors = invariants_of_module(ws, ext, &module);
            Ok(E2Term {
                p,
                q,
                factors,
                divisible: false,
                group: None,
            })
        }
        (_, _) => {
            let (_, module) = hq_a_as_k_module(ws, ext, q)?;
            let h = ws.module_cohomology(k, &module, p)?;
            Ok(E2Term {
                p,
                q,
                factors: h.factors.clone(),
                divisible: false,
                group: Some(h),
            })
        }
    }
}

/// The second differential off row one, by the zig-zag: lift a class of
/// H^p(K, 𝔸) through φ into C^{p,1}, cancel its δ_K with an explicit
/// C^{p+1,0} correction, and read off the class of the δ_K of the
/// correction in H^{p+2}(K, ℚ/ℤ).
pub fn d2_row1(
    ws: &Workspace,
    ext: &Arc<ExtensionData>,
    p: usize,
    coords: &ClassCoordinates,
) -> Result<(CircleCochain, ClassCoordinates)> {
    let h_row1 = ws.module_cohomology(&ext.k, &dual_module(ext), p)?;
    let scaled = h_row1.representative(coords);
    let c = ModCochain::from_scaled_vector(
        ext.k.clone(),
        Arc::new(ext.dual.carrier().clone()),
        ext.dual_act.clone(),
        p,
        h_row1.modulus,
        &scaled,
    )?;
    d2_row1_of_cocycle(ws, ext, &c)
}

/// Zig-zag on an explicit 𝔸-valued cocycle.
pub fn d2_row1_of_cocycle(
    ws: &Workspace,
    ext: &Arc<ExtensionData>,
    c: &ModCochain,
) -> Result<(CircleCochain, ClassCoordinates)> {
    let p = c.arity;
    if !c.is_cocycle() {
        return Err(Error::NotACocycle("d2 input must be a cocycle".into()));
    }
    let lifted = phi_dual(ext, c);
    let w = lifted.delta_k();
    // Components must restrict to the zero character; this is δ_K c = 0.
    let psi_w = w.psi_to_dual()?;
    if !psi_w.is_zero() {
        return Err(Error::LiftFailure(
            "δ_K of the lift does not vanish on A".into(),
        ));
    }
    // Solve δ_G b = (-1)^p w by the explicit section formula
    // b(t)(x) = ± w(t)(1_K; u(x)).
    let sign: i64 = if p % 2 == 0 { 1 } else { -1 };
    let mut b = BiCochain::zero(ext.clone(), p + 1, 0, w.modulus);
    let ktuples = b.k_tuples();
    let k_ord = ext.k.order();
    for kt in 0..ktuples.count() {
        let ktuple = ktuples.at(kt);
        for x in 0..k_ord {
            let v = w.value(&ktuple, 0, &[ext.u(x)]);
            let idx = kt * k_ord + x;
            b.values[idx] = (sign * v).rem_euclid(w.modulus);
        }
    }
    let check = if p % 2 == 0 { w.clone() } else { w.neg() };
    if !b.delta_g().sub(&check).is_zero() {
        return Err(Error::LiftFailure("section formula missed the lift".into()));
    }
    let v = b.delta_k();
    if !v.delta_g().is_zero() {
        return Err(Error::LiftFailure("d2 representative is not constant".into()));
    }
    let mut rep = CircleCochain::zero(ext.k.clone(), p + 2, v.modulus);
    let rep_tuples = rep.tuples();
    for i in 0..rep_tuples.count() {
        let t = rep_tuples.at(i);
        rep.values[i] = v.value(&t, 0, &[]);
    }
    let target = ws.circle_cohomology(&ext.k, p + 2, ext.k.order() as i64)?;
    let coords = ws.circle_coords(&target, &ext.k, &rep)?;
    Ok((rep, coords))
}

/// Find ε with δ_K ε = F̂ ∧ F, or None when the wedge class is nontrivial
/// (equivalently, when d₂ does not vanish on [F̂]).
pub fn survives(
    ws: &Workspace,
    ext: &Arc<ExtensionData>,
    f_hat: &ModCochain,
) -> Result<Option<CircleCochain>> {
    let f = ModCochain::from_pair_table(
        ext.k.clone(),
        Arc::new((*ext.a).clone()),
        ext.action.clone(),
        &ext.f,
    )?;
    let w = wedge(ext, f_hat, &f);
    let nk = ext.k.order() as i64;
    let base = lcm(w.modulus, nk);
    if w.is_zero() {
        return Ok(Some(CircleCochain::zero(ext.k.clone(), 3, base)));
    }
    if !ws.is_trivial_circle(&ext.k, &w)? {
        return Ok(None);
    }
    let t = crate::cohomology::space::qz_boundary(&ext.k, 3);
    let mut m = base;
    for _ in 0..4 {
        let lifted = w.lift(m);
        let rows = rows_from_triplets(t.rows, &t.triplets, m);
        if let Some(x) = solve_mod(&rows, t.cols, &lifted.values, m) {
            return Ok(Some(CircleCochain {
                base: ext.k.clone(),
                arity: 3,
                modulus: m,
                values: x,
            }));
        }
        m *= nk;
    }
    Err(Error::LiftFailure(
        "trivial wedge class admits no ε at escalated moduli".into(),
    ))
}

/// Verdict of the Ω(G;A)-membership search, with the reconstruction
/// witness on success.
#[derive(Clone, Debug)]
pub struct OmegaMembership {
    pub member: bool,
    pub witness: Option<OmegaWitness>,
}

#[derive(Clone, Debug)]
pub struct OmegaWitness {
    pub f_hat: ModCochain,
    pub epsilon: CircleCochain,
    /// g with δg = ω_built − ω.
    pub coboundary: CircleCochain,
}

/// Decide whether [ω] is cohomologous to a twist built from some surviving
/// F̂ and compatible ε, searching candidates in deterministic order.
pub fn omega_membership(
    ws: &Workspace,
    ext: &Arc<ExtensionData>,
    omega: &CircleCochain,
) -> Result<OmegaMembership> {
    assert_eq!(omega.base.order(), ext.group.order());
    // A twist built from the double complex restricts trivially to A.
    let a_group = Arc::new(ext.a.group().clone());
    let restriction = crate::cochain::bicomplex::inflate(ext, omega).psi();
    if !ws.is_trivial_circle(&a_group, &restriction)? {
        return Ok(OmegaMembership {
            member: false,
            witness: None,
        });
    }
    let h2 = ws.module_cohomology(&ext.k, &dual_module(ext), 2)?;
    let h3k = ws.circle_cohomology(&ext.k, 3, ext.k.order() as i64)?;
    for f_hat_coords in h2.all_class_coords() {
        let scaled = h2.representative(&f_hat_coords);
        let f_hat = ModCochain::from_scaled_vector(
            ext.k.clone(),
            Arc::new(ext.dual.carrier().clone()),
            ext.dual_act.clone(),
            2,
            h2.modulus,
            &scaled,
        )?;
        let Some(eps0) = survives(ws, ext, &f_hat)? else {
            continue;
        };
        for tau_coords in h3k.all_class_coords() {
            let tau = CircleCochain {
                base: ext.k.clone(),
                arity: 3,
                modulus: h3k.modulus,
                values: h3k.representative(&tau_coords),
            };
            let epsilon = eps0.add(&tau);
            let candidate = build_omega(ext, &f_hat, &epsilon);
            let diff = candidate.sub(omega);
            if ws.is_trivial_circle(&ext.group, &diff)? {
                let coboundary = ws
                    .solve_coboundary_qz(&ext.group, &diff)?
                    .ok_or_else(|| Error::LiftFailure("witness solve failed".into()))?;
                return Ok(OmegaMembership {
                    member: true,
                    witness: Some(OmegaWitness {
                        f_hat,
                        epsilon,
                        coboundary,
                    }),
                });
            }
        }
    }
    Ok(OmegaMembership {
        member: false,
        witness: None,
    })
}

/// One page-report row of d₂ data: the matrix of d₂: E₂^{p,1} -> E₂^{p+2,0}
/// in class coordinates, and whether the map is zero / injective.
#[derive(Clone, Debug)]
pub struct D2Summary {
    pub p: usize,
    pub source_factors: Vec<i64>,
    pub target_factors: Vec<i64>,
    /// Column j = coordinates of d₂(basis_j).
    pub matrix: Vec<Vec<i64>>,
    pub is_zero: bool,
    pub is_injective: bool,
}

pub fn d2_summary(ws: &Workspace, ext: &Arc<ExtensionData>, p: usize) -> Result<D2Summary> {
    let source = ws.module_cohomology(&ext.k, &dual_module(ext), p)?;
    let target = ws.circle_cohomology(&ext.k, p + 2, ext.k.order() as i64)?;
    let mut matrix = Vec::new();
    for j in 0..source.factors.len() {
        let mut coords = vec![0i64; source.factors.len()];
        coords[j] = 1;
        let (_, image) = d2_row1(ws, ext, p, &coords)?;
        matrix.push(image);
    }
    // Exhaust the finite source to decide injectivity.
    let mut is_injective = true;
    let mut is_zero = true;
    for coords in source.all_class_coords() {
        let image: Vec<i64> = (0..target.factors.len())
            .map(|i| {
                let mut acc = 0i64;
                for (j, col) in matrix.iter().enumerate() {
                    acc += col[i] * coords[j];
                }
                acc.rem_euclid(target.factors[i])
            })
            .collect();
        let image_zero = image.iter().all(|&v| v == 0);
        let coords_zero = coords.iter().all(|&v| v == 0);
        if !image_zero {
            is_zero = false;
        }
        if image_zero && !coords_zero {
            is_injective = false;
        }
    }
    Ok(D2Summary {
        p,
        source_factors: source.factors.clone(),
        target_factors: target.factors.clone(),
        matrix,
        is_zero,
        is_injective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::abelian::AbelianGroup;
    use crate::group::action::{ActionSide, GroupAction};
    use crate::group::extension::{crossed_product, extension_class, PairTable};
    use crate::group::catalog::catalog;
    use crate::group::finite::cyclic;

    fn z4_over_z2() -> Arc<ExtensionData> {
        let a = AbelianGroup::from_factors(&[2]);
        let k = cyclic(2);
        let act = GroupAction::trivial(&k, &a, ActionSide::Left);
        let mut f = PairTable::zero(2);
        f.set(1, 1, 1);
        Arc::new(crossed_product(&a, &k, &act, &f).unwrap())
    }

    #[test]
    fn e2_terms_of_the_z4_extension() {
        let ws = Workspace::default();
        let ext = z4_over_z2();
        assert_eq!(e2_term(&ws, &ext, 1, 1).unwrap().factors, vec![2]);
        assert_eq!(e2_term(&ws, &ext, 3, 0).unwrap().factors, vec![2]);
        assert_eq!(e2_term(&ws, &ext, 0, 3).unwrap().factors, vec![2]);
        assert_eq!(e2_term(&ws, &ext, 2, 0).unwrap().factors, Vec::<i64>::new());
        assert!(matches!(
            e2_term(&ws, &ext, 1, 2),
            Err(Error::UnsupportedPosition(1, 2))
        ));
    }

    #[test]
    fn split_trivial_extension_has_e2_21_z2() {
        // A = K = Z/2 with F = 0: E2^{2,1} = H²(Z/2, Z/2) = Z/2, and every
        // F-hat survives because the wedge against F = 0 vanishes.
        let a = AbelianGroup::from_factors(&[2]);
        let k = cyclic(2);
        let act = GroupAction::trivial(&k, &a, ActionSide::Left);
        let ext = Arc::new(crossed_product(&a, &k, &act, &PairTable::zero(2)).unwrap());
        let ws = Workspace::default();
        assert_eq!(e2_term(&ws, &ext, 2, 1).unwrap().factors, vec![2]);
        let s = d2_summary(&ws, &ext, 2).unwrap();
        assert!(s.is_zero);
    }

    #[test]
    fn d2_is_an_isomorphism_for_the_z4_extension() {
        let ws = Workspace::default();
        let ext = z4_over_z2();
        let s = d2_summary(&ws, &ext, 1).unwrap();
        assert_eq!(s.source_factors, vec![2]);
        assert_eq!(s.target_factors, vec![2]);
        assert!(s.is_injective && !s.is_zero);
    }

    #[test]
    fn survives_iff_d2_vanishes_at_p2() {
        let ws = Workspace::default();
        let ext = z4_over_z2();
        let h2 = ws.module_cohomology(&ext.k, &dual_module(&ext), 2).unwrap();
        for coords in h2.all_class_coords() {
            let scaled = h2.representative(&coords);
            let f_hat = ModCochain::from_scaled_vector(
                ext.k.clone(),
                Arc::new(ext.dual.carrier().clone()),
                ext.dual_act.clone(),
                2,
                h2.modulus,
                &scaled,
            )
            .unwrap();
            let eps = survives(&ws, &ext, &f_hat).unwrap();
            let (_, d2c) = d2_row1(&ws, &ext, 2, &coords).unwrap();
            let d2_vanishes = d2c.iter().all(|&v| v == 0);
            assert_eq!(eps.is_some(), d2_vanishes, "coords {coords:?}");
            if let Some(e) = eps {
                // Witness really satisfies δε = F̂ ∧ F.
                let f = ModCochain::from_pair_table(
                    ext.k.clone(),
                    Arc::new((*ext.a).clone()),
                    ext.action.clone(),
                    &ext.f,
                )
                .unwrap();
                let w = wedge(&ext, &f_hat, &f);
                assert!(e.delta().sub(&w).is_zero());
            }
        }
    }

    #[test]
    fn omega_membership_on_q8_center_route() {
        // ω = 0 on Q8 with A = center: member with trivial witness route;
        // ω = generator of H³(Q8): restriction to Z/4 is nontrivial, so for
        // A = Z/4 the class is not a member.
        let ws = Workspace::default();
        let q8 = catalog().by_key("8.Q").unwrap().group.clone();
        let z4: Vec<usize> = {
            let r = q8.elements().find(|&x| q8.element_order(x) == 4).unwrap();
            crate::group::subgroup::closure(&q8, &[r])
        };
        let (ext, iso) = extension_class(&q8, &z4).unwrap();
        let ext = Arc::new(ext);
        // Transport a generator of H^3(Q8) to the crossed coordinates.
        let h3 = ws.circle_cohomology(&q8, 3, 8).unwrap();
        assert_eq!(h3.factors, vec![8]);
        let gen = CircleCochain {
            base: q8.clone(),
            arity: 3,
            modulus: 8,
            values: h3.basis[0].clone(),
        };
        let transported = CircleCochain {
            base: ext.group.clone(),
            arity: 3,
            modulus: 8,
            values: {
                let t = gen.tuples();
                (0..t.count())
                    .map(|i| {
                        let tup = t.at(i);
                        gen.value(&[iso[tup[0]], iso[tup[1]], iso[tup[2]]])
                    })
                    .collect()
            },
        };
        let verdict = omega_membership(&ws, &ext, &transported).unwrap();
        assert!(!verdict.member);
        let zero = CircleCochain::zero(ext.group.clone(), 3, 8);
        let verdict0 = omega_membership(&ws, &ext, &zero).unwrap();
        assert!(verdict0.member);
    }
}
