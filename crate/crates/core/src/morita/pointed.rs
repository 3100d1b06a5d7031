//! Deciding whether the dual of Vect(G, ω) with respect to a subgroup A is
//! pointed: A must be abelian and normal, ω must restrict trivially to A
//! (so an associator μ with δ_G μ = −π*ω exists), and some choice of μ must
//! have every translate (μ ◁ y) − μ cohomologically trivial.

use std::sync::Arc;

use crate::cochain::bicomplex::{inflate, phi, BiCochain};
use crate::cochain::CircleCochain;
use crate::cohomology::engine::Workspace;
use crate::error::Result;
use crate::group::extension::extension_class;
use crate::group::finite::FiniteGroup;
use crate::group::subgroup::{is_abelian_subset, is_normal, is_subgroup};

#[derive(Debug)]
pub struct PointedVerdict {
    pub abelian: bool,
    pub normal: bool,
    pub restriction_trivial: bool,
    pub pointed: bool,
    /// A witness associator when pointed.
    pub mu: Option<BiCochain>,
    /// One witness γ_y with δ_G γ_y = (μ ◁ y) − μ per element of K.
    pub gammas: Vec<BiCochain>,
    pub obstruction: Option<String>,
}

impl PointedVerdict {
    fn failed(abelian: bool, normal: bool, reason: &str) -> Self {
        PointedVerdict {
            abelian,
            normal,
            restriction_trivial: false,
            pointed: false,
            mu: None,
            gammas: Vec::new(),
            obstruction: Some(reason.to_string()),
        }
    }
}

pub fn pointed_dual_test(
    ws: &Workspace,
    g: &Arc<FiniteGroup>,
    a_elems: &[usize],
    omega: &CircleCochain,
) -> Result<PointedVerdict> {
    let mut elems = a_elems.to_vec();
    elems.sort_unstable();
    elems.dedup();
    if !is_subgroup(g, &elems) {
        return Ok(PointedVerdict::failed(false, false, "not a subgroup"));
    }
    let abelian = is_abelian_subset(g, &elems);
    let normal = is_normal(g, &elems);
    if !abelian || !normal {
        return Ok(PointedVerdict::failed(
            abelian,
            normal,
            "A must be abelian and normal",
        ));
    }
    let (ext, iso) = extension_class(g, &elems)?;
    let ext = Arc::new(ext);
    // Transport ω into crossed-product coordinates.
    let omega_x = crate::morita::datum::transport_to_catalog(&ext.group, &iso, omega);
    let rhs = inflate(&ext, &omega_x).neg();
    let Some(mu0) = ws.solve_mapk_coboundary(&ext, &rhs)? else {
        return Ok(PointedVerdict {
            abelian,
            normal,
            restriction_trivial: false,
            pointed: false,
            mu: None,
            gammas: Vec::new(),
            obstruction: Some("restriction of the twist to A is nontrivial".into()),
        });
    };
    // Associators form a coset of Z²(G, Map(K, ℚ/ℤ)); the translate
    // obstruction only depends on the class, so correcting by φ of each
    // H²(A, ℚ/ℤ)-class exhausts the choices.
    let a_group = Arc::new(ext.a.group().clone());
    let h2a = ws.circle_cohomology(&a_group, 2, ext.a.order() as i64)?;
    for z_coords in h2a.all_class_coords() {
        let alpha = CircleCochain {
            base: a_group.clone(),
            arity: 2,
            modulus: h2a.modulus,
            values: h2a.representative(&z_coords),
        };
        let mu = mu0.add(&phi(&ext, &alpha));
        let mut gammas = Vec::with_capacity(ext.k.order());
        let mut ok = true;
        for y in 0..ext.k.order() {
            let diff = mu.act_right(y).sub(&mu);
            match ws.solve_mapk_coboundary(&ext, &diff)? {
                Some(gamma) => gammas.push(gamma),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Ok(PointedVerdict {
                abelian,
                normal,
                restriction_trivial: true,
                pointed: true,
                mu: Some(mu),
                gammas,
                obstruction: None,
            });
        }
    }
    Ok(PointedVerdict {
        abelian,
        normal,
        restriction_trivial: true,
        pointed: false,
        mu: None,
        gammas: Vec::new(),
        obstruction: Some("no associator makes every translate trivial".into()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::catalog;
    use crate::group::subgroup::closure;

    #[test]
    fn trivial_twist_on_z4_center_is_pointed() {
        let ws = Workspace::default();
        let g = catalog().by_key("4.C").unwrap().group.clone();
        let omega = CircleCochain::zero(g.clone(), 3, 4);
        let v = pointed_dual_test(&ws, &g, &[0, 2], &omega).unwrap();
        assert!(v.pointed);
        assert!(v.mu.is_some());
        assert_eq!(v.gammas.len(), 2);
    }

    #[test]
    fn quaternion_generator_twist_is_not_pointed_over_z4() {
        let ws = Workspace::default();
        let q8 = catalog().by_key("8.Q").unwrap().group.clone();
        let h3 = ws.circle_cohomology(&q8, 3, 8).unwrap();
        let r = q8.elements().find(|&x| q8.element_order(x) == 4).unwrap();
        let z4 = closure(&q8, &[r]);
        let alpha = CircleCochain {
            base: q8.clone(),
            arity: 3,
            modulus: 8,
            values: h3.basis[0].clone(),
        };
        let v = pointed_dual_test(&ws, &q8, &z4, &alpha).unwrap();
        assert!(v.abelian && v.normal);
        assert!(!v.pointed);
        assert!(!v.restriction_trivial);
    }

    #[test]
    fn non_normal_subgroup_is_rejected_with_verdict() {
        let ws = Workspace::default();
        let s3 = catalog().by_key("6.S").unwrap().group.clone();
        // An order-2 subgroup of S3 is not normal.
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let sub = closure(&s3, &[t]);
        let omega = CircleCochain::zero(s3.clone(), 3, 6);
        let v = pointed_dual_test(&ws, &s3, &sub, &omega).unwrap();
        assert!(!v.pointed);
        assert!(!v.normal);
    }
}
