//! Explicit cocycle constructions attached to a duality datum (K acting on
//! A, F, F̂, ε with δ_K ε = F̂ ∧ F): the twist ω on A ⋊_F K, its mirror ω̂ on
//! K ⋉_F̂ 𝔸, the module-category associator μ, the functor system γ, and the
//! Grothendieck-side cocycle ν.

use std::sync::Arc;

use crate::circle::lcm;
use crate::error::{Error, Result};
use crate::group::extension::{DualCrossedProduct, ExtensionData};

use super::bicomplex::{wedge, BiCochain};
use super::{CircleCochain, ModCochain};

/// ω((a₁,x₁),(a₂,x₂),(a₃,x₃)) = ⟨F̂(x₁,x₂), a₃⟩ + ε(x₁,x₂,x₃).
pub fn build_omega(
    ext: &Arc<ExtensionData>,
    f_hat: &ModCochain,
    eps: &CircleCochain,
) -> CircleCochain {
    let e = ext.a.exponent() as i64;
    let m = lcm(e, eps.modulus);
    let mut out = CircleCochain::zero(ext.group.clone(), 3, m);
    let tuples = out.tuples();
    for i in 0..tuples.count() {
        let t = tuples.at(i);
        let (_, x1) = ext.pair(t[0]);
        let (_, x2) = ext.pair(t[1]);
        let (a3, x3) = ext.pair(t[2]);
        let pairing = ext.dual.pairing(f_hat.value(&[x1, x2]), a3).lift(e);
        out.values[i] =
            (pairing.numerator() * (m / e) + eps.value(&[x1, x2, x3]) * (m / eps.modulus))
                .rem_euclid(m);
    }
    out
}

/// ω̂((k₁,ρ₁),(k₂,ρ₂),(k₃,ρ₃)) = ε(k₁,k₂,k₃) + ⟨ρ₁, F(k₂,k₃)⟩ on K ⋉_F̂ 𝔸.
pub fn build_omega_hat(
    ext: &Arc<ExtensionData>,
    dc: &DualCrossedProduct,
    eps: &CircleCochain,
) -> CircleCochain {
    let e = ext.a.exponent() as i64;
    let m = lcm(e, eps.modulus);
    let mut out = CircleCochain::zero(dc.group.clone(), 3, m);
    let tuples = out.tuples();
    for i in 0..tuples.count() {
        let t = tuples.at(i);
        let (k1, rho1) = dc.pair(t[0]);
        let (k2, _) = dc.pair(t[1]);
        let (k3, _) = dc.pair(t[2]);
        let pairing = ext.dual.pairing(rho1, ext.f.get(k2, k3)).lift(e);
        out.values[i] =
            (eps.value(&[k1, k2, k3]) * (m / eps.modulus) + pairing.numerator() * (m / e))
                .rem_euclid(m);
    }
    out
}

/// μ(x₁; (a₂,x₂), (a₃,x₃)) = −(⟨F̂(x₁,x₂), a₃⟩ + ε(x₁,x₂,x₃)) ∈ C^{0,2},
/// the associator with δ_G μ = −π*ω.
pub fn build_mu(ext: &Arc<ExtensionData>, f_hat: &ModCochain, eps: &CircleCochain) -> BiCochain {
    let e = ext.a.exponent() as i64;
    let m = lcm(e, eps.modulus);
    let mut out = BiCochain::zero(ext.clone(), 0, 2, m);
    let gtuples = out.g_tuples();
    for gi in 0..gtuples.count() {
        let t = gtuples.at(gi);
        let (_, x2) = ext.pair(t[0]);
        let (a3, x3) = ext.pair(t[1]);
        for x1 in 0..ext.k.order() {
            let pairing = ext.dual.pairing(f_hat.value(&[x1, x2]), a3).lift(e);
            let v = -(pairing.numerator() * (m / e)
                + eps.value(&[x1, x2, x3]) * (m / eps.modulus));
            let idx = (gi) * ext.k.order() + x1;
            out.values[idx] = v.rem_euclid(m);
        }
    }
    out
}

/// γ(y)(x₁; (a₂,x₂)) = ⟨F̂(y,x₁), a₂⟩ + ε(y,x₁,x₂) ∈ C^{1,1}.
pub fn build_gamma(ext: &Arc<ExtensionData>, f_hat: &ModCochain, eps: &CircleCochain) -> BiCochain {
    let e = ext.a.exponent() as i64;
    let m = lcm(e, eps.modulus);
    let mut out = BiCochain::zero(ext.clone(), 1, 1, m);
    let gtuples = out.g_tuples();
    let k_ord = ext.k.order();
    for y in 1..k_ord {
        for gi in 0..gtuples.count() {
            let g = gtuples.at(gi)[0];
            let (a2, x2) = ext.pair(g);
            for x1 in 0..k_ord {
                let pairing = ext.dual.pairing(f_hat.value(&[y, x1]), a2).lift(e);
                let v = pairing.numerator() * (m / e) + eps.value(&[y, x1, x2]) * (m / eps.modulus);
                let idx = ((y - 1) * gtuples.count() + gi) * k_ord + x1;
                out.values[idx] = v.rem_euclid(m);
            }
        }
    }
    out
}

/// β(k₁,k₂)(x) = ε(k₁,k₂,x) ∈ C^{2,0}.
pub fn build_beta(ext: &Arc<ExtensionData>, eps: &CircleCochain) -> BiCochain {
    let mut out = BiCochain::zero(ext.clone(), 2, 0, eps.modulus);
    let ktuples = out.k_tuples();
    let k_ord = ext.k.order();
    for kt in 0..ktuples.count() {
        let t = ktuples.at(kt);
        for x in 0..k_ord {
            let idx = kt * k_ord + x;
            out.values[idx] = eps.value(&[t[0], t[1], x]);
        }
    }
    out
}

/// ν̃ = δ_K γ together with ν = ψ ∘ ν̃ ∈ Z²(K, 𝔸). Both cocycle conditions
/// on ν̃ are verified.
pub fn nu_from_gamma(gamma: &BiCochain) -> Result<(BiCochain, ModCochain)> {
    assert_eq!((gamma.p, gamma.q), (1, 1));
    let nu_tilde = gamma.delta_k();
    if !nu_tilde.delta_k().is_zero() {
        return Err(Error::NotACocycle("delta_K nu-tilde != 0".into()));
    }
    if !nu_tilde.delta_g().is_zero() {
        return Err(Error::NotACocycle("delta_G nu-tilde != 0".into()));
    }
    let nu = nu_tilde.psi_to_dual()?;
    Ok((nu_tilde, nu))
}

/// Verify δ_K ε = F̂ ∧ F, the compatibility a duality datum requires.
pub fn epsilon_matches_wedge(
    ext: &ExtensionData,
    f_hat: &ModCochain,
    f: &ModCochain,
    eps: &CircleCochain,
) -> bool {
    let w = wedge(ext, f_hat, f);
    eps.delta().sub(&w).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::bicomplex::{inflate, phi_dual, TotalCochain};
    use crate::group::abelian::AbelianGroup;
    use crate::group::action::{ActionSide, GroupAction};
    use crate::group::extension::{crossed_product, PairTable};
    use crate::group::finite::cyclic;

    /// The split extension (Z/2)² = Z/2 × Z/2 with the nontrivial dual class.
    fn v4_datum() -> (Arc<ExtensionData>, ModCochain, ModCochain, CircleCochain) {
        let a = AbelianGroup::from_factors(&[2]);
        let k = cyclic(2);
        let act = GroupAction::trivial(&k, &a, ActionSide::Left);
        let ext = Arc::new(crossed_product(&a, &k, &act, &PairTable::zero(2)).unwrap());
        let f = ModCochain::from_pair_table(
            ext.k.clone(),
            Arc::new(ext.a.as_ref().clone()),
            ext.action.clone(),
            &ext.f,
        )
        .unwrap();
        let mut f_hat = ModCochain::zero(
            ext.k.clone(),
            Arc::new(ext.dual.carrier().clone()),
            ext.dual_act.clone(),
            2,
        );
        f_hat.set(&[1, 1], 1);
        let eps = CircleCochain::zero(ext.k.clone(), 3, 2);
        (ext, f, f_hat, eps)
    }

    #[test]
    fn datum_validity_and_built_cocycles() {
        let (ext, f, f_hat, eps) = v4_datum();
        assert!(epsilon_matches_wedge(&ext, &f_hat, &f, &eps));
        let omega = build_omega(&ext, &f_hat, &eps);
        assert!(omega.is_cocycle());
    }

    #[test]
    fn ladder_identities_hold() {
        let (ext, _f, f_hat, eps) = v4_datum();
        let omega = build_omega(&ext, &f_hat, &eps);
        let mu = build_mu(&ext, &f_hat, &eps);
        let gamma = build_gamma(&ext, &f_hat, &eps);
        let beta = build_beta(&ext, &eps);

        // δ_G μ + π*ω = 0
        let pi_omega = inflate(&ext, &omega);
        assert!(mu.delta_g().add(&pi_omega).is_zero());
        // δ_K μ = δ_G γ
        assert!(mu.delta_k().sub(&gamma.delta_g()).is_zero());
        // δ_K γ = φ(F̂) + δ_G β
        let lhs = gamma.delta_k();
        let rhs = phi_dual(&ext, &f_hat).add(&beta.delta_g());
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn total_coboundary_concentrates_nu_tilde() {
        // π*ω + δ_Tot(μ ⊕ γ) = ν̃, concentrated in bidegree (2,1).
        let (ext, _f, f_hat, eps) = v4_datum();
        let omega = build_omega(&ext, &f_hat, &eps);
        let mu = build_mu(&ext, &f_hat, &eps);
        let gamma = build_gamma(&ext, &f_hat, &eps);
        let (nu_tilde, nu) = nu_from_gamma(&gamma).unwrap();

        let mut x = TotalCochain::new(ext.clone(), 2);
        x.insert(mu.clone());
        x.insert(gamma.clone());
        let mut total = x.delta_tot();
        total.insert(inflate(&ext, &omega));
        // Components (0,3) and (1,2) cancel; (2,1) equals nu-tilde.
        assert!(total.part(0).map_or(true, |c| c.is_zero()));
        assert!(total.part(1).map_or(true, |c| c.is_zero()));
        let top = total.part(2).expect("(2,1) component");
        assert!(top.sub(&nu_tilde).is_zero());

        // ν = F̂ exactly, for the standard builders.
        assert_eq!(nu.values, {
            let mut f_hat2 = f_hat.clone();
            f_hat2.values = f_hat.values.clone();
            f_hat2.values
        });
    }
}
