//! The twisted power map `φ_σ(b) = σ^{-1}(b^{q(σ)})`, the minimal period
//! `n_{σ,b}` (first return of the φ-orbit to the conjugacy class of b), and
//! the σ-norm `N_σ(b) = Σ_{i<n} φ^i(b)` in the abelianization.

use num_bigint::BigInt;

use crate::abmod::{FGAbelianModule, GaloisContext};
use crate::groups::{
    abelianization, induced_abelianization_action, FiniteGroup, GroupAction, GroupToModuleMap,
};
use crate::linalg::Vector;
use crate::{Error, Result};

/// A finite group `H` with Γ_e-action, its abelianization as a module with
/// the induced action, and the projection H → H^ab.
#[derive(Clone, Debug)]
pub struct NormContext {
    pub ctx: GaloisContext,
    pub h_group: FiniteGroup,
    pub action: GroupAction,
    pub hab: FGAbelianModule,
    pub abmap: GroupToModuleMap,
}

impl NormContext {
    /// Build from a group with action; the abelianization and the induced
    /// module action are computed and cross-checked.
    pub fn new(ctx: GaloisContext, h_group: FiniteGroup, action: GroupAction) -> Result<Self> {
        action.validate(&ctx.gamma, &h_group)?;
        // h must kill the whole group, not just H^ab, for φ to be bijective
        let exp = h_group.exponent();
        if !ctx.h.is_multiple_of(exp) {
            return Err(Error::ExponentDoesNotDivideH(exp, ctx.h));
        }
        let ab = abelianization(&h_group);
        let mats = induced_abelianization_action(&h_group, &action, &ab)?;
        let hab = ab.module.clone().with_action(mats);
        hab.validate_action(&ctx.gamma)?;
        Ok(NormContext {
            ctx,
            h_group,
            action,
            hab,
            abmap: ab.proj,
        })
    }

    /// `φ_σ(b) = σ^{-1}(b^{q(σ)})`.
    pub fn phi(&self, sigma: usize, b: usize) -> Result<usize> {
        let q = self.ctx.q(sigma);
        let ord = self.h_group.element_order(b);
        if num_integer::gcd(q, ord) != 1 {
            return Err(Error::QcharNotCoprime(q, ord));
        }
        let powered = self.h_group.pow_u64(b, q % ord);
        Ok(self.action.apply(self.ctx.gamma.inv(sigma), powered))
    }

    /// Minimal n ≥ 1 with `φ_σ^n(b)` conjugate to b (bounded by |H| by
    /// pigeonhole on the φ-orbit).
    pub fn n_period(&self, sigma: usize, b: usize) -> Result<u64> {
        let mut x = b;
        for n in 1..=(self.h_group.order() as u64) {
            x = self.phi(sigma, x)?;
            if self.h_group.conjugacy_test(x, b) {
                return Ok(n);
            }
        }
        unreachable!("phi is a bijection, so the orbit returns within |H| steps")
    }

    /// `N_σ(b) = Σ_{i<n_{σ,b}} abmap(φ_σ^i(b))` in the additive H^ab.
    pub fn norm(&self, sigma: usize, b: usize) -> Result<Vector> {
        let n = self.n_period(sigma, b)?;
        let mut acc = self.hab.zero();
        let mut x = b;
        for _ in 0..n {
            acc = self.hab.add(&acc, self.abmap.apply(x));
            x = self.phi(sigma, x)?;
        }
        Ok(acc)
    }

    /// `φ_σ` induced on H^ab, as a module automorphism applied to v:
    /// `q(σ) · σ^{-1}(v)`.
    pub fn phi_on_hab(&self, sigma: usize, v: &[BigInt]) -> Vector {
        let q = BigInt::from(self.ctx.q(sigma));
        let inv = self.ctx.gamma.inv(sigma);
        self.hab.scalar_mul(&q, &self.hab.act(inv, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_from_i64;

    fn constant_group_ctx(
        h_group: FiniteGroup,
        gamma_order: usize,
        h: u64,
        qchar: Vec<u64>,
    ) -> NormContext {
        let gamma = FiniteGroup::cyclic(gamma_order);
        let ctx = GaloisContext::new(gamma.clone(), Some(1 % gamma_order), h, qchar).unwrap();
        let action = GroupAction::trivial(&gamma, &h_group);
        NormContext::new(ctx, h_group, action).unwrap()
    }

    #[test]
    fn phi_identity_cases() {
        let nc = constant_group_ctx(FiniteGroup::symmetric(3), 2, 6, vec![1, 1]);
        let e = nc.h_group.identity();
        for s in 0..2 {
            assert_eq!(nc.phi(s, e).unwrap(), e);
        }
        // trivial action, q = 1: phi is the identity map
        for b in nc.h_group.elements() {
            assert_eq!(nc.phi(1, b).unwrap(), b);
            assert_eq!(nc.n_period(1, b).unwrap(), 1);
        }
    }

    #[test]
    fn phi_power_map_on_s3() {
        // trivial action, q(σ) = 5 ≡ 2 mod 3 on 3-cycles: φ(b) = b^5 = b^2
        let nc = constant_group_ctx(FiniteGroup::symmetric(3), 2, 6, vec![1, 5]);
        let c3 = nc
            .h_group
            .elements()
            .find(|&x| nc.h_group.element_order(x) == 3)
            .unwrap();
        assert_eq!(nc.phi(1, c3).unwrap(), nc.h_group.op(c3, c3));
    }

    #[test]
    fn phi_is_bijection_and_commutes() {
        // Z/5 with σ acting by doubling, q(σ) = 3 mod 5... use h = 5, q = 3
        let gamma = FiniteGroup::cyclic(4);
        let ctx = GaloisContext::new(gamma.clone(), Some(1), 5, vec![1, 3, 4, 2]).unwrap();
        let z5 = FiniteGroup::cyclic(5);
        let double: Vec<usize> = (0..5).map(|x| (2 * x) % 5).collect();
        let mut maps = vec![(0..5).collect::<Vec<usize>>()];
        let mut cur = double.clone();
        for _ in 1..4 {
            maps.push(cur.clone());
            cur = cur.iter().map(|&x| double[x]).collect();
        }
        let action = GroupAction { maps };
        let nc = NormContext::new(ctx, z5, action).unwrap();
        for s in 0..4 {
            let mut seen = [false; 5];
            for b in 0..5 {
                let img = nc.phi(s, b).unwrap();
                assert!(!seen[img], "phi(σ={}) not injective", s);
                seen[img] = true;
                // σ^{-1}(b)^q = σ^{-1}(b^q)
                let q = nc.ctx.q(s);
                let inv = nc.ctx.gamma.inv(s);
                let lhs = nc.h_group.pow_u64(nc.action.apply(inv, b), q);
                assert_eq!(lhs, img);
            }
        }
    }

    #[test]
    fn orbit_period_on_z5() {
        // σ acts by x ↦ 2x, q(σ) = 1: φ(b) = σ^{-1}(b) = 3b;
        // orbit of 1: 1 → 3 → 4 → 2 → 1, abelian so n = 4
        let gamma = FiniteGroup::cyclic(4);
        let ctx = GaloisContext::new(gamma.clone(), Some(1), 5, vec![1, 1, 1, 1]).unwrap();
        let z5 = FiniteGroup::cyclic(5);
        let double: Vec<usize> = (0..5).map(|x| (2 * x) % 5).collect();
        let mut maps = vec![(0..5).collect::<Vec<usize>>()];
        let mut cur = double.clone();
        for _ in 1..4 {
            maps.push(cur.clone());
            cur = cur.iter().map(|&x| double[x]).collect();
        }
        let nc = NormContext::new(ctx, z5, GroupAction { maps }).unwrap();
        assert_eq!(nc.phi(1, 1).unwrap(), 3);
        assert_eq!(nc.n_period(1, 1).unwrap(), 4);
        // N(1) = 1 + 3 + 4 + 2 = 10 ≡ 0 mod 5
        let norm = nc.norm(1, 1).unwrap();
        assert!(nc.hab.is_zero_elt(&norm));
        assert_eq!(nc.n_period(1, 0).unwrap(), 1);
        assert!(nc.hab.is_zero_elt(&nc.norm(1, 0).unwrap()));
    }

    #[test]
    fn norm_of_transposition_in_s3() {
        // constant S_3, q odd: transposition has n = 1 and norm the nonzero
        // element of H^ab = Z/2
        let nc = constant_group_ctx(FiniteGroup::symmetric(3), 2, 6, vec![1, 1]);
        let t = nc
            .h_group
            .elements()
            .find(|&x| nc.h_group.element_order(x) == 2)
            .unwrap();
        assert_eq!(nc.n_period(1, t).unwrap(), 1);
        let norm = nc.norm(1, t).unwrap();
        assert_eq!(norm, vec_from_i64(&[1]));
    }

    #[test]
    fn norm_is_conjugation_invariant() {
        let nc = constant_group_ctx(FiniteGroup::symmetric(4), 2, 12, vec![1, 5]);
        for b in nc.h_group.elements() {
            let nb = nc.norm(1, b).unwrap();
            for g in nc.h_group.elements() {
                let c = nc.h_group.conjugate(g, b);
                let ncg = nc.norm(1, c).unwrap();
                assert!(nc.hab.eq_elts(&nb, &ncg));
            }
        }
    }

    #[test]
    fn rejects_h_not_multiple_of_group_exponent() {
        // exp(S_3) = 6 does not divide h = 4, so phi would not be a
        // bijection (q = 3 shares a factor with 3-cycle orders): reject.
        let gamma = FiniteGroup::cyclic(2);
        let ctx = GaloisContext::new(gamma.clone(), None, 4, vec![1, 3]).unwrap();
        let s3 = FiniteGroup::symmetric(3);
        let action = GroupAction::trivial(&gamma, &s3);
        match NormContext::new(ctx, s3, action) {
            Err(Error::ExponentDoesNotDivideH(6, 4)) => {}
            other => panic!("expected exponent rejection, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn phi_on_hab_matches_group_phi() {
        let nc = constant_group_ctx(FiniteGroup::dihedral(4), 2, 8, vec![1, 3]);
        for s in 0..2 {
            for b in nc.h_group.elements() {
                let lhs = nc.abmap.apply(nc.phi(s, b).unwrap()).clone();
                let rhs = nc.phi_on_hab(s, nc.abmap.apply(b));
                assert!(nc.hab.eq_elts(&lhs, &rhs));
            }
        }
    }
}
