//! Membership calculators for the unramified algebraic subgroup of
//! `H^1(Γ_e, M)`: the finite-field criterion (condition at the Frobenius
//! only) and the characteristic-zero criterion (condition at every σ), plus
//! the comparison kernel and the real-place orthogonality check.
//!
//! The condition `ev(a(σ), N(σ,b)) = 0` is linear in the class of `a`, so
//! the member set is a subgroup; it is computed by one congruence-lattice
//! presentation rather than by enumerating classes. Every rejected ambient
//! generator carries a witness pair (σ, b); every accepted class of the
//! characteristic-zero calculator carries a restriction-vanishing
//! certificate.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::abmod::{dual_module, EvalPairing, FGAbelianModule, ModuleMap};
use crate::cohom::{
    cup_pairing, h1_abelian, h1_nonabelian, h2_solve, qz_module, restrict_module, subgroup_context,
    Cocycle1Ab, H1Abelian,
};
use crate::groups::FiniteGroup;
use crate::linalg::{congruence_kernel, solve_exact, IntMat, QuotientPresentation, Vector};
use crate::norms::NormContext;
use crate::{Error, Result};

/// Bookkeeping carried alongside an instance: the order n of the component
/// group and the declared splitting degree d of the torus, when the finite
/// group H was carved out of a torus-by-F extension. `m = n·d` is derived.
#[derive(Clone, Copy, Debug, Default)]
pub struct InstanceMeta {
    pub n: Option<u64>,
    pub d: Option<u64>,
}

impl InstanceMeta {
    pub fn m(&self) -> Option<u64> {
        Some(self.n? * self.d?)
    }
}

/// A full problem instance: the finite group data, the character module
/// `M = Ĝ^ab`, and the evaluation pairing between them.
#[derive(Clone, Debug)]
pub struct BrnralInstance {
    pub nc: NormContext,
    pub m: FGAbelianModule,
    pub ev: EvalPairing,
    pub meta: InstanceMeta,
}

impl BrnralInstance {
    pub fn new(nc: NormContext, m: FGAbelianModule, ev: EvalPairing) -> Result<Self> {
        m.validate_action(&nc.ctx.gamma)?;
        // h is a single global exponent: it must kill the torsion of M too
        let m_exp = m.exponent();
        if nc.ctx.h % m_exp != 0 {
            return Err(Error::ExponentDoesNotDivideH(m_exp, nc.ctx.h));
        }
        ev.validate(&m, &nc.hab, &nc.ctx)?;
        Ok(BrnralInstance { nc, m, ev, meta: InstanceMeta::default() })
    }

    pub fn with_meta(mut self, n: Option<u64>, d: Option<u64>) -> Self {
        self.meta = InstanceMeta { n, d };
        self
    }

    /// The canonical instance where `M` is the dual of `H^ab` and `ev` the
    /// evaluation pairing.
    pub fn canonical_dual(nc: NormContext) -> Result<Self> {
        let (dual, ev) = dual_module(&nc.hab, &nc.ctx)?;
        Self::new(nc, dual, ev)
    }
}

/// A subgroup of the ambient `H^1(Γ_e, M)`, with invariant factors,
/// generator coordinates (in the ambient invariant-factor coordinates) and
/// representative cocycles.
#[derive(Clone, Debug)]
pub struct SubgroupOfH1 {
    pub factors: Vec<u64>,
    pub gen_coords: Vec<Vec<u64>>,
    pub reps: Vec<Cocycle1Ab>,
    lattice_with_relations: IntMat,
}

impl SubgroupOfH1 {
    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Does an ambient class (by its coordinate vector) lie in this
    /// subgroup?
    pub fn contains(&self, ambient_coords: &[u64]) -> bool {
        let x: Vector = ambient_coords.iter().map(|&c| BigInt::from(c)).collect();
        solve_exact(&self.lattice_with_relations, &x).is_some()
    }

    /// All coordinate tuples of the subgroup's elements in the ambient
    /// coordinates (small subgroups only).
    pub fn enumerate_ambient_coords(&self, ambient: &H1Abelian) -> Vec<Vec<u64>> {
        let mut seen: std::collections::BTreeSet<Vec<u64>> =
            [vec![0u64; ambient.num_gens()]].into_iter().collect();
        let mut frontier: Vec<Vec<u64>> = seen.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for g in &self.gen_coords {
                let y: Vec<u64> = x
                    .iter()
                    .zip(g)
                    .enumerate()
                    .map(|(i, (&a, &b))| (a + b) % ambient.factors[i])
                    .collect();
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }
}

/// Witness falsifying the membership condition for an ambient generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RejectionWitness {
    pub ambient_gen: usize,
    pub sigma: usize,
    pub b: usize,
    /// h·ev(a(σ), N(σ,b)) mod h, nonzero
    pub value: u64,
}

/// The finite-quotient vanishing certificate carried by accepted classes of
/// the characteristic-zero calculator: on the subgroup Γ′ of elements
/// acting trivially on H with qchar = 1, the image of every member in
/// `H^1(Γ′, Ĥ^ab)` is trivial.
#[derive(Clone, Debug)]
pub struct VanishingCertificate {
    pub gamma_prime: Vec<usize>,
    pub image_values_vanish: bool,
    pub image_classes_trivial: bool,
}

#[derive(Clone, Debug)]
pub struct BrnralResult {
    pub ambient: H1Abelian,
    pub members: SubgroupOfH1,
    pub witnesses: Vec<RejectionWitness>,
    pub vanishing: Option<VanishingCertificate>,
}

/// Norm table row: the data the membership condition consumes.
#[derive(Clone, Debug)]
pub struct NormTableEntry {
    pub sigma: usize,
    pub b: usize,
    pub n_period: u64,
    pub norm: Vector,
}

pub fn norm_table(nc: &NormContext, sigmas: &[usize]) -> Result<Vec<NormTableEntry>> {
    let mut out = Vec::new();
    for &s in sigmas {
        for b in nc.h_group.elements() {
            out.push(NormTableEntry {
                sigma: s,
                b,
                n_period: nc.n_period(s, b)?,
                norm: nc.norm(s, b)?,
            });
        }
    }
    Ok(out)
}

fn member_subgroup(
    inst: &BrnralInstance,
    sigmas: &[usize],
) -> Result<(H1Abelian, SubgroupOfH1, Vec<RejectionWitness>)> {
    let gamma = &inst.nc.ctx.gamma;
    let h = inst.nc.ctx.h;
    let ambient = h1_abelian(gamma, &inst.m);
    let k = ambient.num_gens();

    // rows of the linear condition: for each (σ, b), the vector
    // (h·ev(a_j(σ), N(σ,b)))_j, a congruence mod h
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut witnesses: Vec<RejectionWitness> = Vec::new();
    let mut witness_found = vec![false; k];
    for &s in sigmas {
        for b in inst.nc.h_group.elements() {
            let norm = inst.nc.norm(s, b)?;
            let mut row = Vec::with_capacity(k);
            let mut nonzero = false;
            for rep in ambient.reps.iter() {
                let v = inst.ev.eval(rep.value(s), &norm);
                if v != 0 {
                    nonzero = true;
                }
                row.push(BigInt::from(v));
            }
            if nonzero {
                for (j, val) in row.iter().enumerate() {
                    if !witness_found[j] && !val.is_zero() {
                        witness_found[j] = true;
                        witnesses.push(RejectionWitness {
                            ambient_gen: j,
                            sigma: s,
                            b,
                            value: val.to_u64().unwrap(),
                        });
                    }
                }
                rows.push(row);
            }
        }
    }
    witnesses.sort_by_key(|w| w.ambient_gen);

    // the condition is well defined on classes: e_j·row_j ≡ 0 mod h
    debug_assert!(rows.iter().all(|row| {
        row.iter()
            .zip(&ambient.factors)
            .all(|(v, &e)| ((v * BigInt::from(e)) % BigInt::from(h)).is_zero())
    }));

    let solution_lattice = if rows.is_empty() {
        IntMat::identity(k)
    } else {
        let a = IntMat::from_rows(rows);
        let moduli = vec![BigInt::from(h); a.rows()];
        congruence_kernel(&a, &moduli)
    };
    let (members, _) = subgroup_from_lattice(&ambient, solution_lattice, inst, gamma);
    Ok((ambient, members, witnesses))
}

fn subgroup_from_lattice(
    ambient: &H1Abelian,
    solution_lattice: IntMat,
    inst: &BrnralInstance,
    gamma: &FiniteGroup,
) -> (SubgroupOfH1, QuotientPresentation) {
    let k = ambient.num_gens();
    let mut rel_cols: Vec<Vector> = Vec::new();
    for (j, &e) in ambient.factors.iter().enumerate() {
        let mut c = vec![BigInt::zero(); k];
        c[j] = BigInt::from(e);
        rel_cols.push(c);
    }
    let relations = if rel_cols.is_empty() {
        IntMat::zero(k, 0)
    } else {
        IntMat::from_cols(rel_cols)
    };
    let lattice_with_relations = solution_lattice.hcat(&relations);
    let pres = QuotientPresentation::new(&lattice_with_relations, &relations);
    let mut factors = Vec::new();
    let mut gen_coords = Vec::new();
    let mut reps = Vec::new();
    for i in pres.nontrivial_coords() {
        factors.push(pres.factors[i].to_u64().expect("subgroup factor fits u64"));
        let rep_vec = pres.generator_rep(i);
        let coords: Vec<u64> = rep_vec
            .iter()
            .zip(&ambient.factors)
            .map(|(c, &e)| mod_floor_u64(c, e))
            .collect();
        reps.push(ambient.rep_of_coords(&coords, &inst.m, gamma));
        gen_coords.push(coords);
    }
    (
        SubgroupOfH1 {
            factors,
            gen_coords,
            reps,
            lattice_with_relations,
        },
        pres,
    )
}

fn mod_floor_u64(v: &BigInt, m: u64) -> u64 {
    num_integer::Integer::mod_floor(v, &BigInt::from(m))
        .to_u64()
        .unwrap()
}

/// Finite-field criterion: members are the classes with
/// `ev(a(s), N(s,b)) = 0` for every b, where s is the Frobenius.
pub fn brnral_finite_field(inst: &BrnralInstance) -> Result<BrnralResult> {
    let Some(s) = inst.nc.ctx.frobenius else {
        return Err(Error::Invalid(
            "finite-field criterion requires a context with a frobenius".into(),
        ));
    };
    let (ambient, members, witnesses) = member_subgroup(inst, &[s])?;
    Ok(BrnralResult {
        ambient,
        members,
        witnesses,
        vanishing: None,
    })
}

/// Characteristic-zero criterion: the condition is imposed at every
/// σ ∈ Γ_e. Accepted classes carry the Γ′-vanishing certificate.
pub fn brnral_char_zero(inst: &BrnralInstance) -> Result<BrnralResult> {
    let gamma = &inst.nc.ctx.gamma;
    let sigmas: Vec<usize> = gamma.elements().collect();
    let (ambient, members, witnesses) = member_subgroup(inst, &sigmas)?;
    let vanishing = Some(vanishing_certificate(inst, &members)?);
    Ok(BrnralResult {
        ambient,
        members,
        witnesses,
        vanishing,
    })
}

/// The dual map `M → Ĥ^ab` induced by the evaluation pairing: m ↦ ev(m, ·).
pub fn dual_map_from_pairing(inst: &BrnralInstance) -> Result<(FGAbelianModule, ModuleMap)> {
    let (dual, _) = dual_module(&inst.nc.hab, &inst.nc.ctx)?;
    let h = inst.nc.ctx.h;
    let mdim = inst.m.dim();
    let ddim = dual.dim();
    let mut mat = IntMat::zero(ddim, mdim);
    for i in 0..mdim {
        for (j, &e) in inst.nc.hab.torsion.iter().enumerate() {
            // chi_{e_i}(gen_j) = k_ij/h = c_j/e_j with c_j = k_ij·e_j/h
            let k_ij = inst.ev.table[i][j] as u128;
            let c = (k_ij * e as u128 / h as u128) as i64;
            *mat.at_mut(j, i) = BigInt::from(c);
        }
    }
    let map = ModuleMap { matrix: mat };
    map.validate(&inst.m, &dual)?;
    Ok((dual, map))
}

fn vanishing_certificate(
    inst: &BrnralInstance,
    members: &SubgroupOfH1,
) -> Result<VanishingCertificate> {
    let gamma = &inst.nc.ctx.gamma;
    // Γ′ = {σ : σ acts trivially on H and qchar(σ) ≡ 1 mod h}
    let one = 1 % inst.nc.ctx.h;
    let gamma_prime: Vec<usize> = gamma
        .elements()
        .filter(|&s| {
            inst.nc.ctx.q(s) == one
                && (0..inst.nc.h_group.order()).all(|x| inst.nc.action.apply(s, x) == x)
        })
        .collect();
    let (dual, dmap) = dual_map_from_pairing(inst)?;
    let sub = subgroup_context(&inst.nc.ctx, &gamma_prime)?;
    let dual_sub = restrict_module(&dual, &gamma_prime);
    let mut image_values_vanish = true;
    let mut image_classes_trivial = true;
    for rep in &members.reps {
        let image = rep.map_values(&dmap.matrix, &dual);
        let restricted = image.restrict(&gamma_prime);
        if !restricted.values.iter().all(|v| dual.is_zero_elt(v)) {
            image_values_vanish = false;
        }
        if !is_coboundary_on(&sub.ctx.gamma, &dual_sub, &restricted) {
            image_classes_trivial = false;
        }
    }
    Ok(VanishingCertificate {
        gamma_prime,
        image_values_vanish,
        image_classes_trivial,
    })
}

fn is_coboundary_on(gamma: &FiniteGroup, module: &FGAbelianModule, cocycle: &Cocycle1Ab) -> bool {
    let n = module.dim();
    if n == 0 {
        return true;
    }
    let id = IntMat::identity(n);
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vec<BigInt> = Vec::new();
    let mut moduli: Vec<BigInt> = Vec::new();
    for s in gamma.elements() {
        let mat = if module.action.is_empty() {
            &id
        } else {
            &module.action[s]
        };
        for r in 0..n {
            let mut row = Vec::with_capacity(n);
            for c in 0..n {
                row.push(mat.at(r, c) - id.at(r, c));
            }
            rows.push(row);
        }
        rhs.extend(cocycle.value(s).iter().cloned());
        moduli.extend(module.moduli());
    }
    crate::linalg::solve_congruences(&IntMat::from_rows(rows), &rhs, &moduli).is_some()
}

/// `ker[H^1(Γ_e, M) → H^1(Γ_e, Ĥ^ab)]` along an equivariant dual map,
/// validated to be compatible with the evaluation pairing.
pub fn kernel_comparison(
    inst: &BrnralInstance,
    dmap: &ModuleMap,
) -> Result<(H1Abelian, SubgroupOfH1)> {
    let gamma = &inst.nc.ctx.gamma;
    let (dual, _) = dual_module(&inst.nc.hab, &inst.nc.ctx)?;
    dmap.validate(&inst.m, &dual)?;
    // compatibility: ev(m, x) = (dmap m)(x) on generator pairs
    let h = inst.nc.ctx.h;
    for i in 0..inst.m.dim() {
        for (j, &e) in inst.nc.hab.torsion.iter().enumerate() {
            let expected = inst.ev.table[i][j];
            let c = dmap.matrix.at(j, i);
            let got = mod_floor_u64(&(c * BigInt::from(h / e)), h);
            if got != expected {
                return Err(Error::DualMapIncompatible(i, j));
            }
        }
    }
    let ambient = h1_abelian(gamma, &inst.m);
    let target = h1_abelian(gamma, &dual);
    let k = ambient.num_gens();
    let image_coords: Vec<Vec<u64>> = ambient
        .reps
        .iter()
        .map(|rep| target.class_coords(&rep.map_values(&dmap.matrix, &dual)))
        .collect();
    let mut rows: Vec<Vector> = Vec::new();
    let mut moduli: Vec<BigInt> = Vec::new();
    for (i, &f) in target.factors.iter().enumerate() {
        rows.push((0..k).map(|j| BigInt::from(image_coords[j][i])).collect());
        moduli.push(BigInt::from(f));
    }
    let solution_lattice = if rows.is_empty() {
        IntMat::identity(k)
    } else {
        congruence_kernel(&IntMat::from_rows(rows), &moduli)
    };
    let (kernel, _) = subgroup_from_lattice(&ambient, solution_lattice, inst, gamma);
    Ok((ambient, kernel))
}

/// One pairing line of the real-place report.
#[derive(Clone, Debug)]
pub struct OrthogonalityPair {
    pub member_coords: Vec<u64>,
    pub nonab_class: usize,
    pub orthogonal: bool,
}

#[derive(Clone, Debug)]
pub struct OrthogonalityReport {
    pub members: SubgroupOfH1,
    pub nonab_class_count: usize,
    pub pairs: Vec<OrthogonalityPair>,
    pub all_orthogonal: bool,
}

/// Real-place check (Γ_e of order 2, qchar(σ) = −1 mod h): every member of
/// the characteristic-zero calculator pairs to the trivial class in
/// `H^2(Γ_e, (1/h)Z/Z)` with every class in the image of nonabelian H^1.
pub fn real_orthogonality(inst: &BrnralInstance) -> Result<OrthogonalityReport> {
    let gamma = &inst.nc.ctx.gamma;
    if gamma.order() != 2 {
        return Err(Error::NotOrderTwo(gamma.order()));
    }
    let sigma = gamma.elements().find(|&s| s != gamma.identity()).unwrap();
    let h = inst.nc.ctx.h;
    let minus_one = (h - 1) % h;
    if inst.nc.ctx.q(sigma) != minus_one {
        return Err(Error::NotRealCyclotomic(inst.nc.ctx.q(sigma), h));
    }
    let result = brnral_char_zero(inst)?;
    let nonab = h1_nonabelian(gamma, &inst.nc.h_group, &inst.nc.action);
    let target = qz_module(&inst.nc.ctx);
    let member_coord_list = result.members.enumerate_ambient_coords(&result.ambient);
    let mut pairs = Vec::new();
    let mut all = true;
    for coords in &member_coord_list {
        let alpha = result.ambient.rep_of_coords(coords, &inst.m, gamma);
        for (bi, brep) in nonab.reps.iter().enumerate() {
            let beta = Cocycle1Ab {
                values: brep
                    .values
                    .iter()
                    .map(|&x| inst.nc.abmap.apply(x).clone())
                    .collect(),
            };
            beta.validate(gamma, &inst.nc.hab)?;
            let c = cup_pairing(&inst.nc.ctx, &alpha, &beta, &inst.nc.hab, &inst.ev)?;
            let orthogonal = h2_solve(gamma, &target, &c).is_some();
            if !orthogonal {
                all = false;
            }
            pairs.push(OrthogonalityPair {
                member_coords: coords.clone(),
                nonab_class: bi,
                orthogonal,
            });
        }
    }
    Ok(OrthogonalityReport {
        members: result.members,
        nonab_class_count: nonab.reps.len(),
        pairs,
        all_orthogonal: all,
    })
}
