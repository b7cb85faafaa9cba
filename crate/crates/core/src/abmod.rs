//! Finitely generated abelian groups with a Galois action, character
//! modules with cyclotomic twist, and evaluation pairings into `(1/h)Z/Z`.
//!
//! Elements are integer coordinate vectors: free coordinates first, then one
//! coordinate per invariant factor, reduced into `[0, d_i)`. Values of the
//! evaluation pairing are integers `k` standing for `k/h ∈ (1/h)Z/Z`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::groups::FiniteGroup;
use crate::linalg::{congruence_kernel, solve_congruences, IntMat, QuotientPresentation, Vector};
use crate::{Error, Result};

/// A finitely generated abelian group `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_t` with
/// `d_1 | d_2 | ...`, optionally carrying an action of a finite group
/// (one integer matrix per actor element).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FGAbelianModule {
    pub rank: usize,
    pub torsion: Vec<u64>,
    pub action: Vec<IntMat>,
}

impl FGAbelianModule {
    pub fn new(rank: usize, torsion: Vec<u64>) -> Self {
        assert!(torsion.iter().all(|&d| d >= 1));
        for w in torsion.windows(2) {
            assert!(w[1] % w[0] == 0, "invariant factors must divide in order");
        }
        FGAbelianModule {
            rank,
            torsion,
            action: Vec::new(),
        }
    }

    pub fn with_action(mut self, action: Vec<IntMat>) -> Self {
        self.action = action;
        self
    }

    pub fn with_trivial_action(mut self, actor_order: usize) -> Self {
        self.action = (0..actor_order)
            .map(|_| IntMat::identity(self.dim()))
            .collect();
        self
    }

    pub fn zero_module() -> Self {
        Self::new(0, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> Result<u64> {
        if !self.is_finite() {
            return Err(Error::InfiniteModule);
        }
        Ok(self.torsion.iter().product())
    }

    /// Exponent of the torsion part (1 for torsion-free).
    pub fn exponent(&self) -> u64 {
        self.torsion.last().copied().unwrap_or(1)
    }

    /// Per-coordinate moduli: 0 on free coordinates, d_i on torsion ones.
    pub fn moduli(&self) -> Vec<BigInt> {
        let mut m = vec![BigInt::zero(); self.rank];
        m.extend(self.torsion.iter().map(|&d| BigInt::from(d)));
        m
    }

    pub fn zero(&self) -> Vector {
        vec![BigInt::zero(); self.dim()]
    }

    pub fn canon(&self, mut v: Vector) -> Vector {
        assert_eq!(v.len(), self.dim());
        for (i, &d) in self.torsion.iter().enumerate() {
            let di = BigInt::from(d);
            v[self.rank + i] = v[self.rank + i].mod_floor(&di);
        }
        v
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vector {
        self.canon(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vector {
        self.canon(a.iter().zip(b).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &[BigInt]) -> Vector {
        self.canon(a.iter().map(|x| -x).collect())
    }

    pub fn scalar_mul(&self, k: &BigInt, a: &[BigInt]) -> Vector {
        self.canon(a.iter().map(|x| k * x).collect())
    }

    pub fn is_zero_elt(&self, a: &[BigInt]) -> bool {
        self.canon(a.to_vec()).iter().all(|x| x.is_zero())
    }

    pub fn eq_elts(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        self.is_zero_elt(&self.sub(a, b))
    }

    pub fn act(&self, actor: usize, v: &[BigInt]) -> Vector {
        if self.action.is_empty() {
            return self.canon(v.to_vec());
        }
        self.canon(self.action[actor].mul_vec(v))
    }

    /// All elements of a finite module, in mixed-radix order.
    pub fn enumerate(&self) -> Result<Vec<Vector>> {
        if !self.is_finite() {
            return Err(Error::InfiniteModule);
        }
        let n = self.order()? as usize;
        let mut out = Vec::with_capacity(n);
        for idx in 0..n {
            out.push(self.elt_at(idx));
        }
        Ok(out)
    }

    /// Element at a mixed-radix index (finite modules; last coordinate fastest).
    pub fn elt_at(&self, mut idx: usize) -> Vector {
        let mut v = vec![BigInt::zero(); self.dim()];
        for i in (0..self.torsion.len()).rev() {
            let d = self.torsion[i] as usize;
            v[self.rank + i] = BigInt::from(idx % d);
            idx /= d;
        }
        v
    }

    pub fn index_of(&self, v: &[BigInt]) -> usize {
        let c = self.canon(v.to_vec());
        let mut idx = 0usize;
        for i in 0..self.torsion.len() {
            idx = idx * self.torsion[i] as usize + c[self.rank + i].to_usize().unwrap();
        }
        idx
    }

    /// Does the matrix define an endomorphism of this module?
    pub fn endo_well_defined(&self, m: &IntMat) -> bool {
        if m.rows() != self.dim() || m.cols() != self.dim() {
            return false;
        }
        for (j0, &dj) in self.torsion.iter().enumerate() {
            let j = self.rank + j0;
            let dj = BigInt::from(dj);
            for i in 0..self.dim() {
                let scaled = &dj * m.at(i, j);
                if i < self.rank {
                    if !scaled.is_zero() {
                        return false;
                    }
                } else {
                    let di = BigInt::from(self.torsion[i - self.rank]);
                    if !scaled.mod_floor(&di).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Do two matrices induce the same endomorphism?
    pub fn endos_equal(&self, a: &IntMat, b: &IntMat) -> bool {
        for j in 0..self.dim() {
            let ca = a.col(j);
            let cb = b.col(j);
            if !self.eq_elts(&ca, &cb) {
                return false;
            }
        }
        true
    }

    /// Check that `action` is a well-defined homomorphism from `actor` into
    /// the automorphisms of this module.
    pub fn validate_action(&self, actor: &FiniteGroup) -> Result<()> {
        if self.action.len() != actor.order() {
            return Err(Error::Dimension {
                what: "action matrices",
                expected: actor.order(),
                got: self.action.len(),
            });
        }
        let id = IntMat::identity(self.dim());
        for (g, m) in self.action.iter().enumerate() {
            if !self.endo_well_defined(m) {
                return Err(Error::BadEndomorphism(g));
            }
            let ginv = actor.inv(g);
            if !self.endos_equal(&m.mul(&self.action[ginv]), &id) {
                return Err(Error::NotInvertible(g));
            }
        }
        if !self.endos_equal(&self.action[actor.identity()], &id) {
            return Err(Error::BadEndomorphism(actor.identity()));
        }
        for a in 0..actor.order() {
            for b in 0..actor.order() {
                let composed = self.action[a].mul(&self.action[b]);
                if !self.endos_equal(&composed, &self.action[actor.op(a, b)]) {
                    return Err(Error::ActionNotHomomorphism(a, b));
                }
            }
        }
        Ok(())
    }

    /// Lattice of relations of the coordinate presentation (columns).
    pub fn relation_lattice(&self) -> IntMat {
        let n = self.dim();
        let mut cols = Vec::new();
        for (i, &d) in self.torsion.iter().enumerate() {
            let mut c = vec![BigInt::zero(); n];
            c[self.rank + i] = BigInt::from(d);
            cols.push(c);
        }
        if cols.is_empty() {
            IntMat::zero(n, 0)
        } else {
            IntMat::from_cols(cols)
        }
    }
}

/// A sub- or quotient module of some ambient `FGAbelianModule`, in
/// invariant-factor form together with generator representatives in the
/// ambient coordinates.
#[derive(Clone, Debug)]
pub struct SubquotientModule {
    pub rank: usize,
    pub torsion: Vec<u64>,
    pub gens_in_ambient: Vec<Vector>,
}

/// Package a lattice quotient as a module with ambient generator reps.
pub fn subquotient_from_presentation(pres: &QuotientPresentation) -> SubquotientModule {
    SubquotientModule::from_presentation(pres)
}

impl SubquotientModule {
    fn from_presentation(pres: &QuotientPresentation) -> Self {
        let mut torsion = Vec::new();
        let mut gens = Vec::new();
        let mut rank = 0usize;
        for i in pres.nontrivial_coords() {
            let d = &pres.factors[i];
            if d.is_zero() {
                rank += 1;
            } else {
                torsion.push(d.to_u64().expect("invariant factor fits u64"));
            }
            gens.push(pres.generator_rep(i));
        }
        SubquotientModule {
            rank,
            torsion,
            gens_in_ambient: gens,
        }
    }

    pub fn order(&self) -> Option<u64> {
        if self.rank > 0 {
            None
        } else {
            Some(self.torsion.iter().product())
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Fixed points `M^Γ` (kernel of all σ−1) of the listed actor elements.
pub fn fixed_points(
    m: &FGAbelianModule,
    actor: &FiniteGroup,
    elements: &[usize],
) -> SubquotientModule {
    let n = m.dim();
    let mut rows = IntMat::zero(0, n);
    let mut moduli: Vec<BigInt> = Vec::new();
    let id = IntMat::identity(n);
    for &g in elements {
        if g == actor.identity() {
            continue;
        }
        let mut diff = m.action[g].clone();
        for i in 0..n {
            for j in 0..n {
                let v = diff.at(i, j) - id.at(i, j);
                *diff.at_mut(i, j) = v;
            }
        }
        rows = rows.vcat(&diff);
        moduli.extend(m.moduli());
    }
    let solutions = if rows.rows() == 0 {
        IntMat::identity(n)
    } else {
        congruence_kernel(&rows, &moduli)
    };
    let pres = QuotientPresentation::new(&solutions, &m.relation_lattice());
    SubquotientModule::from_presentation(&pres)
}

/// Coinvariants `M_Γ` (cokernel of the span of all (σ−1)M).
pub fn coinvariants(
    m: &FGAbelianModule,
    actor: &FiniteGroup,
    elements: &[usize],
) -> SubquotientModule {
    let n = m.dim();
    let mut sub = m.relation_lattice();
    let id = IntMat::identity(n);
    for &g in elements {
        if g == actor.identity() {
            continue;
        }
        let mut diff = m.action[g].clone();
        for i in 0..n {
            for j in 0..n {
                let v = diff.at(i, j) - id.at(i, j);
                *diff.at_mut(i, j) = v;
            }
        }
        sub = sub.hcat(&diff);
    }
    let pres = QuotientPresentation::of_ambient(n, &sub);
    SubquotientModule::from_presentation(&pres)
}

/// Both at once: `(M_Γ, M^Γ)`.
pub fn coinvariants_and_fixed(
    m: &FGAbelianModule,
    actor: &FiniteGroup,
    elements: &[usize],
) -> (SubquotientModule, SubquotientModule) {
    (
        coinvariants(m, actor, elements),
        fixed_points(m, actor, elements),
    )
}

/// Solve `A x ≡ b` under the given per-row moduli (0 = exact equation).
/// Unsolvable is a normal outcome, reported as `None`.
pub fn smith_solve(a: &IntMat, b: &[BigInt], moduli: &[BigInt]) -> Option<Vector> {
    solve_congruences(a, b, moduli)
}

/// A finite Galois quotient `Γ_e = Gal(E/k)` with an optional distinguished
/// Frobenius generator and the cyclotomic character `q: Γ_e → (Z/h)^*`.
#[derive(Clone, Debug)]
pub struct GaloisContext {
    pub gamma: FiniteGroup,
    pub frobenius: Option<usize>,
    pub h: u64,
    pub qchar: Vec<u64>,
}

impl GaloisContext {
    pub fn new(
        gamma: FiniteGroup,
        frobenius: Option<usize>,
        h: u64,
        qchar: Vec<u64>,
    ) -> Result<Self> {
        let ctx = GaloisContext {
            gamma,
            frobenius,
            h,
            qchar,
        };
        ctx.validate()?;
        Ok(ctx)
    }

    pub fn validate(&self) -> Result<()> {
        assert!(self.h >= 1);
        if self.qchar.len() != self.gamma.order() {
            return Err(Error::Dimension {
                what: "qchar values",
                expected: self.gamma.order(),
                got: self.qchar.len(),
            });
        }
        for &q in &self.qchar {
            if q >= self.h || gcd_u64(q, self.h) != 1 {
                return Err(Error::QcharNotUnit(q, self.h));
            }
        }
        for a in 0..self.gamma.order() {
            for b in 0..self.gamma.order() {
                let lhs = self.qchar[self.gamma.op(a, b)];
                let rhs = (self.qchar[a] as u128 * self.qchar[b] as u128 % self.h as u128) as u64;
                if lhs != rhs {
                    return Err(Error::BadQchar(a, b));
                }
            }
        }
        if let Some(s) = self.frobenius {
            if s >= self.gamma.order() {
                return Err(Error::ElementOutOfRange(s, self.gamma.order()));
            }
            // gamma must be cyclic, generated by the frobenius
            let mut seen = vec![false; self.gamma.order()];
            let mut g = self.gamma.identity();
            loop {
                seen[g] = true;
                g = self.gamma.op(g, s);
                if g == self.gamma.identity() {
                    break;
                }
            }
            if seen.iter().any(|&x| !x) {
                return Err(Error::NotCyclicFrobenius);
            }
        }
        Ok(())
    }

    pub fn q(&self, sigma: usize) -> u64 {
        self.qchar[sigma]
    }

    pub fn order(&self) -> usize {
        self.gamma.order()
    }

    pub fn is_finite_field_mode(&self) -> bool {
        self.frobenius.is_some()
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd_u64(b, a % b)
    }
}

/// Bilinear evaluation pairing `M × H^ab → (1/h)Z/Z`, stored on generator
/// pairs as integers mod h (the value `k` stands for `k/h`).
#[derive(Clone, Debug)]
pub struct EvalPairing {
    pub h: u64,
    pub table: Vec<Vec<u64>>,
}

impl EvalPairing {
    pub fn new(h: u64, table: Vec<Vec<u64>>) -> Self {
        EvalPairing { h, table }
    }

    /// The canonical pairing between `dual_module(n)` and `n`.
    pub fn canonical(n: &FGAbelianModule, h: u64) -> Self {
        let t = n.torsion.len();
        let mut table = vec![vec![0u64; t]; t];
        for (i, &d) in n.torsion.iter().enumerate() {
            table[i][i] = h / d;
        }
        EvalPairing { h, table }
    }

    pub fn eval(&self, left: &[BigInt], right: &[BigInt]) -> u64 {
        let h = BigInt::from(self.h);
        let mut acc = BigInt::zero();
        for (i, row) in self.table.iter().enumerate() {
            if left[i].is_zero() {
                continue;
            }
            for (j, &k) in row.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                acc += &left[i] * &right[j] * BigInt::from(k);
            }
        }
        acc.mod_floor(&h).to_u64().unwrap()
    }

    pub fn validate(
        &self,
        left: &FGAbelianModule,
        right: &FGAbelianModule,
        ctx: &GaloisContext,
    ) -> Result<()> {
        if self.h != ctx.h {
            return Err(Error::Invalid(format!(
                "pairing denominator {} differs from context h {}",
                self.h, ctx.h
            )));
        }
        if self.table.len() != left.dim() {
            return Err(Error::Dimension {
                what: "pairing rows",
                expected: left.dim(),
                got: self.table.len(),
            });
        }
        if !right.is_finite() {
            return Err(Error::Invalid(
                "right module of a pairing must be finite".into(),
            ));
        }
        for (i, row) in self.table.iter().enumerate() {
            if row.len() != right.dim() {
                return Err(Error::Dimension {
                    what: "pairing cols",
                    expected: right.dim(),
                    got: row.len(),
                });
            }
            for (j, &k) in row.iter().enumerate() {
                if k >= self.h {
                    return Err(Error::PairingInconsistent(i, j));
                }
                // torsion consistency on both sides
                if i >= left.rank {
                    let d = left.torsion[i - left.rank] as u128;
                    if !(d * k as u128).is_multiple_of(self.h as u128) {
                        return Err(Error::PairingInconsistent(i, j));
                    }
                }
                let e = right.torsion[j] as u128;
                if !(e * k as u128).is_multiple_of(self.h as u128) {
                    return Err(Error::PairingInconsistent(i, j));
                }
            }
        }
        // twisted equivariance: ev(σm, σx) = q(σ)·ev(m, x)
        for s in 0..ctx.gamma.order() {
            for i in 0..left.dim() {
                let mut ei = vec![BigInt::zero(); left.dim()];
                ei[i] = BigInt::one();
                let si = left.act(s, &ei);
                for j in 0..right.dim() {
                    let mut ej = vec![BigInt::zero(); right.dim()];
                    ej[j] = BigInt::one();
                    let sj = right.act(s, &ej);
                    let lhs = self.eval(&si, &sj);
                    let rhs = (ctx.q(s) as u128 * self.table[i][j] as u128 % self.h as u128) as u64;
                    if lhs != rhs {
                        return Err(Error::PairingNotEquivariant(s, i, j));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The dual `Hom(N, (1/h)Z/Z)` of a finite module, with the twisted action
/// `(σχ)(x) = q(σ)·χ(σ^{-1} x)`, together with the canonical evaluation
/// pairing.
pub fn dual_module(
    n: &FGAbelianModule,
    ctx: &GaloisContext,
) -> Result<(FGAbelianModule, EvalPairing)> {
    if !n.is_finite() {
        return Err(Error::InfiniteModule);
    }
    let e = n.exponent();
    if !ctx.h.is_multiple_of(e) {
        return Err(Error::ExponentDoesNotDivideH(e, ctx.h));
    }
    let t = n.torsion.len();
    let mut dual = FGAbelianModule::new(0, n.torsion.clone());
    if !n.action.is_empty() {
        let mut mats = Vec::with_capacity(ctx.gamma.order());
        for s in 0..ctx.gamma.order() {
            let b = &n.action[ctx.gamma.inv(s)];
            let q = BigInt::from(ctx.q(s));
            let mut c = IntMat::zero(t, t);
            for i in 0..t {
                for j in 0..t {
                    let di = BigInt::from(n.torsion[i]);
                    let dj = BigInt::from(n.torsion[j]);
                    let num = &q * b.at(i, j) * &dj;
                    debug_assert!((&num % &di).is_zero());
                    *c.at_mut(j, i) = (num / &di).mod_floor(&dj);
                }
            }
            mats.push(c);
        }
        dual = dual.with_action(mats);
    }
    let ev = EvalPairing::canonical(n, ctx.h);
    Ok((dual, ev))
}

/// An equivariant homomorphism of modules, given by a matrix on coordinates.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub matrix: IntMat,
}

impl ModuleMap {
    pub fn apply(&self, target: &FGAbelianModule, v: &[BigInt]) -> Vector {
        target.canon(self.matrix.mul_vec(v))
    }

    pub fn validate(&self, source: &FGAbelianModule, target: &FGAbelianModule) -> Result<()> {
        if self.matrix.rows() != target.dim() || self.matrix.cols() != source.dim() {
            return Err(Error::Dimension {
                what: "module map matrix",
                expected: target.dim() * source.dim(),
                got: self.matrix.rows() * self.matrix.cols(),
            });
        }
        // well-definedness on source torsion
        for (j0, &dj) in source.torsion.iter().enumerate() {
            let j = source.rank + j0;
            let col = self.matrix.col(j);
            let scaled: Vector = col.iter().map(|x| x * BigInt::from(dj)).collect();
            if !target.is_zero_elt(&scaled) {
                return Err(Error::BadEndomorphism(j));
            }
        }
        // equivariance
        if !source.action.is_empty() && !target.action.is_empty() {
            for s in 0..source.action.len() {
                let lhs = self.matrix.mul(&source.action[s]);
                let rhs = target.action[s].mul(&self.matrix);
                for j in 0..source.dim() {
                    if !target.eq_elts(&lhs.col(j), &rhs.col(j)) {
                        return Err(Error::ActionNotHomomorphism(s, j));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FiniteGroup;
    use crate::linalg::vec_from_i64;

    fn z2_ctx(h: u64) -> GaloisContext {
        GaloisContext::new(FiniteGroup::cyclic(2), Some(1), h, vec![1, 1]).unwrap()
    }

    #[test]
    fn canon_and_arithmetic() {
        let m = FGAbelianModule::new(1, vec![2, 6]);
        let a = vec_from_i64(&[3, 5, -1]);
        let c = m.canon(a);
        assert_eq!(c, vec_from_i64(&[3, 1, 5]));
        assert_eq!(m.exponent(), 6);
        assert!(!m.is_finite());
    }

    #[test]
    fn enumerate_and_index_roundtrip() {
        let m = FGAbelianModule::new(0, vec![2, 6]);
        let all = m.enumerate().unwrap();
        assert_eq!(all.len(), 12);
        for (i, v) in all.iter().enumerate() {
            assert_eq!(m.index_of(v), i);
        }
    }

    #[test]
    fn dual_of_z4_with_negation() {
        // N = Z/4 with sigma acting by -1, h = 4, qchar(sigma) = 1
        let gamma = FiniteGroup::cyclic(2);
        let ctx = GaloisContext::new(gamma, None, 4, vec![1, 1]).unwrap();
        let n = FGAbelianModule::new(0, vec![4]).with_action(vec![
            IntMat::identity(1),
            IntMat::from_rows_i64(&[vec![-1]]),
        ]);
        n.validate_action(&ctx.gamma).unwrap();
        let (dual, ev) = dual_module(&n, &ctx).unwrap();
        assert_eq!(dual.torsion, vec![4]);
        // sigma acts by -1 on the dual too
        let e0 = vec_from_i64(&[1]);
        let img = dual.act(1, &e0);
        assert_eq!(img, vec_from_i64(&[3]));
        ev.validate(&dual, &n, &ctx).unwrap();
        // enumerate all 4 characters and their images: the dual action must
        // permute characters exactly like chi -> chi circ (-1)
        for k in 0..4i64 {
            let chi = vec_from_i64(&[k]);
            let twisted = dual.act(1, &chi);
            for x in 0..4i64 {
                let xv = vec_from_i64(&[x]);
                let lhs = ev.eval(&twisted, &xv);
                // q(sigma)*chi(sigma^{-1} x) = chi(-x)
                let rhs = ev.eval(&chi, &n.act(1, &xv));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn dual_preserves_invariant_factors() {
        let ctx = z2_ctx(6);
        let n = FGAbelianModule::new(0, vec![2, 6]).with_trivial_action(2);
        let (dual, _) = dual_module(&n, &ctx).unwrap();
        assert_eq!(dual.torsion, vec![2, 6]);
        let (double, _) = dual_module(&dual, &ctx).unwrap();
        assert_eq!(double.torsion, n.torsion);
    }

    #[test]
    fn dual_is_trivial_example() {
        // N = Z/2 trivial action, h = 2: dual = Z/2, ev(chi, x) = chi*x/2
        let ctx = z2_ctx(2);
        let n = FGAbelianModule::new(0, vec![2]).with_trivial_action(2);
        let (dual, ev) = dual_module(&n, &ctx).unwrap();
        assert_eq!(dual.torsion, vec![2]);
        assert_eq!(ev.eval(&vec_from_i64(&[1]), &vec_from_i64(&[1])), 1); // 1/2
        assert_eq!(ev.eval(&vec_from_i64(&[1]), &vec_from_i64(&[0])), 0);
    }

    #[test]
    fn fixed_and_coinvariants_z4_negation() {
        let gamma = FiniteGroup::cyclic(2);
        let m = FGAbelianModule::new(0, vec![4]).with_action(vec![
            IntMat::identity(1),
            IntMat::from_rows_i64(&[vec![-1]]),
        ]);
        let (coin, fixed) = coinvariants_and_fixed(&m, &gamma, &[0, 1]);
        assert_eq!(fixed.torsion, vec![2]);
        assert_eq!(fixed.rank, 0);
        assert_eq!(coin.torsion, vec![2]);
        assert_eq!(coin.rank, 0);
    }

    #[test]
    fn fixed_and_coinvariants_rank_one_negation() {
        // Z (rank 1) with sigma = -1: fixed = 0, coinvariants = Z/2
        let gamma = FiniteGroup::cyclic(2);
        let m = FGAbelianModule::new(1, vec![]).with_action(vec![
            IntMat::identity(1),
            IntMat::from_rows_i64(&[vec![-1]]),
        ]);
        let (coin, fixed) = coinvariants_and_fixed(&m, &gamma, &[0, 1]);
        assert!(fixed.is_trivial());
        assert_eq!(coin.torsion, vec![2]);
        assert_eq!(coin.rank, 0);
    }

    #[test]
    fn trivial_action_gives_m_both_ways() {
        let gamma = FiniteGroup::cyclic(3);
        let m = FGAbelianModule::new(0, vec![2, 4]).with_trivial_action(3);
        let (coin, fixed) = coinvariants_and_fixed(&m, &gamma, &[0, 1, 2]);
        assert_eq!(coin.torsion, vec![2, 4]);
        assert_eq!(fixed.torsion, vec![2, 4]);
    }

    #[test]
    fn qchar_must_be_homomorphism() {
        let gamma = FiniteGroup::cyclic(2);
        assert!(GaloisContext::new(gamma.clone(), None, 5, vec![1, 2]).is_err());
        assert!(GaloisContext::new(gamma, None, 5, vec![1, 4]).is_ok());
    }
}
