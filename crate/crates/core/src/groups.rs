//! Finite-group arithmetic on multiplication tables: subgroups, conjugacy,
//! derived subgroup, abelianization in invariant-factor form, and group
//! extensions built from explicit 2-cocycles.
//!
//! Elements are positional indices into the table; all morphisms are total
//! arrays. The formulas downstream quantify over all elements of `H`, so
//! O(|H|) and O(|H|^2) scans are the intended access pattern.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::abmod::FGAbelianModule;
use crate::cohom::Cocycle2;
use crate::linalg::{IntMat, QuotientPresentation, Vector};
use crate::{Error, Result};

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    pub labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Build from a table; checks identity and inverses, and full
    /// associativity for orders small enough to enumerate triples quickly.
    pub fn new(table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let g = Self::new_unchecked(table, identity)?;
        g.validate(g.order <= 512)?;
        Ok(g)
    }

    /// Build without the associativity scan (structure checks still run).
    pub fn new_unchecked(table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let order = table.len();
        let mut flat = Vec::with_capacity(order * order);
        for row in &table {
            if row.len() != order {
                return Err(Error::Dimension {
                    what: "table row",
                    expected: order,
                    got: row.len(),
                });
            }
            for &v in row {
                if v >= order {
                    return Err(Error::ElementOutOfRange(v, order));
                }
                flat.push(v as u32);
            }
        }
        if identity >= order {
            return Err(Error::ElementOutOfRange(identity, order));
        }
        Ok(FiniteGroup {
            order,
            table: flat,
            identity,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    /// Validate the group axioms. `full_associativity` enables the O(n^3)
    /// triple scan.
    pub fn validate(&self, full_associativity: bool) -> Result<()> {
        let n = self.order;
        for x in 0..n {
            if self.op(self.identity, x) != x || self.op(x, self.identity) != x {
                return Err(Error::BadIdentity(self.identity, x));
            }
        }
        for x in 0..n {
            let mut found = false;
            for y in 0..n {
                if self.op(x, y) == self.identity && self.op(y, x) == self.identity {
                    found = true;
                    break;
                }
            }
            if !found {
                return Err(Error::NoInverse(x));
            }
        }
        if full_associativity {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.op(a, b);
                    for c in 0..n {
                        if self.op(ab, c) != self.op(a, self.op(b, c)) {
                            return Err(Error::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        for b in 0..self.order {
            if self.op(a, b) == self.identity {
                return b;
            }
        }
        unreachable!("validated group has inverses")
    }

    pub fn pow(&self, a: usize, k: &BigInt) -> usize {
        let (base, mut e) = if k.is_negative() {
            (self.inv(a), (-k).to_u64().expect("exponent fits u64"))
        } else {
            (a, k.to_u64().expect("exponent fits u64"))
        };
        let mut acc = self.identity;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.op(acc, sq);
            }
            sq = self.op(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn pow_u64(&self, a: usize, k: u64) -> usize {
        self.pow(a, &BigInt::from(k))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut n = 1u64;
        while x != self.identity {
            x = self.op(x, a);
            n += 1;
        }
        n
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order).fold(1u64, |acc, g| num_integer::lcm(acc, self.element_order(g)))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.op(self.op(g, x), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        for a in 0..self.order {
            for b in 0..a {
                if self.op(a, b) != self.op(b, a) {
                    return false;
                }
            }
        }
        true
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    // ---- constructors -------------------------------------------------

    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            table: vec![0],
            identity: 0,
            labels: None,
        }
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = ((a + b) % n) as u32;
            }
        }
        FiniteGroup {
            order: n,
            table,
            identity: 0,
            labels: None,
        }
    }

    /// Dihedral group of order 2n: elements r^i (i < n) then s·r^i.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let order = 2 * n;
        let idx = |flip: usize, rot: usize| flip * n + rot;
        let mut table = vec![0u32; order * order];
        for f1 in 0..2 {
            for r1 in 0..n {
                for f2 in 0..2 {
                    for r2 in 0..n {
                        // (s^f1 r^r1)(s^f2 r^r2) = s^(f1+f2) r^(±r1 + r2)
                        let r = if f2 == 1 { (n - r1 % n) % n } else { r1 };
                        let prod = idx((f1 + f2) % 2, (r + r2) % n);
                        table[idx(f1, r1) * order + idx(f2, r2)] = prod as u32;
                    }
                }
            }
        }
        FiniteGroup {
            order,
            table,
            identity: 0,
            labels: None,
        }
    }

    /// Symmetric group on `n` letters (n <= 5), elements in lexicographic
    /// order of their permutation words.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=5).contains(&n));
        let mut perms: Vec<Vec<usize>> = Vec::new();
        permutations(n, &mut (0..n).collect::<Vec<_>>(), 0, &mut perms);
        perms.sort();
        let order = perms.len();
        let index: std::collections::HashMap<Vec<usize>, usize> = perms
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut table = vec![0u32; order * order];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                // (p·q)(x) = p(q(x))
                let comp: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                table[i * order + j] = index[&comp] as u32;
            }
        }
        let identity = index[&(0..n).collect::<Vec<_>>()];
        FiniteGroup {
            order,
            table,
            identity,
            labels: None,
        }
    }

    /// The quaternion group of order 8: 1, -1, i, -i, j, -j, k, -k.
    pub fn quaternion8() -> Self {
        // encode q = (sign, axis) with axis in {1, i, j, k}
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
        let mul = |a: usize, b: usize| -> usize {
            let (sa, xa) = (a % 2, a / 2); // sign, axis
            let (sb, xb) = (b % 2, b / 2);
            // axis multiplication table with result sign
            let (xc, sign) = match (xa, xb) {
                (0, y) => (y, 0),
                (y, 0) => (y, 0),
                (1, 1) => (0, 1),
                (2, 2) => (0, 1),
                (3, 3) => (0, 1),
                (1, 2) => (3, 0),
                (2, 1) => (3, 1),
                (2, 3) => (1, 0),
                (3, 2) => (1, 1),
                (3, 1) => (2, 0),
                (1, 3) => (2, 1),
                _ => unreachable!(),
            };
            xc * 2 + (sa + sb + sign) % 2
        };
        let mut table = vec![0u32; 64];
        for a in 0..8 {
            for b in 0..8 {
                table[a * 8 + b] = mul(a, b) as u32;
            }
        }
        FiniteGroup {
            order: 8,
            table,
            identity: 0,
            labels: None,
        }
        .with_labels(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let order = a.order * b.order;
        let idx = |x: usize, y: usize| x * b.order + y;
        let mut table = vec![0u32; order * order];
        for x1 in 0..a.order {
            for y1 in 0..b.order {
                for x2 in 0..a.order {
                    for y2 in 0..b.order {
                        table[idx(x1, y1) * order + idx(x2, y2)] =
                            idx(a.op(x1, x2), b.op(y1, y2)) as u32;
                    }
                }
            }
        }
        FiniteGroup {
            order,
            table,
            identity: idx(a.identity, b.identity),
            labels: None,
        }
    }

    // ---- subgroup machinery -------------------------------------------

    /// Smallest subgroup containing `gens`, by closure iteration.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut in_sub = vec![false; self.order];
        in_sub[self.identity] = true;
        let mut frontier = vec![self.identity];
        for &g in gens {
            if !in_sub[g] {
                in_sub[g] = true;
                frontier.push(g);
            }
        }
        // close under products with the generating set and inverses
        let mut members: Vec<usize> = frontier.clone();
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            i += 1;
            let xi = self.inv(x);
            if !in_sub[xi] {
                in_sub[xi] = true;
                members.push(xi);
            }
            for &g in gens {
                for y in [self.op(x, g), self.op(g, x)] {
                    if !in_sub[y] {
                        in_sub[y] = true;
                        members.push(y);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// The subgroup generated by all commutators; normal in the group.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut comms = Vec::new();
        for a in 0..self.order {
            for b in 0..self.order {
                let c = self.op(self.op(a, b), self.op(self.inv(a), self.inv(b)));
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.generated_subgroup(&comms)
    }

    /// True iff x and y are conjugate.
    pub fn conjugacy_test(&self, x: usize, y: usize) -> bool {
        (0..self.order).any(|g| self.conjugate(g, x) == y)
    }

    pub fn conjugacy_class(&self, x: usize) -> Vec<usize> {
        let mut c: Vec<usize> = (0..self.order).map(|g| self.conjugate(g, x)).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        let set: std::collections::HashSet<usize> = elements.iter().copied().collect();
        if !set.contains(&self.identity) {
            return false;
        }
        set.iter().all(|&x| set.contains(&self.inv(x)))
            && set
                .iter()
                .all(|&x| set.iter().all(|&y| set.contains(&self.op(x, y))))
    }

    /// Realize a subgroup (given by a sorted element list) as a standalone
    /// group plus the inclusion morphism.
    pub fn subgroup_as_group(&self, elements: &[usize]) -> Result<(FiniteGroup, GroupMorphism)> {
        if !self.is_subgroup(elements) {
            return Err(Error::NotASubgroup);
        }
        let pos: std::collections::HashMap<usize, usize> =
            elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                table[i * n + j] = pos[&self.op(x, y)] as u32;
            }
        }
        let sub = FiniteGroup {
            order: n,
            table,
            identity: pos[&self.identity],
            labels: None,
        };
        let incl = GroupMorphism {
            images: elements.to_vec(),
        };
        Ok((sub, incl))
    }
}

fn permutations(n: usize, current: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == n {
        out.push(current.clone());
        return;
    }
    for i in k..n {
        current.swap(k, i);
        permutations(n, current, k + 1, out);
        current.swap(k, i);
    }
}

/// total map between groups given by an image array
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMorphism {
    pub images: Vec<usize>,
}

impl GroupMorphism {
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn validate(&self, source: &FiniteGroup, target: &FiniteGroup) -> Result<()> {
        if self.images.len() != source.order() {
            return Err(Error::Dimension {
                what: "morphism images",
                expected: source.order(),
                got: self.images.len(),
            });
        }
        for &v in &self.images {
            if v >= target.order() {
                return Err(Error::ElementOutOfRange(v, target.order()));
            }
        }
        for x in 0..source.order() {
            for y in 0..source.order() {
                if self.images[source.op(x, y)] != target.op(self.images[x], self.images[y]) {
                    return Err(Error::NotHomomorphism(x, y));
                }
            }
        }
        Ok(())
    }

    pub fn is_surjective(&self, target: &FiniteGroup) -> bool {
        let mut hit = vec![false; target.order()];
        for &v in &self.images {
            hit[v] = true;
        }
        hit.iter().all(|&x| x)
    }

    pub fn kernel(&self, source: &FiniteGroup, target: &FiniteGroup) -> Vec<usize> {
        source
            .elements()
            .filter(|&x| self.images[x] == target.identity())
            .collect()
    }
}

/// An action of a finite group on a finite group: one automorphism
/// (as a permutation) per actor element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    pub maps: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn trivial(actor: &FiniteGroup, space: &FiniteGroup) -> Self {
        GroupAction {
            maps: vec![(0..space.order()).collect(); actor.order()],
        }
    }

    pub fn apply(&self, actor_elt: usize, x: usize) -> usize {
        self.maps[actor_elt][x]
    }

    pub fn validate(&self, actor: &FiniteGroup, space: &FiniteGroup) -> Result<()> {
        if self.maps.len() != actor.order() {
            return Err(Error::Dimension {
                what: "action maps",
                expected: actor.order(),
                got: self.maps.len(),
            });
        }
        for (g, m) in self.maps.iter().enumerate() {
            if m.len() != space.order() {
                return Err(Error::Dimension {
                    what: "automorphism array",
                    expected: space.order(),
                    got: m.len(),
                });
            }
            // bijective homomorphism
            let mut seen = vec![false; space.order()];
            for &v in m {
                if v >= space.order() || seen[v] {
                    return Err(Error::NotAutomorphism(g));
                }
                seen[v] = true;
            }
            for x in 0..space.order() {
                for y in 0..space.order() {
                    if m[space.op(x, y)] != space.op(m[x], m[y]) {
                        return Err(Error::NotAutomorphism(g));
                    }
                }
            }
        }
        let id = &self.maps[actor.identity()];
        if (0..space.order()).any(|x| id[x] != x) {
            return Err(Error::NotAutomorphism(actor.identity()));
        }
        for a in 0..actor.order() {
            for b in 0..actor.order() {
                let ab = actor.op(a, b);
                for x in 0..space.order() {
                    if self.maps[ab][x] != self.maps[a][self.maps[b][x]] {
                        return Err(Error::ActionNotHomomorphism(a, b));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A homomorphism from a finite group to an abelian module, written
/// additively on the module side.
#[derive(Clone, Debug)]
pub struct GroupToModuleMap {
    pub images: Vec<Vector>,
}

impl GroupToModuleMap {
    pub fn apply(&self, x: usize) -> &Vector {
        &self.images[x]
    }

    pub fn validate(&self, source: &FiniteGroup, module: &FGAbelianModule) -> Result<()> {
        if self.images.len() != source.order() {
            return Err(Error::Dimension {
                what: "map images",
                expected: source.order(),
                got: self.images.len(),
            });
        }
        for x in 0..source.order() {
            for y in 0..source.order() {
                let sum = module.add(&self.images[x], &self.images[y]);
                if !module.eq_elts(&self.images[source.op(x, y)], &sum) {
                    return Err(Error::NotHomomorphism(x, y));
                }
            }
        }
        Ok(())
    }
}

/// Abelianization `G / D(G)` in invariant-factor form, with the projection
/// and a group-element lift of each module generator.
#[derive(Clone, Debug)]
pub struct Abelianization {
    pub module: FGAbelianModule,
    pub proj: GroupToModuleMap,
    pub gen_lifts: Vec<usize>,
    pub derived: Vec<usize>,
}

pub fn abelianization(g: &FiniteGroup) -> Abelianization {
    let derived = g.derived_subgroup();
    // cosets of D(G)
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps: Vec<usize> = Vec::new();
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &d in &derived {
            coset_of[g.op(x, d)] = id;
        }
    }
    let m = reps.len();
    // quotient group operation on coset ids
    let qop = |a: usize, b: usize| coset_of[g.op(reps[a], reps[b])];
    let qid = coset_of[g.identity()];

    // greedy generating set for the (abelian) quotient
    let mut gens: Vec<usize> = Vec::new();
    let mut reach = vec![false; m];
    reach[qid] = true;
    let mut reached = 1usize;
    for c in 0..m {
        if reach[c] {
            continue;
        }
        gens.push(c);
        // close the reachable set under the new generator and its inverse
        let mut frontier: Vec<usize> = (0..m).filter(|&x| reach[x]).collect();
        while let Some(x) = frontier.pop() {
            let mut y = qop(x, c);
            while !reach[y] {
                reach[y] = true;
                reached += 1;
                frontier.push(y);
                y = qop(y, c);
            }
        }
        if reached == m {
            break;
        }
    }

    // word vectors over the generators via breadth-first search
    let s = gens.len();
    let mut word: Vec<Option<Vector>> = vec![None; m];
    word[qid] = Some(vec![BigInt::zero(); s]);
    let mut queue = std::collections::VecDeque::from([qid]);
    while let Some(x) = queue.pop_front() {
        let wx = word[x].clone().unwrap();
        for (i, &gi) in gens.iter().enumerate() {
            let y = qop(x, gi);
            if word[y].is_none() {
                let mut wy = wx.clone();
                wy[i] += 1;
                word[y] = Some(wy);
                queue.push_back(y);
            }
        }
    }
    let word: Vec<Vector> = word
        .into_iter()
        .map(|w| w.expect("generators reach all"))
        .collect();

    // relation lattice: word(x) + e_i - word(x * g_i)
    let mut rel_cols: Vec<Vector> = Vec::new();
    for x in 0..m {
        for (i, &gi) in gens.iter().enumerate() {
            let y = qop(x, gi);
            let mut v = word[x].clone();
            v[i] += 1;
            for (a, b) in v.iter_mut().zip(&word[y]) {
                *a -= b;
            }
            if v.iter().any(|c| !c.is_zero()) {
                rel_cols.push(v);
            }
        }
    }
    let rel = if rel_cols.is_empty() {
        IntMat::zero(s, 0)
    } else {
        IntMat::from_cols(rel_cols)
    };
    let pres = QuotientPresentation::of_ambient(s, &rel);
    debug_assert!(pres.is_finite());

    let coords_idx = pres.nontrivial_coords();
    let torsion: Vec<u64> = coords_idx
        .iter()
        .map(|&i| pres.factors[i].to_u64().expect("factor fits u64"))
        .collect();
    let module = FGAbelianModule::new(0, torsion);

    let project = |coset: usize| -> Vector {
        let full = pres
            .coords_of(&word[coset])
            .expect("word lies in the lattice");
        coords_idx.iter().map(|&i| full[i].clone()).collect()
    };
    let images: Vec<Vector> = (0..g.order()).map(|x| project(coset_of[x])).collect();

    // a group element over each module generator
    let gen_lifts: Vec<usize> = coords_idx
        .iter()
        .map(|&i| {
            let v = pres.generator_rep(i);
            let mut q = qid;
            for (j, &gj) in gens.iter().enumerate() {
                // q *= g_j^{v_j} in the quotient
                let e = v[j].clone();
                let target = if e.is_negative() {
                    let inv = (0..m).find(|&y| qop(gj, y) == qid).unwrap();
                    (inv, (-&e).to_u64().unwrap())
                } else {
                    (gj, e.to_u64().unwrap())
                };
                for _ in 0..target.1 {
                    q = qop(q, target.0);
                }
            }
            reps[q]
        })
        .collect();

    Abelianization {
        module,
        proj: GroupToModuleMap { images },
        gen_lifts,
        derived,
    }
}

/// The action on `H^ab` induced by an action on `H` (the derived subgroup is
/// characteristic, so any automorphism descends). Returns one matrix per
/// actor element; columns are images of the module generators.
pub fn induced_abelianization_action(
    h: &FiniteGroup,
    action: &GroupAction,
    ab: &Abelianization,
) -> Result<Vec<IntMat>> {
    let dim = ab.module.dim();
    let mut mats = Vec::with_capacity(action.maps.len());
    for s in 0..action.maps.len() {
        let cols: Vec<Vector> = ab
            .gen_lifts
            .iter()
            .map(|&lift| ab.proj.apply(action.apply(s, lift)).clone())
            .collect();
        let m = if dim == 0 {
            IntMat::zero(0, 0)
        } else {
            IntMat::from_cols(cols)
        };
        // the matrix must reproduce proj(s·x) for every x
        for x in h.elements() {
            let lhs = ab.proj.apply(action.apply(s, x));
            let rhs = ab.module.canon(m.mul_vec(ab.proj.apply(x)));
            if !ab.module.eq_elts(lhs, &rhs) {
                return Err(Error::AbmapActionMismatch(s, x));
            }
        }
        mats.push(m);
    }
    Ok(mats)
}

/// A group extension `1 → A → E → Q → 1` built from a normalized 2-cocycle,
/// with underlying set A × Q.
#[derive(Clone, Debug)]
pub struct Extension {
    pub group: FiniteGroup,
    /// module element index → E element index
    pub include: Vec<usize>,
    pub project: GroupMorphism,
    q_order: usize,
}

impl Extension {
    pub fn elt(&self, a_idx: usize, q: usize) -> usize {
        a_idx * self.q_order + q
    }

    pub fn decompose(&self, e: usize) -> (usize, usize) {
        (e / self.q_order, e % self.q_order)
    }
}

/// Build the extension of `q_group` by the finite module `a` along the
/// normalized 2-cocycle `z`:
/// `(a1, q1)(a2, q2) = (a1 + q1·a2 + z(q1, q2), q1 q2)`.
pub fn extension_from_cocycle(
    q_group: &FiniteGroup,
    a: &FGAbelianModule,
    z: &Cocycle2,
) -> Result<Extension> {
    z.validate(q_group, a)?;
    if !z.is_normalized(q_group, a) {
        return Err(Error::Invalid(
            "2-cocycle must be normalized (z(1,·) = z(·,1) = 0); normalize on load".into(),
        ));
    }
    let a_order = a.order()? as usize;
    let nq = q_group.order();
    let order = a_order * nq;
    let elts = a.enumerate()?;
    let mut table = vec![0u32; order * order];
    for (i1, a1) in elts.iter().enumerate() {
        for q1 in 0..nq {
            for (i2, a2) in elts.iter().enumerate() {
                for q2 in 0..nq {
                    let sum = a.add(&a.add(a1, &a.act(q1, a2)), z.value(q1, q2));
                    let prod = a.index_of(&sum) * nq + q_group.op(q1, q2);
                    table[(i1 * nq + q1) * order + (i2 * nq + q2)] = prod as u32;
                }
            }
        }
    }
    let zero_idx = a.index_of(&a.zero());
    let group = FiniteGroup {
        order,
        table,
        identity: zero_idx * nq + q_group.identity(),
        labels: None,
    };
    let include: Vec<usize> = (0..a_order).map(|i| i * nq + q_group.identity()).collect();
    let project = GroupMorphism {
        images: (0..order).map(|e| e % nq).collect(),
    };
    Ok(Extension {
        group,
        include,
        project,
        q_order: nq,
    })
}
