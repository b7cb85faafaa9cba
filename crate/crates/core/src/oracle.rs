//! Brute-force reference routes, kept independent of the lattice-based
//! implementations they check: full cocycle enumeration for H^1, the
//! q-power-map construction of the finite-field norm, and direct
//! condition scans for the membership calculators.

use crate::abmod::FGAbelianModule;
use crate::brnral::BrnralInstance;
use crate::cohom::H1Abelian;
use crate::groups::{abelianization, FiniteGroup, GroupToModuleMap};
use crate::linalg::Vector;
use crate::{Error, Result};

/// H^1 computed by enumerating every 1-cochain and filtering by the cocycle
/// identity, then partitioning by coboundary translation.
#[derive(Clone, Debug)]
pub struct H1Enumeration {
    pub cocycle_count: usize,
    pub coboundary_count: usize,
    pub class_count: usize,
    pub invariant_factors: Vec<u64>,
}

pub fn h1_abelian_by_enumeration(
    actor: &FiniteGroup,
    m: &FGAbelianModule,
) -> Result<H1Enumeration> {
    if !m.is_finite() {
        return Err(Error::InfiniteModule);
    }
    let elts = m.enumerate()?;
    let size = elts.len();
    // index tables for fast scanning
    let add: Vec<Vec<usize>> = elts
        .iter()
        .map(|a| elts.iter().map(|b| m.index_of(&m.add(a, b))).collect())
        .collect();
    let act: Vec<Vec<usize>> = (0..actor.order())
        .map(|s| elts.iter().map(|v| m.index_of(&m.act(s, v))).collect())
        .collect();

    let e = actor.identity();
    let unknowns: Vec<usize> = actor.elements().filter(|&g| g != e).collect();
    let k = unknowns.len();
    let pos: std::collections::HashMap<usize, usize> =
        unknowns.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let zero = m.index_of(&m.zero());
    let value_at = |assign: &[usize], g: usize| -> usize {
        if g == e {
            zero
        } else {
            assign[pos[&g]]
        }
    };

    let total = (size as u128).pow(k as u32);
    let mut cocycles: Vec<Vec<usize>> = Vec::new();
    let mut idx: u128 = 0;
    'outer: while idx < total {
        let mut assign = Vec::with_capacity(k);
        let mut t = idx;
        for _ in 0..k {
            assign.push((t % size as u128) as usize);
            t /= size as u128;
        }
        idx += 1;
        for &s in &unknowns {
            for &u in &unknowns {
                let lhs = value_at(&assign, actor.op(s, u));
                let rhs = add[value_at(&assign, s)][act[s][value_at(&assign, u)]];
                if lhs != rhs {
                    continue 'outer;
                }
            }
        }
        cocycles.push(assign);
    }

    // coboundaries
    let mut coboundaries: std::collections::BTreeSet<Vec<usize>> =
        std::collections::BTreeSet::new();
    for x in 0..size {
        let cob: Vec<usize> = unknowns
            .iter()
            .map(|&g| {
                let gx = act[g][x];
                let minus_x = m.index_of(&m.neg(&elts[x]));
                add[gx][minus_x]
            })
            .collect();
        coboundaries.insert(cob);
    }
    let cob_list: Vec<Vec<usize>> = coboundaries.iter().cloned().collect();

    // classes: canonical representative = minimum over coboundary translates
    let cocycle_set: std::collections::BTreeSet<Vec<usize>> = cocycles.iter().cloned().collect();
    let canon = |a: &Vec<usize>| -> Vec<usize> {
        let mut best = a.clone();
        for cb in &cob_list {
            let shifted: Vec<usize> = a.iter().zip(cb).map(|(&x, &y)| add[x][y]).collect();
            if shifted < best {
                best = shifted;
            }
        }
        best
    };
    let rep_set: std::collections::BTreeSet<Vec<usize>> = cocycles.iter().map(&canon).collect();
    let rep_list: Vec<Vec<usize>> = rep_set.into_iter().collect();
    let class_index: std::collections::BTreeMap<Vec<usize>, usize> = rep_list
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, r)| (r, i))
        .collect();
    let class_count = rep_list.len();

    // group structure on classes: addition of representatives
    let class_of = |a: &Vec<usize>| -> usize { class_index[&canon(a)] };
    let table: Vec<Vec<usize>> = rep_list
        .iter()
        .map(|a| {
            rep_list
                .iter()
                .map(|b| {
                    let sum: Vec<usize> = a.iter().zip(b).map(|(&x, &y)| add[x][y]).collect();
                    debug_assert!(cocycle_set.contains(&sum));
                    class_of(&sum)
                })
                .collect()
        })
        .collect();
    let zero_class = class_of(&vec![zero; k]);
    let group = FiniteGroup::new(table, zero_class)?;
    let invariant_factors = abelianization(&group).module.torsion;

    Ok(H1Enumeration {
        cocycle_count: cocycles.len(),
        coboundary_count: cob_list.len(),
        class_count,
        invariant_factors,
    })
}

/// The finite-field q-norm built directly from the q-power map: repeated
/// multiplication for the power, the inverse Frobenius permutation, and a
/// fresh period scan. Independent of the φ/n_period/norm code path.
pub fn q_norm_direct(
    h: &FiniteGroup,
    frobenius_map: &[usize],
    q: u64,
    abmap: &GroupToModuleMap,
    hab: &FGAbelianModule,
    b: usize,
) -> Vector {
    let mut frob_inv = vec![0usize; h.order()];
    for (x, &fx) in frobenius_map.iter().enumerate() {
        frob_inv[fx] = x;
    }
    let phi = |x: usize| -> usize {
        let mut p = h.identity();
        for _ in 0..q {
            p = h.op(p, x);
        }
        frob_inv[p]
    };
    let mut acc = hab.zero();
    let mut x = b;
    loop {
        acc = hab.add(&acc, abmap.apply(x));
        x = phi(x);
        if h.conjugacy_test(x, b) {
            return acc;
        }
    }
}

/// Member coordinates of the ambient H^1 computed by scanning the condition
/// directly on one representative per class.
pub fn members_by_scan(
    inst: &BrnralInstance,
    ambient: &H1Abelian,
    frobenius_only: bool,
) -> Result<Vec<Vec<u64>>> {
    let sigmas: Vec<usize> = if frobenius_only {
        vec![inst
            .nc
            .ctx
            .frobenius
            .ok_or_else(|| Error::Invalid("finite-field scan requires a frobenius".into()))?]
    } else {
        inst.nc.ctx.gamma.elements().collect()
    };
    let mut norms: Vec<(usize, Vector)> = Vec::new();
    for &s in &sigmas {
        for b in inst.nc.h_group.elements() {
            norms.push((s, inst.nc.norm(s, b)?));
        }
    }
    let mut out = Vec::new();
    for coords in ambient.all_class_coords() {
        let rep = ambient.rep_of_coords(&coords, &inst.m, &inst.nc.ctx.gamma);
        if norms
            .iter()
            .all(|(s, n)| inst.ev.eval(rep.value(*s), n) == 0)
        {
            out.push(coords);
        }
    }
    Ok(out)
}

/// Deterministic xorshift generator for randomized-but-reproducible tests.
#[derive(Clone, Debug)]
pub struct XorShift(pub u64);

impl XorShift {
    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n.max(1)
    }
}
