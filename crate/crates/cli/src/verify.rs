//! `oracle verify`: re-run every calculator the instance supports against
//! its brute-force oracle and report line-by-line agreement.

use anyhow::ensure;

use brnral_core::brnral::{
    brnral_char_zero, brnral_finite_field, dual_map_from_pairing, kernel_comparison,
};
use brnral_core::cohom::{h1_abelian, h1_cyclic_formula};
use brnral_core::oracle::{h1_abelian_by_enumeration, members_by_scan, q_norm_direct};
use brnral_core::torf::build_finite_subgroup;

use crate::instance::{InstanceFile, Mode};

/// Run closures over chunks of items on up to `jobs` threads, preserving
/// input order in the flattened output.
pub fn parallel_flat_map<T: Sync, R: Send>(
    jobs: usize,
    items: &[T],
    f: impl Fn(&T) -> anyhow::Result<Vec<R>> + Sync,
) -> anyhow::Result<Vec<R>> {
    let jobs = jobs.max(1).min(items.len().max(1));
    if jobs == 1 {
        let mut out = Vec::new();
        for item in items {
            out.extend(f(item)?);
        }
        return Ok(out);
    }
    let chunk = items.len().div_ceil(jobs);
    let f = &f;
    let results: Vec<anyhow::Result<Vec<R>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|slice| {
                scope.spawn(move || {
                    let mut out = Vec::new();
                    for item in slice {
                        out.extend(f(item)?);
                    }
                    Ok(out)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

pub fn run(file: &InstanceFile, jobs: usize, max_level: u64) -> anyhow::Result<()> {
    let mut any = false;

    if file.stabilizer.is_some() && file.galois.is_some() {
        any = true;
        let inst = file.brnral_instance()?;
        let gamma = &inst.nc.ctx.gamma;

        // H^1 of the character module: lattice route vs full enumeration,
        // plus the kernel/image formula when Γ is cyclic
        let fast = h1_abelian(gamma, &inst.m);
        let slow = h1_abelian_by_enumeration(gamma, &inst.m)?;
        ensure!(
            fast.factors == slow.invariant_factors,
            "h1 mismatch: lattice {:?} vs enumeration {:?}",
            fast.factors,
            slow.invariant_factors
        );
        println!("oracle h1-enumeration: ok ({} classes)", slow.class_count);
        if let Some(gen) = cyclic_generator(gamma) {
            let formula = h1_cyclic_formula(gamma, gen, &inst.m);
            ensure!(
                formula.torsion == fast.factors && formula.rank == 0,
                "h1 mismatch: kernel/image formula {:?} vs lattice {:?}",
                formula.torsion,
                fast.factors
            );
            println!("oracle h1-cyclic-formula: ok");
        }

        // norm laws: bijectivity, the commuting identity, conjugation
        // invariance; finite-field mode also cross-checks the q-power route
        for s in gamma.elements() {
            let mut seen = vec![false; inst.nc.h_group.order()];
            for b in inst.nc.h_group.elements() {
                let img = inst.nc.phi(s, b)?;
                ensure!(!seen[img], "phi(σ={}) is not injective", s);
                seen[img] = true;
                let q = inst.nc.ctx.q(s);
                let sigma_inv = gamma.inv(s);
                let commuted = inst
                    .nc
                    .h_group
                    .pow_u64(inst.nc.action.apply(sigma_inv, b), q);
                ensure!(commuted == img, "power/action commuting identity fails");
            }
        }
        let norm_checks = parallel_flat_map(
            jobs,
            &inst.nc.h_group.elements().collect::<Vec<_>>(),
            |&b| {
                for s in inst.nc.ctx.gamma.elements() {
                    let nb = inst.nc.norm(s, b)?;
                    for g in inst.nc.h_group.elements() {
                        let c = inst.nc.h_group.conjugate(g, b);
                        let nc2 = inst.nc.norm(s, c)?;
                        if !inst.nc.hab.eq_elts(&nb, &nc2) {
                            anyhow::bail!("norm not conjugation-invariant at σ={} b={}", s, b);
                        }
                    }
                }
                Ok(vec![()])
            },
        )?;
        let _ = norm_checks;
        println!("oracle norm-laws: ok");
        if let Some(s) = inst.nc.ctx.frobenius {
            for b in inst.nc.h_group.elements() {
                let via_nc = inst.nc.norm(s, b)?;
                let via_q = q_norm_direct(
                    &inst.nc.h_group,
                    &inst.nc.action.maps[s],
                    inst.nc.ctx.q(s),
                    &inst.nc.abmap,
                    &inst.nc.hab,
                    b,
                );
                ensure!(
                    inst.nc.hab.eq_elts(&via_nc, &via_q),
                    "q-norm route disagrees at b={}",
                    b
                );
            }
            println!("oracle q-norm: ok");
        }

        // membership: subgroup presentation vs per-class scan
        match file.mode {
            Some(Mode::FiniteField) => {
                let res = brnral_finite_field(&inst)?;
                let scanned = members_by_scan(&inst, &res.ambient, true)?;
                for coords in res.ambient.all_class_coords() {
                    let in_subgroup = res.members.contains(&coords);
                    let in_scan = scanned.contains(&coords);
                    ensure!(
                        in_subgroup == in_scan,
                        "finite-field membership mismatch at {:?}",
                        coords
                    );
                }
                println!("oracle brnral-ff: ok ({} members)", scanned.len());
            }
            Some(Mode::CharZero) | None => {
                let res = brnral_char_zero(&inst)?;
                let scanned = members_by_scan(&inst, &res.ambient, false)?;
                for coords in res.ambient.all_class_coords() {
                    ensure!(
                        res.members.contains(&coords) == scanned.contains(&coords),
                        "char-zero membership mismatch at {:?}",
                        coords
                    );
                }
                println!("oracle brnral-char0: ok ({} members)", scanned.len());
                if let Some(v) = &res.vanishing {
                    ensure!(
                        v.image_values_vanish && v.image_classes_trivial,
                        "vanishing certificate failed"
                    );
                    println!("oracle vanishing-certificate: ok");
                }
            }
        }

        // comparison kernel sits inside the members of both calculators
        let dmap = match file.dual_map()? {
            Some(d) => d,
            None => dual_map_from_pairing(&inst)?.1,
        };
        let (ambient, kernel) = kernel_comparison(&inst, &dmap)?;
        if ambient.order() <= 4096 {
            let cz = brnral_char_zero(&inst)?;
            for coords in kernel.enumerate_ambient_coords(&ambient) {
                ensure!(
                    cz.members.contains(&coords),
                    "comparison kernel escapes the char-zero members at {:?}",
                    coords
                );
            }
            if inst.nc.ctx.frobenius.is_some() {
                let ff = brnral_finite_field(&inst)?;
                for coords in kernel.enumerate_ambient_coords(&ambient) {
                    ensure!(
                        ff.members.contains(&coords),
                        "comparison kernel escapes the finite-field members at {:?}",
                        coords
                    );
                }
            }
        }
        println!("oracle kernel-inclusion: ok");
    }

    if file.torf.is_some() {
        any = true;
        let (data, n, d) = file.torf_data()?;
        let built = build_finite_subgroup(&data, n, d, max_level)?;
        ensure!(built.certificate.holds(), "subgroup certificate failed");
        println!(
            "oracle subgroup-build: ok (|H| = {}, torus part {})",
            built.certificate.h_order, built.certificate.torus_part_order
        );
    }

    ensure!(any, "instance contains no section an oracle applies to");
    println!("oracle verify: all checks passed");
    Ok(())
}

fn cyclic_generator(gamma: &brnral_core::groups::FiniteGroup) -> Option<usize> {
    gamma
        .elements()
        .find(|&g| gamma.element_order(g) == gamma.order() as u64)
}
