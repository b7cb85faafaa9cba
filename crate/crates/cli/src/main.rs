//! Batch front door for the unramified Brauer group calculators.
//!
//! Exit codes: 0 = success, 1 = mathematical rejection (a named invariant
//! failed, with a witness where one exists), 2 = usage or parse error.

mod instance;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use brnral_core::brnral::{brnral_char_zero, brnral_finite_field, norm_table, real_orthogonality};
use brnral_core::cohom::{h1_abelian, h1_nonabelian};
use brnral_core::torf::{
    build_finite_subgroup, enlarge_subgroup, h1_surjectivity_report, nsq_dsq_variant,
    torsion_module_f, TorusByFExtension,
};

use instance::{InstanceFile, Mode};
use output::emit;

#[derive(Parser)]
#[command(
    name = "brnral-kit",
    version,
    about = "unramified algebraic Brauer group calculators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct IoArgs {
    /// instance file (format brnral-kit/1)
    #[arg(short, long)]
    input: PathBuf,
    /// output file; stdout when omitted
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// torsion retry bound for the level schedule
    #[arg(long, default_value_t = 64)]
    max_level: u64,
    /// number of worker threads for independent scans
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// membership calculators for the unramified subgroup of H^1
    Brnral {
        #[command(subcommand)]
        which: BrnralCommand,
    },
    /// finite-subgroup construction and enlargement
    Subgroup {
        #[command(subcommand)]
        which: SubgroupCommand,
    },
    /// cocycle cohomology of the instance data
    Cohomology {
        #[command(subcommand)]
        which: CohomologyCommand,
    },
    /// dump N(σ, b) and the period for all pairs
    NormTable(IoArgs),
    /// consistency checks with a verdict
    Check {
        #[command(subcommand)]
        which: CheckCommand,
    },
    /// brute-force oracles
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
}

#[derive(Subcommand)]
enum BrnralCommand {
    /// finite-field criterion (condition at the Frobenius)
    Ff(IoArgs),
    /// characteristic-zero criterion (condition at every σ)
    Char0(IoArgs),
}

#[derive(Subcommand)]
enum SubgroupCommand {
    /// construct H with the exact row 1 → T[nd] → H → F → 1
    Build {
        #[command(flatten)]
        io: IoArgs,
        /// order of F (validated against the instance)
        #[arg(long)]
        n: Option<u64>,
        /// declared splitting degree of the torus
        #[arg(long)]
        d: Option<u64>,
        /// also report finite-level H^1 surjectivity at these levels
        #[arg(long, value_delimiter = ',')]
        ladder: Vec<u64>,
        /// also run the n²d²-torsion enlargement variant
        #[arg(long)]
        variant: bool,
    },
    /// enlarge H_0 to ⟨H_0, φ_m^{-1}(H_0 ∩ T)⟩
    Enlarge(IoArgs),
}

#[derive(Subcommand)]
enum CohomologyCommand {
    /// H^1(Γ_e, M) with representatives
    H1(IoArgs),
    /// nonabelian H^1(Γ_e, H) by twisted conjugacy
    H1Nonab(IoArgs),
}

#[derive(Subcommand)]
enum CheckCommand {
    /// real-place orthogonality report (Γ_e of order 2)
    RealOrthogonality(IoArgs),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// re-run every applicable calculator against its brute-force oracle
    Verify(IoArgs),
}

/// Parse/usage failures exit 2; mathematical rejections exit 1.
enum CliError {
    Usage(anyhow::Error),
    Math(anyhow::Error),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Math(e)
    }
}

impl From<brnral_core::Error> for CliError {
    fn from(e: brnral_core::Error) -> Self {
        CliError::Math(e.into())
    }
}

fn load(path: &std::path::Path) -> Result<InstanceFile, CliError> {
    InstanceFile::load(path).map_err(CliError::Usage)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Math(e)) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(1)
        }
        Err(CliError::Usage(e)) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Brnral { which } => match which {
            BrnralCommand::Ff(io) => {
                let file = load(&io.input)?;
                require_mode(&file, Mode::FiniteField)?;
                let inst = file.brnral_instance()?;
                let res = brnral_finite_field(&inst)?;
                Ok(emit(
                    &output::brnral_out("finite-field", &res, inst.nc.ctx.h),
                    io.output.as_deref(),
                )?)
            }
            BrnralCommand::Char0(io) => {
                let file = load(&io.input)?;
                require_mode(&file, Mode::CharZero)?;
                let inst = file.brnral_instance()?;
                let res = brnral_char_zero(&inst)?;
                Ok(emit(
                    &output::brnral_out("char-zero", &res, inst.nc.ctx.h),
                    io.output.as_deref(),
                )?)
            }
        },
        Command::Subgroup { which } => match which {
            SubgroupCommand::Build {
                io,
                n,
                d,
                ladder,
                variant,
            } => {
                let file = load(&io.input)?;
                let (data, n_file, d_file) = file.torf_data()?;
                let n = n.unwrap_or(n_file);
                let d = d.unwrap_or(d_file);
                let built = build_finite_subgroup(&data, n, d, io.max_level)?;
                let surj = if ladder.is_empty() {
                    None
                } else {
                    Some(h1_surjectivity_report(&data, &built, &ladder)?)
                };
                let var = if variant {
                    Some(nsq_dsq_variant(&data, &built, n, d)?)
                } else {
                    None
                };
                Ok(emit(
                    &output::build_out(&built, surj.as_ref(), var.as_ref()),
                    io.output.as_deref(),
                )?)
            }
            SubgroupCommand::Enlarge(io) => {
                let file = load(&io.input)?;
                let (data, _, _) = file.torf_data()?;
                let Some(en) = file.enlarge.as_ref() else {
                    return Err(CliError::Usage(anyhow::anyhow!(
                        "instance has no `enlarge` section"
                    )));
                };
                if en.level % data.m0 != 0 {
                    return Err(CliError::Math(anyhow::anyhow!(
                        "enlarge level {} must be a multiple of M0 = {}",
                        en.level,
                        data.m0
                    )));
                }
                let t_mod = torsion_module_f(&data.lattice, en.level);
                let sd = brnral_core::torf::semidirect(&data.f, &data.ctx.gamma, &data.gamma_on_f)?;
                let f_elts: Vec<usize> = (0..sd.f_order).map(|f| sd.embed_f(f)).collect();
                let scale = num_bigint::BigInt::from(en.level / data.m0);
                let z_big = data
                    .z
                    .map_values(|v| t_mod.canon(v.iter().map(|c| c * &scale).collect()));
                let ambient = TorusByFExtension::new(
                    &data.f,
                    &data.lattice,
                    en.level,
                    z_big.restrict(&f_elts),
                )?;
                let h0_gens: Vec<usize> = en
                    .h0
                    .iter()
                    .map(|e| {
                        let t: Vec<num_bigint::BigInt> =
                            e.t.iter().map(|&c| num_bigint::BigInt::from(c)).collect();
                        ambient.elt(&ambient.t_module.canon(t), e.f)
                    })
                    .collect();
                let h0 = ambient.group().generated_subgroup(&h0_gens);
                let enlarged = enlarge_subgroup(&ambient, &h0, en.m)?;
                Ok(emit(
                    &output::enlarge_out(&enlarged, &ambient),
                    io.output.as_deref(),
                )?)
            }
        },
        Command::Cohomology { which } => match which {
            CohomologyCommand::H1(io) => {
                let file = load(&io.input)?;
                let inst = file.brnral_instance()?;
                let h1 = h1_abelian(&inst.nc.ctx.gamma, &inst.m);
                let payload = output::H1Out {
                    version: instance::FORMAT_VERSION,
                    ambient: h1.factors.iter().map(|f| f.to_string()).collect(),
                    representatives: h1.reps.iter().map(output::cocycle_out).collect(),
                };
                Ok(emit(&payload, io.output.as_deref())?)
            }
            CohomologyCommand::H1Nonab(io) => {
                let file = load(&io.input)?;
                let nc = file.norm_context()?;
                let res = h1_nonabelian(&nc.ctx.gamma, &nc.h_group, &nc.action);
                let payload = output::NonabH1Out {
                    version: instance::FORMAT_VERSION,
                    class_count: res.reps.len().to_string(),
                    cocycle_count: res.cocycle_count.to_string(),
                    classes: res
                        .reps
                        .iter()
                        .map(|r| r.values.iter().map(|v| v.to_string()).collect())
                        .collect(),
                };
                Ok(emit(&payload, io.output.as_deref())?)
            }
        },
        Command::NormTable(io) => {
            let file = load(&io.input)?;
            let nc = file.norm_context()?;
            let sigmas: Vec<usize> = nc.ctx.gamma.elements().collect();
            let entries = verify::parallel_flat_map(io.jobs, &sigmas, |&s| {
                norm_table(&nc, &[s]).map_err(anyhow::Error::from)
            })?;
            let payload = output::NormTableOut {
                version: instance::FORMAT_VERSION,
                entries: entries
                    .iter()
                    .map(|e| output::NormEntryOut {
                        sigma: e.sigma.to_string(),
                        b: e.b.to_string(),
                        period: e.n_period.to_string(),
                        norm: e.norm.iter().map(|x| x.to_string()).collect(),
                    })
                    .collect(),
            };
            Ok(emit(&payload, io.output.as_deref())?)
        }
        Command::Check { which } => match which {
            CheckCommand::RealOrthogonality(io) => {
                let file = load(&io.input)?;
                let inst = file.brnral_instance()?;
                let report = real_orthogonality(&inst)?;
                let all = report.all_orthogonal;
                emit(&output::orth_out(&report), io.output.as_deref())?;
                if !all {
                    return Err(CliError::Math(anyhow::anyhow!(
                        "orthogonality failed: see the pair report"
                    )));
                }
                Ok(())
            }
        },
        Command::Oracle { which } => match which {
            OracleCommand::Verify(io) => {
                let file = load(&io.input)?;
                Ok(verify::run(&file, io.jobs, io.max_level)?)
            }
        },
    }
}

fn require_mode(file: &InstanceFile, required: Mode) -> Result<(), CliError> {
    match file.mode {
        Some(m) if m == required => Ok(()),
        Some(other) => Err(CliError::Usage(anyhow::anyhow!(
            "instance mode {:?} does not match the requested calculator",
            other
        ))),
        None => Err(CliError::Usage(anyhow::anyhow!(
            "instance file has no `mode`"
        ))),
    }
}
