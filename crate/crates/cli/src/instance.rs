//! The self-contained instance file, format `brnral-kit/1`.
//!
//! One JSON file carries everything a run needs: the finite Galois quotient
//! with its cyclotomic character, the stabilizer group with its action, the
//! character module and evaluation pairing, and optionally the torus
//! extension data and enlargement request. All cross-references are by
//! element index; all invariants are validated on load.

use anyhow::{anyhow, bail, Context};
use serde::{Deserialize, Serialize};

use brnral_core::abmod::{dual_module, GaloisContext, ModuleMap};
use brnral_core::brnral::BrnralInstance;

use brnral_core::io::{
    action_from_json, pairing_from_json, Cocycle2Entry, GroupJson, LatticeJson, ModuleJson,
};
use brnral_core::linalg::IntMat;
use brnral_core::norms::NormContext;
use brnral_core::torf::{semidirect, torsion_module_q, TorfExtensionData};

pub const FORMAT_VERSION: &str = "brnral-kit/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub version: String,
    #[serde(default)]
    pub mode: Option<Mode>,
    #[serde(default)]
    pub galois: Option<GaloisSection>,
    #[serde(default)]
    pub stabilizer: Option<StabilizerSection>,
    #[serde(default)]
    pub characters: Option<CharactersSection>,
    #[serde(default)]
    pub pairing: Option<PairingSection>,
    #[serde(default)]
    pub dualmap: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub torf: Option<TorfSection>,
    #[serde(default)]
    pub enlarge: Option<EnlargeSection>,
    /// optional bookkeeping: n = |F| and the splitting degree d of the
    /// torus the stabilizer data came from
    #[serde(default)]
    pub meta: Option<MetaSection>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MetaSection {
    #[serde(default)]
    pub n: Option<u64>,
    #[serde(default)]
    pub d: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "finite-field")]
    FiniteField,
    #[serde(rename = "char-zero")]
    CharZero,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GaloisSection {
    pub gamma: GroupJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frobenius: Option<usize>,
    pub h: u64,
    pub qchar: Vec<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabilizerSection {
    pub group: GroupJson,
    /// One automorphism (index array) per Γ_e element.
    pub action: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CharactersSection {
    /// `M = Ĥ^ab` with the canonical twisted dual action.
    Named(String),
    Explicit(ModuleJson),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PairingSection {
    /// "canonical": requires `characters` to be the dual of H^ab.
    Named(String),
    Table(Vec<Vec<String>>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TorfSection {
    #[serde(rename = "F")]
    pub f: GroupJson,
    #[serde(rename = "gammaOnF")]
    pub gamma_on_f: Vec<Vec<usize>>,
    pub lattice: LatticeJson,
    #[serde(rename = "M0")]
    pub m0: u64,
    pub z: Vec<Cocycle2Entry>,
    pub n: u64,
    pub d: u64,
    /// Mirrored positive characteristic, 0 for none; coprimality with n and
    /// d is warned about, not enforced.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnlargeSection {
    /// torsion level of the ambient extension the elements live in
    pub level: u64,
    pub h0: Vec<ExtElement>,
    pub m: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtElement {
    pub t: Vec<i64>,
    pub f: usize,
}

impl InstanceFile {
    pub fn load(path: &std::path::Path) -> anyhow::Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let file: InstanceFile =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        if file.version != FORMAT_VERSION {
            bail!(
                "unsupported instance version {:?} (expected {:?})",
                file.version,
                FORMAT_VERSION
            );
        }
        Ok(file)
    }

    pub fn galois_context(&self) -> anyhow::Result<GaloisContext> {
        let g = self
            .galois
            .as_ref()
            .ok_or_else(|| anyhow!("instance has no `galois` section"))?;
        let gamma = g.gamma.to_group()?;
        Ok(GaloisContext::new(
            gamma,
            g.frobenius,
            g.h,
            g.qchar.clone(),
        )?)
    }

    pub fn norm_context(&self) -> anyhow::Result<NormContext> {
        let ctx = self.galois_context()?;
        let st = self
            .stabilizer
            .as_ref()
            .ok_or_else(|| anyhow!("instance has no `stabilizer` section"))?;
        let h_group = st.group.to_group()?;
        let action = action_from_json(st.action.clone());
        Ok(NormContext::new(ctx, h_group, action)?)
    }

    pub fn brnral_instance(&self) -> anyhow::Result<BrnralInstance> {
        let nc = self.norm_context()?;
        let canonical_chars = matches!(
            self.characters.as_ref(),
            None | Some(CharactersSection::Named(_))
        );
        if let Some(CharactersSection::Named(name)) = self.characters.as_ref() {
            if name != "dual-of-stabilizer-ab" {
                bail!("unknown characters keyword {:?}", name);
            }
        }
        let (m, canonical_ev) = if canonical_chars {
            let (dual, ev) = dual_module(&nc.hab, &nc.ctx)?;
            (dual, Some(ev))
        } else {
            let Some(CharactersSection::Explicit(mj)) = self.characters.as_ref() else {
                unreachable!()
            };
            (mj.to_module(nc.ctx.gamma.order())?, None)
        };
        let ev = match self.pairing.as_ref() {
            None | Some(PairingSection::Named(_)) => {
                if let Some(PairingSection::Named(name)) = self.pairing.as_ref() {
                    if name != "canonical" {
                        bail!("unknown pairing keyword {:?}", name);
                    }
                }
                canonical_ev.ok_or_else(|| {
                    anyhow!("`pairing: canonical` requires `characters: dual-of-stabilizer-ab`")
                })?
            }
            Some(PairingSection::Table(table)) => pairing_from_json(table, nc.ctx.h)?,
        };
        let inst = BrnralInstance::new(nc, m, ev)?;
        Ok(match &self.meta {
            Some(ms) => inst.with_meta(ms.n, ms.d),
            None => inst,
        })
    }

    pub fn dual_map(&self) -> anyhow::Result<Option<ModuleMap>> {
        Ok(self.dualmap.as_ref().map(|rows| ModuleMap {
            matrix: IntMat::from_rows_i64(rows),
        }))
    }

    /// Assemble the torus extension data, normalizing the cocycle (with a
    /// warning on stderr) if it is not already normalized.
    pub fn torf_data(&self) -> anyhow::Result<(TorfExtensionData, u64, u64)> {
        let ts = self
            .torf
            .as_ref()
            .ok_or_else(|| anyhow!("instance has no `torf` section"))?;
        let ctx = self.galois_context()?;
        let f = ts.f.to_group()?;
        let gamma_on_f = action_from_json(ts.gamma_on_f.clone());
        gamma_on_f.validate(&ctx.gamma, &f)?;
        let lattice = ts.lattice.to_lattice(ctx.gamma.order(), f.order())?;
        let sd = semidirect(&f, &ctx.gamma, &gamma_on_f)?;
        let tm = torsion_module_q(&lattice, ts.m0, &sd);
        let mut z = brnral_core::io::cocycle2_from_json(&ts.z, sd.group.order(), tm.dim())?;
        z.validate(&sd.group, &tm)?;
        if !z.is_normalized(&sd.group, &tm) {
            eprintln!(
                "warning: extension 2-cocycle is not normalized; applying the standard shift"
            );
            z = z.normalized(&sd.group, &tm);
        }
        if let Some(p) = ts.p {
            if p > 0 && (ts.n % p == 0 || ts.d % p == 0) {
                eprintln!(
                    "warning: mirrored characteristic p = {} divides n = {} or d = {}; the \
                     construction assumes orders prime to p",
                    p, ts.n, ts.d
                );
            }
        }
        let data = TorfExtensionData {
            f,
            ctx,
            gamma_on_f,
            lattice,
            m0: ts.m0,
            z,
        };
        Ok((data, ts.n, ts.d))
    }
}

#[allow(unused)]
fn _assert_traits() {
    fn is_send_sync<T: Send + Sync>() {}
    is_send_sync::<BrnralInstance>();
}
