//! Result-file payloads. Every number is rendered as a decimal string
//! (integers) or a reduced fraction string (values in (1/h)Z/Z); no floats
//! appear anywhere. Field order is fixed by the struct definitions and all
//! maps are ordered, so identical inputs produce byte-identical outputs.

use serde::Serialize;

use brnral_core::brnral::{BrnralResult, OrthogonalityReport, SubgroupOfH1};
use brnral_core::cohom::Cocycle1Ab;
use brnral_core::io::qz_to_string;
use brnral_core::torf::{BuiltSubgroup, EnlargedSubgroup, SurjectivityReport, VariantReport};

pub fn int_str<T: std::fmt::Display>(v: T) -> String {
    v.to_string()
}

fn vec_str(v: &[u64]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn bigvec_str(v: &[num_bigint::BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

#[derive(Serialize)]
pub struct CocycleOut {
    pub on: String,
    pub value: Vec<String>,
}

pub fn cocycle_out(c: &Cocycle1Ab) -> Vec<CocycleOut> {
    c.values
        .iter()
        .enumerate()
        .map(|(g, v)| CocycleOut {
            on: g.to_string(),
            value: bigvec_str(v),
        })
        .collect()
}

#[derive(Serialize)]
pub struct MemberGeneratorOut {
    pub coords: Vec<String>,
    pub cocycle: Vec<CocycleOut>,
}

#[derive(Serialize)]
pub struct MembersOut {
    #[serde(rename = "invariantFactors")]
    pub invariant_factors: Vec<String>,
    pub order: String,
    pub generators: Vec<MemberGeneratorOut>,
}

pub fn members_out(s: &SubgroupOfH1) -> MembersOut {
    MembersOut {
        invariant_factors: vec_str(&s.factors),
        order: s.order().to_string(),
        generators: s
            .gen_coords
            .iter()
            .zip(&s.reps)
            .map(|(c, r)| MemberGeneratorOut {
                coords: vec_str(c),
                cocycle: cocycle_out(r),
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct WitnessOut {
    pub generator: String,
    pub sigma: String,
    pub b: String,
    pub value: String,
}

#[derive(Serialize)]
pub struct VanishingOut {
    #[serde(rename = "gammaPrime")]
    pub gamma_prime: Vec<String>,
    #[serde(rename = "imageValuesVanish")]
    pub image_values_vanish: bool,
    #[serde(rename = "imageClassesTrivial")]
    pub image_classes_trivial: bool,
}

#[derive(Serialize)]
pub struct BrnralOut {
    pub version: &'static str,
    pub mode: &'static str,
    pub ambient: Vec<String>,
    pub members: MembersOut,
    pub witnesses: Vec<WitnessOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vanishing: Option<VanishingOut>,
}

pub fn brnral_out(mode: &'static str, res: &BrnralResult, h: u64) -> BrnralOut {
    BrnralOut {
        version: crate::instance::FORMAT_VERSION,
        mode,
        ambient: vec_str(&res.ambient.factors),
        members: members_out(&res.members),
        witnesses: res
            .witnesses
            .iter()
            .map(|w| WitnessOut {
                generator: w.ambient_gen.to_string(),
                sigma: w.sigma.to_string(),
                b: w.b.to_string(),
                value: qz_to_string(w.value, h),
            })
            .collect(),
        vanishing: res.vanishing.as_ref().map(|v| VanishingOut {
            gamma_prime: v.gamma_prime.iter().map(|g| g.to_string()).collect(),
            image_values_vanish: v.image_values_vanish,
            image_classes_trivial: v.image_classes_trivial,
        }),
    }
}

#[derive(Serialize)]
pub struct H1Out {
    pub version: &'static str,
    pub ambient: Vec<String>,
    pub representatives: Vec<Vec<CocycleOut>>,
}

#[derive(Serialize)]
pub struct NonabH1Out {
    pub version: &'static str,
    #[serde(rename = "classCount")]
    pub class_count: String,
    #[serde(rename = "cocycleCount")]
    pub cocycle_count: String,
    pub classes: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct NormEntryOut {
    pub sigma: String,
    pub b: String,
    pub period: String,
    pub norm: Vec<String>,
}

#[derive(Serialize)]
pub struct NormTableOut {
    pub version: &'static str,
    pub entries: Vec<NormEntryOut>,
}

#[derive(Serialize)]
pub struct CertificateOut {
    #[serde(rename = "baseLevel")]
    pub base_level: String,
    #[serde(rename = "levelK")]
    pub level_k: String,
    pub nd: String,
    #[serde(rename = "hOrder")]
    pub h_order: String,
    #[serde(rename = "torusPartOrder")]
    pub torus_part_order: String,
    #[serde(rename = "fOrder")]
    pub f_order: String,
    #[serde(rename = "exactRow")]
    pub exact_row: bool,
    #[serde(rename = "containsNdTorsion")]
    pub contains_nd_torsion: bool,
    #[serde(rename = "orderProduct")]
    pub order_product: bool,
    #[serde(rename = "embeddingIsHom")]
    pub embedding_is_hom: bool,
    #[serde(rename = "sectionVanishes")]
    pub section_vanishes: bool,
    #[serde(rename = "actionRestrictsAmbient")]
    pub action_restricts_ambient: bool,
}

#[derive(Serialize)]
pub struct BuildOut {
    pub version: &'static str,
    pub certificate: CertificateOut,
    #[serde(rename = "hTable")]
    pub h_table: Vec<Vec<String>>,
    #[serde(rename = "gammaActionOnH")]
    pub gamma_action_on_h: Vec<Vec<String>>,
    #[serde(rename = "surjectivity", skip_serializing_if = "Option::is_none")]
    pub surjectivity: Option<SurjectivityOut>,
    #[serde(rename = "variantReport", skip_serializing_if = "Option::is_none")]
    pub variant: Option<VariantOut>,
}

#[derive(Serialize)]
pub struct SurjectivityOut {
    pub label: String,
    pub levels: Vec<SurjectivityLevelOut>,
}

#[derive(Serialize)]
pub struct SurjectivityLevelOut {
    pub level: String,
    #[serde(rename = "hClasses")]
    pub h_classes: String,
    #[serde(rename = "eClasses")]
    pub e_classes: String,
    #[serde(rename = "imageClasses")]
    pub image_classes: String,
    pub surjective: bool,
}

#[derive(Serialize)]
pub struct VariantOut {
    #[serde(rename = "computedOrder")]
    pub computed_order: String,
    #[serde(rename = "claimedOrder")]
    pub claimed_order: String,
    #[serde(rename = "matchesClaim")]
    pub matches_claim: bool,
    #[serde(rename = "torsionRowLevel")]
    pub torsion_row_level: String,
}

pub fn build_out(
    built: &BuiltSubgroup,
    surjectivity: Option<&SurjectivityReport>,
    variant: Option<&VariantReport>,
) -> BuildOut {
    let c = &built.certificate;
    let h = built.h.group();
    BuildOut {
        version: crate::instance::FORMAT_VERSION,
        certificate: CertificateOut {
            base_level: int_str(c.base_level),
            level_k: int_str(c.level_k),
            nd: int_str(c.nd),
            h_order: int_str(c.h_order),
            torus_part_order: int_str(c.torus_part_order),
            f_order: int_str(c.f_order),
            exact_row: c.exact_row,
            contains_nd_torsion: c.contains_nd_torsion,
            order_product: c.order_product,
            embedding_is_hom: c.embedding_is_hom,
            section_vanishes: c.section_vanishes,
            action_restricts_ambient: c.action_restricts_ambient,
        },
        h_table: (0..h.order())
            .map(|a| (0..h.order()).map(|b| h.op(a, b).to_string()).collect())
            .collect(),
        gamma_action_on_h: built
            .gamma_action_on_h
            .maps
            .iter()
            .map(|m| m.iter().map(|x| x.to_string()).collect())
            .collect(),
        surjectivity: surjectivity.map(|r| SurjectivityOut {
            label: r.label.to_string(),
            levels: r
                .levels
                .iter()
                .map(|l| SurjectivityLevelOut {
                    level: int_str(l.level),
                    h_classes: int_str(l.h_classes),
                    e_classes: int_str(l.e_classes),
                    image_classes: int_str(l.image_classes),
                    surjective: l.surjective,
                })
                .collect(),
        }),
        variant: variant.map(|v| VariantOut {
            computed_order: int_str(v.computed_order),
            claimed_order: int_str(v.claimed_order),
            matches_claim: v.matches_claim,
            torsion_row_level: int_str(v.torsion_row_level),
        }),
    }
}

#[derive(Serialize)]
pub struct EnlargeOut {
    pub version: &'static str,
    pub order: String,
    pub elements: Vec<ExtElementOut>,
    #[serde(rename = "surjectsOntoF")]
    pub surjects_onto_f: bool,
    #[serde(rename = "torusPartNormalized")]
    pub torus_part_normalized: bool,
}

#[derive(Serialize)]
pub struct ExtElementOut {
    pub t: Vec<String>,
    pub f: String,
}

pub fn enlarge_out(
    enlarged: &EnlargedSubgroup,
    ambient: &brnral_core::torf::TorusByFExtension,
) -> EnlargeOut {
    EnlargeOut {
        version: crate::instance::FORMAT_VERSION,
        order: enlarged.order.to_string(),
        elements: enlarged
            .elements
            .iter()
            .map(|&e| {
                let (t, f) = ambient.decompose(e);
                ExtElementOut {
                    t: bigvec_str(&t),
                    f: f.to_string(),
                }
            })
            .collect(),
        surjects_onto_f: enlarged.surjects_onto_f,
        torus_part_normalized: enlarged.torus_part_normalized,
    }
}

#[derive(Serialize)]
pub struct OrthPairOut {
    pub member: Vec<String>,
    pub class: String,
    pub orthogonal: bool,
}

#[derive(Serialize)]
pub struct OrthOut {
    pub version: &'static str,
    #[serde(rename = "memberFactors")]
    pub member_factors: Vec<String>,
    #[serde(rename = "nonabClasses")]
    pub nonab_classes: String,
    pub pairs: Vec<OrthPairOut>,
    #[serde(rename = "allOrthogonal")]
    pub all_orthogonal: bool,
}

pub fn orth_out(report: &OrthogonalityReport) -> OrthOut {
    OrthOut {
        version: crate::instance::FORMAT_VERSION,
        member_factors: vec_str(&report.members.factors),
        nonab_classes: report.nonab_class_count.to_string(),
        pairs: report
            .pairs
            .iter()
            .map(|p| OrthPairOut {
                member: vec_str(&p.member_coords),
                class: p.nonab_class.to_string(),
                orthogonal: p.orthogonal,
            })
            .collect(),
        all_orthogonal: report.all_orthogonal,
    }
}

/// Serialize a payload deterministically and write it (stdout when no path
/// is given).
pub fn emit<T: Serialize>(payload: &T, output: Option<&std::path::Path>) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(payload)?;
    text.push('\n');
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{}", text),
    }
    Ok(())
}
