//! Serialization schemas for the core types.
//!
//! Groups serialize as `{"order": n, "table": [[..]], "labels": [..]?}`,
//! morphisms and actions as index arrays, modules as
//! `{"rank": r, "torsion": [..], "action": {"<elementIndex>": matrix}}`,
//! pairings as generator-pair tables of rationals `"p/q"`, and cochains as
//! `{"on": i | [i, j], "value": [..]}` lists in canonical element order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abmod::{EvalPairing, FGAbelianModule};
use crate::cohom::{Cocycle1Ab, Cocycle2};
use crate::groups::{FiniteGroup, GroupAction};
use crate::linalg::{IntMat, Vector};
use crate::torf::TorusLattice;
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GroupJson {
    pub fn to_group(&self) -> Result<FiniteGroup> {
        if self.table.len() != self.order {
            return Err(Error::Dimension {
                what: "group table",
                expected: self.order,
                got: self.table.len(),
            });
        }
        // identity is located, not declared: the row acting as identity
        let identity = (0..self.order)
            .find(|&e| (0..self.order).all(|x| self.table[e][x] == x && self.table[x][e] == x))
            .ok_or(Error::BadIdentity(0, 0))?;
        let g = if self.order <= 512 {
            FiniteGroup::new(self.table.clone(), identity)?
        } else {
            let g = FiniteGroup::new_unchecked(self.table.clone(), identity)?;
            g.validate(false)?;
            g
        };
        Ok(match &self.labels {
            Some(l) => g.with_labels(l.clone()),
            None => g,
        })
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupJson {
            order: g.order(),
            table: (0..g.order())
                .map(|a| (0..g.order()).map(|b| g.op(a, b)).collect())
                .collect(),
            labels: g.labels.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleJson {
    pub rank: usize,
    pub torsion: Vec<u64>,
    #[serde(default)]
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

impl ModuleJson {
    pub fn to_module(&self, actor_order: usize) -> Result<FGAbelianModule> {
        let mut m = FGAbelianModule::new(self.rank, self.torsion.clone());
        if !self.action.is_empty() {
            let dim = m.dim();
            let mut mats = vec![IntMat::identity(dim); actor_order];
            for (key, rows) in &self.action {
                let idx: usize = key
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad action key {:?}", key)))?;
                if idx >= actor_order {
                    return Err(Error::ElementOutOfRange(idx, actor_order));
                }
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(Error::Dimension {
                        what: "action matrix",
                        expected: dim,
                        got: rows.len(),
                    });
                }
                mats[idx] = IntMat::from_rows_i64(rows);
            }
            m = m.with_action(mats);
        }
        Ok(m)
    }

    pub fn from_module(m: &FGAbelianModule) -> Self {
        let mut action = BTreeMap::new();
        for (i, mat) in m.action.iter().enumerate() {
            let rows: Vec<Vec<i64>> = (0..mat.rows())
                .map(|r| {
                    (0..mat.cols())
                        .map(|c| {
                            use num_traits::ToPrimitive;
                            mat.at(r, c).to_i64().expect("action entry fits i64")
                        })
                        .collect()
                })
                .collect();
            action.insert(i.to_string(), rows);
        }
        ModuleJson {
            rank: m.rank,
            torsion: m.torsion.clone(),
            action,
        }
    }
}

/// A value in (1/h)Z/Z as a reduced fraction string.
pub fn qz_to_string(k: u64, h: u64) -> String {
    if k == 0 {
        return "0".to_string();
    }
    let g = num_integer::gcd(k, h);
    format!("{}/{}", k / g, h / g)
}

pub fn qz_from_string(s: &str, h: u64) -> Result<u64> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("bad rational {s}")))?;
        let q: u64 = q
            .trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("bad rational {s}")))?;
        if q == 0 || !h.is_multiple_of(q) {
            return Err(Error::Invalid(format!(
                "denominator of {s} must divide h = {h}"
            )));
        }
        Ok(p % q * (h / q))
    } else {
        let p: i64 = s
            .parse()
            .map_err(|_| Error::Invalid(format!("bad rational {s}")))?;
        if p != 0 {
            return Err(Error::Invalid(format!(
                "integer pairing value {s} must be 0"
            )));
        }
        Ok(0)
    }
}

pub fn pairing_to_json(ev: &EvalPairing) -> Vec<Vec<String>> {
    ev.table
        .iter()
        .map(|row| row.iter().map(|&k| qz_to_string(k, ev.h)).collect())
        .collect()
}

pub fn pairing_from_json(table: &[Vec<String>], h: u64) -> Result<EvalPairing> {
    let mut out = Vec::with_capacity(table.len());
    for row in table {
        let mut r = Vec::with_capacity(row.len());
        for s in row {
            r.push(qz_from_string(s, h)?);
        }
        out.push(r);
    }
    Ok(EvalPairing::new(h, out))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Cocycle1Entry {
    pub on: usize,
    pub value: Vec<i64>,
}

pub fn cocycle1_to_json(c: &Cocycle1Ab) -> Vec<Cocycle1Entry> {
    c.values
        .iter()
        .enumerate()
        .map(|(g, v)| Cocycle1Entry {
            on: g,
            value: v
                .iter()
                .map(|x| {
                    use num_traits::ToPrimitive;
                    x.to_i64().expect("cocycle value fits i64")
                })
                .collect(),
        })
        .collect()
}

pub fn cocycle1_from_json(
    entries: &[Cocycle1Entry],
    actor_order: usize,
    dim: usize,
) -> Result<Cocycle1Ab> {
    let mut values: Vec<Vector> = vec![vec![BigInt::from(0); dim]; actor_order];
    for e in entries {
        if e.on >= actor_order {
            return Err(Error::ElementOutOfRange(e.on, actor_order));
        }
        if e.value.len() != dim {
            return Err(Error::Dimension {
                what: "cocycle value",
                expected: dim,
                got: e.value.len(),
            });
        }
        values[e.on] = e.value.iter().map(|&x| BigInt::from(x)).collect();
    }
    Ok(Cocycle1Ab { values })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Cocycle2Entry {
    pub on: [usize; 2],
    pub value: Vec<i64>,
}

pub fn cocycle2_to_json(c: &Cocycle2) -> Vec<Cocycle2Entry> {
    let n = c.actor_order();
    let mut out = Vec::with_capacity(n * n);
    for s in 0..n {
        for t in 0..n {
            out.push(Cocycle2Entry {
                on: [s, t],
                value: c
                    .value(s, t)
                    .iter()
                    .map(|x| {
                        use num_traits::ToPrimitive;
                        x.to_i64().expect("cocycle value fits i64")
                    })
                    .collect(),
            });
        }
    }
    out
}

pub fn cocycle2_from_json(
    entries: &[Cocycle2Entry],
    actor_order: usize,
    dim: usize,
) -> Result<Cocycle2> {
    let mut values: Vec<Vector> = vec![vec![BigInt::from(0); dim]; actor_order * actor_order];
    for e in entries {
        let [s, t] = e.on;
        if s >= actor_order || t >= actor_order {
            return Err(Error::ElementOutOfRange(s.max(t), actor_order));
        }
        if e.value.len() != dim {
            return Err(Error::Dimension {
                what: "cocycle value",
                expected: dim,
                got: e.value.len(),
            });
        }
        values[s * actor_order + t] = e.value.iter().map(|&x| BigInt::from(x)).collect();
    }
    Ok(Cocycle2::from_table(actor_order, values))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeJson {
    pub rank: usize,
    #[serde(rename = "gammaAction")]
    pub gamma_action: BTreeMap<String, Vec<Vec<i64>>>,
    #[serde(rename = "fAction")]
    pub f_action: BTreeMap<String, Vec<Vec<i64>>>,
}

impl LatticeJson {
    pub fn to_lattice(&self, gamma_order: usize, f_order: usize) -> Result<TorusLattice> {
        let parse = |map: &BTreeMap<String, Vec<Vec<i64>>>, count: usize| -> Result<Vec<IntMat>> {
            let mut mats = vec![IntMat::identity(self.rank); count];
            for (key, rows) in map {
                let idx: usize = key
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad lattice action key {:?}", key)))?;
                if idx >= count {
                    return Err(Error::ElementOutOfRange(idx, count));
                }
                if rows.len() != self.rank || rows.iter().any(|r| r.len() != self.rank) {
                    return Err(Error::Dimension {
                        what: "lattice matrix",
                        expected: self.rank,
                        got: rows.len(),
                    });
                }
                mats[idx] = IntMat::from_rows_i64(rows);
            }
            Ok(mats)
        };
        Ok(TorusLattice {
            rank: self.rank,
            gamma_mats: parse(&self.gamma_action, gamma_order)?,
            f_mats: parse(&self.f_action, f_order)?,
        })
    }
}

pub fn action_to_json(a: &GroupAction) -> Vec<Vec<usize>> {
    a.maps.clone()
}

pub fn action_from_json(maps: Vec<Vec<usize>>) -> GroupAction {
    GroupAction { maps }
}
