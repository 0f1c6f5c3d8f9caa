//! Builds the object named by a job configuration.

use crate::config::{invalid, Family, JobConfig};
use anyhow::Result;
use serde::Serialize;
use std::sync::Arc;
use sumrank_lab::codes::{self, canonical_betas, canonical_mus, CodeJson, SumRankCode};
use sumrank_lab::geometry::{
    self, direct_sum_glue, kodd_gcd, kodd_qmod, lrs_system, plane, pseudoregulus_design,
    split_blocks, subfield_mus, Constructed, ConstructionInfo, ExtensionFrame, SystemJson,
};
use sumrank_lab::linalg::FqSubspace;
use sumrank_lab::{FieldElement, FieldTower, Guards};

/// A linearized Reed-Solomon code with its evaluation data.
#[derive(Debug, Clone)]
pub struct BuiltCode {
    pub family: Family,
    pub code: SumRankCode,
    pub mus: Vec<FieldElement>,
    pub betas: Vec<FieldElement>,
    pub eta: FieldElement,
}

#[derive(Debug, Clone, Serialize)]
pub struct CodeArtifact {
    pub family: &'static str,
    pub k: usize,
    pub mus: Vec<u64>,
    pub betas: Vec<u64>,
    pub eta: u64,
    pub code: CodeJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct SystemArtifact {
    pub h: usize,
    pub r: usize,
    pub construction: ConstructionInfo,
    pub system: SystemJson,
}

impl BuiltCode {
    pub fn artifact(&self) -> CodeArtifact {
        CodeArtifact {
            family: self.family.name(),
            k: self.code.k(),
            mus: self.mus.iter().map(|x| x.0).collect(),
            betas: self.betas.iter().map(|x| x.0).collect(),
            eta: self.eta.0,
            code: self.code.to_json(),
        }
    }
}

pub fn system_artifact(c: &Constructed) -> SystemArtifact {
    SystemArtifact {
        h: c.h,
        r: c.r,
        construction: c.info.clone(),
        system: c.system.to_json(),
    }
}

pub enum Built {
    Code(BuiltCode),
    System(Constructed),
}

fn tower(cfg: &JobConfig) -> Result<Arc<FieldTower>> {
    let (p, e) = cfg.field()?;
    let m = cfg.need(cfg.m, "m")?;
    Ok(FieldTower::new(p, e, m)?)
}

pub fn build(cfg: &JobConfig, guards: &Guards) -> Result<Built> {
    let family = cfg.family.ok_or_else(|| invalid("--family is required"))?;
    match family {
        Family::Lrs | Family::Tlrs => build_code(cfg, family).map(Built::Code),
        _ => build_system(cfg, family, guards).map(Built::System),
    }
}

pub fn build_code(cfg: &JobConfig, family: Family) -> Result<BuiltCode> {
    let t = tower(cfg)?;
    let k = cfg.need(cfg.k, "k")?;
    let blocks = cfg.need(cfg.t, "t")?;
    let n = cfg.need(cfg.n, "n")?;
    let mus = canonical_mus(&t, blocks)?;
    let betas = canonical_betas(&t, n)?;
    let (code, eta) = match family {
        Family::Lrs => (codes::lrs_code(&t, k, &mus, &betas)?, FieldElement::ZERO),
        _ => match cfg.eta {
            Some(eta) => {
                if eta >= t.order() {
                    return Err(invalid(format!(
                        "eta = {eta} is not an element of F_{}",
                        t.order()
                    ))
                    .into());
                }
                let eta = FieldElement(eta);
                (codes::tlrs_code(&t, k, &mus, &betas, eta)?, eta)
            }
            None => first_twist(&t, k, &mus, &betas)?,
        },
    };
    Ok(BuiltCode {
        family,
        code,
        mus,
        betas,
        eta,
    })
}

fn first_twist(
    t: &Arc<FieldTower>,
    k: usize,
    mus: &[FieldElement],
    betas: &[FieldElement],
) -> Result<(SumRankCode, FieldElement)> {
    let mut last = None;
    for eta in t.elements().skip(1) {
        match codes::tlrs_code(t, k, mus, betas, eta) {
            Ok(c) => return Ok((c, eta)),
            Err(
                e @ sumrank_lab::Error::Precondition {
                    name: "twist-outside-norm-subgroup",
                    ..
                },
            ) => last = Some(e),
            Err(e) => return Err(e.into()),
        }
    }
    Err(last.expect("F_{q^m} has a nonzero element").into())
}

fn pseudoregulus(cfg: &JobConfig) -> Result<Constructed> {
    let t = tower(cfg)?;
    let k = cfg.k.unwrap_or(1);
    let s = cfg.s.unwrap_or(1);
    let mus = canonical_mus(&t, cfg.need(cfg.t, "t")?)?;
    Ok(pseudoregulus_design(&t, k, s, &mus)?)
}

fn frame_parts(cfg: &JobConfig, k: usize) -> Result<(ExtensionFrame, Vec<FieldElement>)> {
    let (p, e) = cfg.field()?;
    let m = cfg.need(cfg.m, "m")?;
    let frame = ExtensionFrame::new(p, e, m, k)?;
    let mus = subfield_mus(frame.ambient(), m, cfg.need(cfg.t, "t")?)?;
    Ok((frame, mus))
}

fn big_element(frame: &ExtensionFrame, x: u64, name: &str) -> Result<FieldElement> {
    if x >= frame.big().order() {
        return Err(invalid(format!(
            "--{name} {x} is not an element of F_{}",
            frame.big().order()
        ))
        .into());
    }
    Ok(FieldElement(x))
}

pub fn build_system(cfg: &JobConfig, family: Family, guards: &Guards) -> Result<Constructed> {
    Ok(match family {
        Family::Pseudoregulus => pseudoregulus(cfg)?,
        Family::KoddGcd | Family::KoddQmod => {
            let (p, e) = cfg.field()?;
            let m = cfg.need(cfg.m, "m")?;
            let k = cfg.need(cfg.k, "k")?;
            let t = cfg.need(cfg.t, "t")?;
            match (cfg.s, cfg.a) {
                (Some(s), Some(a)) => {
                    let (frame, mus) = frame_parts(cfg, k)?;
                    let a = big_element(&frame, a, "a")?;
                    if family == Family::KoddGcd {
                        kodd_gcd(&frame, s, a, &mus, guards)?
                    } else {
                        kodd_qmod(&frame, s, a, &mus, guards)?
                    }
                }
                (None, None) if family == Family::KoddGcd => {
                    geometry::search_kodd_gcd(p, e, m, k, t, guards)?
                }
                (None, None) => geometry::search_kodd_qmod(p, e, m, k, t, guards)?,
                _ => return Err(invalid("--s and --a go together").into()),
            }
        }
        Family::Plane => {
            let (p, e) = cfg.field()?;
            let m = cfg.need(cfg.m, "m")?;
            let t = cfg.need(cfg.t, "t")?;
            match (cfg.s, cfg.a, cfg.b) {
                (Some(s), Some(a), Some(b)) => {
                    let (frame, mus) = frame_parts(cfg, 3)?;
                    let (a, b) = (big_element(&frame, a, "a")?, big_element(&frame, b, "b")?);
                    plane(&frame, s, a, b, &mus, guards)?
                }
                (None, None, None) => geometry::search_plane(p, e, m, t, guards)?,
                _ => return Err(invalid("--s, --a and --b go together").into()),
            }
        }
        Family::Sporadic => geometry::sporadic_design(cfg.q_value()?, guards)?,
        Family::Family2q2 => geometry::family_2q2(cfg.q_value()?, cfg.r.unwrap_or(1), guards)?,
        Family::Glue => {
            let part = pseudoregulus(cfg)?;
            let count = cfg.parts.unwrap_or(2);
            if count == 0 {
                return Err(invalid("--parts must be positive").into());
            }
            let parts: Vec<_> = (0..count).map(|_| (part.system.clone(), part.r)).collect();
            let glued = direct_sum_glue(&parts, part.h)?;
            let mut info = ConstructionInfo::new("glue");
            info.s = part.info.s;
            info.mus = part.info.mus.clone();
            info.notes.push(format!(
                "{count} copies of a pseudoregulus ({}, {})-design",
                part.h, part.r
            ));
            Constructed {
                system: glued.system,
                h: glued.h,
                r: glued.r,
                info,
            }
        }
        Family::Split => {
            let t = tower(cfg)?;
            let k = cfg.need(cfg.k, "k")?;
            let mus = canonical_mus(&t, cfg.need(cfg.t, "t")?)?;
            let betas = canonical_betas(&t, cfg.need(cfg.n, "n")?)?;
            let s = lrs_system(&t, k, &mus, &betas, FieldElement::ZERO)?;
            // each block splits into the lines spanned by the single betas
            let pieces: Vec<Vec<FqSubspace>> = (0..mus.len())
                .map(|i| {
                    betas
                        .iter()
                        .map(|&b| {
                            Ok(
                                lrs_system(&t, k, &mus, &[b], FieldElement::ZERO)?.spaces()[i]
                                    .clone(),
                            )
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            let split = split_blocks(&s, &pieces)?;
            let mut info = ConstructionInfo::new("split");
            info.mus = mus.iter().map(|x| x.0).collect();
            info.notes.push(format!(
                "LRS system (k = {k}) with every block split along betas {:?}",
                betas.iter().map(|x| x.0).collect::<Vec<_>>()
            ));
            Constructed {
                system: split,
                h: k - 1,
                r: k - 1,
                info,
            }
        }
        Family::Lrs | Family::Tlrs => unreachable!("code families are built by build_code"),
    })
}
