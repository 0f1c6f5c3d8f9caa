//! The four subcommands. Each returns a JSON document and a verdict.

use crate::config::{invalid, Check, Family, JobConfig, Table, SCHEMA};
use crate::families::{self, build, system_artifact, Built};
use crate::suite;
use anyhow::{Context, Result};
use serde_json::{json, Value};
use sumrank_lab::codes::{self, CodeJson, SumRankCode};
use sumrank_lab::derived::{self, PointSet, SrgMethod};
use sumrank_lab::geometry::{
    self, code_from_system, Constructed, ConstructionInfo, System, SystemJson,
};
use sumrank_lab::{linalg, Guards};

/// A finished job: the document to print and whether the checked property
/// holds (`None` when nothing was checked).
pub struct Outcome {
    pub doc: Value,
    pub verdict: Option<bool>,
}

pub fn envelope(command: &str, cfg: &JobConfig, result: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "config": cfg,
        "result": result,
    })
}

pub fn construct(cfg: &JobConfig) -> Result<Outcome> {
    let guards = cfg.guards()?;
    let result = match build(cfg, &guards)? {
        Built::Code(c) => json!({ "kind": "code", "artifact": c.artifact() }),
        Built::System(s) => json!({
            "kind": "system",
            "parameters": system_parameters(&s.system),
            "artifact": system_artifact(&s),
        }),
    };
    Ok(Outcome {
        doc: envelope("construct", cfg, result),
        verdict: None,
    })
}

fn system_parameters(s: &System) -> Value {
    json!({
        "q": s.tower().q(),
        "m": s.m(),
        "k": s.k(),
        "t": s.t(),
        "dims": s.dims(),
    })
}

/// The object a verify or report job works on.
enum Subject {
    Code(SumRankCode, Value),
    System(Constructed),
}

fn load_subject(cfg: &JobConfig, guards: &Guards) -> Result<Subject> {
    if let Some(path) = &cfg.input {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let v: Value =
            serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        return subject_from_json(&v);
    }
    Ok(match build(cfg, guards)? {
        Built::Code(c) => {
            let art = serde_json::to_value(c.artifact())?;
            Subject::Code(c.code, art)
        }
        Built::System(s) => Subject::System(s),
    })
}

/// Accepts a construct output, an artifact, or a bare system or code.
fn subject_from_json(v: &Value) -> Result<Subject> {
    let v = v.pointer("/result/artifact").unwrap_or(v);
    let bad = |e: serde_json::Error| invalid(format!("malformed artifact: {e}"));
    if let Some(sys) = v.get("system") {
        let j: SystemJson = serde_json::from_value(sys.clone()).map_err(bad)?;
        let h = v.get("h").and_then(Value::as_u64).unwrap_or(1) as usize;
        let r = v.get("r").and_then(Value::as_u64).unwrap_or(h as u64) as usize;
        let info: ConstructionInfo = match v.get("construction") {
            Some(c) => serde_json::from_value(c.clone()).map_err(bad)?,
            None => ConstructionInfo::new("input"),
        };
        return Ok(Subject::System(Constructed {
            system: System::from_json(&j)?,
            h,
            r,
            info,
        }));
    }
    if v.get("subspaces").is_some() {
        let j: SystemJson = serde_json::from_value(v.clone()).map_err(bad)?;
        return Ok(Subject::System(Constructed {
            system: System::from_json(&j)?,
            h: 1,
            r: 1,
            info: ConstructionInfo::new("input"),
        }));
    }
    let code = v.get("code").unwrap_or(v);
    let j: CodeJson = serde_json::from_value(code.clone()).map_err(bad)?;
    Ok(Subject::Code(SumRankCode::from_json(&j)?, v.clone()))
}

pub fn verify(cfg: &JobConfig) -> Result<Outcome> {
    if cfg.suite.is_some() {
        let report = suite::run_paper_suite(cfg.seed, &cfg.guards()?);
        let verdict = report.passed;
        return Ok(Outcome {
            doc: envelope("verify", cfg, serde_json::to_value(report)?),
            verdict: Some(verdict),
        });
    }
    let guards = cfg.guards()?;
    let subject = load_subject(cfg, &guards)?;
    let check = cfg.check.unwrap_or(Check::Auto);
    let (name, verdict, cert) = match subject {
        Subject::Code(c, art) => {
            let (name, verdict, cert) = verify_code(&c, check, &guards)?;
            (name, verdict, json!({ "certificate": cert, "object": art }))
        }
        Subject::System(s) => {
            let (name, verdict, cert) = verify_system(cfg, &s, check, &guards)?;
            (
                name,
                verdict,
                json!({ "certificate": cert, "construction": s.info, "parameters": system_parameters(&s.system) }),
            )
        }
    };
    let mut result = cert;
    result["check"] = json!(name);
    result["verdict"] = json!(verdict);
    Ok(Outcome {
        doc: envelope("verify", cfg, result),
        verdict: Some(verdict),
    })
}

fn verify_code(
    c: &SumRankCode,
    check: Check,
    guards: &Guards,
) -> Result<(&'static str, bool, Value)> {
    match check {
        Check::Auto | Check::Msrd => {
            let cert = codes::is_msrd(c, guards)?;
            Ok(("msrd", cert.is_msrd(), serde_json::to_value(cert)?))
        }
        other => Err(invalid(format!("check {other:?} does not apply to a code")).into()),
    }
}

fn equal_dims_h(s: &System, h: usize) -> bool {
    let (m, k) = (s.m(), s.k());
    h >= 1 && h < k && (m * k) % (h + 1) == 0 && s.dims().iter().all(|&n| n == m * k / (h + 1))
}

fn verify_system(
    cfg: &JobConfig,
    c: &Constructed,
    check: Check,
    guards: &Guards,
) -> Result<(&'static str, bool, Value)> {
    let s = &c.system;
    let h = cfg.h.unwrap_or(c.h);
    let r = cfg
        .design_r
        .unwrap_or(if cfg.h.is_some() { h } else { c.r });
    let hyperplanes = linalg::projective_count(s.tower().order(), s.k());
    let check = match check {
        Check::Auto if c.info.family == "split" => Check::Equivalence,
        Check::Auto | Check::Design => {
            if h == r && equal_dims_h(s, h) && hyperplanes <= 1_000_000 {
                Check::DesignHyperplanes
            } else if h == 1 {
                Check::DesignLinearSets
            } else {
                Check::DesignSubspaces
            }
        }
        other => other,
    };
    let with_info = |mut cert: geometry::DesignCertificate| {
        cert.construction = Some(c.info.clone());
        cert
    };
    Ok(match check {
        Check::DesignHyperplanes => {
            let cert = with_info(geometry::is_h_design_via_hyperplanes(s, h, guards)?);
            (
                "design-hyperplanes",
                cert.verdict,
                serde_json::to_value(cert)?,
            )
        }
        Check::DesignLinearSets => {
            if h != 1 {
                return Err(invalid("the linear set route checks h = 1 only").into());
            }
            let cert = with_info(geometry::design_check_via_linear_sets(s, r, guards)?);
            (
                "design-linear-sets",
                cert.verdict,
                serde_json::to_value(cert)?,
            )
        }
        Check::DesignSubspaces => {
            let cert = with_info(geometry::design_check(s, h, r, guards)?);
            (
                "design-subspaces",
                cert.verdict,
                serde_json::to_value(cert)?,
            )
        }
        Check::Scattered => {
            let rep = geometry::disjoint_scattered_report(s, guards)?;
            ("scattered", rep.verdict, serde_json::to_value(rep)?)
        }
        Check::Equivalence => {
            let rep = geometry::msrd_design_equivalence(s, guards)?;
            let ok = rep.agree && rep.design.verdict;
            ("equivalence", ok, serde_json::to_value(rep)?)
        }
        Check::Msrd => {
            let cert = codes::is_msrd(&code_from_system(s)?, guards)?;
            ("msrd", cert.is_msrd(), serde_json::to_value(cert)?)
        }
        Check::Profile => {
            let p = derived::intersection_profile(&PointSet::from_system(s, guards)?, guards)?;
            ("profile", p.two_intersection, serde_json::to_value(p)?)
        }
        Check::Srg => {
            let (_, rep) = derived::build_srg(
                &PointSet::from_system(s, guards)?,
                SrgMethod::MatrixIdentity,
                guards,
            )?;
            ("srg", rep.verdict, serde_json::to_value(rep)?)
        }
        Check::TwoWeight => {
            let (code, rep) = derived::two_weight_code(&PointSet::from_system(s, guards)?, guards)?;
            let v = json!({ "report": rep, "histogram": code.histogram });
            ("two-weight", rep.verdict, v)
        }
        Check::Auto | Check::Design => unreachable!("resolved above"),
    })
}

pub fn report(cfg: &JobConfig) -> Result<Outcome> {
    if cfg.family.is_none() && cfg.input.is_none() {
        return Err(invalid("report needs --family or --input").into());
    }
    let guards = cfg.guards()?;
    let subject = load_subject(cfg, &guards)?;
    let table = cfg.table.unwrap_or(Table::All);
    let want = |t: Table| table == Table::All || table == t;
    let (code, system) = match &subject {
        Subject::Code(c, _) => (c.clone(), None),
        Subject::System(s) => (code_from_system(&s.system)?, Some(&s.system)),
    };
    let mut tables = serde_json::Map::new();
    let mut consistent = true;
    if want(Table::Weights) {
        let mut rows = Vec::new();
        for (label, c) in [("code", code.clone()), ("dual", codes::dual_code(&code)?)] {
            if c.k() == 0 {
                continue;
            }
            let brute = codes::weight_distribution_bruteforce(&c, &guards)?;
            let formula = codes::msrd_weight_formula(&c, &guards).ok();
            let counts: Vec<Value> = (0..brute.counts.len())
                .map(|w| {
                    let b = brute.count(w);
                    let f = formula.as_ref().map(|f| f.count(w));
                    if let Some(f) = &f {
                        consistent &= *f == b;
                    }
                    json!({ "r": w, "bruteforce": b.to_string(), "formula": f.map(|x| x.to_string()) })
                })
                .collect();
            rows.push(json!({ "of": label, "k": c.k(), "rows": counts, "total": brute.total().to_string() }));
        }
        tables.insert("weights".into(), json!(rows));
    }
    if want(Table::Profile) {
        if let Some(s) = system {
            let h = 1;
            if equal_dims_h(s, h) {
                let cert = geometry::is_h_design_via_hyperplanes(s, h, &guards)?;
                let predicted =
                    geometry::predicted_hyperplane_profile(s.tower().q(), s.m(), s.k(), s.t(), h)?;
                let base = s.t() * (s.dims()[0] - s.m());
                let rows: Vec<Value> = (0..=h)
                    .map(|j| {
                        let scanned = cert.count(base + j);
                        consistent &= !cert.verdict || scanned == predicted[j];
                        json!({ "j": j, "sum": base + j, "scanned": scanned, "predicted": predicted[j] })
                    })
                    .collect();
                tables.insert(
                    "profile".into(),
                    json!({ "h": h, "design": cert.verdict, "rows": rows }),
                );
            } else if table == Table::Profile {
                return Err(invalid("the hyperplane profile needs equal dims mk/2").into());
            }
        } else if table == Table::Profile {
            return Err(invalid("the hyperplane profile needs a system").into());
        }
    }
    if want(Table::Ladder) {
        let ds = codes::generalized_weights(&code, &guards)?;
        consistent &= ds.windows(2).all(|w| w[0] < w[1]) && ds.last() == Some(&code.length());
        tables.insert("ladder".into(), json!({ "length": code.length(), "d": ds }));
    }
    if want(Table::Wei) {
        let w = codes::wei_partition(&code, &guards)?;
        consistent &= w.exact;
        tables.insert("wei".into(), serde_json::to_value(w)?);
    }
    let result = json!({ "tables": tables, "consistent": consistent });
    Ok(Outcome {
        doc: envelope("report", cfg, result),
        verdict: Some(consistent),
    })
}

/// Sweeps t over `1..=q-1` (or the given t) for a disjoint linear set
/// family, recording the canonical choices found or the failing condition.
pub fn search(cfg: &JobConfig) -> Result<Outcome> {
    let family = cfg.family.ok_or_else(|| invalid("--family is required"))?;
    if !matches!(
        family,
        Family::KoddGcd | Family::KoddQmod | Family::Plane | Family::Pseudoregulus
    ) {
        return Err(invalid(format!(
            "search covers kodd-gcd, kodd-qmod, plane and pseudoregulus, not {}",
            family.name()
        ))
        .into());
    }
    let guards = cfg.guards()?;
    let q = cfg.q_value()?;
    let ts: Vec<usize> = match cfg.t {
        Some(t) => vec![t],
        None => (1..q as usize).collect(),
    };
    let mut rows = Vec::new();
    let mut any = false;
    for t in ts {
        let mut c = cfg.clone();
        c.t = Some(t);
        match families::build_system(&c, family, &guards) {
            Ok(s) => {
                any = true;
                let rep = geometry::disjoint_scattered_report(&s.system, &guards)?;
                rows.push(
                    json!({ "t": t, "found": true, "construction": s.info, "scattered": rep }),
                );
            }
            Err(e) => match e.downcast_ref::<sumrank_lab::Error>() {
                Some(sumrank_lab::Error::GuardExceeded { .. }) => return Err(e),
                Some(err) => {
                    rows.push(json!({ "t": t, "found": false, "reason": err.to_string() }))
                }
                None => return Err(e),
            },
        }
    }
    Ok(Outcome {
        doc: envelope(
            "search",
            cfg,
            json!({ "family": family.name(), "results": rows }),
        ),
        verdict: Some(any),
    })
}

/// Plain-text rendering: report tables and suite lines as columns,
/// anything else as indented JSON.
pub fn render_text(doc: &Value) -> String {
    let mut out = String::new();
    let result = &doc["result"];
    if let Some(tables) = result.get("tables").and_then(Value::as_object) {
        if let Some(ws) = tables.get("weights").and_then(Value::as_array) {
            for w in ws {
                out += &format!(
                    "weight distribution ({}, k = {})\n",
                    w["of"].as_str().unwrap_or("?"),
                    w["k"]
                );
                out += &format!("{:>4} {:>24} {:>24}\n", "r", "bruteforce", "formula");
                for row in w["rows"].as_array().into_iter().flatten() {
                    let f = row["formula"].as_str().unwrap_or("-");
                    out += &format!(
                        "{:>4} {:>24} {:>24}\n",
                        cell(&row["r"]),
                        row["bruteforce"].as_str().unwrap_or("?"),
                        f
                    );
                }
                out += "\n";
            }
        }
        if let Some(p) = tables.get("profile") {
            out += &format!(
                "hyperplane profile (h = {})\n{:>3} {:>6} {:>12} {:>12}\n",
                cell(&p["h"]),
                "j",
                "sum",
                "scanned",
                "predicted"
            );
            for row in p["rows"].as_array().into_iter().flatten() {
                out += &format!(
                    "{:>3} {:>6} {:>12} {:>12}\n",
                    cell(&row["j"]),
                    cell(&row["sum"]),
                    cell(&row["scanned"]),
                    cell(&row["predicted"])
                );
            }
            out += "\n";
        }
        if let Some(l) = tables.get("ladder") {
            out += &format!("generalized weights (N = {}): {}\n\n", l["length"], l["d"]);
        }
        if let Some(w) = tables.get("wei") {
            out += &format!(
                "Wei partition of 1..={}: d_r(C) = {}, N+1-d_r(C^perp) = {}, exact = {}\n\n",
                w["length"], w["code"], w["dual_shifted"], w["exact"]
            );
        }
        out += &format!("consistent: {}\n", result["consistent"]);
        return out;
    }
    if let Some(cs) = result.get("criteria").and_then(Value::as_array) {
        for c in cs {
            let mark = if c["passed"].as_bool() == Some(true) {
                "pass"
            } else {
                "FAIL"
            };
            out += &format!(
                "criterion {:>2} {:<20} {}\n",
                cell(&c["id"]),
                c["name"].as_str().unwrap_or("?"),
                mark
            );
        }
        out += &format!("all passed: {}\n", result["passed"]);
        return out;
    }
    serde_json::to_string_pretty(doc).unwrap_or_default() + "\n"
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
