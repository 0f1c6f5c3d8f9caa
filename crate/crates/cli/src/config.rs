//! Job configuration: command line flags merged over an optional JSON file.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use sumrank_lab::fields::{factorize, is_prime};
use sumrank_lab::Guards;

pub const SCHEMA: &str = "sumrank-lab/1";

#[derive(Debug, Parser)]
#[command(
    name = "sumrank-lab",
    version,
    about = "Sum-rank metric codes, subspace designs and linear sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a code or system and write it with its canonical choices.
    Construct(Flags),
    /// Check a property of a constructed or loaded object; exit 0 iff it holds.
    Verify(Flags),
    /// Tables: weight distributions, hyperplane profiles, generalized weights.
    Report(Flags),
    /// Parameter sweeps over the disjoint linear set families.
    Search(Flags),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Lrs,
    Tlrs,
    Pseudoregulus,
    KoddGcd,
    KoddQmod,
    Plane,
    Sporadic,
    #[value(name = "family-2q2")]
    #[serde(rename = "family-2q2")]
    Family2q2,
    Glue,
    Split,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Lrs => "lrs",
            Family::Tlrs => "tlrs",
            Family::Pseudoregulus => "pseudoregulus",
            Family::KoddGcd => "kodd-gcd",
            Family::KoddQmod => "kodd-qmod",
            Family::Plane => "plane",
            Family::Sporadic => "sporadic",
            Family::Family2q2 => "family-2q2",
            Family::Glue => "glue",
            Family::Split => "split",
        }
    }

    pub fn is_code(self) -> bool {
        matches!(self, Family::Lrs | Family::Tlrs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Auto,
    Msrd,
    Design,
    DesignHyperplanes,
    DesignSubspaces,
    DesignLinearSets,
    Scattered,
    Equivalence,
    Profile,
    Srg,
    TwoWeight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Table {
    All,
    Weights,
    Profile,
    Ladder,
    Wei,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, Args, Default)]
pub struct Flags {
    /// JSON job file; flags given on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Size of the base field (a prime power), or the prime when --e is given.
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub e: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    /// Common block length.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub s: Option<u32>,
    /// Copies glued in the family-2q2 construction.
    #[arg(long)]
    pub r: Option<usize>,
    /// Explicit canonical integers for the kodd and plane families.
    #[arg(long)]
    pub a: Option<u64>,
    #[arg(long)]
    pub b: Option<u64>,
    /// Twist of the tlrs family (default: first admissible element).
    #[arg(long)]
    pub eta: Option<u64>,
    /// Design parameters for verify (default: the claim of the construction).
    #[arg(long)]
    pub h: Option<usize>,
    #[arg(long = "design-r")]
    pub design_r: Option<usize>,
    /// Number of parts for glue.
    #[arg(long)]
    pub parts: Option<usize>,
    /// Artifact JSON to verify or report on instead of constructing.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub check: Option<Check>,
    #[arg(long, value_enum)]
    pub table: Option<Table>,
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub guard_hyperplanes: Option<u128>,
    #[arg(long)]
    pub guard_codewords: Option<u128>,
    #[arg(long)]
    pub guard_points: Option<u128>,
    #[arg(long)]
    pub guard_graph: Option<u128>,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Effective configuration of one job.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub design_r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub check: Option<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<Suite>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    pub guards: GuardConfig,
    /// Worker threads; does not affect results.
    #[serde(skip_serializing)]
    pub jobs: Option<usize>,
    pub seed: u64,
    #[serde(skip_serializing)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GuardConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hyperplanes: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codewords: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph_vertices: Option<u128>,
}

pub const DEFAULT_SEED: u64 = 1;

macro_rules! merge {
    ($cfg:ident, $flags:ident, $($f:ident),*) => {
        $( if $flags.$f.is_some() { $cfg.$f = $flags.$f.clone(); } )*
    };
}

impl JobConfig {
    pub fn from_flags(flags: &Flags) -> Result<Self> {
        let mut cfg = match &flags.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let mut c: JobConfig = serde_json::from_str(&text)
                    .with_context(|| format!("parsing {}", path.display()))?;
                if c.seed == 0 && !text.contains("\"seed\"") {
                    c.seed = DEFAULT_SEED;
                }
                c
            }
            None => JobConfig {
                seed: DEFAULT_SEED,
                ..Default::default()
            },
        };
        merge!(
            cfg, flags, family, q, e, m, k, t, n, s, r, a, b, eta, h, design_r, parts, input,
            check, table, suite, format, jobs, out
        );
        if let Some(seed) = flags.seed {
            cfg.seed = seed;
        }
        let g = &mut cfg.guards;
        if flags.guard_hyperplanes.is_some() {
            g.hyperplanes = flags.guard_hyperplanes;
        }
        if flags.guard_codewords.is_some() {
            g.codewords = flags.guard_codewords;
        }
        if flags.guard_points.is_some() {
            g.points = flags.guard_points;
        }
        if flags.guard_graph.is_some() {
            g.graph_vertices = flags.guard_graph;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let g = &self.guards;
        for (name, v) in [
            ("hyperplanes", g.hyperplanes),
            ("codewords", g.codewords),
            ("points", g.points),
            ("graph_vertices", g.graph_vertices),
        ] {
            if v == Some(0) {
                bail!(invalid(format!("guard {name} must be positive")));
            }
        }
        if self.jobs == Some(0) {
            bail!(invalid("--jobs must be positive"));
        }
        if self.q.is_some() {
            self.field()?;
        }
        Ok(())
    }

    /// Default guards, then the environment override, then the config.
    pub fn guards(&self) -> Result<Guards> {
        let mut g = Guards::default().with_env_override()?;
        let c = &self.guards;
        if let Some(v) = c.hyperplanes {
            g.hyperplanes = v;
        }
        if let Some(v) = c.codewords {
            g.codewords = v;
        }
        if let Some(v) = c.points {
            g.points = v;
        }
        if let Some(v) = c.graph_vertices {
            g.graph_vertices = v;
        }
        Ok(g)
    }

    /// `(p, e)` with `q = p^e`. A prime `q` with `--e` means `p = q`.
    pub fn field(&self) -> Result<(u64, u32)> {
        let q = self.q.ok_or_else(|| invalid("--q is required"))?;
        if q < 2 {
            bail!(invalid(format!("q = {q} is not a prime power")));
        }
        let f = factorize(q);
        if f.len() != 1 {
            bail!(invalid(format!("q = {q} is not a prime power")));
        }
        let (p, e0) = f[0];
        match self.e {
            None => Ok((p, e0)),
            Some(0) => bail!(invalid("--e must be positive")),
            Some(e) if is_prime(q) => Ok((p, e)),
            Some(e) if e == e0 => Ok((p, e0)),
            Some(e) => bail!(invalid(format!("--e {e} given with q = {q} = {p}^{e0}"))),
        }
    }

    pub fn q_value(&self) -> Result<u64> {
        let (p, e) = self.field()?;
        Ok(p.pow(e))
    }

    pub fn need<T: Copy>(&self, v: Option<T>, name: &str) -> Result<T> {
        v.ok_or_else(|| invalid(format!("--{name} is required for this family")).into())
    }
}

/// A configuration error (exit code 3).
#[derive(Debug)]
pub struct InvalidConfig(pub String);

impl std::fmt::Display for InvalidConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid configuration: {}", self.0)
    }
}

impl std::error::Error for InvalidConfig {}

pub fn invalid(msg: impl Into<String>) -> InvalidConfig {
    InvalidConfig(msg.into())
}
