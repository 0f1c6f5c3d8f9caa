//! Enumeration budgets. Every exhaustive scan checks its size against a guard
//! before starting, so a too-large request fails fast instead of hanging.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Name of the environment variable that can raise or lower guards,
/// formatted as comma separated `name=value` pairs, e.g. `hyperplanes=1e8`.
pub const GUARD_OVERRIDE_ENV: &str = "SUMRANK_LAB_GUARD_OVERRIDE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guards {
    /// Maximum number of hyperplanes (or general subspaces) scanned.
    pub hyperplanes: u128,
    /// Maximum number of codewords enumerated.
    pub codewords: u128,
    /// Maximum number of vectors enumerated when listing linear set points.
    pub points: u128,
    /// Maximum number of vertices of a derived graph.
    pub graph_vertices: u128,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            hyperplanes: 10_000_000,
            codewords: 1 << 24,
            points: 1 << 26,
            graph_vertices: 1 << 16,
        }
    }
}

impl Guards {
    /// Guards that never trigger, for tests that know their sizes.
    pub fn unlimited() -> Self {
        Guards {
            hyperplanes: u128::MAX,
            codewords: u128::MAX,
            points: u128::MAX,
            graph_vertices: u128::MAX,
        }
    }

    pub fn check_hyperplanes(&self, required: u128) -> Result<()> {
        check("hyperplanes", required, self.hyperplanes)
    }

    pub fn check_codewords(&self, required: u128) -> Result<()> {
        check("codewords", required, self.codewords)
    }

    pub fn check_points(&self, required: u128) -> Result<()> {
        check("points", required, self.points)
    }

    pub fn check_graph(&self, required: u128) -> Result<()> {
        check("graph_vertices", required, self.graph_vertices)
    }

    /// Applies `name=value` overrides such as `hyperplanes=1e8,codewords=4096`.
    pub fn apply_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("bad guard override `{item}`")))?;
            let value = parse_count(value.trim())?;
            match name.trim() {
                "hyperplanes" => self.hyperplanes = value,
                "codewords" => self.codewords = value,
                "points" => self.points = value,
                "graph_vertices" | "graph" => self.graph_vertices = value,
                other => return Err(Error::InvalidParameter(format!("unknown guard `{other}`"))),
            }
        }
        Ok(self)
    }

    /// Applies overrides from [`GUARD_OVERRIDE_ENV`] when it is set.
    pub fn with_env_override(self) -> Result<Self> {
        match std::env::var(GUARD_OVERRIDE_ENV) {
            Ok(spec) => self.apply_overrides(&spec),
            Err(_) => Ok(self),
        }
    }
}

fn check(guard: &'static str, required: u128, limit: u128) -> Result<()> {
    if required > limit {
        Err(Error::GuardExceeded {
            guard,
            required,
            limit,
        })
    } else {
        Ok(())
    }
}

/// Parses `4096`, `1e7` or `2^24`.
pub fn parse_count(s: &str) -> Result<u128> {
    let bad = || Error::InvalidParameter(format!("bad count `{s}`"));
    if let Some((b, x)) = s.split_once('^') {
        let b: u128 = b.parse().map_err(|_| bad())?;
        let x: u32 = x.parse().map_err(|_| bad())?;
        return b.checked_pow(x).ok_or_else(bad);
    }
    if let Some((m, x)) = s.split_once(['e', 'E']) {
        let m: u128 = m.parse().map_err(|_| bad())?;
        let x: u32 = x.parse().map_err(|_| bad())?;
        return 10u128
            .checked_pow(x)
            .and_then(|t| t.checked_mul(m))
            .ok_or_else(bad);
    }
    s.parse().map_err(|_| bad())
}
