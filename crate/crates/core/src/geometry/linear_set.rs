//! Linear sets `L_U = {<u> : u ∈ U \ {0}}` with point weights
//! `w(P) = dim_{F_q}(U ∩ P)`.

use super::{DesignCertificate, System, Witness};
use crate::error::{Error, Result};
use crate::fields::{FieldElement, FieldTower};
use crate::guards::Guards;
use crate::linalg::{self, FqSubspace};
use serde::Serialize;
use std::collections::BTreeMap;

/// Key of a normalised point: `sum_i x_i Q^i` with `Q = q^m`.
pub fn point_key(qm: u64, v: &[FieldElement]) -> u128 {
    v.iter()
        .rev()
        .fold(0u128, |acc, x| acc * qm as u128 + x.0 as u128)
}

fn key_to_vector(qm: u64, k: usize, mut key: u128) -> Vec<FieldElement> {
    (0..k)
        .map(|_| {
            let x = (key % qm as u128) as u64;
            key /= qm as u128;
            FieldElement(x)
        })
        .collect()
}

/// Points of a linear set sorted by key, each with its weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearSet {
    q: u64,
    qm: u64,
    k: usize,
    rank: usize,
    points: Vec<(u128, u32)>,
}

impl LinearSet {
    pub fn new(u: &FqSubspace, guards: &Guards) -> Result<Self> {
        let t = &**u.tower();
        let k = u.ambient();
        let (q, qm) = (t.q(), t.order());
        if (qm as u128).checked_pow(k as u32).is_none() {
            return Err(Error::InvalidParameter(format!(
                "PG({}, {qm}) is too large to key",
                k - 1
            )));
        }
        let n = u.dim();
        let vectors = linalg::projective_count(q, n);
        guards.check_points(vectors)?;
        let mut keys = Vec::with_capacity(vectors as usize);
        u.for_each_projective_vector(|v| {
            let p = linalg::normalize_projective(t, v).expect("nonzero vector");
            keys.push(point_key(qm, &p));
        });
        keys.sort_unstable();
        let mut points: Vec<(u128, u32)> = Vec::new();
        let mut i = 0;
        while i < keys.len() {
            let j = keys[i..].partition_point(|&x| x == keys[i]) + i;
            // (q^w - 1)/(q - 1) vectors lie on a point of weight w
            let count = (j - i) as u128;
            let target = count * (q as u128 - 1) + 1;
            let mut w = 0u32;
            let mut pw = 1u128;
            while pw < target {
                pw *= q as u128;
                w += 1;
            }
            if pw != target {
                return Err(Error::Inconsistent(format!("{count} vectors on one point")));
            }
            points.push((keys[i], w));
            i = j;
        }
        Ok(LinearSet {
            q,
            qm,
            k,
            rank: n,
            points,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient(&self) -> usize {
        self.k
    }

    pub fn points(&self) -> &[(u128, u32)] {
        &self.points
    }

    pub fn point_vector(&self, key: u128) -> Vec<FieldElement> {
        key_to_vector(self.qm, self.k, key)
    }

    pub fn max_weight(&self) -> u32 {
        self.points.iter().map(|p| p.1).max().unwrap_or(0)
    }

    pub fn weight_of(&self, key: u128) -> u32 {
        match self.points.binary_search_by_key(&key, |p| p.0) {
            Ok(i) => self.points[i].1,
            Err(_) => 0,
        }
    }

    /// `sum_P (q^{w(P)} - 1)`, which equals `q^rank - 1`.
    pub fn partition_sum(&self) -> u128 {
        self.points
            .iter()
            .map(|&(_, w)| (self.q as u128).pow(w) - 1)
            .sum()
    }

    pub fn is_scattered(&self) -> bool {
        self.max_weight() <= 1
    }

    /// Scattered of rank `mk/2`.
    pub fn is_maximum_scattered(&self, m: usize) -> bool {
        self.is_scattered() && 2 * self.rank == m * self.k
    }

    /// Number of common points, by a sorted merge.
    pub fn common_points(&self, other: &LinearSet) -> usize {
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < self.points.len() && j < other.points.len() {
            match self.points[i].0.cmp(&other.points[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }
}

pub fn linear_set(u: &FqSubspace, guards: &Guards) -> Result<LinearSet> {
    LinearSet::new(u, guards)
}

pub fn is_scattered(u: &FqSubspace, guards: &Guards) -> Result<bool> {
    Ok(LinearSet::new(u, guards)?.is_scattered())
}

pub fn are_disjoint(a: &LinearSet, b: &LinearSet) -> bool {
    a.common_points(b) == 0
}

/// Point counts, scatteredness and pairwise intersections of the linear
/// sets of a system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScatteredReport {
    pub point_counts: Vec<usize>,
    pub ranks: Vec<usize>,
    pub scattered: Vec<bool>,
    pub maximum: Vec<bool>,
    /// `(i, j, common points)` for every intersecting pair.
    pub intersecting_pairs: Vec<(usize, usize, usize)>,
    pub pairs_checked: usize,
    /// All maximum scattered and pairwise disjoint.
    pub verdict: bool,
}

pub fn disjoint_scattered_report(s: &System, guards: &Guards) -> Result<ScatteredReport> {
    let sets = s
        .spaces()
        .iter()
        .map(|u| LinearSet::new(u, guards))
        .collect::<Result<Vec<_>>>()?;
    Ok(report_from_sets(&sets, s.m()))
}

pub(crate) fn report_from_sets(sets: &[LinearSet], m: usize) -> ScatteredReport {
    let mut intersecting_pairs = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let c = sets[i].common_points(&sets[j]);
            if c > 0 {
                intersecting_pairs.push((i, j, c));
            }
        }
    }
    let scattered: Vec<bool> = sets.iter().map(|l| l.is_scattered()).collect();
    let maximum: Vec<bool> = sets.iter().map(|l| l.is_maximum_scattered(m)).collect();
    let verdict = maximum.iter().all(|&b| b) && intersecting_pairs.is_empty();
    ScatteredReport {
        point_counts: sets.iter().map(|l| l.len()).collect(),
        ranks: sets.iter().map(|l| l.rank()).collect(),
        scattered,
        maximum,
        intersecting_pairs,
        pairs_checked: sets.len() * sets.len().saturating_sub(1) / 2,
        verdict,
    }
}

/// `(1, r)`-design check through the linear sets: the sum at a point is the
/// total weight it receives. Points outside every linear set have sum 0.
pub fn design_check_via_linear_sets(
    s: &System,
    r: usize,
    guards: &Guards,
) -> Result<DesignCertificate> {
    let t: &FieldTower = s.tower();
    let mut total: BTreeMap<u128, usize> = BTreeMap::new();
    for u in s.spaces() {
        for &(key, w) in LinearSet::new(u, guards)?.points() {
            *total.entry(key).or_insert(0) += w as usize;
        }
    }
    let all = linalg::projective_count(t.order(), s.k());
    let mut histogram: BTreeMap<usize, u128> = BTreeMap::new();
    for &v in total.values() {
        *histogram.entry(v).or_insert(0) += 1;
    }
    let zeros = all - total.len() as u128;
    if zeros > 0 {
        histogram.insert(0, zeros);
    }
    let (witness_key, max) =
        total.iter().fold(
            (None, 0usize),
            |(bk, bv), (&k, &v)| if v > bv { (Some(k), v) } else { (bk, bv) },
        );
    let witness = match witness_key {
        Some(key) => key_to_vector(t.order(), s.k(), key),
        None => linalg::leading_one_vector(t, s.k(), 0),
    };
    let min = if zeros > 0 {
        0
    } else {
        *histogram.keys().next().unwrap_or(&0)
    };
    Ok(DesignCertificate {
        h: 1,
        r,
        k: s.k(),
        m: s.m(),
        q: t.q(),
        dims: s.dims(),
        verdict: max <= r,
        method: "linear-sets",
        max_sum: max,
        min_sum: Some(min),
        witness: Witness::Point(witness),
        histogram,
        scanned: all,
        construction: None,
    })
}
