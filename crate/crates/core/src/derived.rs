//! Objects derived from a maximum 1-design: the union S of its linear sets,
//! the hyperplane intersection numbers of S, the graph Γ(S) on the affine
//! points of PG(k, q^m), and the projective Hamming code spanned by S.

use crate::error::{precondition, Error, Result};
use crate::fields::{FieldElement, FieldTower, TowerSpec};
use crate::geometry::System;
use crate::geometry::{linear_set, point_key};
use crate::guards::Guards;
use crate::linalg;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A set of points of PG(k-1, q^m), stored as sorted keys of their
/// normalised representatives (first nonzero coordinate 1).
#[derive(Debug, Clone)]
pub struct PointSet {
    tower: Arc<FieldTower>,
    k: usize,
    keys: Vec<u128>,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.tower.same_field(&other.tower) && self.k == other.k && self.keys == other.keys
    }
}

fn key_vector(qm: u64, k: usize, mut key: u128) -> Vec<FieldElement> {
    (0..k)
        .map(|_| {
            let x = (key % qm as u128) as u64;
            key /= qm as u128;
            FieldElement(x)
        })
        .collect()
}

impl PointSet {
    /// Points given by arbitrary nonzero representatives; repeated points
    /// are rejected.
    pub fn from_vectors(
        tower: &Arc<FieldTower>,
        k: usize,
        vectors: &[Vec<FieldElement>],
    ) -> Result<Self> {
        let qm = tower.order();
        let mut keys = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != k {
                return Err(Error::DimensionMismatch(format!(
                    "point of length {} in PG({}, q^m)",
                    v.len(),
                    k - 1
                )));
            }
            let n = linalg::normalize_projective(tower, v)
                .ok_or_else(|| Error::InvalidParameter("the zero vector is not a point".into()))?;
            keys.push(point_key(qm, &n));
        }
        Self::from_keys(tower, k, keys)
    }

    fn from_keys(tower: &Arc<FieldTower>, k: usize, mut keys: Vec<u128>) -> Result<Self> {
        keys.sort_unstable();
        if let Some(w) = keys.windows(2).find(|w| w[0] == w[1]) {
            return Err(precondition(
                "multiplicity-free",
                format!(
                    "point {:?} occurs twice",
                    key_vector(tower.order(), k, w[0])
                ),
            ));
        }
        Ok(PointSet {
            tower: tower.clone(),
            k,
            keys,
        })
    }

    /// `L_{U_1} ∪ ... ∪ L_{U_t}`; fails if two of the linear sets meet.
    pub fn from_system(s: &System, guards: &Guards) -> Result<Self> {
        let mut keys = Vec::new();
        for u in s.spaces() {
            let l = linear_set(u, guards)?;
            keys.extend(l.points().iter().map(|p| p.0));
        }
        Self::from_keys(s.tower(), s.k(), keys)
    }

    /// Every point of PG(k-1, q^m).
    pub fn full(tower: &Arc<FieldTower>, k: usize, guards: &Guards) -> Result<Self> {
        let n = linalg::projective_count(tower.order(), k);
        guards.check_points(n)?;
        let keys = (0..n)
            .map(|i| point_key(tower.order(), &linalg::leading_one_vector(tower, k, i)))
            .collect();
        Self::from_keys(tower, k, keys)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[u128] {
        &self.keys
    }

    pub fn contains_key(&self, key: u128) -> bool {
        self.keys.binary_search(&key).is_ok()
    }

    /// Normalised representatives in canonical order.
    pub fn vectors(&self) -> Vec<Vec<FieldElement>> {
        let qm = self.tower.order();
        self.keys
            .iter()
            .map(|&key| key_vector(qm, self.k, key))
            .collect()
    }

    /// Number of points on the hyperplane `sum normal_i x_i = 0`.
    pub fn hyperplane_count(&self, normal: &[FieldElement]) -> usize {
        let t = &*self.tower;
        let qm = t.order();
        self.keys
            .iter()
            .filter(|&&key| linalg::dot(t, normal, &key_vector(qm, self.k, key)).is_zero())
            .count()
    }
}

/// The parameters `q, m, k, t` and the quantities `M, w_0, w_1` attached to a
/// union of `t` maximum scattered linear sets forming a maximum 1-design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DesignParameters {
    pub q: u64,
    pub m: u32,
    pub k: usize,
    pub t: u64,
    pub size: u64,
    pub w0: u64,
    pub w1: u64,
}

fn ipow(q: u64, e: u64) -> Option<u128> {
    (q as u128).checked_pow(u32::try_from(e).ok()?)
}

impl DesignParameters {
    /// Recovers t from `|S| = t (q^{mk/2} - 1)/(q - 1)`. None when mk is odd,
    /// the size is not of that form, or t reaches the partition bound
    /// `(q-1)(q^{mk/2}+1)/(q^m-1)`, where S is no longer two-intersecting.
    pub fn infer(q: u64, m: u32, k: usize, size: usize) -> Option<Self> {
        let mk = m as u64 * k as u64;
        if mk % 2 != 0 || k < 2 || size == 0 {
            return None;
        }
        let half = ipow(q, mk / 2)?;
        let unit = (half - 1) / (q as u128 - 1);
        if size as u128 % unit != 0 {
            return None;
        }
        let t = size as u128 / unit;
        // t < (q-1)(q^{mk/2}+1)/(q^m-1)
        if t * (ipow(q, m as u64)? - 1) >= (q as u128 - 1) * (half + 1) {
            return None;
        }
        let c = ipow(q, m as u64 * (k as u64 - 2) / 2)?;
        let w0 = t * (c - 1) / (q as u128 - 1);
        Some(DesignParameters {
            q,
            m,
            k,
            t: t as u64,
            size: size as u64,
            w0: w0 as u64,
            w1: (w0 + c) as u64,
        })
    }

    pub fn for_point_set(s: &PointSet) -> Option<Self> {
        Self::infer(s.tower.q(), s.tower.m(), s.k, s.len())
    }

    /// `(v, K, λ, μ)` of Γ(S).
    pub fn srg(&self) -> Option<SrgParams> {
        let qm = ipow(self.q, self.m as u64)? as i128;
        let v = ipow(self.q, self.m as u64 * self.k as u64)? as i128;
        let (mm, w0, w1) = (self.size as i128, self.w0 as i128, self.w1 as i128);
        let kk = mm * (qm - 1);
        let lambda =
            kk * kk + 3 * kk - qm * (1 + kk) * (2 * mm - w1 - w0) + qm * qm * (mm - w1) * (mm - w0);
        let num = qm * qm * (mm - w1) * (mm - w0);
        if num % v != 0 || lambda < 0 {
            return None;
        }
        Some(SrgParams {
            v: v as u64,
            k: kk as u64,
            lambda: lambda as u64,
            mu: (num / v) as u64,
        })
    }

    /// Weights `M - w_1 < M - w_0` with multiplicities `(q^m-1) h_1` and
    /// `(q^m-1) h_0`.
    pub fn two_weight(&self) -> Option<TwoWeightPrediction> {
        let (q, m, k) = (self.q as u128, self.m as u64, self.k as u64);
        let qm = ipow(self.q, m)?;
        let c = ipow(self.q, m * (k - 2) / 2)?;
        let half = ipow(self.q, m * k / 2)?;
        let full = ipow(self.q, m * k)?;
        let top = ipow(self.q, m * (k - 1))?;
        let num = (self.t as u128) * ((half - 1) * (top - 1) - (c - 1) * (full - 1));
        let den = (qm - 1) * (q - 1) * c;
        if num % den != 0 {
            return None;
        }
        let h1 = num / den;
        let h0 = ((full - 1) / (qm - 1)).checked_sub(h1)?;
        let d = self.size - self.w1;
        Some(TwoWeightPrediction {
            length: self.size,
            w0: self.w0,
            w1: self.w1,
            h0,
            h1,
            d,
            weights: vec![(d, (qm - 1) * h1), (self.size - self.w0, (qm - 1) * h0)],
        })
    }
}

/// Histogram of `|H ∩ S|` over all hyperplanes H.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionProfile {
    pub points: usize,
    pub hyperplanes: u128,
    pub histogram: BTreeMap<usize, u128>,
    pub predicted_values: Option<[u64; 2]>,
    pub two_intersection: bool,
}

impl IntersectionProfile {
    pub fn count(&self, value: usize) -> u128 {
        self.histogram.get(&value).copied().unwrap_or(0)
    }
}

pub fn intersection_profile(s: &PointSet, guards: &Guards) -> Result<IntersectionProfile> {
    let t = &*s.tower;
    let n = linalg::projective_count(t.order(), s.k);
    guards.check_hyperplanes(n)?;
    let histogram = (0..n)
        .into_par_iter()
        .fold(BTreeMap::new, |mut h: BTreeMap<usize, u128>, i| {
            let v = linalg::leading_one_vector(t, s.k, i);
            *h.entry(s.hyperplane_count(&v)).or_insert(0) += 1;
            h
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            a
        });
    let predicted_values = DesignParameters::for_point_set(s).map(|p| [p.w0, p.w1]);
    let two_intersection = match predicted_values {
        Some([a, b]) => histogram.keys().all(|&x| x as u64 == a || x as u64 == b),
        None => histogram.len() == 2,
    };
    Ok(IntersectionProfile {
        points: s.len(),
        hyperplanes: n,
        histogram,
        predicted_values,
        two_intersection,
    })
}

/// Simple graph as packed adjacency rows.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    fn set(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.adjacent(i, j)).collect()
    }

    /// Number of common neighbours, i.e. the `(i, j)` entry of `A^2`.
    pub fn common(&self, i: usize, j: usize) -> usize {
        self.row(i)
            .iter()
            .zip(self.row(j))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.adjacent(i, j) == self.adjacent(j, i)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParams {
    /// `K(K - λ - 1) = (v - K - 1) μ`.
    pub fn feasible(&self) -> bool {
        let (v, k, l, m) = (
            self.v as i128,
            self.k as i128,
            self.lambda as i128,
            self.mu as i128,
        );
        k * (k - l - 1) == (v - k - 1) * m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SrgMethod {
    /// Every entry of `A^2` by popcount over adjacency words.
    MatrixIdentity,
    /// Common neighbours counted along adjacency lists, `|V| <= 2^13`.
    NeighborCount,
}

pub const NEIGHBOR_COUNT_LIMIT: usize = 1 << 13;

/// A pair or vertex contradicting strong regularity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SrgWitness {
    pub kind: &'static str,
    pub vertices: Vec<usize>,
    pub expected: u64,
    pub found: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SrgReport {
    pub computed: SrgParams,
    pub predicted: Option<SrgParams>,
    pub method: SrgMethod,
    pub strongly_regular: bool,
    pub witness: Option<SrgWitness>,
    pub verdict: bool,
}

/// Vertices are the vectors `x ∈ F_{q^m}^k` (the affine points `(x, 1)`)
/// indexed by `sum_i x_i Q^i`; `x ~ y` iff `<x - y>` is a point of S.
pub fn srg_graph(s: &PointSet, guards: &Guards) -> Result<Graph> {
    let t = &*s.tower;
    let qm = t.order();
    let n = (qm as u128)
        .checked_pow(s.k as u32)
        .ok_or_else(|| Error::GuardExceeded {
            guard: "graph_vertices",
            required: u128::MAX,
            limit: guards.graph_vertices,
        })?;
    guards.check_graph(n)?;
    let n = n as usize;
    let k = s.k;
    let dirs: Vec<Vec<FieldElement>> = s
        .vectors()
        .into_iter()
        .flat_map(|p| (1..qm).map(move |l| (p.clone(), l)))
        .map(|(p, l)| p.iter().map(|&x| t.mul(FieldElement(l), x)).collect())
        .collect();
    let rows: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let x = key_vector(qm, k, i as u128);
            dirs.iter()
                .map(|d| {
                    let y: Vec<FieldElement> =
                        x.iter().zip(d).map(|(&a, &b)| t.add(a, b)).collect();
                    point_key(qm, &y) as usize
                })
                .collect()
        })
        .collect();
    let mut g = Graph::empty(n);
    for (i, nb) in rows.iter().enumerate() {
        for &j in nb {
            g.set(i, j);
        }
    }
    Ok(g)
}

/// Builds Γ(S) and checks strong regularity, comparing with the parameters
/// predicted when |S| has the size of a maximum 1-design union.
pub fn build_srg(s: &PointSet, method: SrgMethod, guards: &Guards) -> Result<(Graph, SrgReport)> {
    let g = srg_graph(s, guards)?;
    let report = srg_report(
        &g,
        method,
        DesignParameters::for_point_set(s).and_then(|p| p.srg()),
    )?;
    Ok((g, report))
}

pub fn srg_report(g: &Graph, method: SrgMethod, predicted: Option<SrgParams>) -> Result<SrgReport> {
    let n = g.vertices();
    if method == SrgMethod::NeighborCount && n > NEIGHBOR_COUNT_LIMIT {
        return Err(Error::InvalidParameter(format!(
            "neighbor-count needs at most {NEIGHBOR_COUNT_LIMIT} vertices, got {n}"
        )));
    }
    let k = g.degree(0);
    let lambda_pair = g.neighbors(0).first().map(|&j| (0, j));
    let mu_pair = (1..n).find(|&j| !g.adjacent(0, j)).map(|j| (0, j));
    let lambda = lambda_pair.map(|(i, j)| g.common(i, j));
    let mu = mu_pair.map(|(i, j)| g.common(i, j));
    let computed = SrgParams {
        v: n as u64,
        k: k as u64,
        lambda: lambda.unwrap_or(0) as u64,
        mu: mu.unwrap_or(0) as u64,
    };

    let witness = if let Some(i) = (0..n).find(|&i| g.degree(i) != k) {
        Some(SrgWitness {
            kind: "degree",
            vertices: vec![i],
            expected: k as u64,
            found: g.degree(i) as u64,
        })
    } else if lambda.is_none() {
        Some(SrgWitness {
            kind: "empty",
            vertices: vec![0],
            expected: 1,
            found: 0,
        })
    } else if mu.is_none() {
        Some(SrgWitness {
            kind: "complete",
            vertices: vec![0],
            expected: n as u64 - 2,
            found: k as u64,
        })
    } else if mu == Some(0) {
        // a disjoint union of cliques: two vertices in different components
        let (i, j) = mu_pair.unwrap();
        Some(SrgWitness {
            kind: "disconnected",
            vertices: vec![i, j],
            expected: 1,
            found: 0,
        })
    } else {
        let (l, m) = (lambda.unwrap(), mu.unwrap());
        match method {
            SrgMethod::MatrixIdentity => matrix_identity_mismatch(g, k, l, m),
            SrgMethod::NeighborCount => neighbor_count_mismatch(g, l, m),
        }
    };
    let strongly_regular = witness.is_none();
    let verdict = strongly_regular && predicted == Some(computed);
    Ok(SrgReport {
        computed,
        predicted,
        method,
        strongly_regular,
        witness,
        verdict,
    })
}

/// First row of `A^2 - K I - λ A - μ (J - I - A)` with a nonzero entry.
fn matrix_identity_mismatch(g: &Graph, k: usize, l: usize, m: usize) -> Option<SrgWitness> {
    let n = g.vertices();
    (0..n).into_par_iter().find_map_first(|i| {
        (0..n).find_map(|j| {
            let expected = if i == j {
                k
            } else if g.adjacent(i, j) {
                l
            } else {
                m
            };
            let found = g.common(i, j);
            (found != expected).then(|| SrgWitness {
                kind: if i == j {
                    "degree"
                } else if g.adjacent(i, j) {
                    "lambda"
                } else {
                    "mu"
                },
                vertices: vec![i, j],
                expected: expected as u64,
                found: found as u64,
            })
        })
    })
}

/// Counts two-step walks from each vertex through its adjacency list.
fn neighbor_count_mismatch(g: &Graph, l: usize, m: usize) -> Option<SrgWitness> {
    let n = g.vertices();
    let lists: Vec<Vec<usize>> = (0..n).map(|i| g.neighbors(i)).collect();
    (0..n).into_par_iter().find_map_first(|i| {
        let mut count = vec![0usize; n];
        for &x in &lists[i] {
            for &y in &lists[x] {
                count[y] += 1;
            }
        }
        let adj: std::collections::HashSet<usize> = lists[i].iter().copied().collect();
        (0..n).filter(|&j| j != i).find_map(|j| {
            let (kind, expected) = if adj.contains(&j) {
                ("lambda", l)
            } else {
                ("mu", m)
            };
            (count[j] != expected).then(|| SrgWitness {
                kind,
                vertices: vec![i, j],
                expected: expected as u64,
                found: count[j] as u64,
            })
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoWeightPrediction {
    pub length: u64,
    pub w0: u64,
    pub w1: u64,
    pub h0: u128,
    pub h1: u128,
    pub d: u64,
    /// `(weight, number of codewords)`, smaller weight first.
    pub weights: Vec<(u64, u128)>,
}

/// The code whose generator has the points of S as columns.
#[derive(Debug, Clone, Serialize)]
pub struct HammingCode {
    pub field: TowerSpec,
    pub k: usize,
    pub length: usize,
    /// Column j is the normalised representative of the j-th point.
    pub columns: Vec<Vec<FieldElement>>,
    /// Hamming weight histogram over all codewords, zero included.
    pub histogram: BTreeMap<usize, u128>,
}

impl HammingCode {
    pub fn generator(&self) -> Vec<Vec<FieldElement>> {
        (0..self.k)
            .map(|i| self.columns.iter().map(|c| c[i]).collect())
            .collect()
    }

    pub fn count(&self, w: usize) -> u128 {
        self.histogram.get(&w).copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TwoWeightReport {
    pub length: usize,
    pub dimension: usize,
    pub nonzero_weights: Vec<(u64, u128)>,
    pub min_distance: Option<u64>,
    pub predicted: Option<TwoWeightPrediction>,
    pub verdict: bool,
}

/// Weight of the codeword `xG`, i.e. the number of points off `x^⊥`.
pub fn codeword_weight(s: &PointSet, x: &[FieldElement]) -> usize {
    s.len() - s.hyperplane_count(x)
}

pub fn two_weight_code(s: &PointSet, guards: &Guards) -> Result<(HammingCode, TwoWeightReport)> {
    let t = &*s.tower;
    let qm = t.order();
    let total = (qm as u128)
        .checked_pow(s.k as u32)
        .ok_or_else(|| Error::GuardExceeded {
            guard: "codewords",
            required: u128::MAX,
            limit: guards.codewords,
        })?;
    guards.check_codewords(total)?;
    let histogram = (0..total)
        .into_par_iter()
        .fold(BTreeMap::new, |mut h: BTreeMap<usize, u128>, i| {
            let x = key_vector(qm, s.k, i);
            *h.entry(codeword_weight(s, &x)).or_insert(0) += 1;
            h
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            a
        });
    let columns = s.vectors();
    let code = HammingCode {
        field: TowerSpec::of(t),
        k: s.k,
        length: s.len(),
        columns,
        histogram,
    };
    let dimension = linalg::rank(t, &code.generator());
    let nonzero_weights: Vec<(u64, u128)> = code
        .histogram
        .iter()
        .filter(|(&w, _)| w > 0)
        .map(|(&w, &c)| (w as u64, c))
        .collect();
    let predicted = DesignParameters::for_point_set(s).and_then(|p| p.two_weight());
    let verdict = dimension == s.k
        && code.count(0) == 1
        && predicted
            .as_ref()
            .is_some_and(|p| p.weights == nonzero_weights);
    let report = TwoWeightReport {
        length: s.len(),
        dimension,
        min_distance: nonzero_weights.first().map(|w| w.0),
        nonzero_weights,
        predicted,
        verdict,
    };
    Ok((code, report))
}

#[cfg(test)]
mod tests;
