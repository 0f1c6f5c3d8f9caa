//! Sum-rank metric codes over `F_{q^m}` with block shape `(n_1, .., n_t)`.
//!
//! The weight of `x = (x_1 | .. | x_t)` is `sum_i rk_q(x_i)`, where `rk_q` is the
//! dimension of the F_q-span of the entries of the block.

mod lrs;
mod weights;

pub use lrs::{canonical_betas, canonical_mus, lrs_code, norm_subgroup, tlrs_code};
pub use weights::{msrd_weight_formula, msrd_weights};

use crate::combinat::{gaussian_binomial_u128, pow_u128};
use crate::error::{precondition, Error, Result};
use crate::fields::{FieldElement, FieldTower, TowerSpec};
use crate::guards::Guards;
use crate::linalg::{self, fq_rank, FqSubspace, Matrix, SubspaceEnumerator};
use num_bigint::BigUint;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};
use std::sync::Arc;

/// Block lengths, sorted nonincreasingly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BlockShape {
    lengths: Vec<usize>,
}

impl BlockShape {
    pub fn new(lengths: Vec<usize>) -> Result<Self> {
        if lengths.is_empty() || lengths.contains(&0) {
            return Err(Error::InvalidParameter(
                "block lengths must be positive".into(),
            ));
        }
        if lengths.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(format!(
                "block lengths {lengths:?} must be nonincreasing"
            )));
        }
        Ok(BlockShape { lengths })
    }

    pub fn uniform(t: usize, n: usize) -> Result<Self> {
        Self::new(vec![n; t])
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn t(&self) -> usize {
        self.lengths.len()
    }

    /// Total length N.
    pub fn total(&self) -> usize {
        self.lengths.iter().sum()
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut o = Vec::with_capacity(self.t() + 1);
        let mut s = 0;
        o.push(0);
        for &n in &self.lengths {
            s += n;
            o.push(s);
        }
        o
    }

    /// The common block length, if all blocks have the same length.
    pub fn equal_length(&self) -> Option<usize> {
        let n = self.lengths[0];
        self.lengths.iter().all(|&x| x == n).then_some(n)
    }

    /// Largest possible sum-rank weight, `sum_i min(m, n_i)`.
    pub fn max_weight(&self, m: usize) -> usize {
        self.lengths.iter().map(|&n| n.min(m)).sum()
    }
}

/// Sum-rank weight of `x` for the given shape.
pub fn sum_rank_weight(t: &FieldTower, shape: &BlockShape, x: &[FieldElement]) -> usize {
    let off = shape.offsets();
    (0..shape.t())
        .map(|i| fq_rank(t, &x[off[i]..off[i + 1]]))
        .sum()
}

#[derive(Debug, Clone)]
pub struct SumRankCode {
    tower: Arc<FieldTower>,
    shape: BlockShape,
    generator: Matrix<FieldElement>,
}

impl SumRankCode {
    /// A code with the given generator; rows must be linearly independent.
    /// Zero rows give the zero code.
    pub fn new(
        tower: &Arc<FieldTower>,
        shape: BlockShape,
        generator: Matrix<FieldElement>,
    ) -> Result<Self> {
        if generator.cols() != shape.total() {
            return Err(Error::DimensionMismatch(format!(
                "generator has {} columns, shape has length {}",
                generator.cols(),
                shape.total()
            )));
        }
        if generator.rows() > 0 {
            if let Some(bad) = generator
                .to_rows()
                .iter()
                .flatten()
                .find(|x| x.0 >= tower.order())
            {
                return Err(Error::InvalidParameter(format!(
                    "{bad} is not an element of F_{}",
                    tower.order()
                )));
            }
            if linalg::rank(&**tower, &generator.to_rows()) != generator.rows() {
                return Err(Error::InvalidParameter(
                    "generator matrix is not of full row rank".into(),
                ));
            }
        }
        Ok(SumRankCode {
            tower: tower.clone(),
            shape,
            generator,
        })
    }

    pub fn from_rows(
        tower: &Arc<FieldTower>,
        shape: BlockShape,
        rows: Vec<Vec<FieldElement>>,
    ) -> Result<Self> {
        let n = shape.total();
        Self::new(tower, shape, Matrix::from_rows(rows, n)?)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn shape(&self) -> &BlockShape {
        &self.shape
    }

    pub fn generator(&self) -> &Matrix<FieldElement> {
        &self.generator
    }

    /// Dimension over F_{q^m}.
    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn length(&self) -> usize {
        self.shape.total()
    }

    pub fn m(&self) -> usize {
        self.tower.m() as usize
    }

    pub fn encode(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let t = &*self.tower;
        let mut out = vec![FieldElement::ZERO; self.length()];
        for (r, &c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.generator.row(r)) {
                *o = t.add(*o, t.mul(c, g));
            }
        }
        out
    }

    /// The message with canonical index `i` (base-Q digits, little-endian).
    pub fn message(&self, mut i: u128) -> Vec<FieldElement> {
        let qm = self.tower.order() as u128;
        (0..self.k())
            .map(|_| {
                let d = (i % qm) as u64;
                i /= qm;
                FieldElement(d)
            })
            .collect()
    }

    pub fn weight(&self, x: &[FieldElement]) -> usize {
        sum_rank_weight(&self.tower, &self.shape, x)
    }

    pub fn codeword_count(&self) -> u128 {
        pow_u128(self.tower.order(), self.k() as u64)
    }

    /// The generator block `G_i` as a list of columns.
    pub fn block_columns(&self, i: usize) -> Vec<Vec<FieldElement>> {
        let off = self.shape.offsets();
        (off[i]..off[i + 1])
            .map(|c| self.generator.column(c))
            .collect()
    }

    /// `U_i`, the F_q-span of the columns of block i.
    pub fn block_space(&self, i: usize) -> FqSubspace {
        FqSubspace::span(&self.tower, self.k(), &self.block_columns(i))
            .expect("columns have length k")
    }

    /// Whether `x` is a codeword.
    pub fn contains(&self, x: &[FieldElement]) -> bool {
        linalg::solve_left(&*self.tower, &self.generator.to_rows(), x).is_some()
    }

    /// Same code, compared by row space.
    pub fn same_code(&self, other: &SumRankCode) -> bool {
        if !self.tower.same_field(&other.tower)
            || self.shape != other.shape
            || self.k() != other.k()
        {
            return false;
        }
        let mut a = self.generator.to_rows();
        let mut b = other.generator.to_rows();
        linalg::rref(&*self.tower, &mut a);
        linalg::rref(&*self.tower, &mut b);
        a == b
    }
}

/// Counts of codewords by weight. Serialises counts that fit in u64 as
/// numbers and larger ones as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    #[serde(serialize_with = "ser_counts")]
    pub counts: Vec<BigUint>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    BruteForce,
    Formula,
}

fn ser_counts<S: Serializer>(counts: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(counts.len()))?;
    for c in counts {
        match u64::try_from(c) {
            Ok(v) => seq.serialize_element(&v)?,
            Err(_) => seq.serialize_element(&c.to_string())?,
        }
    }
    seq.end()
}

impl WeightDistribution {
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Smallest nonzero weight with a nonzero count.
    pub fn min_distance(&self) -> Option<usize> {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, c)| **c != BigUint::default())
            .map(|(w, _)| w)
    }

    pub fn count(&self, w: usize) -> BigUint {
        self.counts.get(w).cloned().unwrap_or_default()
    }
}

const CHUNK: u128 = 1 << 12;

/// Enumerates all codewords, chunked over rayon workers.
pub fn weight_distribution_bruteforce(
    c: &SumRankCode,
    guards: &Guards,
) -> Result<WeightDistribution> {
    let total = c.codeword_count();
    guards.check_codewords(total)?;
    let max_w = c.shape.max_weight(c.m());
    let chunks = total.div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|ch| {
            let mut local = vec![0u64; max_w + 1];
            for i in ch * CHUNK..((ch + 1) * CHUNK).min(total) {
                let w = c.weight(&c.encode(&c.message(i)));
                local[w] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; max_w + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(WeightDistribution {
        counts: counts.into_iter().map(BigUint::from).collect(),
        provenance: Provenance::BruteForce,
    })
}

/// Minimum distance by enumeration, with the lowest-index minimum weight codeword.
pub fn min_distance_bruteforce(
    c: &SumRankCode,
    guards: &Guards,
) -> Result<(usize, Vec<FieldElement>)> {
    let total = c.codeword_count();
    guards.check_codewords(total)?;
    if c.k() == 0 {
        return Err(Error::InvalidParameter(
            "the zero code has no minimum distance".into(),
        ));
    }
    let chunks = total.div_ceil(CHUNK);
    let best = (0..chunks)
        .into_par_iter()
        .filter_map(|ch| {
            let mut best: Option<(usize, u128)> = None;
            for i in (ch * CHUNK).max(1)..((ch + 1) * CHUNK).min(total) {
                let w = c.weight(&c.encode(&c.message(i)));
                if best.is_none_or(|(bw, _)| w < bw) {
                    best = Some((w, i));
                }
            }
            best
        })
        .min()
        .expect("nonzero code has nonzero codewords");
    Ok((best.0, c.encode(&c.message(best.1))))
}

/// Generalised sum-rank weight `d_r` for `1 <= r <= k`, computed from the
/// associated system as `N - max_H sum_i (n_i - dim U_i + dim(U_i ∩ H))`
/// over (k-r)-dimensional F_{q^m}-subspaces H.
pub fn generalized_weight(c: &SumRankCode, r: usize, guards: &Guards) -> Result<usize> {
    let k = c.k();
    if r == 0 || r > k {
        return Err(Error::InvalidParameter(format!("r = {r} outside 1..={k}")));
    }
    let t = &*c.tower;
    let spaces: Vec<FqSubspace> = (0..c.shape.t()).map(|i| c.block_space(i)).collect();
    let slack: usize = spaces
        .iter()
        .zip(c.shape.lengths())
        .map(|(u, &n)| n - u.dim())
        .sum();
    let en = SubspaceEnumerator::new(t, k, k - r);
    guards.check_hyperplanes(en.count())?;
    let best = (0..en.count())
        .into_par_iter()
        .map(|i| {
            let w = linalg::blow_up_fqm_span(t, k, &en.basis(i));
            spaces
                .iter()
                .map(|u| linalg::intersect_dim(u, &w))
                .sum::<usize>()
        })
        .max()
        .unwrap_or(0);
    Ok(c.length() - slack - best)
}

/// Minimum distance through the hyperplane sums of the associated system.
pub fn min_distance_geometric(c: &SumRankCode, guards: &Guards) -> Result<usize> {
    generalized_weight(c, 1, guards)
}

/// The largest d allowed by the Singleton-type bound for dimension k:
/// writing `d - 1 = sum_{i<j} min(m, n_i) + delta`, a code of size `q^{mk}`
/// needs `m k <= m sum_{i>=j} n_i - max(m, n_j) delta`.
pub fn singleton_bound(shape: &BlockShape, m: usize, k: usize) -> Result<usize> {
    if k == 0 || k > shape.total() {
        return Err(Error::InvalidParameter(format!(
            "dimension {k} out of range"
        )));
    }
    let n = shape.lengths();
    let holds = |d: usize| {
        let mut rest = d - 1;
        for j in 0..n.len() {
            let cap = m.min(n[j]);
            if rest < cap {
                let tail: usize = n[j..].iter().sum();
                let rhs = (m * tail) as i64 - (m.max(n[j]) * rest) as i64;
                return (m * k) as i64 <= rhs;
            }
            rest -= cap;
        }
        false
    };
    (1..=shape.max_weight(m))
        .rev()
        .find(|&d| holds(d))
        .ok_or_else(|| Error::Inconsistent("no admissible distance".into()))
}

/// Smallest-weight nonzero vector `y` with `H y^T = 0`, searching weights
/// `1..=max_w`. Each candidate support is a choice of F_q-row spaces
/// `B_i ⊂ F_q^{n_i}` of dimensions `r_i` with `sum r_i = w`; a codeword of
/// weight at most w with those row spaces exists iff `[H_i B_i^T]_i` has a
/// nonzero kernel vector z, and then `y_i = z_i B_i`.
pub fn min_weight_by_supports(
    tower: &Arc<FieldTower>,
    shape: &BlockShape,
    parity: &[Vec<FieldElement>],
    max_w: usize,
    guards: &Guards,
) -> Result<Option<(usize, Vec<FieldElement>)>> {
    let t = &**tower;
    let q = t.q();
    let m = t.m() as usize;
    let off = shape.offsets();
    let lens = shape.lengths();
    for w in 1..=max_w.min(shape.max_weight(m)) {
        let caps: Vec<u64> = lens.iter().map(|&n| n.min(m) as u64).collect();
        let profiles = bounded_profiles(w as u64, &caps);
        for prof in profiles {
            let enums: Vec<SubspaceEnumerator> = prof
                .iter()
                .zip(lens)
                .map(|(&r, &n)| SubspaceEnumerator::with_size(q, n, r as usize))
                .collect();
            let total = enums
                .iter()
                .fold(1u128, |acc, e| acc.saturating_mul(e.count()));
            guards.check_hyperplanes(total)?;
            let found = (0..total).into_par_iter().find_map_first(|mut idx| {
                let bs: Vec<Vec<Vec<u64>>> = enums
                    .iter()
                    .map(|e| {
                        let c = e.count();
                        let b = e.basis_indices(idx % c);
                        idx /= c;
                        b
                    })
                    .collect();
                // columns H_i b for each row b of B_i
                let mut cols: Vec<Vec<FieldElement>> = Vec::with_capacity(w);
                for (i, b) in bs.iter().enumerate() {
                    for row in b {
                        let col: Vec<FieldElement> = parity
                            .iter()
                            .map(|h| {
                                row.iter()
                                    .enumerate()
                                    .fold(FieldElement::ZERO, |acc, (j, &c)| {
                                        if c == 0 {
                                            acc
                                        } else {
                                            t.add(acc, t.mul(t.embed_base(c), h[off[i] + j]))
                                        }
                                    })
                            })
                            .collect();
                        cols.push(col);
                    }
                }
                let rows: Vec<Vec<FieldElement>> = (0..parity.len())
                    .map(|r| cols.iter().map(|c| c[r]).collect())
                    .collect();
                let ker = if rows.is_empty() {
                    let mut v = vec![FieldElement::ZERO; w];
                    v[0] = FieldElement::ONE;
                    vec![v]
                } else {
                    linalg::kernel(t, &rows, w)
                };
                let z = ker.into_iter().next()?;
                let mut y = vec![FieldElement::ZERO; shape.total()];
                let mut zi = 0;
                for (i, b) in bs.iter().enumerate() {
                    for row in b {
                        for (j, &c) in row.iter().enumerate() {
                            let v = t.mul(z[zi], t.embed_base(c));
                            y[off[i] + j] = t.add(y[off[i] + j], v);
                        }
                        zi += 1;
                    }
                }
                Some(y)
            });
            if let Some(y) = found {
                return Ok(Some((w, y)));
            }
        }
    }
    Ok(None)
}

fn bounded_profiles(total: u64, caps: &[u64]) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rest: u64, caps: &[u64], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == caps.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let left: u64 = caps[cur.len() + 1..].iter().sum();
        for r in 0..=caps[cur.len()].min(rest) {
            if rest - r <= left {
                cur.push(r);
                rec(rest - r, caps, cur, out);
                cur.pop();
            }
        }
    }
    rec(total, caps, &mut cur, &mut out);
    out
}

/// Outcome of an MSRD check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MsrdCertificate {
    pub claim: &'static str,
    pub d: usize,
    pub bound: usize,
    pub method: &'static str,
    pub witness_min_word: Vec<FieldElement>,
}

impl MsrdCertificate {
    pub fn is_msrd(&self) -> bool {
        self.d == self.bound
    }
}

/// Computes d exactly and compares it with the Singleton-type bound.
/// Small codes are enumerated; large ones are searched by supports through
/// a parity check matrix.
pub fn is_msrd(c: &SumRankCode, guards: &Guards) -> Result<MsrdCertificate> {
    let bound = singleton_bound(&c.shape, c.m(), c.k())?;
    let (d, witness, method) = if c.codeword_count() <= guards.codewords {
        let (d, w) = min_distance_bruteforce(c, guards)?;
        (d, w, "bruteforce")
    } else {
        let dual = dual_code(c)?;
        let parity = dual.generator.to_rows();
        match min_weight_by_supports(&c.tower, &c.shape, &parity, bound, guards)? {
            Some((d, w)) => (d, w, "support-search"),
            None => {
                return Err(Error::Inconsistent(format!(
                    "no codeword of weight <= {bound} although the bound is {bound}"
                )))
            }
        }
    };
    Ok(MsrdCertificate {
        claim: "MSRD",
        d,
        bound,
        method,
        witness_min_word: witness,
    })
}

/// The dual code under the standard inner product.
pub fn dual_code(c: &SumRankCode) -> Result<SumRankCode> {
    let rows = c.generator.to_rows();
    let ker = if rows.is_empty() {
        (0..c.length())
            .map(|i| {
                let mut v = vec![FieldElement::ZERO; c.length()];
                v[i] = FieldElement::ONE;
                v
            })
            .collect()
    } else {
        linalg::kernel(&*c.tower, &rows, c.length())
    };
    SumRankCode::from_rows(&c.tower, c.shape.clone(), ker)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NondegeneracyReport {
    pub nondegenerate: bool,
    /// Whether every block has F_q-independent columns.
    pub columns_independent: bool,
    /// Whether the dual code has minimum distance at least 2 (None when the dual is zero).
    pub dual_distance_at_least_2: Option<bool>,
    pub note: Option<String>,
}

/// Nondegeneracy, decided both from the block columns and from the dual
/// distance; disagreement is reported as an error.
pub fn is_nondegenerate(c: &SumRankCode, guards: &Guards) -> Result<NondegeneracyReport> {
    let columns_independent =
        (0..c.shape.t()).all(|i| c.block_space(i).dim() == c.shape.lengths()[i]);
    if c.k() == c.length() {
        return Ok(NondegeneracyReport {
            nondegenerate: false,
            columns_independent,
            dual_distance_at_least_2: None,
            note: Some("k = N: the dual is zero, so the dual distance criterion is vacuous".into()),
        });
    }
    let dual = dual_code(c)?;
    let dual_ok = if dual.codeword_count() <= guards.codewords {
        min_distance_bruteforce(&dual, guards)?.0 >= 2
    } else {
        min_weight_by_supports(&c.tower, &c.shape, &c.generator.to_rows(), 1, guards)?.is_none()
    };
    if dual_ok != columns_independent {
        return Err(Error::Inconsistent(format!(
            "column test says {columns_independent}, dual distance test says {dual_ok}"
        )));
    }
    Ok(NondegeneracyReport {
        nondegenerate: dual_ok,
        columns_independent,
        dual_distance_at_least_2: Some(dual_ok),
        note: None,
    })
}

/// Applies the isometry `x -> (a_i x_{pi(i)} A_i)_i`, with `A_i` invertible
/// over F_q (entries are base field indices) and `pi` preserving lengths.
pub fn apply_isometry(
    c: &SumRankCode,
    scalars: &[FieldElement],
    perm: &[usize],
    mats: &[Vec<Vec<u64>>],
) -> Result<SumRankCode> {
    let t = &*c.tower;
    let nb = c.shape.t();
    if scalars.len() != nb || perm.len() != nb || mats.len() != nb {
        return Err(Error::DimensionMismatch(
            "isometry data must have one entry per block".into(),
        ));
    }
    let mut seen = vec![false; nb];
    for &p in perm {
        if p >= nb || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidParameter(format!(
                "{perm:?} is not a permutation"
            )));
        }
    }
    let lens = c.shape.lengths();
    for i in 0..nb {
        if lens[perm[i]] != lens[i] {
            return Err(precondition(
                "length-preserving-permutation",
                format!(
                    "block {} of length {} cannot move to block {i} of length {}",
                    perm[i], lens[perm[i]], lens[i]
                ),
            ));
        }
        if scalars[i].is_zero() {
            return Err(Error::InvalidParameter("scalars must be nonzero".into()));
        }
        let n = lens[i];
        if mats[i].len() != n || mats[i].iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("A_{i} must be {n}x{n}")));
        }
        if linalg::rank(t.base(), &mats[i]) != n {
            return Err(Error::InvalidParameter(format!("A_{i} is singular")));
        }
    }
    let off = c.shape.offsets();
    let rows: Vec<Vec<FieldElement>> = (0..c.k())
        .map(|r| {
            let g = c.generator.row(r);
            let mut out = Vec::with_capacity(c.length());
            for i in 0..nb {
                let src = &g[off[perm[i]]..off[perm[i] + 1]];
                for col in 0..lens[i] {
                    let v = src
                        .iter()
                        .enumerate()
                        .fold(FieldElement::ZERO, |acc, (j, &x)| {
                            t.add(acc, t.scale_base(mats[i][j][col], x))
                        });
                    out.push(t.mul(scalars[i], v));
                }
            }
            out
        })
        .collect();
    SumRankCode::from_rows(&c.tower, c.shape.clone(), rows)
}

/// A uniformly random code of dimension k (rejection sampling on rank).
pub fn random_code<R: Rng>(
    tower: &Arc<FieldTower>,
    shape: &BlockShape,
    k: usize,
    rng: &mut R,
) -> Result<SumRankCode> {
    if k > shape.total() {
        return Err(Error::InvalidParameter(format!(
            "k = {k} exceeds the length"
        )));
    }
    loop {
        let rows: Vec<Vec<FieldElement>> = (0..k)
            .map(|_| {
                (0..shape.total())
                    .map(|_| FieldElement(rng.gen_range(0..tower.order())))
                    .collect()
            })
            .collect();
        if let Ok(c) = SumRankCode::from_rows(tower, shape.clone(), rows) {
            return Ok(c);
        }
    }
}

/// Number of subspaces scanned by [`generalized_weight`].
pub fn generalized_weight_cost(c: &SumRankCode, r: usize) -> u128 {
    gaussian_binomial_u128(c.k() as u64, (c.k() - r) as u64, c.tower.order())
}

/// Field, block shape and generator rows of a code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub field: TowerSpec,
    pub shape: Vec<usize>,
    pub generator: Vec<Vec<FieldElement>>,
}

impl SumRankCode {
    pub fn to_json(&self) -> CodeJson {
        CodeJson {
            field: TowerSpec::of(&self.tower),
            shape: self.shape.lengths().to_vec(),
            generator: self.generator.to_rows(),
        }
    }

    pub fn from_json(j: &CodeJson) -> Result<Self> {
        let tower = j.field.build()?;
        if let Some(x) = j.generator.iter().flatten().find(|x| x.0 >= tower.order()) {
            return Err(Error::InvalidParameter(format!(
                "{x} is not an element of F_{}",
                tower.order()
            )));
        }
        Self::from_rows(
            &tower,
            BlockShape::new(j.shape.clone())?,
            j.generator.clone(),
        )
    }
}

/// `d_1 < d_2 < ... < d_k` by subspace enumeration.
pub fn generalized_weights(c: &SumRankCode, guards: &Guards) -> Result<Vec<usize>> {
    (1..=c.k())
        .map(|r| generalized_weight(c, r, guards))
        .collect()
}

/// `{d_r(C)}` and `{N + 1 - d_r(C^⊥)}`; `exact` when they partition `1..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeiPartition {
    pub length: usize,
    pub code: Vec<usize>,
    pub dual_shifted: Vec<usize>,
    pub exact: bool,
}

pub fn wei_partition(c: &SumRankCode, guards: &Guards) -> Result<WeiPartition> {
    let n = c.length();
    let dual = dual_code(c)?;
    let code = generalized_weights(c, guards)?;
    let dual_shifted: Vec<usize> = generalized_weights(&dual, guards)?
        .into_iter()
        .map(|d| n + 1 - d)
        .collect();
    let mut all: Vec<usize> = code.iter().chain(&dual_shifted).copied().collect();
    all.sort_unstable();
    let exact = all == (1..=n).collect::<Vec<_>>();
    Ok(WeiPartition {
        length: n,
        code,
        dual_shifted,
        exact,
    })
}

#[cfg(test)]
mod tests;
