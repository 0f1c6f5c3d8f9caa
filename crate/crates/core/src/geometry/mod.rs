//! Systems of F_q-subspaces of `F_{q^m}^k`, subspace designs, linear sets
//! and constructions of disjoint maximum scattered linear sets.

mod constructions;
mod linear_set;
mod ops;
mod sporadic;

pub use constructions::{
    kodd_gcd, kodd_qmod, plane, pseudoregulus_design, search_kodd_gcd, search_kodd_qmod,
    search_plane, subfield_mus, ExtensionFrame,
};
pub use linear_set::{
    are_disjoint, design_check_via_linear_sets, disjoint_scattered_report, is_scattered,
    linear_set, point_key, LinearSet, ScatteredReport,
};
pub use ops::{
    delsarte_dual, direct_sum_glue, dual_subspace, geometric_dual, lrs_system, split_blocks, Glued,
    TraceForm,
};
pub use sporadic::{
    family_2q2, pair_criterion_disjoint, sporadic_design, sporadic_q2, sporadic_q3,
    validate_2q2_parameters,
};

use crate::codes::{self, BlockShape, MsrdCertificate, SumRankCode};
use crate::error::{precondition, Error, Result};
use crate::fields::{FieldElement, FieldTower, TowerSpec};
use crate::guards::Guards;
use crate::linalg::{self, FqSpace, FqSubspace, Matrix, SubspaceEnumerator};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// An ordered tuple `(U_1, ..., U_t)` of nonzero F_q-subspaces of
/// `F_{q^m}^k` whose F_{q^m}-span is the whole space. Subspaces are kept
/// sorted by nonincreasing dimension (stable), matching [`BlockShape`].
#[derive(Debug, Clone)]
pub struct System {
    tower: Arc<FieldTower>,
    k: usize,
    spaces: Vec<FqSubspace>,
}

impl PartialEq for System {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.tower.same_field(&other.tower) && self.spaces == other.spaces
    }
}

impl System {
    pub fn new(tower: &Arc<FieldTower>, k: usize, mut spaces: Vec<FqSubspace>) -> Result<Self> {
        if spaces.is_empty() {
            return Err(Error::InvalidParameter(
                "a system needs at least one subspace".into(),
            ));
        }
        for u in &spaces {
            if !u.tower().same_field(tower) {
                return Err(Error::TowerMismatch);
            }
            if u.ambient() != k {
                return Err(Error::DimensionMismatch(format!(
                    "subspace of F^{} in a system over F^{k}",
                    u.ambient()
                )));
            }
            if u.dim() == 0 {
                return Err(Error::InvalidParameter("zero subspace in a system".into()));
            }
        }
        spaces.sort_by(|a, b| b.dim().cmp(&a.dim()));
        let vecs: Vec<Vec<FieldElement>> = spaces.iter().flat_map(|u| u.basis().to_vec()).collect();
        let rank = linalg::rank(&**tower, &vecs);
        if rank != k {
            return Err(precondition(
                "spanning",
                format!("the subspaces span an F_{{q^m}}-space of dimension {rank} < {k}"),
            ));
        }
        Ok(System {
            tower: tower.clone(),
            k,
            spaces,
        })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn t(&self) -> usize {
        self.spaces.len()
    }

    pub fn m(&self) -> usize {
        self.tower.m() as usize
    }

    pub fn spaces(&self) -> &[FqSubspace] {
        &self.spaces
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|u| u.dim()).collect()
    }

    pub fn shape(&self) -> BlockShape {
        BlockShape::new(self.dims()).expect("dims are sorted and positive")
    }

    /// `sum_i dim_{F_q}(U_i ∩ W)` for a blown-up F_{q^m}-subspace W.
    pub fn intersection_sum(&self, w: &FqSpace) -> usize {
        self.spaces
            .iter()
            .map(|u| linalg::intersect_dim(u, w))
            .sum()
    }

    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            tower: TowerSpec::of(&self.tower),
            ambient_k: self.k,
            subspaces: self
                .spaces
                .iter()
                .map(|u| SubspaceJson {
                    ambient_k: self.k,
                    basis: u.basis().to_vec(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &SystemJson) -> Result<Self> {
        let tower = j.tower.build()?;
        let spaces = j
            .subspaces
            .iter()
            .map(|s| {
                if s.ambient_k != j.ambient_k {
                    return Err(Error::DimensionMismatch("subspace ambient differs".into()));
                }
                check_elements(&tower, &s.basis)?;
                FqSubspace::from_basis(&tower, s.ambient_k, &s.basis)
            })
            .collect::<Result<Vec<_>>>()?;
        System::new(&tower, j.ambient_k, spaces)
    }
}

fn check_elements(t: &FieldTower, rows: &[Vec<FieldElement>]) -> Result<()> {
    match rows.iter().flatten().find(|x| x.0 >= t.order()) {
        Some(x) => Err(Error::InvalidParameter(format!(
            "{x} is not an element of F_{}",
            t.order()
        ))),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub ambient_k: usize,
    pub basis: Vec<Vec<FieldElement>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub tower: TowerSpec,
    pub ambient_k: usize,
    pub subspaces: Vec<SubspaceJson>,
}

/// The code whose block i has the basis of `U_i` as columns.
pub fn code_from_system(s: &System) -> Result<SumRankCode> {
    let rows: Vec<Vec<FieldElement>> = (0..s.k)
        .map(|r| {
            s.spaces
                .iter()
                .flat_map(|u| u.basis().iter().map(move |v| v[r]))
                .collect()
        })
        .collect();
    let n = rows.first().map_or(0, |r| r.len());
    SumRankCode::new(&s.tower, s.shape(), Matrix::from_rows(rows, n)?)
}

/// `U_i` = F_q-span of the columns of block i; the code must be
/// nondegenerate.
pub fn system_from_code(c: &SumRankCode) -> Result<System> {
    let mut spaces = Vec::with_capacity(c.shape().t());
    for (i, &n) in c.shape().lengths().iter().enumerate() {
        let u = c.block_space(i);
        if u.dim() != n {
            return Err(precondition(
                "nondegenerate",
                format!("block {i} has F_q-rank {} < {n}", u.dim()),
            ));
        }
        spaces.push(u);
    }
    if c.k() == 0 {
        return Err(precondition("nondegenerate", "zero code"));
    }
    let sys = System::new(c.tower(), c.k(), spaces)?;
    if sys.dims() != c.shape().lengths() {
        return Err(Error::Inconsistent("block order changed".into()));
    }
    Ok(sys)
}

/// Provenance of a constructed system: every canonical choice needed to
/// rebuild it. `a`, `b` and `a_values` are canonical integers of
/// `big_field`; `omega` and `mus` are elements of the system's tower.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionInfo {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub a_values: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mus: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub big_field: Option<TowerSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ConstructionInfo {
    pub fn new(family: &str) -> Self {
        ConstructionInfo {
            family: family.to_string(),
            ..Default::default()
        }
    }
}

/// A constructed system with its claimed `(h, r)` design parameters.
#[derive(Debug, Clone)]
pub struct Constructed {
    pub system: System,
    pub h: usize,
    pub r: usize,
    pub info: ConstructionInfo,
}

/// The subspace W attaining the reported value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "vector", rename_all = "kebab-case")]
pub enum Witness {
    /// Normal vector of a hyperplane.
    Normal(Vec<FieldElement>),
    /// Representative of a point.
    Point(Vec<FieldElement>),
    /// Reduced basis of an h-dimensional subspace.
    Basis(Vec<Vec<FieldElement>>),
}

impl Witness {
    /// Blown-up form of the witnessed F_{q^m}-subspace.
    pub fn blown(&self, t: &FieldTower, k: usize) -> FqSpace {
        match self {
            Witness::Normal(v) => linalg::blow_up_fqm_span(t, k, &linalg::hyperplane_basis(t, v)),
            Witness::Point(v) => linalg::blow_up_fqm_span(t, k, std::slice::from_ref(v)),
            Witness::Basis(b) => linalg::blow_up_fqm_span(t, k, b),
        }
    }
}

/// Result of a design verification. `histogram` maps each value of
/// `sum_i dim(U_i ∩ W)` to the number of scanned W attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesignCertificate {
    pub h: usize,
    pub r: usize,
    pub k: usize,
    pub m: usize,
    pub q: u64,
    pub dims: Vec<usize>,
    pub verdict: bool,
    pub method: &'static str,
    pub max_sum: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_sum: Option<usize>,
    pub witness: Witness,
    pub histogram: BTreeMap<usize, u128>,
    pub scanned: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<ConstructionInfo>,
}

impl DesignCertificate {
    /// Re-evaluates the intersection sum at the witness.
    pub fn recheck(&self, s: &System) -> usize {
        s.intersection_sum(&self.witness.blown(&s.tower, s.k))
    }

    /// Number of scanned subspaces with intersection sum `value`.
    pub fn count(&self, value: usize) -> u128 {
        self.histogram.get(&value).copied().unwrap_or(0)
    }
}

#[derive(Clone)]
struct ScanAcc {
    hist: BTreeMap<usize, u128>,
    max: Option<(usize, u128)>,
    min: Option<(usize, u128)>,
}

impl ScanAcc {
    fn new() -> Self {
        ScanAcc {
            hist: BTreeMap::new(),
            max: None,
            min: None,
        }
    }

    fn push(mut self, value: usize, index: u128) -> Self {
        *self.hist.entry(value).or_insert(0) += 1;
        self.max = pick(self.max, Some((value, index)), |a, b| a > b);
        self.min = pick(self.min, Some((value, index)), |a, b| a < b);
        self
    }

    fn merge(mut self, other: ScanAcc) -> Self {
        for (v, c) in other.hist {
            *self.hist.entry(v).or_insert(0) += c;
        }
        self.max = pick(self.max, other.max, |a, b| a > b);
        self.min = pick(self.min, other.min, |a, b| a < b);
        self
    }
}

/// Extremal (value, index) pair; ties go to the lowest index.
fn pick(
    a: Option<(usize, u128)>,
    b: Option<(usize, u128)>,
    better: fn(usize, usize) -> bool,
) -> Option<(usize, u128)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            if better(y.0, x.0) || (y.0 == x.0 && y.1 < x.1) {
                Some(y)
            } else {
                Some(x)
            }
        }
    }
}

fn scan(count: u128, value: impl Fn(u128) -> usize + Sync) -> ScanAcc {
    (0..count)
        .into_par_iter()
        .fold(ScanAcc::new, |acc, i| acc.push(value(i), i))
        .reduce(ScanAcc::new, ScanAcc::merge)
}

/// Exhaustive `(h, r)`-design check: the maximum of `sum_i dim(U_i ∩ W)`
/// over all h-dimensional F_{q^m}-subspaces W, compared with r.
pub fn design_check(s: &System, h: usize, r: usize, guards: &Guards) -> Result<DesignCertificate> {
    if h == 0 || h > s.k {
        return Err(Error::InvalidParameter(format!(
            "h = {h} outside 1..={}",
            s.k
        )));
    }
    let t = &*s.tower;
    let en = SubspaceEnumerator::new(t, s.k, h);
    guards.check_hyperplanes(en.count())?;
    let acc = scan(en.count(), |i| {
        s.intersection_sum(&linalg::blow_up_fqm_span(t, s.k, &en.basis(i)))
    });
    let (max, arg) = acc.max.expect("at least one subspace");
    let witness = if h == 1 {
        Witness::Point(en.basis(arg).remove(0))
    } else {
        Witness::Basis(en.basis(arg))
    };
    Ok(DesignCertificate {
        h,
        r,
        k: s.k,
        m: s.m(),
        q: t.q(),
        dims: s.dims(),
        verdict: max <= r,
        method: "subspace-scan",
        max_sum: max,
        min_sum: acc.min.map(|(v, _)| v),
        witness,
        histogram: acc.hist,
        scanned: en.count(),
        construction: None,
    })
}

/// h-design test through hyperplanes alone: with all `n_i = mk/(h+1)`, the
/// system is an h-design iff every hyperplane sum lies in
/// `[t(n-m), t(n-m)+h]`.
pub fn is_h_design_via_hyperplanes(
    s: &System,
    h: usize,
    guards: &Guards,
) -> Result<DesignCertificate> {
    let (k, m) = (s.k, s.m());
    let dims = s.dims();
    if h == 0 || h >= k || (m * k) % (h + 1) != 0 || dims.iter().any(|&n| n != m * k / (h + 1)) {
        return Err(precondition(
            "equal-dims-mk-over-h-plus-1",
            format!("dims {dims:?} with m = {m}, k = {k}, h = {h}"),
        ));
    }
    let n = m * k / (h + 1);
    let lower = s.t() * (n - m);
    let upper = lower + h;
    let t = &*s.tower;
    let count = linalg::projective_count(t.order(), k);
    guards.check_hyperplanes(count)?;
    let acc = scan(count, |i| {
        let v = linalg::leading_one_vector(t, k, i);
        s.intersection_sum(&linalg::blow_up_fqm_span(
            t,
            k,
            &linalg::hyperplane_basis(t, &v),
        ))
    });
    let (max, max_i) = acc.max.expect("nonempty");
    let (min, min_i) = acc.min.expect("nonempty");
    let verdict = min >= lower && max <= upper;
    let arg = if max > upper || min >= lower {
        max_i
    } else {
        min_i
    };
    Ok(DesignCertificate {
        h,
        r: h,
        k,
        m,
        q: t.q(),
        dims,
        verdict,
        method: "hyperplane-scan",
        max_sum: max,
        min_sum: Some(min),
        witness: Witness::Normal(linalg::leading_one_vector(t, k, arg)),
        histogram: acc.hist,
        scanned: count,
        construction: None,
    })
}

/// The hyperplane counts `g_j` (hyperplanes with sum `t(n-m)+j`) predicted
/// for a maximum h-design: `W_{tm-j}(m, mk/(h+1), t) / (q^m - 1)`.
pub fn predicted_hyperplane_profile(
    q: u64,
    m: usize,
    k: usize,
    t: usize,
    h: usize,
) -> Result<Vec<u128>> {
    if h == 0 || h >= k || (m * k) % (h + 1) != 0 {
        return Err(precondition(
            "equal-dims-mk-over-h-plus-1",
            format!("m = {m}, k = {k}, h = {h}"),
        ));
    }
    let n = m * k / (h + 1);
    let d = t * m - h;
    let w = codes::msrd_weights(q, m as u64, n as u64, t as u64, d as u64);
    let qm1 = num_bigint::BigUint::from(q).pow(m as u32) - 1u32;
    (0..=h)
        .map(|j| {
            let c = &w[t * m - j];
            if (c % &qm1) != num_bigint::BigUint::from(0u32) {
                return Err(Error::Inconsistent(
                    "weight count not divisible by q^m - 1".into(),
                ));
            }
            u128::try_from(c / &qm1).map_err(|_| Error::Inconsistent("count overflow".into()))
        })
        .collect()
}

/// Both sides of the design/MSRD correspondence, computed independently.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    /// "n-ge-m" (equal blocks n >= m, h = mk/n - 1) or "m-ge-n" (h = k - 1).
    pub case: &'static str,
    pub h: usize,
    pub design: DesignCertificate,
    pub msrd: MsrdCertificate,
    pub agree: bool,
}

pub fn msrd_design_equivalence(s: &System, guards: &Guards) -> Result<EquivalenceReport> {
    let (k, m) = (s.k, s.m());
    let dims = s.dims();
    let n1 = dims[0];
    let (case, h) = if dims.iter().all(|&n| n == n1) && n1 >= m {
        if (m * k) % n1 != 0 || m * k / n1 < 2 || m * k / n1 > k {
            return Err(precondition(
                "n-divides-mk",
                format!("n = {n1} gives no h with n = mk/(h+1), 1 <= h <= k-1"),
            ));
        }
        ("n-ge-m", m * k / n1 - 1)
    } else if m >= n1 {
        ("m-ge-n", k - 1)
    } else {
        return Err(precondition(
            "shape",
            format!("dims {dims:?} are neither equal nor at most m = {m}"),
        ));
    };
    let design = design_check(s, h, h, guards)?;
    let msrd = codes::is_msrd(&code_from_system(s)?, guards)?;
    let agree = design.verdict == msrd.is_msrd();
    Ok(EquivalenceReport {
        case,
        h,
        design,
        msrd,
        agree,
    })
}

/// Upper bound `(q-1)(q^{mk/2}+1)/(q^m-1)` on t for a maximum 1-design
/// (as a rational compared by cross multiplication).
pub fn one_design_t_bound_holds(q: u64, m: usize, k: usize, t: usize) -> bool {
    let qq = q as u128;
    let lhs = t as u128 * (qq.pow(m as u32) - 1);
    let rhs = (qq - 1) * (qq.pow((m * k / 2) as u32) + 1);
    lhs <= rhs
}
