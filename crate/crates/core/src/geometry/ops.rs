//! Operations on systems: duals, direct sums, block splitting and the
//! systems of (twisted) linearized Reed-Solomon codes.

use super::{code_from_system, system_from_code, System};
use crate::codes::{self, dual_code};
use crate::error::{precondition, Error, Result};
use crate::fields::{FieldElement, FieldTower};
use crate::linalg::{self, FqSpace, FqSubspace};
use std::sync::Arc;

/// The F_q-bilinear form `<u, v> = Tr_{q^m/q}(lambda sum_i u_i v_i)` on
/// `F_{q^m}^k`; nondegenerate for every nonzero lambda.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceForm {
    pub lambda: FieldElement,
}

impl Default for TraceForm {
    fn default() -> Self {
        TraceForm {
            lambda: FieldElement::ONE,
        }
    }
}

/// `U^⊥'` under `form`, of F_q-dimension `mk - dim U`.
pub fn dual_subspace(u: &FqSubspace, form: TraceForm) -> Result<FqSubspace> {
    let t = u.tower();
    if form.lambda.is_zero() || form.lambda.0 >= t.order() {
        return Err(Error::InvalidParameter(format!(
            "lambda = {} is not a unit",
            form.lambda
        )));
    }
    let k = u.ambient();
    let m = t.m() as usize;
    let basis = t.fq_basis();
    let trace = |x: FieldElement| t.base_index(t.rel_trace(x)).expect("trace lies in F_q");
    let rows: Vec<Vec<u64>> = u
        .basis()
        .iter()
        .map(|v| {
            let mut row = vec![0u64; k * m];
            for i in 0..k {
                for b in 0..m {
                    // coefficient of the coordinate v_{i,b} in Tr(lambda u.v)
                    row[i * m + b] = trace(t.mul(form.lambda, t.mul(v[i], basis[b])));
                }
            }
            row
        })
        .collect();
    let ker = if rows.is_empty() {
        (0..k * m)
            .map(|i| {
                let mut e = vec![0u64; k * m];
                e[i] = 1;
                e
            })
            .collect()
    } else {
        linalg::kernel(t.base(), &rows, k * m)
    };
    let space = FqSpace::span(t.base(), k * m, &ker);
    Ok(FqSubspace::from_blown(t, k, &space))
}

/// Largest F_{q^m}-subspace inside an F_q-subspace X: the intersection of
/// `b^{-1} X` over the F_q-basis b.
fn fqm_core(x: &FqSubspace) -> FqSubspace {
    let t = x.tower();
    t.fq_basis()
        .iter()
        .fold(x.clone(), |acc, &b| acc.intersection(&x.scaled(t.inv(b))))
}

/// The system `(U_1^⊥', ..., U_t^⊥')`. Requires that `∩ U_i` contains no
/// one-dimensional F_{q^m}-subspace, so the duals still span.
pub fn geometric_dual(s: &System, form: TraceForm) -> Result<System> {
    let mut common = s.spaces()[0].clone();
    for u in &s.spaces()[1..] {
        common = common.intersection(u);
    }
    let core = fqm_core(&common);
    if core.dim() > 0 {
        return Err(precondition(
            "no-fqm-line-in-intersection",
            format!(
                "the common intersection contains an F_q^m-subspace of F_q-dimension {}",
                core.dim()
            ),
        ));
    }
    let spaces = s
        .spaces()
        .iter()
        .map(|u| dual_subspace(u, form))
        .collect::<Result<Vec<_>>>()?;
    System::new(s.tower(), s.k(), spaces)
}

/// The system of the dual of the associated code. Needs minimum distance at
/// least 2, which makes the dual code nondegenerate.
pub fn delsarte_dual(s: &System) -> Result<System> {
    let c = code_from_system(s)?;
    let d = dual_code(&c)?;
    if d.k() == 0 {
        return Err(precondition(
            "delsarte-dual-needs-d-ge-2",
            "the dual code is zero",
        ));
    }
    system_from_code(&d).map_err(|e| match e {
        Error::Precondition {
            name: "nondegenerate",
            detail,
        } => precondition(
            "delsarte-dual-needs-d-ge-2",
            format!("the dual code is degenerate ({detail}), so d = 1"),
        ),
        other => other,
    })
}

/// A glued system with its claimed design parameters.
#[derive(Debug, Clone)]
pub struct Glued {
    pub system: System,
    pub h: usize,
    pub r: usize,
}

/// Direct sum of `(h, r_j)`-designs `S_j` in `V_j`: `U_i = ⊕_j U_{j,i}` in
/// `⊕_j V_j`, claimed an `(h, sum r_j - (l-1)h)`-design.
pub fn direct_sum_glue(parts: &[(System, usize)], h: usize) -> Result<Glued> {
    let Some((first, _)) = parts.first() else {
        return Err(Error::InvalidParameter("nothing to glue".into()));
    };
    let tower = first.tower().clone();
    let t = first.t();
    for (s, _) in parts {
        if !s.tower().same_field(&tower) {
            return Err(Error::TowerMismatch);
        }
        if s.t() != t {
            return Err(precondition(
                "equal-t",
                format!("parts with t = {t} and t = {}", s.t()),
            ));
        }
    }
    let k: usize = parts.iter().map(|(s, _)| s.k()).sum();
    let mut spaces = Vec::with_capacity(t);
    for i in 0..t {
        let mut vecs = Vec::new();
        let mut offset = 0;
        for (s, _) in parts {
            for v in s.spaces()[i].basis() {
                let mut w = vec![FieldElement::ZERO; k];
                w[offset..offset + s.k()].copy_from_slice(v);
                vecs.push(w);
            }
            offset += s.k();
        }
        spaces.push(FqSubspace::from_basis(&tower, k, &vecs)?);
    }
    let total: usize = parts.iter().map(|p| p.1).sum();
    let r = (total + h)
        .checked_sub(parts.len() * h)
        .ok_or_else(|| Error::InvalidParameter(format!("sum of r_j = {total} is below (l-1)h")))?;
    Ok(Glued {
        system: System::new(&tower, k, spaces)?,
        h,
        r,
    })
}

/// Replaces each `U_i` by the summands of a direct-sum decomposition
/// `U_i = S_{1,i} ⊕ ... ⊕ S_{j_i,i}`.
pub fn split_blocks(s: &System, parts: &[Vec<FqSubspace>]) -> Result<System> {
    if parts.len() != s.t() {
        return Err(Error::DimensionMismatch(format!(
            "{} decompositions for {} blocks",
            parts.len(),
            s.t()
        )));
    }
    let f = s.tower().base();
    let mut spaces = Vec::new();
    for (i, (u, summands)) in s.spaces().iter().zip(parts).enumerate() {
        let mut acc = FqSpace::zero(u.blown().ambient_len());
        let mut total = 0;
        for w in summands {
            if !w.tower().same_field(s.tower()) || w.ambient() != s.k() {
                return Err(Error::TowerMismatch);
            }
            if w.dim() == 0 {
                return Err(precondition(
                    "direct-sum",
                    format!("zero summand in block {i}"),
                ));
            }
            if w.blown().rows().iter().any(|r| !u.blown().contains(f, r)) {
                return Err(precondition(
                    "direct-sum",
                    format!("a summand leaves U_{i}"),
                ));
            }
            for r in w.blown().rows() {
                acc.insert(f, r);
            }
            total += w.dim();
            spaces.push(w.clone());
        }
        if total != acc.dim() {
            return Err(precondition(
                "direct-sum",
                format!("the summands of U_{i} overlap"),
            ));
        }
        if acc.dim() != u.dim() {
            return Err(precondition(
                "direct-sum",
                format!(
                    "the summands span {} of the {} dimensions of U_{i}",
                    acc.dim(),
                    u.dim()
                ),
            ));
        }
    }
    System::new(s.tower(), s.k(), spaces)
}

/// `U_i = {(x + eta N_k(mu_i) σ^k(x), σ(x) N_1(mu_i), ..., σ^{k-1}(x) N_{k-1}(mu_i)) : x ∈ <betas>_{F_q}}`,
/// the system of the twisted code (`eta = 0` gives the plain one).
pub fn lrs_system(
    tower: &Arc<FieldTower>,
    k: usize,
    mus: &[FieldElement],
    betas: &[FieldElement],
    eta: FieldElement,
) -> Result<System> {
    // validates k, the norms of the mus, the betas and the twist
    codes::tlrs_code(tower, k, mus, betas, eta)?;
    let t: &FieldTower = tower;
    let spaces = mus
        .iter()
        .enumerate()
        .map(|(i, &mu)| {
            let vecs: Vec<Vec<FieldElement>> = betas
                .iter()
                .map(|&x| {
                    let mut v: Vec<FieldElement> = (0..k)
                        .map(|j| {
                            t.mul(t.frobenius_power(x, j as u64), t.partial_norm(mu, j as u32))
                        })
                        .collect();
                    let twist = t.mul(
                        eta,
                        t.mul(t.partial_norm(mu, k as u32), t.frobenius_power(x, k as u64)),
                    );
                    v[0] = t.add(v[0], twist);
                    v
                })
                .collect();
            let u = FqSubspace::span(tower, k, &vecs)?;
            if u.dim() != betas.len() {
                return Err(precondition(
                    "nondegenerate",
                    format!("block {i} has F_q-rank {} < {}", u.dim(), betas.len()),
                ));
            }
            Ok(u)
        })
        .collect::<Result<Vec<_>>>()?;
    System::new(tower, k, spaces)
}
