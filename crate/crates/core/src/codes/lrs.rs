//! Linearized Reed-Solomon codes and their twisted variant.

use super::{BlockShape, SumRankCode};
use crate::error::{precondition, Error, Result};
use crate::fields::{FieldElement, FieldTower};
use crate::skewpoly::{check_independent, SkewPoly};
use std::collections::BTreeSet;
use std::sync::Arc;

/// The first `count` elements (canonical order) with pairwise distinct norms
/// `N_{q^m/q}`; each new norm value is represented by its smallest preimage.
pub fn canonical_mus(t: &FieldTower, count: usize) -> Result<Vec<FieldElement>> {
    if count as u64 > t.q() - 1 {
        return Err(precondition(
            "t-le-q-minus-1",
            format!(
                "{count} blocks need {count} distinct norms but F_q^* has {}",
                t.q() - 1
            ),
        ));
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    for x in t.elements().skip(1) {
        if out.len() == count {
            break;
        }
        if seen.insert(t.norm(x)) {
            out.push(x);
        }
    }
    Ok(out)
}

/// The first n elements of the F_q-basis `{1, z, .., z^{m-1}}`.
pub fn canonical_betas(t: &FieldTower, n: usize) -> Result<Vec<FieldElement>> {
    if n == 0 || n > t.m() as usize {
        return Err(precondition(
            "n-le-m",
            format!("n = {n} must lie in 1..={}", t.m()),
        ));
    }
    Ok(t.fq_basis()[..n].to_vec())
}

/// The subgroup of F_q^* generated by the norms of `mus`, sorted.
pub fn norm_subgroup(t: &FieldTower, mus: &[FieldElement]) -> Vec<FieldElement> {
    let mut group = BTreeSet::from([FieldElement::ONE]);
    let gens: Vec<FieldElement> = mus.iter().map(|&mu| t.norm(mu)).collect();
    loop {
        let next: BTreeSet<FieldElement> = group
            .iter()
            .flat_map(|&a| gens.iter().map(move |&g| t.mul(a, g)))
            .chain(group.iter().copied())
            .collect();
        if next.len() == group.len() {
            return group.into_iter().collect();
        }
        group = next;
    }
}

fn validate(t: &FieldTower, k: usize, mus: &[FieldElement], betas: &[FieldElement]) -> Result<()> {
    let n = betas.len();
    if mus.is_empty() || n == 0 {
        return Err(Error::InvalidParameter(
            "need at least one mu and one beta".into(),
        ));
    }
    if n > t.m() as usize {
        return Err(precondition(
            "n-le-m",
            format!("n = {n} exceeds m = {}", t.m()),
        ));
    }
    if mus.len() as u64 > t.q() - 1 {
        return Err(precondition(
            "t-le-q-minus-1",
            format!("t = {} exceeds q - 1 = {}", mus.len(), t.q() - 1),
        ));
    }
    if k == 0 || k > mus.len() * n {
        return Err(precondition(
            "k-range",
            format!("k = {k} outside 1..={}", mus.len() * n),
        ));
    }
    check_independent(t, betas)?;
    let mut norms = BTreeSet::new();
    for &mu in mus {
        if mu.is_zero() || !norms.insert(t.norm(mu)) {
            return Err(precondition(
                "distinct-norms",
                format!("the norms of {mus:?} are not pairwise distinct and nonzero"),
            ));
        }
    }
    Ok(())
}

/// Generator rows `ev(x^j)` for `j < k`, evaluated blockwise at the mus.
pub fn lrs_code(
    t: &Arc<FieldTower>,
    k: usize,
    mus: &[FieldElement],
    betas: &[FieldElement],
) -> Result<SumRankCode> {
    validate(t, k, mus, betas)?;
    let rows = (0..k)
        .map(|j| SkewPoly::monomial(t, FieldElement::ONE, j).multipoint_ev(mus, betas))
        .collect();
    SumRankCode::from_rows(t, BlockShape::uniform(mus.len(), betas.len())?, rows)
}

/// The twisted code spanned by `ev(1 + eta x^k)` and `ev(x^j)`, `1 <= j < k`.
/// Requires `N(eta) (-1)^{km}` outside the subgroup generated by the norms of
/// the mus; `eta = 0` gives the untwisted code.
pub fn tlrs_code(
    t: &Arc<FieldTower>,
    k: usize,
    mus: &[FieldElement],
    betas: &[FieldElement],
    eta: FieldElement,
) -> Result<SumRankCode> {
    validate(t, k, mus, betas)?;
    let group = norm_subgroup(t, mus);
    let sign = if (k * t.m() as usize) % 2 == 1 {
        t.neg(FieldElement::ONE)
    } else {
        FieldElement::ONE
    };
    let value = t.mul(t.norm(eta), sign);
    if group.contains(&value) {
        return Err(precondition(
            "twist-outside-norm-subgroup",
            format!("N(eta)(-1)^(km) = {value} lies in the norm subgroup {group:?}"),
        ));
    }
    let mut first = vec![FieldElement::ONE];
    first.resize(k + 1, FieldElement::ZERO);
    first[k] = t.add(first[k], eta);
    let mut rows = vec![SkewPoly::new(t, first).multipoint_ev(mus, betas)];
    for j in 1..k {
        rows.push(SkewPoly::monomial(t, FieldElement::ONE, j).multipoint_ev(mus, betas));
    }
    SumRankCode::from_rows(t, BlockShape::uniform(mus.len(), betas.len())?, rows)
}
