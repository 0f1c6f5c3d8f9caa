//! Closed-form weight distribution of MSRD codes with equal block lengths.
//!
//! With `n' = min(m, n)` and `m' = max(m, n)`, the count of weight r is
//! `sum_u prod_i [n' u_i]_q * sum_{l=d}^{r} (q^{m'(l-d+1)} - 1) f_l(u)` over
//! compositions u of r into t parts bounded by n', where
//! `f_l(u) = sum_{v <= u, |v| = l} prod_i (-1)^{u_i-v_i} q^{C(u_i-v_i, 2)} [u_i v_i]_q`.

use super::{is_msrd, BlockShape, Provenance, SumRankCode, WeightDistribution};
use crate::combinat::{bounded_compositions, gaussian_binomial};
use crate::error::{precondition, Result};
use crate::guards::Guards;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// Weight counts `W_0..=W_{t n'}` of an MSRD code with minimum distance d.
pub fn msrd_weights(q: u64, n_prime: u64, m_prime: u64, t: u64, d: u64) -> Vec<BigUint> {
    let np = n_prime as usize;
    let qb = BigInt::from(q);
    let gb = |a: usize, b: usize| BigInt::from(gaussian_binomial(a as u64, b as u64, q));
    // coefficient v of P_u(z) = sum_v (-1)^{u-v} q^{C(u-v,2)} [u v]_q z^v
    let local: Vec<Vec<BigInt>> = (0..=np)
        .map(|u| {
            (0..=u)
                .map(|v| {
                    let s = u - v;
                    let mag = qb.pow((s * s.saturating_sub(1) / 2) as u32) * gb(u, v);
                    if s % 2 == 1 {
                        -mag
                    } else {
                        mag
                    }
                })
                .collect()
        })
        .collect();
    let top = t as usize * np;
    let mut counts = vec![BigUint::zero(); top + 1];
    counts[0] = BigUint::one();
    for r in (d as usize).max(1)..=top {
        let mut w = BigInt::zero();
        for u in bounded_compositions(r as u64, t as usize, n_prime) {
            let lattice: BigInt = u.iter().map(|&ui| gb(np, ui as usize)).product();
            // product of the P_{u_i}
            let mut poly = vec![BigInt::one()];
            for &ui in &u {
                let p = &local[ui as usize];
                let mut next = vec![BigInt::zero(); poly.len() + p.len() - 1];
                for (a, x) in poly.iter().enumerate() {
                    for (b, y) in p.iter().enumerate() {
                        next[a + b] += x * y;
                    }
                }
                poly = next;
            }
            let mut inner = BigInt::zero();
            for l in d as usize..=r {
                let factor = qb.pow((m_prime as usize * (l + 1 - d as usize)) as u32) - 1;
                inner += factor * &poly[l];
            }
            w += lattice * inner;
        }
        counts[r] = w.to_biguint().expect("weight counts are nonnegative");
    }
    counts
}

/// Applies [`msrd_weights`] to a code after confirming that it is MSRD.
pub fn msrd_weight_formula(c: &SumRankCode, guards: &Guards) -> Result<WeightDistribution> {
    let shape: &BlockShape = c.shape();
    let n = shape.equal_length().ok_or_else(|| {
        precondition(
            "equal-block-lengths",
            format!("block lengths {:?} are not all equal", shape.lengths()),
        )
    })?;
    let cert = is_msrd(c, guards)?;
    if !cert.is_msrd() {
        return Err(precondition(
            "msrd",
            format!("d = {} is below the bound {}", cert.d, cert.bound),
        ));
    }
    let m = c.m();
    Ok(WeightDistribution {
        counts: msrd_weights(
            c.tower().q(),
            n.min(m) as u64,
            n.max(m) as u64,
            shape.t() as u64,
            cert.d as u64,
        ),
        provenance: Provenance::Formula,
    })
}
