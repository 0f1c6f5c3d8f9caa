//! Embedding of a smaller tower into a larger one over the same prime, and
//! coordinates of the larger field over the image of the smaller.

use super::arith::{invert_fp, mulmod};
use super::{FieldElement, FieldTower};
use crate::error::{Error, Result};
use std::sync::Arc;

/// Identifies `small` with the subfield of `large` of the same order by sending
/// the generator `z` of `small` to the smallest root of its modulus in `large`.
/// The large field is then a vector space over the image with basis
/// `{1, z_L, ..., z_L^{k-1}}`, where `z_L` is the generator of `large`.
#[derive(Debug, Clone)]
pub struct SubfieldEmbedding {
    small: Arc<FieldTower>,
    large: Arc<FieldTower>,
    k: usize,
    /// Images of `z^i` for `i < deg small`.
    z_powers: Vec<FieldElement>,
    /// Inverse of the F_p matrix with columns `phi(z)^i z_L^j`.
    coord_inv: Vec<Vec<u64>>,
}

impl SubfieldEmbedding {
    pub fn new(small: Arc<FieldTower>, large: Arc<FieldTower>) -> Result<Self> {
        let ds = small.degree();
        let dl = large.degree();
        if small.p() != large.p() || dl % ds != 0 {
            return Err(Error::InvalidParameter(format!(
                "F_{}^{} is not a subfield of F_{}^{}",
                small.p(),
                ds,
                large.p(),
                dl
            )));
        }
        let k = (dl / ds) as usize;
        let modulus: Vec<FieldElement> = small
            .top_modulus()
            .iter()
            .map(|&c| FieldElement(c))
            .collect();
        // all roots lie in the subfield of order p^ds; find one, then take its conjugates
        let size = small.order();
        let h = large.pow(
            large.generator(),
            ((large.order() - 1) / (size - 1)) as u128,
        );
        let mut x = FieldElement::ONE;
        let mut root = None;
        for _ in 0..size - 1 {
            if large.evaluate_poly(&modulus, x).is_zero() {
                root = Some(x);
                break;
            }
            x = large.mul(x, h);
        }
        let r =
            root.ok_or_else(|| Error::Inconsistent("modulus has no root in the extension".into()))?;
        let mut best = r;
        let mut c = r;
        for _ in 1..ds {
            c = large.pow(c, large.p() as u128);
            best = best.min(c);
        }
        let z_powers: Vec<FieldElement> = (0..ds).map(|i| large.pow(best, i as u128)).collect();
        let n = dl as usize;
        let mut cols = Vec::with_capacity(n);
        for j in 0..k {
            let zl = large.pow(FieldElement(large.p()), j as u128);
            for &zp in &z_powers {
                cols.push(large.digits(large.mul(zp, zl)));
            }
        }
        let mat: Vec<Vec<u64>> = (0..n)
            .map(|r| (0..n).map(|c| cols[c][r]).collect())
            .collect();
        let coord_inv = invert_fp(&mat, large.p())
            .ok_or_else(|| Error::Inconsistent("subfield basis is singular".into()))?;
        Ok(SubfieldEmbedding {
            small,
            large,
            k,
            z_powers,
            coord_inv,
        })
    }

    pub fn small(&self) -> &Arc<FieldTower> {
        &self.small
    }

    pub fn large(&self) -> &Arc<FieldTower> {
        &self.large
    }

    /// Dimension of the large field over the small one.
    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn embed(&self, y: FieldElement) -> FieldElement {
        let d = self.small.digits(y);
        d.iter()
            .zip(&self.z_powers)
            .fold(FieldElement::ZERO, |acc, (&c, &zp)| {
                self.large.add(acc, self.large.mul(FieldElement(c), zp))
            })
    }

    /// Coordinates of `x` over `{1, z_L, ..., z_L^{k-1}}` with coefficients in the small field.
    pub fn coords(&self, x: FieldElement) -> Vec<FieldElement> {
        let p = self.large.p();
        let d = self.large.digits(x);
        let c: Vec<u64> = self
            .coord_inv
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&d)
                    .fold(0u64, |acc, (&a, &b)| (acc + mulmod(a, b, p)) % p)
            })
            .collect();
        let ds = self.z_powers.len();
        (0..self.k)
            .map(|j| self.small.from_digits(&c[j * ds..(j + 1) * ds]))
            .collect()
    }

    /// Inverse of [`Self::coords`].
    pub fn combine(&self, coords: &[FieldElement]) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for (j, &c) in coords.iter().enumerate() {
            let zl = self.large.pow(FieldElement(self.large.p()), j as u128);
            acc = self.large.add(acc, self.large.mul(self.embed(c), zl));
        }
        acc
    }
}
