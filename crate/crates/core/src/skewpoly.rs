//! Skew polynomials `F_{q^m}[x; sigma]` with `x a = sigma(a) x`, and their
//! linear operator evaluation `f(beta)_mu = sum f_i sigma^i(beta) N_i(mu)`.

use crate::error::{Error, Result};
use crate::fields::{FieldElement, FieldTower};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct SkewPoly {
    tower: Arc<FieldTower>,
    /// Little-endian coefficients without trailing zeros.
    coeffs: Vec<FieldElement>,
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl SkewPoly {
    pub fn new(tower: &Arc<FieldTower>, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly {
            tower: tower.clone(),
            coeffs,
        }
    }

    pub fn zero(tower: &Arc<FieldTower>) -> Self {
        Self::new(tower, Vec::new())
    }

    /// The monomial `c x^i`.
    pub fn monomial(tower: &Arc<FieldTower>, c: FieldElement, i: usize) -> Self {
        let mut v = vec![FieldElement::ZERO; i + 1];
        v[i] = c;
        Self::new(tower, v)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &SkewPoly) -> SkewPoly {
        let t = &self.tower;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or_default();
                let b = other.coeffs.get(i).copied().unwrap_or_default();
                t.add(a, b)
            })
            .collect();
        SkewPoly::new(t, c)
    }

    /// `self * other` using `x^i b = sigma^i(b) x^i`.
    pub fn mul(&self, other: &SkewPoly) -> SkewPoly {
        let t = &self.tower;
        if self.is_zero() || other.is_zero() {
            return SkewPoly::zero(t);
        }
        let mut c = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let term = t.mul(a, t.frobenius_power(b, i as u64));
                c[i + j] = t.add(c[i + j], term);
            }
        }
        SkewPoly::new(t, c)
    }

    /// `f(beta)_mu`.
    pub fn op_eval(&self, beta: FieldElement, mu: FieldElement) -> FieldElement {
        let t = &self.tower;
        let mut acc = FieldElement::ZERO;
        let mut norm = FieldElement::ONE;
        for (i, &fi) in self.coeffs.iter().enumerate() {
            if i > 0 {
                // N_i(mu) = N_{i-1}(mu) sigma^{i-1}(mu)
                norm = t.mul(norm, t.frobenius_power(mu, (i - 1) as u64));
            }
            if !fi.is_zero() {
                let term = t.mul(fi, t.mul(t.frobenius_power(beta, i as u64), norm));
                acc = t.add(acc, term);
            }
        }
        acc
    }

    /// Concatenation over blocks `i` of `(f(beta_j)_{mu_i})_j`.
    pub fn multipoint_ev(&self, mus: &[FieldElement], betas: &[FieldElement]) -> Vec<FieldElement> {
        mus.iter()
            .flat_map(|&mu| betas.iter().map(move |&b| self.op_eval(b, mu)))
            .collect()
    }
}

/// Checks that `betas` are linearly independent over F_q.
pub fn check_independent(t: &FieldTower, betas: &[FieldElement]) -> Result<()> {
    if crate::linalg::fq_rank(t, betas) != betas.len() {
        return Err(Error::Precondition {
            name: "betas-independent",
            detail: format!("{betas:?} are not linearly independent over F_q"),
        });
    }
    Ok(())
}
