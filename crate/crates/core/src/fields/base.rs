//! Arithmetic in the base field F_q, with elements indexed `0..q`.
//!
//! Index `c = sum c_l p^l` stands for `sum c_l theta^l`, where `theta` is the
//! embedded root of the base modulus inside the tower.

use super::arith::{invmod, mulmod};
use super::FiniteField;

/// Largest q with e > 1 for which full operation tables are built.
pub(crate) const MAX_TABLED_Q: u64 = 1024;

#[derive(Debug, Clone)]
pub struct BaseField {
    p: u64,
    e: u32,
    q: u64,
    tables: Option<Tables>,
}

#[derive(Debug, Clone)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl BaseField {
    pub(crate) fn prime(p: u64) -> Self {
        BaseField {
            p,
            e: 1,
            q: p,
            tables: None,
        }
    }

    /// Builds tables for `q = p^e` from a multiplication oracle on indices.
    pub(crate) fn tabled(p: u64, e: u32, mul: impl Fn(u64, u64) -> u64) -> Self {
        let q = p.pow(e);
        let qs = q as usize;
        let digit_add = |mut a: u64, mut b: u64| {
            let (mut r, mut w) = (0, 1);
            for _ in 0..e {
                r += ((a % p + b % p) % p) * w;
                a /= p;
                b /= p;
                w *= p;
            }
            r
        };
        let digit_neg = |mut a: u64| {
            let (mut r, mut w) = (0, 1);
            for _ in 0..e {
                r += ((p - a % p) % p) * w;
                a /= p;
                w *= p;
            }
            r
        };
        let mut add = vec![0u32; qs * qs];
        let mut mtab = vec![0u32; qs * qs];
        for a in 0..q {
            for b in 0..q {
                add[(a * q + b) as usize] = digit_add(a, b) as u32;
                mtab[(a * q + b) as usize] = mul(a, b) as u32;
            }
        }
        let neg = (0..q).map(|a| digit_neg(a) as u32).collect();
        let mut inv = vec![0u32; qs];
        for a in 1..q {
            for b in 1..q {
                if mtab[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b as u32;
                    break;
                }
            }
        }
        BaseField {
            p,
            e,
            q,
            tables: Some(Tables {
                add,
                mul: mtab,
                neg,
                inv,
            }),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

impl FiniteField for BaseField {
    type Elem = u64;

    fn size(&self) -> u64 {
        self.q
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        match &self.tables {
            None => {
                let s = a + b;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            }
            Some(t) => t.add[(a * self.q + b) as usize] as u64,
        }
    }

    #[inline]
    fn neg(&self, a: u64) -> u64 {
        match &self.tables {
            None => {
                if a == 0 {
                    0
                } else {
                    self.p - a
                }
            }
            Some(t) => t.neg[a as usize] as u64,
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.tables {
            None => mulmod(a, b, self.p),
            Some(t) => t.mul[(a * self.q + b) as usize] as u64,
        }
    }

    fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        match &self.tables {
            None => invmod(a, self.p),
            Some(t) => t.inv[a as usize] as u64,
        }
    }

    fn from_index(&self, i: u64) -> u64 {
        debug_assert!(i < self.q);
        i
    }

    fn to_index(&self, a: u64) -> u64 {
        a
    }
}
