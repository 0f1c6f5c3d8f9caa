//! Finite field towers `F_p ⊂ F_q ⊂ F_{q^m}` with `q = p^e`.
//!
//! The top field is realised as `F_p[z]/(f)` with `deg f = e*m`. An element is
//! stored as its canonical integer: the coefficient vector of the residue
//! polynomial read as a little-endian base-p number. Canonical order is the
//! order of these integers. Fields of at most 2^20 elements use log tables.

mod arith;
mod base;
mod embed;

pub use arith::{factorize, gcd, is_prime};
pub use base::BaseField;
pub use embed::SubfieldEmbedding;

use crate::error::{Error, Result};
use arith::{fp_poly, invert_fp, mulmod};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

const MAX_ORDER: u64 = 1 << 48;
const TABLE_LIMIT: u64 = 1 << 20;
const MAX_DEGREE: usize = 48;

/// Minimal field interface shared by the base field and the tower top, so
/// that Gaussian elimination can be written once.
pub trait FiniteField: Send + Sync {
    type Elem: Copy + Eq + Ord + std::hash::Hash + fmt::Debug + Send + Sync;

    fn size(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: Self::Elem) -> Self::Elem;
    fn from_index(&self, i: u64) -> Self::Elem;
    fn to_index(&self, a: Self::Elem) -> u64;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }
}

/// An element of `F_{q^m}` in canonical integer form. It carries no reference
/// to its tower; operations go through [`FieldTower`].
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FieldElement(pub u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
enum Adder {
    Binary,
    /// Digit blocks of `cp = p^c` values combined through lookup tables.
    Chunked {
        cp: u64,
        add: Vec<u32>,
        neg: Vec<u32>,
    },
    Digits {
        p: u64,
    },
}

#[derive(Debug)]
struct LogTables {
    /// `log[x]` for nonzero x.
    log: Vec<u32>,
    /// `exp[i] = g^i` for `0 <= i < 2(Q-1)`.
    exp: Vec<u32>,
}

#[derive(Debug)]
pub struct FieldTower {
    p: u64,
    e: u32,
    m: u32,
    em: u32,
    q: u64,
    order: u64,
    seed: u64,
    base_modulus: Vec<u64>,
    top_modulus: Vec<u64>,
    pow_p: Vec<u64>,
    adder: Adder,
    tables: Option<LogTables>,
    /// Row-major matrix over F_p of `x -> x^q` acting on coefficient vectors.
    frob_q: Vec<Vec<u64>>,
    generator: FieldElement,
    theta: FieldElement,
    base: BaseField,
    base_embed: Vec<FieldElement>,
    base_index: HashMap<u64, u64>,
    fq_basis: Vec<FieldElement>,
    /// For e > 1: inverse of the F_p matrix whose columns are `theta^l z^j`.
    coord_inv: Option<Vec<Vec<u64>>>,
}

/// Builds the tower `F_{p^{e m}}` over `F_{p^e}`; `seed` selects which
/// irreducible (in canonical order) is used as the top modulus.
pub fn make_tower(p: u64, e: u32, m: u32, seed: u64) -> Result<Arc<FieldTower>> {
    FieldTower::with_seed(p, e, m, seed)
}

impl FieldTower {
    pub fn new(p: u64, e: u32, m: u32) -> Result<Arc<Self>> {
        Self::with_seed(p, e, m, 0)
    }

    pub fn with_seed(p: u64, e: u32, m: u32, seed: u64) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 || m == 0 {
            return Err(Error::InvalidParameter("e and m must be positive".into()));
        }
        let em = e.checked_mul(m).ok_or(Error::FieldTooLarge {
            p,
            degree: u32::MAX,
        })?;
        let order = p
            .checked_pow(em)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge { p, degree: em })?;
        let q = p.pow(e);
        if e > 1 && q > base::MAX_TABLED_Q {
            return Err(Error::InvalidParameter(format!(
                "non-prime base field limited to q <= {}",
                base::MAX_TABLED_Q
            )));
        }
        let base_modulus = fp_poly::nth_irreducible(p, e, 0);
        let top_modulus = fp_poly::nth_irreducible(p, em, seed);
        let pow_p: Vec<u64> = (0..=em).map(|i| p.pow(i)).collect();
        let mut t = FieldTower {
            p,
            e,
            m,
            em,
            q,
            order,
            seed,
            base_modulus,
            top_modulus,
            pow_p,
            adder: build_adder(p),
            tables: None,
            frob_q: Vec::new(),
            generator: FieldElement::ONE,
            theta: FieldElement::ZERO,
            base: BaseField::prime(p),
            base_embed: Vec::new(),
            base_index: HashMap::new(),
            fq_basis: Vec::new(),
            coord_inv: None,
        };
        t.generator = t.find_generator();
        if order <= TABLE_LIMIT {
            t.build_tables();
        }
        t.frob_q = t.build_frobenius_matrix();
        t.setup_base();
        t.fq_basis = (0..m).map(|j| FieldElement(t.pow_p[j as usize])).collect();
        if e > 1 {
            let n = em as usize;
            let mut cols = Vec::with_capacity(n);
            for j in 0..m as usize {
                for l in 0..e as usize {
                    let th = t.pow(t.theta, l as u128);
                    cols.push(t.digits(t.mul(th, t.fq_basis[j])));
                }
            }
            let mat: Vec<Vec<u64>> = (0..n)
                .map(|r| (0..n).map(|c| cols[c][r]).collect())
                .collect();
            t.coord_inv = Some(
                invert_fp(&mat, p)
                    .ok_or_else(|| Error::Inconsistent("F_q basis is singular".into()))?,
            );
        }
        Ok(Arc::new(t))
    }

    fn find_generator(&self) -> FieldElement {
        let n = self.order - 1;
        let primes: Vec<u64> = factorize(n).into_iter().map(|(r, _)| r).collect();
        (1..self.order)
            .map(FieldElement)
            .find(|&g| {
                primes
                    .iter()
                    .all(|&r| self.pow_slow(g, (n / r) as u128) != FieldElement::ONE)
            })
            .expect("multiplicative group is cyclic")
    }

    fn build_tables(&mut self) {
        let n = (self.order - 1) as usize;
        let mut log = vec![0u32; self.order as usize];
        let mut exp = vec![0u32; 2 * n];
        let mut x = FieldElement::ONE;
        for i in 0..n {
            exp[i] = x.0 as u32;
            exp[i + n] = x.0 as u32;
            log[x.0 as usize] = i as u32;
            x = self.mul_poly(x, self.generator);
        }
        self.tables = Some(LogTables { log, exp });
    }

    fn build_frobenius_matrix(&self) -> Vec<Vec<u64>> {
        let n = self.em as usize;
        let cols: Vec<Vec<u64>> = (0..n)
            .map(|i| self.digits(self.pow(FieldElement(self.pow_p[i]), self.q as u128)))
            .collect();
        (0..n)
            .map(|r| (0..n).map(|c| cols[c][r]).collect())
            .collect()
    }

    fn setup_base(&mut self) {
        if self.e == 1 {
            self.theta = FieldElement::ZERO;
            self.base_embed = (0..self.p).map(FieldElement).collect();
        } else {
            // roots of the base modulus live in the subfield of order p^e
            let sub = self.subfield_elements_fp(self.e);
            let theta = sub
                .into_iter()
                .filter(|&x| self.eval_fp_poly(&self.base_modulus, x).is_zero())
                .min()
                .expect("base modulus splits in the tower");
            self.theta = theta;
            let powers: Vec<FieldElement> =
                (0..self.e).map(|l| self.pow(theta, l as u128)).collect();
            self.base_embed = (0..self.q)
                .map(|mut c| {
                    let mut acc = FieldElement::ZERO;
                    for pw in &powers {
                        let d = c % self.p;
                        c /= self.p;
                        acc = self.add(acc, self.mul(FieldElement(d), *pw));
                    }
                    acc
                })
                .collect();
        }
        self.base_index = self
            .base_embed
            .iter()
            .enumerate()
            .map(|(i, x)| (x.0, i as u64))
            .collect();
        if self.e > 1 {
            let embed = self.base_embed.clone();
            let index = self.base_index.clone();
            let base = BaseField::tabled(self.p, self.e, |a, b| {
                index[&self.mul(embed[a as usize], embed[b as usize]).0]
            });
            self.base = base;
        }
    }

    fn eval_fp_poly(&self, f: &[u64], x: FieldElement) -> FieldElement {
        f.iter().rev().fold(FieldElement::ZERO, |acc, &c| {
            self.add(self.mul(acc, x), FieldElement(c))
        })
    }

    /// Elements of the subfield of order `p^d` (requires `d | e m`), sorted.
    fn subfield_elements_fp(&self, d: u32) -> Vec<FieldElement> {
        let size = self.p.pow(d);
        let h = self.pow(self.generator, ((self.order - 1) / (size - 1)) as u128);
        let mut out = vec![FieldElement::ZERO];
        let mut x = FieldElement::ONE;
        for _ in 0..size - 1 {
            out.push(x);
            x = self.mul(x, h);
        }
        out.sort_unstable();
        out
    }

    // ---- accessors ----

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Number of elements of the top field, `q^m`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Degree of the top field over F_p.
    pub fn degree(&self) -> u32 {
        self.em
    }

    pub fn base_modulus(&self) -> &[u64] {
        &self.base_modulus
    }

    pub fn top_modulus(&self) -> &[u64] {
        &self.top_modulus
    }

    /// The smallest primitive element in canonical order.
    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    /// The embedded root of the base modulus (zero when e = 1).
    pub fn theta(&self) -> FieldElement {
        self.theta
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    /// Whether two handles describe the same field with the same moduli.
    pub fn same_field(&self, other: &FieldTower) -> bool {
        self.p == other.p
            && self.e == other.e
            && self.m == other.m
            && self.top_modulus == other.top_modulus
    }

    pub fn element(&self, i: u64) -> Result<FieldElement> {
        if i < self.order {
            Ok(FieldElement(i))
        } else {
            Err(Error::InvalidParameter(format!(
                "{i} is not an element of a field of order {}",
                self.order
            )))
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    /// Coefficients over F_p, little-endian, length `e m`.
    pub fn digits(&self, x: FieldElement) -> Vec<u64> {
        let mut v = x.0;
        (0..self.em)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, d: &[u64]) -> FieldElement {
        FieldElement(d.iter().rev().fold(0u64, |acc, &c| acc * self.p + c))
    }

    // ---- arithmetic ----

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.adder {
            Adder::Binary => FieldElement(a.0 ^ b.0),
            Adder::Chunked { cp, add, .. } => {
                let (mut x, mut y, mut r, mut w) = (a.0, b.0, 0u64, 1u64);
                while x != 0 || y != 0 {
                    r += add[((x % cp) * cp + y % cp) as usize] as u64 * w;
                    x /= cp;
                    y /= cp;
                    w *= cp;
                }
                FieldElement(r)
            }
            Adder::Digits { p } => {
                let (mut x, mut y, mut r, mut w) = (a.0, b.0, 0u64, 1u64);
                while x != 0 || y != 0 {
                    r += ((x % p + y % p) % p) * w;
                    x /= p;
                    y /= p;
                    w *= p;
                }
                FieldElement(r)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match &self.adder {
            Adder::Binary => a,
            Adder::Chunked { cp, neg, .. } => {
                let (mut x, mut r, mut w) = (a.0, 0u64, 1u64);
                while x != 0 {
                    r += neg[(x % cp) as usize] as u64 * w;
                    x /= cp;
                    w *= cp;
                }
                FieldElement(r)
            }
            Adder::Digits { p } => {
                let (mut x, mut r, mut w) = (a.0, 0u64, 1u64);
                while x != 0 {
                    r += ((p - x % p) % p) * w;
                    x /= p;
                    w *= p;
                }
                FieldElement(r)
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.tables {
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    FieldElement::ZERO
                } else {
                    let i = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                    FieldElement(t.exp[i] as u64)
                }
            }
            None => self.mul_poly(a, b),
        }
    }

    fn mul_poly(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let p = self.p;
        let n = self.em as usize;
        let mut da = [0u64; MAX_DEGREE];
        let mut db = [0u64; MAX_DEGREE];
        let (mut x, mut y) = (a.0, b.0);
        for i in 0..n {
            da[i] = x % p;
            db[i] = y % p;
            x /= p;
            y /= p;
        }
        let mut prod = [0u128; 2 * MAX_DEGREE];
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            for j in 0..n {
                prod[i + j] += (da[i] as u128) * (db[j] as u128);
            }
        }
        let p128 = p as u128;
        let f = &self.top_modulus;
        for i in (n..2 * n - 1).rev() {
            let c = prod[i] % p128;
            if c == 0 {
                continue;
            }
            for j in 0..n {
                prod[i - n + j] += c * ((p - f[j]) % p) as u128;
            }
        }
        let mut r = 0u64;
        for i in (0..n).rev() {
            r = r * p + (prod[i] % p128) as u64;
        }
        FieldElement(r)
    }

    /// Panics on zero.
    pub fn inv(&self, a: FieldElement) -> FieldElement {
        assert!(!a.is_zero(), "inverse of zero");
        match &self.tables {
            Some(t) => {
                let n = (self.order - 1) as usize;
                let l = t.log[a.0 as usize] as usize;
                FieldElement(t.exp[(n - l) % n] as u64)
            }
            None => self.pow(a, (self.order - 2) as u128),
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: FieldElement, n: u128) -> FieldElement {
        match &self.tables {
            Some(t) => {
                if a.is_zero() {
                    return if n == 0 {
                        FieldElement::ONE
                    } else {
                        FieldElement::ZERO
                    };
                }
                let ord = (self.order - 1) as u128;
                let l = (t.log[a.0 as usize] as u128 * (n % ord)) % ord;
                FieldElement(t.exp[l as usize] as u64)
            }
            None => self.pow_slow(a, n),
        }
    }

    fn pow_slow(&self, mut a: FieldElement, mut n: u128) -> FieldElement {
        let mut r = FieldElement::ONE;
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul_poly(r, a);
            }
            a = self.mul_poly(a, a);
            n >>= 1;
        }
        r
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> u64 {
        assert!(!a.is_zero());
        let mut ord = self.order - 1;
        for (r, k) in factorize(self.order - 1) {
            for _ in 0..k {
                if self.pow(a, (ord / r) as u128) == FieldElement::ONE {
                    ord /= r;
                } else {
                    break;
                }
            }
        }
        ord
    }

    pub fn is_primitive(&self, a: FieldElement) -> bool {
        !a.is_zero() && self.multiplicative_order(a) == self.order - 1
    }

    // ---- Frobenius, norms and traces ----

    /// `sigma^s(x) = x^{q^s}`; `s` is taken modulo m.
    pub fn frobenius(&self, x: FieldElement, s: u32) -> FieldElement {
        let s = s % self.m;
        if s == 0 || x.is_zero() {
            return x;
        }
        match &self.tables {
            Some(t) => {
                let ord = (self.order - 1) as u128;
                let qs = (self.q as u128).pow(s) % ord;
                let l = (t.log[x.0 as usize] as u128 * qs) % ord;
                FieldElement(t.exp[l as usize] as u64)
            }
            None => {
                let mut d = self.digits(x);
                for _ in 0..s {
                    d = self
                        .frob_q
                        .iter()
                        .map(|row| {
                            row.iter()
                                .zip(&d)
                                .fold(0u64, |acc, (&a, &b)| (acc + mulmod(a, b, self.p)) % self.p)
                        })
                        .collect();
                }
                self.from_digits(&d)
            }
        }
    }

    /// `x^{q^s}` for arbitrary `s` (wraps modulo m).
    pub fn frobenius_power(&self, x: FieldElement, s: u64) -> FieldElement {
        self.frobenius(x, (s % self.m as u64) as u32)
    }

    /// Relative norm `N_{q^m/q^r}(x) = x^{(q^m-1)/(q^r-1)}`; requires `r | m`.
    pub fn rel_norm(&self, x: FieldElement, r: u32) -> Result<FieldElement> {
        self.check_divisor(r)?;
        let num = self.order as u128 - 1;
        let den = (self.q as u128).pow(r) - 1;
        Ok(self.pow(x, num / den))
    }

    /// `N_{q^m/q}(x)`.
    pub fn norm(&self, x: FieldElement) -> FieldElement {
        self.rel_norm(x, 1).expect("1 divides m")
    }

    /// `Tr_{q^m/q}(x) = sum_{i<m} x^{q^i}`.
    pub fn rel_trace(&self, x: FieldElement) -> FieldElement {
        (0..self.m).fold(FieldElement::ZERO, |acc, i| {
            self.add(acc, self.frobenius(x, i))
        })
    }

    /// `Tr_{q^m/q^r}(x) = sum_{i < m/r} x^{q^{r i}}`; requires `r | m`.
    pub fn rel_trace_to(&self, x: FieldElement, r: u32) -> Result<FieldElement> {
        self.check_divisor(r)?;
        Ok((0..self.m / r).fold(FieldElement::ZERO, |acc, i| {
            self.add(acc, self.frobenius(x, r * i))
        }))
    }

    /// `N_i(mu) = prod_{j<i} sigma^j(mu)`, with `N_0(mu) = 1`.
    pub fn partial_norm(&self, mu: FieldElement, i: u32) -> FieldElement {
        (0..i).fold(FieldElement::ONE, |acc, j| {
            self.mul(acc, self.frobenius_power(mu, j as u64))
        })
    }

    /// Membership in the subfield `F_{q^r}`; requires `r | m`.
    pub fn subfield_member(&self, x: FieldElement, r: u32) -> Result<bool> {
        self.check_divisor(r)?;
        Ok(self.frobenius(x, r) == x)
    }

    fn check_divisor(&self, r: u32) -> Result<()> {
        if r == 0 || self.m % r != 0 {
            Err(Error::InvalidParameter(format!(
                "{r} does not divide m = {}",
                self.m
            )))
        } else {
            Ok(())
        }
    }

    /// Elements of `F_{q^r}` inside the top field, in canonical order.
    pub fn subfield_elements(&self, r: u32) -> Result<Vec<FieldElement>> {
        self.check_divisor(r)?;
        Ok(self.subfield_elements_fp(self.e * r))
    }

    // ---- the base field and coordinates over it ----

    /// The image in the top field of a base field element index.
    pub fn embed_base(&self, c: u64) -> FieldElement {
        self.base_embed[c as usize]
    }

    /// The base field index of `x`, if `x` lies in F_q.
    pub fn base_index(&self, x: FieldElement) -> Option<u64> {
        self.base_index.get(&x.0).copied()
    }

    /// The F_q-basis `{1, z, ..., z^{m-1}}` used to blow vectors up.
    pub fn fq_basis(&self) -> &[FieldElement] {
        &self.fq_basis
    }

    /// Coordinates of `x` over [`Self::fq_basis`] as base field indices.
    pub fn fq_coords(&self, x: FieldElement) -> Vec<u64> {
        let m = self.m as usize;
        match &self.coord_inv {
            None => {
                let mut v = x.0;
                (0..m)
                    .map(|_| {
                        let d = v % self.p;
                        v /= self.p;
                        d
                    })
                    .collect()
            }
            Some(inv) => {
                let d = self.digits(x);
                let c: Vec<u64> = inv
                    .iter()
                    .map(|row| {
                        row.iter()
                            .zip(&d)
                            .fold(0u64, |acc, (&a, &b)| (acc + mulmod(a, b, self.p)) % self.p)
                    })
                    .collect();
                let e = self.e as usize;
                (0..m)
                    .map(|j| {
                        (0..e)
                            .rev()
                            .fold(0u64, |acc, l| acc * self.p + c[j * e + l])
                    })
                    .collect()
            }
        }
    }

    /// Inverse of [`Self::fq_coords`].
    pub fn from_fq_coords(&self, c: &[u64]) -> FieldElement {
        c.iter()
            .zip(&self.fq_basis)
            .fold(FieldElement::ZERO, |acc, (&ci, &b)| {
                self.add(acc, self.mul(self.embed_base(ci), b))
            })
    }

    /// The base field element `x` scaled: `c * x` with `c` a base field index.
    pub fn scale_base(&self, c: u64, x: FieldElement) -> FieldElement {
        self.mul(self.embed_base(c), x)
    }

    pub fn evaluate_poly(&self, coeffs: &[FieldElement], x: FieldElement) -> FieldElement {
        coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

fn build_adder(p: u64) -> Adder {
    if p == 2 {
        return Adder::Binary;
    }
    if p > 512 {
        return Adder::Digits { p };
    }
    let mut c = 1;
    while p.pow(c + 1) <= 512 {
        c += 1;
    }
    let cp = p.pow(c);
    let digit_op = |mut a: u64, mut b: u64, neg: bool| {
        let (mut r, mut w) = (0, 1);
        for _ in 0..c {
            let d = if neg {
                (p - a % p) % p
            } else {
                (a % p + b % p) % p
            };
            r += d * w;
            a /= p;
            b /= p;
            w *= p;
        }
        r as u32
    };
    let mut add = vec![0u32; (cp * cp) as usize];
    for a in 0..cp {
        for b in 0..cp {
            add[(a * cp + b) as usize] = digit_op(a, b, false);
        }
    }
    let neg = (0..cp).map(|a| digit_op(a, 0, true)).collect();
    Adder::Chunked { cp, add, neg }
}

impl FiniteField for FieldTower {
    type Elem = FieldElement;

    fn size(&self) -> u64 {
        self.order
    }

    fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldTower::add(self, a, b)
    }

    fn neg(&self, a: FieldElement) -> FieldElement {
        FieldTower::neg(self, a)
    }

    fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldTower::mul(self, a, b)
    }

    fn inv(&self, a: FieldElement) -> FieldElement {
        FieldTower::inv(self, a)
    }

    fn from_index(&self, i: u64) -> FieldElement {
        FieldElement(i)
    }

    fn to_index(&self, a: FieldElement) -> u64 {
        a.0
    }
}

/// Serializable description of a tower, sufficient to rebuild it and to
/// detect a mismatch of moduli.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerSpec {
    pub p: u64,
    pub e: u32,
    pub m: u32,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub base_modulus: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub top_modulus: Vec<u64>,
}

impl TowerSpec {
    pub fn of(t: &FieldTower) -> Self {
        TowerSpec {
            p: t.p(),
            e: t.e(),
            m: t.m(),
            seed: t.seed(),
            base_modulus: t.base_modulus().to_vec(),
            top_modulus: t.top_modulus().to_vec(),
        }
    }

    /// Rebuilds the tower; moduli, when present, must match the rebuilt ones.
    pub fn build(&self) -> Result<Arc<FieldTower>> {
        let t = make_tower(self.p, self.e, self.m, self.seed)?;
        let ok = (self.base_modulus.is_empty() || self.base_modulus == t.base_modulus())
            && (self.top_modulus.is_empty() || self.top_modulus == t.top_modulus());
        if !ok {
            return Err(Error::TowerMismatch);
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests;
