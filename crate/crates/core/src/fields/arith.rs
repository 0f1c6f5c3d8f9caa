//! Integer and F_p polynomial helpers used to find moduli and generators.

/// `a * b mod p` without overflow for `p < 2^63`.
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut n: u128, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while n > 0 {
        if n & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        n >>= 1;
    }
    r
}

pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, (p - 2) as u128, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation by trial division, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Polynomials over F_p, little-endian coefficient vectors without trailing zeros.
pub(crate) mod fp_poly {
    use super::{invmod, mulmod};

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(v)
    }

    pub fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let df = f.len() - 1;
        let lead_inv = invmod(f[df], p);
        while r.len() > df {
            let top = r.len() - 1;
            let c = mulmod(r[top], lead_inv, p);
            let shift = top - df;
            for (j, &fj) in f.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - mulmod(c, fj, p)) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mulmod_poly(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mulmod(x, y, p)) % p;
            }
        }
        rem(&prod, f, p)
    }

    pub fn powmod_poly(base: &[u64], mut n: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut r = vec![1u64];
        let mut b = rem(base, f, p);
        while n > 0 {
            if n & 1 == 1 {
                r = mulmod_poly(&r, &b, f, p);
            }
            b = mulmod_poly(&b, &b, f, p);
            n >>= 1;
        }
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin's test for a monic polynomial of degree `d >= 1`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let d = f.len() - 1;
        if d == 1 {
            return true;
        }
        let x = vec![0, 1];
        // h[i] = x^(p^i) mod f
        let mut h = vec![rem(&x, f, p)];
        for i in 1..=d {
            let next = powmod_poly(&h[i - 1], p, f, p);
            h.push(next);
        }
        if h[d] != rem(&x, f, p) {
            return false;
        }
        for (r, _) in super::factorize(d as u64) {
            let g = gcd(&sub(&h[d / r as usize], &x, p), f, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    /// The `index`-th monic irreducible polynomial of degree `d`, ordering
    /// candidates by the base-p integer of their lower coefficients.
    pub fn nth_irreducible(p: u64, d: u32, index: u64) -> Vec<u64> {
        let mut seen = 0;
        let mut c: u64 = 0;
        loop {
            let mut f = Vec::with_capacity(d as usize + 1);
            let mut x = c;
            for _ in 0..d {
                f.push(x % p);
                x /= p;
            }
            f.push(1);
            if is_irreducible(&f, p) {
                if seen == index {
                    return f;
                }
                seen += 1;
            }
            c += 1;
        }
    }
}

/// Inverse of a square matrix over F_p (row-major), or None if singular.
pub(crate) fn invert_fp(mat: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = mat.len();
    let mut a: Vec<Vec<u64>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let inv = invmod(a[col][col], p);
        for x in a[col].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let c = a[r][col];
                for j in 0..2 * n {
                    let t = mulmod(c, a[col][j], p);
                    a[r][j] = (a[r][j] + p - t) % p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
