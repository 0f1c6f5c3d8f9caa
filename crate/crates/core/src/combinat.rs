//! Exact counting helpers: Gaussian binomials and compositions.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `[n choose k]_q`, the number of k-dimensional subspaces of F_q^n.
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

/// Same as [`gaussian_binomial`] but saturating in u128, for guards.
pub fn gaussian_binomial_u128(n: u64, k: u64, q: u64) -> u128 {
    let v = gaussian_binomial(n, k, q);
    u128::try_from(&v).unwrap_or(u128::MAX)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// All compositions `(u_1, .., u_t)` of `total` with `0 <= u_i <= cap`.
pub fn bounded_compositions(total: u64, parts: usize, cap: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts);
    fn rec(rest: u64, parts: usize, cap: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == parts {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let left = (parts - cur.len() - 1) as u64;
        for u in 0..=cap.min(rest) {
            if rest - u <= left * cap {
                cur.push(u);
                rec(rest - u, parts, cap, cur, out);
                cur.pop();
            }
        }
    }
    rec(total, parts, cap, &mut cur, &mut out);
    out
}

/// `q^e` as a u128, saturating.
pub fn pow_u128(q: u64, e: u64) -> u128 {
    (q as u128).checked_pow(e as u32).unwrap_or(u128::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(4, 2, 2), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(3, 1, 16), BigUint::from(273u32));
        assert_eq!(gaussian_binomial(4, 3, 9), BigUint::from(820u32));
        assert_eq!(gaussian_binomial(5, 0, 3), BigUint::one());
        assert_eq!(gaussian_binomial(2, 3, 3), BigUint::zero());
        // [n k]_q counts subspaces: brute force lines of F_2^3
        assert_eq!(gaussian_binomial(3, 1, 2), BigUint::from(7u32));
    }

    #[test]
    fn compositions() {
        let c = bounded_compositions(3, 2, 2);
        assert_eq!(c, vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(bounded_compositions(0, 3, 1), vec![vec![0, 0, 0]]);
        assert_eq!(binomial(6, 2), BigUint::from(15u32));
    }
}
