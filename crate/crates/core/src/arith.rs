//! Checked 128-bit helpers shared by every module.

use crate::error::{Error, Result};

#[inline]
pub fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

#[inline]
pub fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

#[inline]
pub fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub fn pow(base: i128, exp: u32) -> Result<i128> {
    base.checked_pow(exp).ok_or(Error::Overflow)
}

/// Floor of `a / d` for `d > 0`.
#[inline]
pub fn floor_div(a: i128, d: i128) -> i128 {
    debug_assert!(d > 0);
    a.div_euclid(d)
}

/// Ceiling of `a / d` for `d > 0`.
#[inline]
pub fn ceil_div(a: i128, d: i128) -> i128 {
    debug_assert!(d > 0);
    -((-a).div_euclid(d))
}

/// Integer square root; zero for negative input.
#[inline]
pub fn isqrt(n: i128) -> i128 {
    if n <= 0 {
        0
    } else {
        n.isqrt()
    }
}

/// Exact square root when `n` is a perfect square.
#[inline]
pub fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// Largest `r >= 0` with `r^k <= n`, for `n >= 0`.
pub fn iroot(n: i128, k: u32) -> i128 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).powf(1.0 / k as f64) as i128;
    while r > 0 && r.checked_pow(k).is_none_or(|p| p > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).is_some_and(|p| p <= n) {
        r += 1;
    }
    r
}

pub fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: i128) -> Vec<(i128, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: i128) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut p = 3;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 2;
    }
    true
}

pub fn is_power_of_two(n: i128) -> bool {
    n > 0 && n & (n - 1) == 0
}

/// `ord_p(n)` for `n != 0`.
pub fn valuation(mut n: i128, p: i128) -> u32 {
    let mut e = 0;
    if n == 0 {
        return 0;
    }
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// `base^exp mod m` for `0 < m < 2^63`.
pub fn mod_pow(base: i128, mut exp: u128, m: i128) -> i128 {
    let m = m as u128;
    let mut b = base.rem_euclid(m as i128) as u128;
    let mut acc: u128 = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as i128
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_and_ceil_on_negatives() {
        assert_eq!(floor_div(-3, 2), -2);
        assert_eq!(ceil_div(-3, 2), -1);
        assert_eq!(ceil_div(3, 2), 2);
        assert_eq!(floor_div(7, 7), 1);
    }

    #[test]
    fn roots() {
        assert_eq!(iroot(26, 3), 2);
        assert_eq!(iroot(27, 3), 3);
        assert_eq!(iroot(15, 4), 1);
        assert_eq!(iroot(16, 4), 2);
        assert_eq!(exact_sqrt(49), Some(7));
        assert_eq!(exact_sqrt(50), None);
    }

    #[test]
    fn factorization_multiplies_back() {
        for n in 1..2000i128 {
            let f = factorize(n);
            let back: i128 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
    }
}

/// Serde adapter for `i128` fields inside internally tagged enums, whose
/// buffered deserializer has no 128-bit support. Values travel as `i64`.
pub(crate) mod as_i64 {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &i128, s: S) -> Result<S::Ok, S::Error> {
        i64::try_from(*v).map_err(|_| serde::ser::Error::custom(format!("{v} exceeds 64 bits")))?.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<i128, D::Error> {
        i64::deserialize(d).map(i128::from)
    }
}
