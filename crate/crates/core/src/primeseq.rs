//! Sieve-backed checks on prime, twin-prime and totient sequences.

use crate::arith::{self, factorize, isqrt};
use crate::atoms::{polygonal_value, Witness};
use crate::error::{Error, Result};

/// Primality of every integer in `[0, limit]`.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    limit: i128,
    is_prime: Vec<bool>,
    primes: Vec<i128>,
}

/// Largest table the sieve will allocate.
const MAX_SIEVE: i128 = 1 << 34;

/// Sieve of Eratosthenes up to `limit`.
pub fn sieve(limit: i128) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::invalid(format!("sieve limit {limit} is below 2")));
    }
    if limit > MAX_SIEVE {
        return Err(Error::Overflow);
    }
    let n = limit as usize;
    let mut is_prime = vec![true; n + 1];
    is_prime[0] = false;
    is_prime[1] = false;
    let mut i = 2;
    while i * i <= n {
        if is_prime[i] {
            for j in (i * i..=n).step_by(i) {
                is_prime[j] = false;
            }
        }
        i += 1;
    }
    let primes = (0..=n).filter(|&k| is_prime[k]).map(|k| k as i128).collect();
    Ok(PrimeTable { limit, is_prime, primes })
}

impl PrimeTable {
    pub fn limit(&self) -> i128 {
        self.limit
    }

    pub fn primes(&self) -> &[i128] {
        &self.primes
    }

    /// `false` outside the table.
    pub fn is_prime(&self, n: i128) -> bool {
        (0..=self.limit).contains(&n) && self.is_prime[n as usize]
    }

    /// Number of primes `<= n`.
    pub fn pi(&self, n: i128) -> usize {
        self.primes.partition_point(|&p| p <= n)
    }

    fn require(&self, needed: i128) -> Result<()> {
        if self.limit < needed {
            return Err(Error::TableTooSmall { needed, limit: self.limit });
        }
        Ok(())
    }

    /// Smallest prime in `[lo, hi]`.
    fn prime_in(&self, lo: i128, hi: i128) -> Option<i128> {
        let i = self.primes.partition_point(|&p| p < lo);
        self.primes.get(i).copied().filter(|&p| p <= hi)
    }
}

/// Primes `p, q` with `floor(p/a) + floor(q/b) = n`, taking `floor(p/a)`
/// as small as possible and then the smallest primes.
pub fn goldbach_floor_check(a: i128, b: i128, n: i128, table: &PrimeTable) -> Result<Option<(i128, i128)>> {
    if a < 1 || b < 1 || a + b <= 2 || n <= 2 {
        return Err(Error::invalid(format!("need a + b > 2 and n > 2, got a={a}, b={b}, n={n}")));
    }
    table.require(arith::mul(a.max(b), n + 1)?)?;
    for i in 0..=n {
        let Some(p) = table.prime_in(a * i, a * i + a - 1) else { continue };
        let j = n - i;
        if let Some(q) = table.prime_in(b * j, b * j + b - 1) {
            return Ok(Some((p, q)));
        }
    }
    Ok(None)
}

fn twin_requirement(n: i128, table: &PrimeTable) -> Result<()> {
    table.require(arith::add(arith::mul(9, n)?, 10)?)
}

/// `{floor(x/9) <= n : x - 1 and x + 1 both prime}`.
pub fn twin_floor_set(n: i128, table: &PrimeTable) -> Result<Vec<i128>> {
    twin_requirement(n, table)?;
    let mut out: Vec<i128> = (2..=9 * n + 8)
        .filter(|&x| table.is_prime(x - 1) && table.is_prime(x + 1))
        .map(|x| x / 9)
        .collect();
    out.dedup();
    Ok(out)
}

/// `{floor(x/3) <= n : 3x - 1 and 3x + 1 both prime}`.
pub fn twin_floor_set_thirds(n: i128, table: &PrimeTable) -> Result<Vec<i128>> {
    twin_requirement(n, table)?;
    let mut out: Vec<i128> = (1..=3 * n + 2)
        .filter(|&x| table.is_prime(3 * x - 1) && table.is_prime(3 * x + 1))
        .map(|x| x / 3)
        .collect();
    out.dedup();
    Ok(out)
}

/// `n = s + t` with `s < t` in `set`, one of them even; `s` is taken as
/// large as possible.
pub fn twin_sum_check(n: i128, set: &[i128]) -> Option<(i128, i128)> {
    if n < 1 {
        return None;
    }
    let has = |v: i128| set.binary_search(&v).is_ok();
    (0..=(n - 1) / 2)
        .rev()
        .map(|s| (s, n - s))
        .find(|&(s, t)| has(s) && has(t) && (s % 2 == 0 || t % 2 == 0))
}

/// `n = s + p5(x)` with `s` in `set` and `p5(x) > 0`; returns `(s, x)`.
pub fn twin_pentagonal_check(n: i128, set: &[i128]) -> Result<Option<(i128, i128)>> {
    let bound = isqrt(n.max(0)) + 2;
    let mut best: Option<(i128, i128)> = None;
    for x in -bound..=bound {
        let p = polygonal_value(5, x)?;
        if p > 0 && p <= n && set.binary_search(&(n - p)).is_ok() && best.is_none_or(|(s, _)| n - p > s) {
            best = Some((n - p, x));
        }
    }
    Ok(best)
}

/// `phi(z^2) = z phi(z)`.
pub fn phi_square(z: i128) -> Result<i128> {
    if z < 1 {
        return Err(Error::invalid(format!("phi_square needs z >= 1, got {z}")));
    }
    let phi = factorize(z).into_iter().try_fold(1i128, |acc, (p, e)| {
        arith::mul(acc, arith::mul(p - 1, arith::pow(p, e - 1)?)?)
    })?;
    arith::mul(z, phi)
}

/// `phi(z^2)` for `z` in `[1, limit]` by a totient sieve; index 0 unused.
pub fn phi_square_table(limit: usize) -> Vec<i128> {
    let mut phi: Vec<i128> = (0..=limit as i128).collect();
    for p in 2..=limit {
        if phi[p] == p as i128 {
            for m in (p..=limit).step_by(p) {
                phi[m] -= phi[m] / p as i128;
            }
        }
    }
    phi.iter().enumerate().map(|(z, &f)| z as i128 * f).collect()
}

fn conj512_search(n: i128, table: &PrimeTable, phi_sq: impl Fn(i128) -> Result<i128>) -> Result<Option<Witness>> {
    // phi(z) >= sqrt(z/2), so phi(z^2) > n once z^3 > 2n^2
    let zmax = arith::iroot(arith::mul(2, arith::mul(n, n)?)?, 3) + 1;
    for z in 1..=zmax {
        let f = phi_sq(z)?;
        if f > n {
            continue;
        }
        let rem = n - f;
        let z_prime = table.is_prime(z);
        for x in (0..=isqrt(rem)).rev() {
            let Some(y) = arith::exact_sqrt(rem - x * x) else { continue };
            if y > x {
                break;
            }
            if z_prime || table.is_prime(x) {
                return Ok(Some(Witness::xyz(x, y, z)));
            }
        }
    }
    Ok(None)
}

/// `n = x^2 + y^2 + phi(z^2)` with `x >= y >= 0`, `z >= 1` and `x` or `z`
/// prime. Scans `z` upward, then `x` downward.
pub fn conj512_check(n: i128, table: &PrimeTable) -> Result<Option<Witness>> {
    if n <= 1 {
        return Err(Error::invalid(format!("n must exceed 1, got {n}")));
    }
    table.require(n)?;
    conj512_search(n, table, phi_square)
}

/// [`conj512_check`] for every `n` in `[2, max]`; returns the failures.
pub fn conj512_scan(max: i128, table: &PrimeTable) -> Result<Vec<i128>> {
    table.require(max)?;
    let zmax = arith::iroot(arith::mul(2, arith::mul(max, max)?)?, 3) + 1;
    let phi = phi_square_table(zmax.max(2) as usize);
    let mut fails = Vec::new();
    for n in 2..=max {
        if conj512_search(n, table, |z| Ok(phi[z as usize]))?.is_none() {
            fails.push(n);
        }
    }
    Ok(fails)
}

/// `n = p + floor(k(k+1)/4)` with `p` prime and `k >= 1`; smallest `k` wins.
pub fn prime_plus_quarter_pronic(n: i128, table: &PrimeTable) -> Result<Option<(i128, i128)>> {
    if n <= 1 {
        return Err(Error::invalid(format!("n must exceed 1, got {n}")));
    }
    table.require(n)?;
    let mut k = 1i128;
    loop {
        let q = k * (k + 1) / 4;
        if q > n - 2 {
            return Ok(None);
        }
        if table.is_prime(n - q) {
            return Ok(Some((n - q, k)));
        }
        k += 1;
    }
}

/// All `n <= max` that are not `p + T_x` with `p` prime or zero.
pub fn prime_plus_triangular_scan(max: i128, table: &PrimeTable) -> Result<Vec<i128>> {
    table.require(max)?;
    let tri: Vec<i128> = (0..).map(|x: i128| x * (x + 1) / 2).take_while(|&t| t <= max).collect();
    Ok((0..=max)
        .filter(|&n| !tri.iter().take_while(|&&t| t <= n).any(|&t| n == t || table.is_prime(n - t)))
        .collect())
}
