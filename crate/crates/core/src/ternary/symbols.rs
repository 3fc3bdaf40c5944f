use serde::{Deserialize, Serialize};

use super::FormTriple;
use crate::arith::{self, factorize, is_prime, mod_pow, valuation};
use crate::error::{Error, Result};

/// Legendre symbol `(a | p)` by Euler's criterion.
pub fn legendre_symbol(a: i128, p: i128) -> Result<i8> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    let r = a.rem_euclid(p);
    if r == 0 {
        return Ok(0);
    }
    Ok(if mod_pow(r, ((p - 1) / 2) as u128, p) == 1 { 1 } else { -1 })
}

/// Inputs of the H-function with the factorization of `n` precomputed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HParams {
    pub n: i128,
    pub triple: FormTriple,
    pub factorization: Vec<(i128, u32)>,
}

impl HParams {
    pub fn new(triple: FormTriple, n: i128) -> Result<Self> {
        if n < 1 {
            return Err(Error::invalid(format!("H is defined for positive n, got {n}")));
        }
        Ok(HParams { n, triple, factorization: factorize(n) })
    }

    /// Prime factors of `n` that do not divide `2abc`, with exponents.
    fn relevant(&self) -> Result<Vec<(i128, u32)>> {
        let t = &self.triple;
        let m = arith::mul(2, arith::mul(t.a, arith::mul(t.b, t.c)?)?)?;
        Ok(self.factorization.iter().copied().filter(|&(p, _)| m % p != 0).collect())
    }

    pub fn value(&self) -> Result<i128> {
        let t = &self.triple;
        let d = -(t.a * t.b * t.c);
        let mut h = 1i128;
        for (p, e) in self.relevant()? {
            let chi = legendre_symbol(d, p)? as i128;
            let top = arith::pow(p, e + 1)? - 1;
            let bottom = arith::pow(p, e)? - 1;
            let factor = (top - chi * bottom) / (p - 1);
            h = arith::mul(h, factor)?;
        }
        Ok(h)
    }

    /// `prod p^ord_p(n)` over the same primes; never exceeds [`Self::value`].
    pub fn lower_bound(&self) -> Result<i128> {
        self.relevant()?
            .into_iter()
            .try_fold(1i128, |acc, (p, e)| arith::mul(acc, arith::pow(p, e)?))
    }
}

pub fn h_value(triple: &FormTriple, n: i128) -> Result<i128> {
    HParams::new(*triple, n)?.value()
}

pub fn h_lower_bound(triple: &FormTriple, n: i128) -> Result<i128> {
    HParams::new(*triple, n)?.lower_bound()
}

const T111: FormTriple = FormTriple { a: 1, b: 1, c: 1 };
const T112: FormTriple = FormTriple { a: 1, b: 1, c: 2 };
const T115: FormTriple = FormTriple { a: 1, b: 1, c: 5 };

/// Points on the sphere `x^2+y^2+z^2 = n^2`.
pub fn hurwitz_sphere_count(n: i128) -> Result<i128> {
    arith::mul(6, h_value(&T111, n)?)
}

/// Solutions of `x^2+y^2+2z^2 = n^2`.
pub fn cooper_lam_count(n: i128) -> Result<i128> {
    let k = if n % 2 == 0 { 12 } else { 4 };
    arith::mul(k, h_value(&T112, n)?)
}

/// Solutions of `x^2+y^2+5z^2 = n^2`.
pub fn gpq_count(n: i128) -> Result<i128> {
    let h = h_value(&T115, n)?;
    let e = valuation(n, 5);
    let lead = arith::sub(arith::pow(5, e + 1)?, 3)?;
    arith::mul(arith::mul(2, lead)?, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ternary::rep_count;

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(1, 3).unwrap(), 1);
        assert_eq!(legendre_symbol(2, 5).unwrap(), -1);
        assert_eq!(legendre_symbol(5, 5).unwrap(), 0);
        assert_eq!(legendre_symbol(-1, 7).unwrap(), -1);
        assert!(matches!(legendre_symbol(3, 9), Err(Error::InvalidPrime(9))));
        assert!(matches!(legendre_symbol(3, 2), Err(Error::InvalidPrime(2))));
    }

    #[test]
    fn legendre_matches_square_table() {
        for p in [3i128, 5, 7, 11, 13, 29, 31] {
            let squares: Vec<i128> = (1..p).map(|x| x * x % p).collect();
            for a in 1..p {
                let expect = if squares.contains(&a) { 1 } else { -1 };
                assert_eq!(legendre_symbol(a, p).unwrap(), expect);
            }
        }
    }

    #[test]
    fn h_examples() {
        assert_eq!(h_value(&T111, 1).unwrap(), 1);
        assert_eq!(h_value(&T111, 3).unwrap(), 5);
        assert_eq!(h_value(&T112, 2).unwrap(), 1);
    }

    #[test]
    fn count_examples() {
        assert_eq!(hurwitz_sphere_count(1).unwrap(), 6);
        assert_eq!(hurwitz_sphere_count(3).unwrap(), 30);
        assert_eq!(hurwitz_sphere_count(5).unwrap(), 30);
        assert_eq!(cooper_lam_count(1).unwrap(), 4);
        assert_eq!(cooper_lam_count(2).unwrap(), 12);
        assert_eq!(gpq_count(1).unwrap(), 4);
        assert_eq!(gpq_count(5).unwrap(), 44 * h_value(&T115, 5).unwrap());
    }

    #[test]
    fn counts_match_brute_force() {
        for n in 1..=60 {
            let sq = n * n;
            assert_eq!(hurwitz_sphere_count(n).unwrap() as u128, rep_count(&T111, sq), "n={n}");
            assert_eq!(cooper_lam_count(n).unwrap() as u128, rep_count(&T112, sq), "n={n}");
            assert_eq!(gpq_count(n).unwrap() as u128, rep_count(&T115, sq), "n={n}");
        }
    }
}
