//! Constructive versions of the sphere and rewriting lemmas. Each returns an
//! explicit certificate, or an error saying which hypothesis failed.

use serde::{Deserialize, Serialize};

use super::{rep_exists_constrained, CongruenceConstraint, FormTriple, VarDomain};
use crate::arith::{exact_sqrt, is_power_of_two, isqrt};
use crate::atoms::{Var, Witness};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SphereKind {
    /// `x^2+y^2+z^2 = n^2`, all coordinates below `n` in absolute value.
    ThreeSquares,
    /// `x^2+y^2+2z^2 = n^2` with `|x|, |y| < n`.
    OneOneTwo,
    /// `x^2+y^2+5z^2 = n^2` with `|x|, |y| < n`.
    OneOneFive,
}

impl SphereKind {
    fn z_coefficient(self) -> i128 {
        match self {
            SphereKind::ThreeSquares => 1,
            SphereKind::OneOneTwo => 2,
            SphereKind::OneOneFive => 5,
        }
    }
}

/// A point on the given sphere of radius `n` avoiding the trivial axis
/// points. Among all such points (taken with non-negative coordinates) the
/// one with the smallest `max(x, y, z)` is returned, ties broken
/// lexicographically.
pub fn sphere_point_proper(kind: SphereKind, n: i128) -> Result<Witness> {
    let violated = match kind {
        SphereKind::OneOneTwo => n <= 1,
        _ => n < 1 || is_power_of_two(n),
    };
    if violated {
        return Err(Error::HypothesisViolated(format!("{kind:?} needs a different radius than {n}")));
    }
    let c = kind.z_coefficient();
    let target = n * n;
    let mut best: Option<(i128, i128, i128, i128)> = None;
    for x in 0..n {
        for y in 0..n {
            let rem = target - x * x - y * y;
            if rem < 0 {
                break;
            }
            if rem % c != 0 {
                continue;
            }
            let Some(z) = exact_sqrt(rem / c) else { continue };
            if kind == SphereKind::ThreeSquares && z >= n {
                continue;
            }
            let key = (x.max(y).max(z), x, y, z);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    }
    best.map(|(_, x, y, z)| Witness::xyz(x, y, z))
        .ok_or_else(|| Error::SearchExhausted(format!("{kind:?} radius {n}")))
}

/// Rewrites `u^2 + v^2` (a positive multiple of 5) as `x^2 + y^2` with
/// `5 ∤ xy`. Inputs that already qualify come back unchanged.
pub fn rewrite_two_squares_avoiding_5(u: i128, v: i128) -> Result<(i128, i128)> {
    let s = u
        .checked_mul(u)
        .and_then(|a| v.checked_mul(v).and_then(|b| a.checked_add(b)))
        .ok_or(Error::Overflow)?;
    if s == 0 || s % 5 != 0 {
        return Err(Error::HypothesisViolated(format!("{u}^2+{v}^2 is not a positive multiple of 5")));
    }
    if (u * v) % 5 != 0 {
        return Ok((u, v));
    }
    for x in 0..=isqrt(s) {
        if let Some(y) = exact_sqrt(s - x * x) {
            if (x * y) % 5 != 0 {
                return Ok((x, y));
            }
        }
    }
    Err(Error::SearchExhausted(format!("no rewrite of {s} avoiding 5")))
}

/// Some `(u, v)` with `a u^2 + b v^2 = N` and `d ∤ uv`, scanning `u` upward.
pub fn rewrite_binary_avoiding_divisor(a: i128, b: i128, n: i128, d: i128) -> Result<(i128, i128)> {
    if a < 1 || b < 1 || n < 1 || d < 2 {
        return Err(Error::invalid(format!("bad rewrite parameters ({a}, {b}, {n}, {d})")));
    }
    let mut representable = false;
    for u in 0..=isqrt(n / a) {
        let r = n - a * u * u;
        if r % b != 0 {
            continue;
        }
        if let Some(v) = exact_sqrt(r / b) {
            representable = true;
            if (u * v) % d != 0 {
                return Ok((u, v));
            }
        }
    }
    if representable {
        Err(Error::NoAdmissibleRewrite { a, b, n, d })
    } else {
        Err(Error::HypothesisViolated(format!("{n} is not {a}u^2+{b}v^2")))
    }
}

const T551: FormTriple = FormTriple { a: 5, b: 5, c: 1 };

/// `n ≡ ±6 (mod 20)` as `5x^2+5y^2+z^2` with `z` odd.
pub fn five_five_one_odd_z(n: i128) -> Result<Witness> {
    if n < 0 || !matches!(n % 20, 6 | 14) {
        return Err(Error::HypothesisViolated(format!("{n} is not ±6 mod 20")));
    }
    rep_exists_constrained(&T551, n, &[CongruenceConstraint::odd(Var('z'))], [VarDomain::Integers; 3])
        .ok_or_else(|| Error::SearchExhausted(format!("5x^2+5y^2+z^2 = {n}, z odd")))
}

/// `n > 1` with `n ≡ 1, 9 (mod 20)` as `5x^2+5y^2+z^2` with `x ≢ y (mod 2)`,
/// or with `n ≡ 11, 19 (mod 40)` and `y` odd.
pub fn five_five_one_split_parity(n: i128) -> Result<Witness> {
    let mixed = n > 1 && matches!(n % 20, 1 | 9);
    let odd_y = n > 1 && matches!(n % 40, 11 | 19);
    if !mixed && !odd_y {
        return Err(Error::HypothesisViolated(format!("{n} is outside both residue classes")));
    }
    for x in 0..=isqrt(n / 5) {
        for y in 0..=isqrt((n - 5 * x * x) / 5) {
            let ok = if mixed { (x + y) % 2 == 1 } else { y % 2 == 1 };
            if !ok {
                continue;
            }
            if let Some(z) = exact_sqrt(n - 5 * x * x - 5 * y * y) {
                return Ok(Witness::xyz(x, y, z));
            }
        }
    }
    Err(Error::SearchExhausted(format!("5x^2+5y^2+z^2 = {n} with the parity condition")))
}
