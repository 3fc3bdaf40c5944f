//! Diagonal ternary quadratic forms `ax^2 + by^2 + cz^2`.

mod dickson;
mod lemmas;
mod symbols;

pub use dickson::{
    dickson_exceptional, dickson_exceptional_for, DicksonFormId, ExceptionFamily, ExceptionalSet,
};
pub use lemmas::{
    five_five_one_odd_z, five_five_one_split_parity, rewrite_binary_avoiding_divisor,
    rewrite_two_squares_avoiding_5, sphere_point_proper, SphereKind,
};
pub use symbols::{
    cooper_lam_count, gpq_count, h_lower_bound, h_value, hurwitz_sphere_count, legendre_symbol,
    HParams,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, exact_sqrt, isqrt};
use crate::atoms::{Var, Witness};
use crate::bitarray::BitArray;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FormTriple {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

impl FormTriple {
    pub fn new(a: i128, b: i128, c: i128) -> Result<Self> {
        if a < 1 || b < 1 || c < 1 {
            return Err(Error::invalid(format!("form coefficients must be positive, got ({a},{b},{c})")));
        }
        Ok(FormTriple { a, b, c })
    }

    pub fn sorted(&self) -> FormTriple {
        let mut v = [self.a, self.b, self.c];
        v.sort_unstable();
        FormTriple { a: v[0], b: v[1], c: v[2] }
    }

    pub fn eval(&self, x: i128, y: i128, z: i128) -> Result<i128> {
        let t = |k: i128, v: i128| arith::mul(k, arith::mul(v, v)?);
        arith::add(arith::add(t(self.a, x)?, t(self.b, y)?)?, t(self.c, z)?)
    }

    fn coefficients(&self) -> [i128; 3] {
        [self.a, self.b, self.c]
    }
}

impl fmt::Display for FormTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// `var` must lie in one of `residues` modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CongruenceConstraint {
    pub var: Var,
    modulus: i128,
    residues: Vec<i128>,
}

impl CongruenceConstraint {
    pub fn new(var: Var, modulus: i128, residues: &[i128]) -> Result<Self> {
        if modulus < 1 {
            return Err(Error::invalid(format!("modulus {modulus} must be positive")));
        }
        let mut residues: Vec<i128> = residues.iter().map(|r| r.rem_euclid(modulus)).collect();
        residues.sort_unstable();
        residues.dedup();
        if residues.is_empty() {
            return Err(Error::invalid("congruence constraint with no residues"));
        }
        Ok(CongruenceConstraint { var, modulus, residues })
    }

    pub fn odd(var: Var) -> Self {
        CongruenceConstraint { var, modulus: 2, residues: vec![1] }
    }

    pub fn even(var: Var) -> Self {
        CongruenceConstraint { var, modulus: 2, residues: vec![0] }
    }

    pub fn modulus(&self) -> i128 {
        self.modulus
    }

    pub fn residues(&self) -> &[i128] {
        &self.residues
    }

    pub fn admits(&self, value: i128) -> bool {
        self.residues.binary_search(&value.rem_euclid(self.modulus)).is_ok()
    }
}

impl fmt::Display for CongruenceConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rs: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
        write!(f, "{} = {} (mod {})", self.var, rs.join(","), self.modulus)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarDomain {
    Integers,
    Naturals,
}

/// Number of `(x, y, z)` in `Z^3` with `ax^2 + by^2 + cz^2 = n`.
pub fn rep_count(t: &FormTriple, n: i128) -> u128 {
    if n < 0 {
        return 0;
    }
    let mut count = 0u128;
    let xm = isqrt(n / t.a);
    for x in -xm..=xm {
        let rx = n - t.a * x * x;
        let ym = isqrt(rx / t.b);
        for y in -ym..=ym {
            let r = rx - t.b * y * y;
            if r % t.c == 0 {
                if let Some(s) = exact_sqrt(r / t.c) {
                    count += if s == 0 { 1 } else { 2 };
                }
            }
        }
    }
    count
}

/// First witness in the order `(|x|, |y|, |z|)` ascending, then signs with `+`
/// before `-`, satisfying the form, every constraint and the domains.
pub fn rep_exists_constrained(
    t: &FormTriple,
    n: i128,
    constraints: &[CongruenceConstraint],
    domains: [VarDomain; 3],
) -> Option<Witness> {
    if n < 0 {
        return None;
    }
    let names = [Var('x'), Var('y'), Var('z')];
    let [a, b, c] = t.coefficients();
    let ok = |i: usize, v: i128| {
        (domains[i] == VarDomain::Integers || v >= 0)
            && constraints.iter().filter(|k| k.var == names[i]).all(|k| k.admits(v))
    };
    let signs = |m: i128| if m == 0 { vec![0] } else { vec![m, -m] };
    for ax in 0..=isqrt(n / a) {
        let rx = n - a * ax * ax;
        for ay in 0..=isqrt(rx / b) {
            let r = rx - b * ay * ay;
            if r % c != 0 {
                continue;
            }
            let Some(az) = exact_sqrt(r / c) else { continue };
            for x in signs(ax) {
                if !ok(0, x) {
                    continue;
                }
                for y in signs(ay) {
                    if !ok(1, y) {
                        continue;
                    }
                    for z in signs(az) {
                        if ok(2, z) {
                            return Some(Witness::xyz(x, y, z));
                        }
                    }
                }
            }
        }
    }
    None
}

/// `{ax^2 + by^2 + cz^2} ∩ [0, limit]` as a bit array.
pub fn representable_set(t: &FormTriple, limit: i128) -> BitArray {
    let mut out = BitArray::new(0, limit);
    if limit < 0 {
        return out;
    }
    for x in 0..=isqrt(limit / t.a) {
        let rx = t.a * x * x;
        for y in 0..=isqrt((limit - rx) / t.b) {
            let ry = rx + t.b * y * y;
            for z in 0..=isqrt((limit - ry) / t.c) {
                out.set(ry + t.c * z * z);
            }
        }
    }
    out
}

/// Gauss–Legendre: `n` is a sum of three squares iff it is not `4^k(8l+7)`.
pub fn is_sum_of_three_squares(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    if n == 0 {
        return true;
    }
    let mut m = n;
    while m % 4 == 0 {
        m /= 4;
    }
    m % 8 != 7
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: i128, b: i128, c: i128) -> FormTriple {
        FormTriple::new(a, b, c).unwrap()
    }

    #[test]
    fn rep_count_examples() {
        assert_eq!(rep_count(&t(1, 1, 1), 1), 6);
        assert_eq!(rep_count(&t(1, 1, 1), 9), 30);
        assert_eq!(rep_count(&t(1, 1, 2), 4), 12);
        assert_eq!(rep_count(&t(1, 1, 1), 7), 0);
        assert_eq!(rep_count(&t(1, 1, 1), 0), 1);
    }

    #[test]
    fn constrained_examples() {
        let w = rep_exists_constrained(
            &t(5, 5, 1),
            11,
            &[CongruenceConstraint::odd(Var('y'))],
            [VarDomain::Integers; 3],
        )
        .unwrap();
        assert_eq!(w.values(), vec![1, 1, 1]);

        let c = CongruenceConstraint::new(Var('x'), 8, &[1, 3]).unwrap();
        let w = rep_exists_constrained(&t(1, 1, 1), 3, &[c], [VarDomain::Naturals; 3]).unwrap();
        assert_eq!(w.values(), vec![1, 1, 1]);

        assert!(rep_exists_constrained(&t(1, 1, 1), 7, &[], [VarDomain::Integers; 3]).is_none());
    }

    #[test]
    fn three_squares_examples() {
        assert!(!is_sum_of_three_squares(7));
        assert!(!is_sum_of_three_squares(28));
        assert!(is_sum_of_three_squares(33));
    }

    #[test]
    fn three_squares_matches_brute_force() {
        let s = representable_set(&t(1, 1, 1), 20_000);
        for n in 0..=20_000 {
            assert_eq!(is_sum_of_three_squares(n), s.get(n), "n = {n}");
        }
    }

    #[test]
    fn constraint_normalizes_residues() {
        let c = CongruenceConstraint::new(Var('x'), 8, &[-3, 3, 11]).unwrap();
        assert_eq!(c.residues(), &[3, 5]);
        assert!(c.admits(-5) && c.admits(13) && !c.admits(1));
        assert!(CongruenceConstraint::new(Var('x'), 0, &[0]).is_err());
        assert!(CongruenceConstraint::new(Var('x'), 3, &[]).is_err());
    }
}
