//! Base integer sequences: squares, pronic and polygonal numbers, cubes,
//! fourth powers and `x^2 + floor(alpha x)` for rational `alpha`.
//!
//! Every atom is bounded below on its domain, and the set of arguments
//! producing a value `<= hi` is an interval computable in closed form, so
//! enumeration never has to guess at a search radius.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, ceil_div, floor_div, isqrt};
use crate::error::{Error, Result};

/// Witnesses kept per value by [`atom_enumerate`].
pub const DEFAULT_WITNESS_CAP: usize = 4;

/// An exact rational `num/den` with `den > 0`, stored in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rational {
    num: i128,
    den: i128,
}

impl Rational {
    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("rational with zero denominator"));
        }
        let g = arith::gcd(num, den).max(1);
        let sign = if den < 0 { -1 } else { 1 };
        Ok(Rational {
            num: sign * num / g,
            den: sign * den / g,
        })
    }

    pub fn integer(n: i128) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    /// `floor(self * x)`.
    pub fn floor_mul(&self, x: i128) -> Result<i128> {
        Ok(floor_div(arith::mul(self.num, x)?, self.den))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    AllIntegers,
    Naturals,
    PositiveIntegers,
}

impl Domain {
    fn start(self) -> Option<i128> {
        match self {
            Domain::AllIntegers => None,
            Domain::Naturals => Some(0),
            Domain::PositiveIntegers => Some(1),
        }
    }

    pub fn contains(self, x: i128) -> bool {
        self.start().is_none_or(|s| x >= s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AtomKind {
    /// `u x^2 + v x` with `u >= 1`.
    Quadratic { u: i128, v: i128 },
    /// Generalized m-gonal number `((m-2)x^2 - (m-4)x)/2`, `m >= 3`.
    Polygonal(i128),
    Cube,
    FourthPower,
    /// `x^2 + floor(alpha x)`.
    FlooredLinearQuadratic(Rational),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AtomSpec {
    kind: AtomKind,
    domain: Domain,
}

impl AtomSpec {
    pub fn new(kind: AtomKind, domain: Domain) -> Result<Self> {
        match kind {
            AtomKind::Quadratic { u, .. } if u < 1 => {
                return Err(Error::invalid("quadratic atom needs a positive leading coefficient"))
            }
            AtomKind::Polygonal(m) if m < 3 => {
                return Err(Error::invalid(format!("polygonal order {m} is below 3")))
            }
            AtomKind::Cube if domain == Domain::AllIntegers => {
                return Err(Error::invalid("cubes are unbounded below on the integers"))
            }
            _ => {}
        }
        Ok(AtomSpec { kind, domain })
    }

    pub fn square() -> Self {
        AtomSpec { kind: AtomKind::Quadratic { u: 1, v: 0 }, domain: Domain::AllIntegers }
    }

    /// `k x^2`.
    pub fn scaled_square(k: i128) -> Result<Self> {
        Self::new(AtomKind::Quadratic { u: k, v: 0 }, Domain::AllIntegers)
    }

    /// `x(x+1)`.
    pub fn pronic() -> Self {
        AtomSpec { kind: AtomKind::Quadratic { u: 1, v: 1 }, domain: Domain::AllIntegers }
    }

    pub fn triangular() -> Self {
        AtomSpec { kind: AtomKind::Polygonal(3), domain: Domain::AllIntegers }
    }

    pub fn polygonal(m: i128) -> Result<Self> {
        Self::new(AtomKind::Polygonal(m), Domain::AllIntegers)
    }

    pub fn quadratic(u: i128, v: i128) -> Result<Self> {
        Self::new(AtomKind::Quadratic { u, v }, Domain::AllIntegers)
    }

    pub fn cube() -> Self {
        AtomSpec { kind: AtomKind::Cube, domain: Domain::Naturals }
    }

    pub fn fourth_power() -> Self {
        AtomSpec { kind: AtomKind::FourthPower, domain: Domain::AllIntegers }
    }

    pub fn floored_linear(alpha: Rational) -> Self {
        AtomSpec { kind: AtomKind::FlooredLinearQuadratic(alpha), domain: Domain::AllIntegers }
    }

    /// Same sequence restricted to another domain.
    pub fn on(self, domain: Domain) -> Result<Self> {
        Self::new(self.kind, domain)
    }

    pub fn kind(&self) -> AtomKind {
        self.kind
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn eval(&self, x: i128) -> Result<i128> {
        use arith::{add, mul};
        match self.kind {
            AtomKind::Quadratic { u, v } => add(mul(u, mul(x, x)?)?, mul(v, x)?),
            AtomKind::Polygonal(m) => polygonal_value(m, x),
            AtomKind::Cube => arith::pow(x, 3),
            AtomKind::FourthPower => arith::pow(x, 4),
            AtomKind::FlooredLinearQuadratic(alpha) => add(mul(x, x)?, alpha.floor_mul(x)?),
        }
    }

    /// Real vertex of the underlying parabola, rounded down.
    fn vertex(&self) -> i128 {
        match self.kind {
            AtomKind::Quadratic { u, v } => floor_div(-v, 2 * u),
            AtomKind::Polygonal(m) => floor_div(m - 4, 2 * (m - 2)),
            AtomKind::Cube | AtomKind::FourthPower => 0,
            AtomKind::FlooredLinearQuadratic(a) => floor_div(-a.num(), 2 * a.den()),
        }
    }

    /// Exact minimum of the atom over its domain.
    pub fn minimum(&self) -> Result<i128> {
        let v = self.vertex();
        let mut candidates: Vec<i128> = (v - 2..=v + 3).collect();
        if let Some(s) = self.domain.start() {
            candidates.extend(s..=s + 2);
        }
        candidates
            .into_iter()
            .filter(|&x| self.domain.contains(x))
            .map(|x| self.eval(x))
            .try_fold(i128::MAX, |m, v| v.map(|v| m.min(v)))
    }

    /// Closed-form interval of arguments in the domain that can give a value
    /// `<= hi`. Every such argument lies inside; `None` when there is none.
    pub fn argument_range(&self, hi: i128) -> Result<Option<(i128, i128)>> {
        use arith::{add, mul};
        let (lo_x, hi_x) = match self.kind {
            AtomKind::Quadratic { u, v } => {
                // (2ux + v)^2 <= 4u*hi + v^2
                match quadratic_window(u, v, hi)? {
                    Some(w) => w,
                    None => return Ok(None),
                }
            }
            AtomKind::Polygonal(m) => {
                match quadratic_window(m - 2, -(m - 4), mul(2, hi)?)? {
                    Some(w) => w,
                    None => return Ok(None),
                }
            }
            AtomKind::Cube => {
                if hi < 0 {
                    return Ok(None);
                }
                (0, arith::iroot(hi, 3))
            }
            AtomKind::FourthPower => {
                if hi < 0 {
                    return Ok(None);
                }
                let r = arith::iroot(hi, 4);
                (-r, r)
            }
            AtomKind::FlooredLinearQuadratic(a) => {
                // value > x^2 + a x - 1, so value <= hi forces
                // (2qx + p)^2 <= 4q^2(hi + 1) + p^2 - 1
                let (p, q) = (a.num(), a.den());
                let rhs = add(mul(mul(4, mul(q, q)?)?, add(hi, 1)?)?, mul(p, p)? - 1)?;
                if rhs < 0 {
                    return Ok(None);
                }
                let s = isqrt(rhs);
                (ceil_div(-p - s, 2 * q), floor_div(s - p, 2 * q))
            }
        };
        let lo_x = match self.domain.start() {
            Some(s) => lo_x.max(s),
            None => lo_x,
        };
        Ok((lo_x <= hi_x).then_some((lo_x, hi_x)))
    }
}

fn quadratic_window(u: i128, v: i128, hi: i128) -> Result<Option<(i128, i128)>> {
    use arith::{add, mul};
    let rhs = add(mul(mul(4, u)?, hi)?, mul(v, v)?)?;
    if rhs < 0 {
        return Ok(None);
    }
    let s = isqrt(rhs);
    Ok(Some((ceil_div(-v - s, 2 * u), floor_div(s - v, 2 * u))))
}

impl fmt::Display for AtomSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            AtomKind::Quadratic { u: 1, v: 0 } => write!(f, "x^2")?,
            AtomKind::Quadratic { u: 1, v: 1 } => write!(f, "x(x+1)")?,
            AtomKind::Quadratic { u, v } => write!(f, "{u}x^2{v:+}x")?,
            AtomKind::Polygonal(3) => write!(f, "T(x)")?,
            AtomKind::Polygonal(m) => write!(f, "p{m}(x)")?,
            AtomKind::Cube => write!(f, "x^3")?,
            AtomKind::FourthPower => write!(f, "x^4")?,
            AtomKind::FlooredLinearQuadratic(a) => write!(f, "x^2+floor({a}x)")?,
        }
        match self.domain {
            Domain::AllIntegers => Ok(()),
            Domain::Naturals => write!(f, "[x>=0]"),
            Domain::PositiveIntegers => write!(f, "[x>=1]"),
        }
    }
}

/// Variable name inside a term or a form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Var(pub char);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An explicit variable assignment certifying one representation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub assignments: Vec<(Var, i128)>,
}

impl Witness {
    pub fn new(assignments: Vec<(Var, i128)>) -> Self {
        Witness { assignments }
    }

    pub fn single(var: Var, value: i128) -> Self {
        Witness { assignments: vec![(var, value)] }
    }

    pub fn xyz(x: i128, y: i128, z: i128) -> Self {
        Witness::new(vec![(Var('x'), x), (Var('y'), y), (Var('z'), z)])
    }

    pub fn get(&self, var: Var) -> Option<i128> {
        self.assignments.iter().find(|(v, _)| *v == var).map(|&(_, x)| x)
    }

    pub fn values(&self) -> Vec<i128> {
        self.assignments.iter().map(|&(_, x)| x).collect()
    }

    pub fn extend(&mut self, other: &Witness) {
        self.assignments.extend_from_slice(&other.assignments);
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, x)) in self.assignments.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}={x}")?;
        }
        Ok(())
    }
}

/// One value of an atom together with (up to a cap) the arguments reaching it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomValue {
    pub value: i128,
    pub preimages: Vec<i128>,
}

/// `p_m(x) = ((m-2)x^2 - (m-4)x) / 2`, exact.
pub fn polygonal_value(m: i128, x: i128) -> Result<i128> {
    use arith::{mul, sub};
    if m < 3 {
        return Err(Error::invalid(format!("polygonal order {m} is below 3")));
    }
    let twice = sub(mul(m - 2, mul(x, x)?)?, mul(m - 4, x)?)?;
    debug_assert_eq!(twice % 2, 0);
    Ok(twice / 2)
}

/// `T_k == floor((2k+1)^2 / 8)`.
pub fn triangular_floor_identity(k: i128) -> bool {
    let Some(t) = k.checked_mul(k + 1).map(|v| v / 2) else {
        return false;
    };
    let Some(sq) = (2 * k + 1).checked_mul(2 * k + 1) else {
        return false;
    };
    t == floor_div(sq, 8)
}

/// Both octagonal floor identities for `(x, m)`:
/// `floor(p8(x)/(2m)) == floor(p8(1-2x)/(8m))` and
/// `floor(p8(x)/m) == floor((3x-1)^2/(3m))`.
///
/// The first uses denominator `8m`; with `4m` it fails already at `(3, 2)`.
pub fn octagonal_shift_identity(x: i128, m: i128) -> bool {
    if m < 1 {
        return false;
    }
    let eval = || -> Result<bool> {
        let p = polygonal_value(8, x)?;
        let shifted = polygonal_value(8, arith::sub(1, arith::mul(2, x)?)?)?;
        let first = floor_div(p, 2 * m) == floor_div(shifted, 8 * m);
        let sq = arith::pow(arith::sub(arith::mul(3, x)?, 1)?, 2)?;
        let second = floor_div(p, m) == floor_div(sq, 3 * m);
        Ok(first && second)
    };
    eval().unwrap_or(false)
}

/// Some `x` with `p_m(x) = n`, or `None` when `n` is not a generalized
/// m-gonal number. The non-negative root is preferred.
pub fn is_generalized_polygonal(m: i128, n: i128) -> Result<Option<Witness>> {
    if m < 3 {
        return Err(Error::invalid(format!("polygonal order {m} is below 3")));
    }
    if n < 0 {
        return Ok(None);
    }
    // (m-2)x^2 - (m-4)x - 2n = 0
    let disc = arith::add(arith::pow(m - 4, 2)?, arith::mul(8 * (m - 2), n)?)?;
    let Some(s) = arith::exact_sqrt(disc) else {
        return Ok(None);
    };
    let den = 2 * (m - 2);
    for num in [m - 4 + s, m - 4 - s] {
        if num % den == 0 {
            let x = num / den;
            if polygonal_value(m, x)? == n {
                return Ok(Some(Witness::single(Var('x'), x)));
            }
        }
    }
    Ok(None)
}

/// Every value of `atom` in `[lo, hi]`, ascending, with up to
/// [`DEFAULT_WITNESS_CAP`] preimages each.
pub fn atom_enumerate(atom: &AtomSpec, lo: i128, hi: i128) -> Result<Vec<AtomValue>> {
    atom_enumerate_filtered(atom, lo, hi, DEFAULT_WITNESS_CAP, |_| true)
}

/// As [`atom_enumerate`], keeping only arguments accepted by `admit`.
/// Preimages are ordered by `|x|`, positive first.
pub fn atom_enumerate_filtered(
    atom: &AtomSpec,
    lo: i128,
    hi: i128,
    cap: usize,
    admit: impl Fn(i128) -> bool,
) -> Result<Vec<AtomValue>> {
    if lo > hi {
        return Err(Error::invalid(format!("empty range [{lo}, {hi}]")));
    }
    let mut by_value: BTreeMap<i128, Vec<i128>> = BTreeMap::new();
    if let Some((a, b)) = atom.argument_range(hi)? {
        for x in a..=b {
            if !admit(x) {
                continue;
            }
            let v = atom.eval(x)?;
            if (lo..=hi).contains(&v) {
                by_value.entry(v).or_default().push(x);
            }
        }
    }
    Ok(by_value
        .into_iter()
        .map(|(value, mut preimages)| {
            preimages.sort_by_key(|&x| (x.abs(), x < 0));
            preimages.truncate(cap.max(1));
            AtomValue { value, preimages }
        })
        .collect())
}
