use serde::{Deserialize, Serialize};

use crate::arith::{self, exact_sqrt, iroot};
use crate::atoms::{AtomSpec, Var, Witness};
use crate::coverage::{coverage_scan, CoverageProblem, CrossConstraint, TermSpec};
use crate::error::{Error, Result};

/// `4^(k+2) q - (2/3)(4^k + 2)`.
pub fn excluded_set_member(k: u32, q: i128) -> Result<i128> {
    let four_k = arith::pow(4, k)?;
    let big = arith::mul(arith::mul(four_k, 16)?, q)?;
    arith::sub(big, 2 * (four_k + 2) / 3)
}

/// Members of the excluded set up to `max`, ascending.
pub fn excluded_set_up_to(max: i128) -> Result<Vec<i128>> {
    let mut out = Vec::new();
    for k in 0u32.. {
        if excluded_set_member(k, 1)? > max {
            break;
        }
        for q in 1.. {
            let v = excluded_set_member(k, q)?;
            if v > max {
                break;
            }
            out.push(v);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// The problem `p8(x) + p8(y) + 2 p8(z)` on `[0, max]`.
pub fn octagonal_problem(max: i128) -> Result<CoverageProblem> {
    let p8 = AtomSpec::polygonal(8)?;
    CoverageProblem::new(
        vec![TermSpec::scaled(1, p8, 'x')?, TermSpec::scaled(1, p8, 'y')?, TermSpec::scaled(2, p8, 'z')?],
        CrossConstraint::None,
        0,
        max,
    )
}

/// Targets `n <= max` where representability by `p8 + p8 + 2 p8` disagrees
/// with non-membership in the excluded set.
pub fn octagonal_excluded_mismatches(max: i128) -> Result<Vec<i128>> {
    let gaps = coverage_scan(&octagonal_problem(max)?)?.gaps;
    let excluded = excluded_set_up_to(max)?;
    let mut out: Vec<i128> = gaps
        .iter()
        .filter(|g| excluded.binary_search(g).is_err())
        .chain(excluded.iter().filter(|e| gaps.binary_search(e).is_err()))
        .copied()
        .collect();
    out.sort_unstable();
    Ok(out)
}

pub fn octagonal_excluded_check(max: i128) -> Result<bool> {
    if max < 1 {
        return Err(Error::invalid(format!("bound {max} must be positive")));
    }
    Ok(octagonal_excluded_mismatches(max)?.is_empty())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuarticBounds {
    pub x_max: i128,
    pub y_max: i128,
}

impl Default for QuarticBounds {
    fn default() -> Self {
        QuarticBounds { x_max: 400, y_max: 40_000 }
    }
}

/// Positive `(x, y, z)` with `x^4 - y^3 + z^2 = m`, scanning `x` then `y`
/// upward. Running out of the box is `BoundExhausted`, not a disproof.
pub fn search_x4_minus_y3_plus_z2(m: i128, bounds: QuarticBounds) -> Result<(i128, i128, i128)> {
    for x in 1..=bounds.x_max {
        let x4 = arith::pow(x, 4)?;
        for y in 1..=bounds.y_max {
            let r = arith::sub(arith::add(m, arith::pow(y, 3)?)?, x4)?;
            if r < 1 {
                continue;
            }
            if let Some(z) = exact_sqrt(r) {
                return Ok((x, y, z));
            }
        }
    }
    Err(Error::BoundExhausted(format!("x^4 - y^3 + z^2 = {m} with x <= {}, y <= {}", bounds.x_max, bounds.y_max)))
}

pub fn quartic_value(x: i128, y: i128, z: i128) -> Result<i128> {
    arith::add(arith::sub(arith::pow(x, 4)?, arith::pow(y, 3)?)?, arith::pow(z, 2)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuarticVariant {
    /// `w^2 + x^3 + y^4 + 2z^4`
    CubeQuartics,
    /// `w^2 + 2x^2 + y^3 + 2z^3`
    SquaresCubes,
}

/// Witness `(w, x, y, z)` over the naturals, scanning `z`, `y`, `x` upward
/// with `w` solved.
pub fn quartic_mixed_check(n: i128, variant: QuarticVariant) -> Result<Option<Witness>> {
    if n < 0 {
        return Err(Error::invalid(format!("n must be natural, got {n}")));
    }
    type Part = fn(i128) -> i128;
    let (fz, fy, fx): (Part, Part, Part) = match variant {
        QuarticVariant::CubeQuartics => (|z| 2 * z.pow(4), |y| y.pow(4), |x| x.pow(3)),
        QuarticVariant::SquaresCubes => (|z| 2 * z.pow(3), |y| y.pow(3), |x| 2 * x * x),
    };
    let top = iroot(n, 2) + 1;
    for z in 0..=top {
        let rz = n - fz(z);
        if rz < 0 {
            break;
        }
        for y in 0..=top {
            let ry = rz - fy(y);
            if ry < 0 {
                break;
            }
            for x in 0..=top {
                let rx = ry - fx(x);
                if rx < 0 {
                    break;
                }
                if let Some(w) = exact_sqrt(rx) {
                    return Ok(Some(Witness::new(vec![(Var('w'), w), (Var('x'), x), (Var('y'), y), (Var('z'), z)])));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn excluded_examples() {
        assert_eq!(excluded_set_member(0, 1).unwrap(), 14);
        assert_eq!(excluded_set_member(0, 2).unwrap(), 30);
        assert_eq!(excluded_set_member(1, 1).unwrap(), 60);
        assert_eq!(&excluded_set_up_to(100).unwrap(), &[14, 30, 46, 60, 62, 78, 94]);
    }

    #[test]
    fn octagonal_characterization() {
        assert!(octagonal_excluded_check(100).unwrap());
        assert!(octagonal_excluded_check(13).unwrap());
        let gaps = coverage_scan(&octagonal_problem(14).unwrap()).unwrap().gaps;
        assert_eq!(gaps, vec![14]);
    }

    #[test]
    fn quartic_witnesses() {
        assert_eq!(quartic_value(4, 8, 16).unwrap(), 0);
        assert_eq!(quartic_value(36, 139, 1003).unwrap(), 6);
        assert_eq!(quartic_value(4325, 71383, 3719409).unwrap(), 11019);
        let (x, y, z) = search_x4_minus_y3_plus_z2(-7, QuarticBounds::default()).unwrap();
        assert_eq!(quartic_value(x, y, z).unwrap(), -7);
        assert!(matches!(
            search_x4_minus_y3_plus_z2(15, QuarticBounds { x_max: 3, y_max: 10 }),
            Err(Error::BoundExhausted(_))
        ));
    }

    #[test]
    fn mixed_examples() {
        let v = |n| quartic_mixed_check(n, QuarticVariant::CubeQuartics).unwrap().unwrap().values();
        assert_eq!(v(0), vec![0, 0, 0, 0]);
        assert_eq!(v(3), vec![1, 1, 1, 0]);
        assert_eq!(v(4), vec![2, 0, 0, 0]);
        for n in 0..500 {
            let w = quartic_mixed_check(n, QuarticVariant::SquaresCubes).unwrap().unwrap().values();
            assert_eq!(w[0] * w[0] + 2 * w[1] * w[1] + w[2].pow(3) + 2 * w[3].pow(3), n);
        }
    }
}
