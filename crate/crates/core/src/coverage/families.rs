use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::engine::{coverage_scan, coverage_scan_with, CoverageProblem, CrossConstraint, ScanOptions};
use super::term::{Rounding, TermPart, TermSpec};
use crate::arith::gcd;
use crate::atoms::{AtomSpec, Var};
use crate::error::{Error, Result};

/// A family with one term whose denominator is left open.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorTemplate {
    pub terms: Vec<TermSpec>,
    pub cross: CrossConstraint,
    pub free: usize,
}

impl DivisorTemplate {
    pub fn new(terms: Vec<TermSpec>, free: usize) -> Result<Self> {
        if free >= terms.len() {
            return Err(Error::invalid(format!("free slot {free} is past the last of {} terms", terms.len())));
        }
        Ok(DivisorTemplate { terms, cross: CrossConstraint::None, free })
    }

    pub fn instantiate(&self, c: i128, lo: i128, hi: i128) -> Result<CoverageProblem> {
        let mut terms = self.terms.clone();
        terms[self.free].denominator = c;
        CoverageProblem::new(terms, self.cross, lo, hi)
    }
}

impl fmt::Display for DivisorTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| if i == self.free { t.to_string().replace("/1)", "/c)") } else { t.to_string() })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The four divisor tables: `a x^2 + b y^2 + round(q(z)/c)` with `q` the
/// square or pronic sequence and floor or ceiling rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TableKind {
    /// ceiling of `z^2/c`
    SStar,
    /// floor of `z^2/c`
    SLower,
    /// ceiling of `z(z+1)/c`
    TStar,
    /// floor of `z(z+1)/c`
    TLower,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::SStar => "S*",
            TableKind::SLower => "S_",
            TableKind::TStar => "T*",
            TableKind::TLower => "T_",
        }
    }

    fn rounding(self) -> Rounding {
        match self {
            TableKind::SStar | TableKind::TStar => Rounding::Ceil,
            TableKind::SLower | TableKind::TLower => Rounding::Floor,
        }
    }

    fn atom(self) -> AtomSpec {
        match self {
            TableKind::SStar | TableKind::SLower => AtomSpec::square(),
            TableKind::TStar | TableKind::TLower => AtomSpec::pronic(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorFamily {
    pub kind: TableKind,
    pub a: i128,
    pub b: i128,
}

impl DivisorFamily {
    pub fn template(&self) -> Result<DivisorTemplate> {
        let sq = AtomSpec::square();
        let terms = vec![
            TermSpec::scaled(self.a, sq, 'x')?,
            TermSpec::scaled(self.b, sq, 'y')?,
            TermSpec::single(self.kind.rounding(), 1, self.kind.atom(), 'z', 1)?,
        ];
        DivisorTemplate::new(terms, 2)
    }
}

/// Gaps in `[0, max]` for every `c` in `[c_lo, c_hi]`.
pub fn exceptional_divisors_scan(
    template: &DivisorTemplate,
    c_lo: i128,
    c_hi: i128,
    max: i128,
    opts: &ScanOptions,
) -> Result<BTreeMap<i128, Vec<i128>>> {
    if c_lo < 1 || c_hi < c_lo {
        return Err(Error::invalid(format!("bad divisor range [{c_lo}, {c_hi}]")));
    }
    let cs: Vec<i128> = (c_lo..=c_hi).collect();
    let rows: Vec<(i128, Vec<i128>)> = cs
        .par_iter()
        .map(|&c| {
            let p = template.instantiate(c, 0, max)?;
            Ok((c, coverage_scan_with(&p, opts)?.gaps))
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().collect())
}

/// `x^2+y^2+z^2 + floor(e(x+y+z)/d)` as a single grouped term.
pub fn shifted_three_squares_problem(e: i128, d: i128, lo: i128, hi: i128) -> Result<CoverageProblem> {
    if d < 2 {
        return Err(Error::invalid(format!("divisor {d} must be at least 2")));
    }
    let atom = AtomSpec::quadratic(d, e)?;
    let parts = ['x', 'y', 'z'].map(|v| TermPart { coefficient: 1, atom, var: Var(v) }).to_vec();
    CoverageProblem::new(vec![TermSpec::group(Rounding::Floor, parts, d)?], CrossConstraint::None, lo, hi)
}

pub fn shifted_three_squares_scan(e: i128, d: i128, lo: i128, hi: i128) -> Result<Vec<i128>> {
    Ok(coverage_scan(&shifted_three_squares_problem(e, d, lo, hi)?)?.gaps)
}

fn lcm(a: i128, b: i128) -> i128 {
    a / gcd(a, b) * b
}

/// `floor(sum_i q(v_i)/d_i)` over a common denominator.
pub(crate) fn combined_floor(atom: AtomSpec, items: &[(char, i128)]) -> Result<TermSpec> {
    let l = items.iter().fold(1, |acc, &(_, d)| lcm(acc, d));
    let parts = items.iter().map(|&(v, d)| TermPart { coefficient: l / d, atom, var: Var(v) }).collect();
    TermSpec::group(Rounding::Floor, parts, l)
}

/// Representability of `n` by the separate, left-paired and fully combined
/// floor sums of `x^2/a`, `y^2/b`, `z^2/c`.
pub fn variant_triple_check(a: i128, b: i128, c: i128, n: i128) -> Result<[bool; 3]> {
    if a < 1 || b < 1 || c < 1 {
        return Err(Error::invalid(format!("denominators must be positive, got ({a},{b},{c})")));
    }
    let sq = AtomSpec::square();
    let f = |v, d| TermSpec::floor(sq, v, d);
    let variants = [
        vec![f('x', a)?, f('y', b)?, f('z', c)?],
        vec![combined_floor(sq, &[('x', a), ('y', b)])?, f('z', c)?],
        vec![combined_floor(sq, &[('x', a), ('y', b), ('z', c)])?],
    ];
    let mut out = [false; 3];
    for (slot, terms) in out.iter_mut().zip(variants) {
        let p = CoverageProblem::new(terms, CrossConstraint::None, n, n)?;
        *slot = coverage_scan(&p)?.gaps.is_empty();
    }
    Ok(out)
}
