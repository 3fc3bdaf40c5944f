//! Registry of bounded checks, one or more per catalogued statement, with
//! the outcome each is expected to produce.
//!
//! A check reduces to a list of cases; each case reports the targets it
//! failed on (gaps for coverage families, counterexamples for everything
//! else). The verdict compares those failures to the claim's expectation.

mod catalog;
mod checkpoint;
mod run;
mod search;

use serde::{Deserialize, Serialize};

use crate::coverage::{CoverageProblem, CrossConstraint, DivisorTemplate, TermSpec};
use crate::error::{Error, Result};

pub use catalog::{catalog, table_for};
pub use checkpoint::{parameter_hash, CaseProgress, Checkpoint};
pub use run::{run_claim, run_claim_spec, RunOptions};
pub use search::{
    excluded_set_member, excluded_set_up_to, octagonal_excluded_check, octagonal_excluded_mismatches,
    octagonal_problem, quartic_mixed_check, quartic_value, search_x4_minus_y3_plus_z2, QuarticBounds,
    QuarticVariant,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Standing {
    /// A proved statement; must come back `Confirmed`.
    Theorem,
    /// A known fact or a concrete computation quoted alongside the results.
    Fact,
    /// Open; at best `EvidenceOnly`.
    Conjecture,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClaimKind {
    Coverage,
    ExceptionalSet,
    CountFormula,
    Identity,
    Search,
}

/// What the failures of a check should look like.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Expected {
    /// No case has a gap.
    NoGaps,
    /// The gaps, pooled over all cases, are exactly this list.
    GapsExactly(Vec<i128>),
    /// Every listed value is a gap of every case.
    GapsInclude(Vec<i128>),
    /// The smallest gap over all cases.
    FirstGap(i128),
    /// Divisor scans: the parameters with gaps are exactly `members`, and
    /// each listed `(c, n)` has first gap `n`.
    SetEquals { members: Vec<i128>, first_gaps: Vec<(i128, i128)> },
    /// A closed formula agrees everywhere.
    FormulaMatches,
    /// A witness is found for every target.
    WitnessExists,
    /// Every case has at least one gap (the listed exceptions are real).
    EveryCaseFails,
    /// The statement read literally has a counterexample in range.
    LiteralFails,
}

/// A sum family scanned over `[start, N]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Family {
    pub label: String,
    pub terms: Vec<TermSpec>,
    pub cross: CrossConstraint,
    pub start: i128,
}

impl Family {
    pub fn new(label: impl Into<String>, terms: Vec<TermSpec>, start: i128) -> Self {
        Family { label: label.into(), terms, cross: CrossConstraint::None, start }
    }

    pub fn with_cross(mut self, cross: CrossConstraint) -> Self {
        self.cross = cross;
        self
    }

    pub fn problem(&self, hi: i128) -> Result<CoverageProblem> {
        CoverageProblem::new(self.terms.clone(), self.cross, self.start, hi.max(self.start))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CountKind {
    /// `x^2+y^2+z^2 = n^2`
    Hurwitz,
    /// `x^2+y^2+2z^2 = n^2`
    CooperLam,
    /// `x^2+y^2+5z^2 = n^2`
    Gpq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LemmaKind {
    SphereThreeSquares,
    SphereOneOneTwo,
    SphereOneOneFive,
    TwoSquaresAvoidFive,
    FiveFiveOneOddZ,
    FiveFiveOneSplitParity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IdentityKind {
    /// The octagonal floor identities with the `8m` denominator.
    OctagonalShift,
    /// The same identity as printed, with `4m`.
    OctagonalShiftAsPrinted,
    TriangularFloor,
    /// `s(x) = ceil(p8(-x)/2) = x + ceil(1.5 x^2)`.
    SFunction,
    /// `p3 = T` and `p4 = x^2`.
    PolygonalBasics,
    /// `{T_x} = {p6(-x)}` as sets.
    HexagonalTriangular,
    /// `{x^2 + floor(x/2)} = {floor(k(k+1)/4) : k >= 0}`.
    QuarterPronicSet,
    /// The two descriptions of the twin-prime floor set agree.
    TwinSets,
    /// `floor((a x)^2 / a) = a x^2`.
    ScalingEmbedding,
}

/// The engine call a claim reduces to. `N` (the bound) is supplied at run
/// time; its meaning for each variant is noted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Check {
    /// Each family must cover `[start, N]`.
    Coverage(Vec<Family>),
    /// Targets `modulus * n + residue` for `n` in `[0, N]`; gaps are
    /// reported in terms of `n`.
    Progression { family: Family, modulus: i128, residue: i128 },
    /// One case per denominator `c` in `[c_lo, c_hi]`, targets `[0, N]`.
    Divisor { label: String, template: DivisorTemplate, c_lo: i128, c_hi: i128 },
    /// Representability by `p8+p8+2p8` against the excluded set, `n <= N`.
    Octagonal,
    /// Every catalogued exceptional set against brute force, `n <= N`.
    Dickson,
    /// Gauss-Legendre predicate against the three-squares bitmap.
    ThreeSquares,
    /// Closed count formula against brute force at `n^2`, `n <= N`.
    Count(CountKind),
    /// `H >= prod p^ord_p(n)` for the three sphere forms, `n <= N`.
    HBound,
    /// Constructive lemma on every admissible input up to `N`.
    Lemma(LemmaKind),
    /// Pointwise or set identity over `|x| <= N` (or values `<= N`).
    Identity(IdentityKind),
    /// `n = floor(p/a) + floor(q/b)` for `3 <= n <= N`.
    Goldbach(Vec<(i128, i128)>),
    TwinSum,
    TwinPentagonal,
    PhiSquare,
    QuarterPronic,
    /// Gaps of `p + T_x` (p prime or zero) up to `N`.
    PrimeTriangular,
    /// Listed `(m, x, y, z)` with `x^4 - y^3 + z^2 = m`.
    QuarticWitnesses(Vec<(i128, i128, i128, i128)>),
    /// A bounded witness search for every `|m| <= N`.
    QuarticSearch(QuarticBounds),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClaimSpec {
    pub id: String,
    pub summary: String,
    pub standing: Standing,
    pub kind: ClaimKind,
    pub check: Check,
    pub expected: Expected,
    pub default_bound: i128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    EvidenceOnly,
    /// `n` fails in `case`; rerunning that case at `n` reproduces it.
    Refuted {
        case: String,
        #[serde(with = "crate::arith::as_i64")]
        n: i128,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSample {
    pub n: i128,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub label: String,
    /// The varying parameter for divisor scans.
    pub param: Option<i128>,
    pub lo: i128,
    pub hi: i128,
    pub gaps: Vec<i128>,
    pub witnesses: Vec<WitnessSample>,
}

impl CaseReport {
    pub(crate) fn new(label: impl Into<String>, lo: i128, hi: i128, gaps: Vec<i128>) -> Self {
        CaseReport { label: label.into(), param: None, lo, hi, gaps, witnesses: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub id: String,
    pub standing: Standing,
    pub bound: i128,
    pub lo: i128,
    pub hi: i128,
    pub verdict: Verdict,
    pub expectation_met: bool,
    pub cases: Vec<CaseReport>,
    pub elapsed_seconds: f64,
    /// Last target completed, when a checkpoint was in use.
    pub checkpoint_cursor: Option<i128>,
}

impl ClaimReport {
    pub fn total_gaps(&self) -> usize {
        self.cases.iter().map(|c| c.gaps.len()).sum()
    }

    /// All gaps pooled, ascending and deduplicated.
    pub fn pooled_gaps(&self) -> Vec<i128> {
        pooled(&self.cases)
    }

    pub fn first_gap(&self) -> Option<i128> {
        self.cases.iter().filter_map(|c| c.gaps.first().copied()).min()
    }
}

fn pooled(cases: &[CaseReport]) -> Vec<i128> {
    let mut all: Vec<i128> = cases.iter().flat_map(|c| c.gaps.iter().copied()).collect();
    all.sort_unstable();
    all.dedup();
    all
}

pub fn lookup(id: &str) -> Result<&'static ClaimSpec> {
    catalog().iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownClaim(id.to_string()))
}

fn first_failure(cases: &[CaseReport]) -> Option<(String, i128)> {
    cases.iter().find_map(|c| c.gaps.first().map(|&g| (c.label.clone(), g)))
}

/// Case containing `n` in its range, for naming a counterexample.
fn case_for(cases: &[CaseReport], n: i128) -> String {
    cases
        .iter()
        .find(|c| c.lo <= n && n <= c.hi)
        .or(cases.first())
        .map(|c| c.label.clone())
        .unwrap_or_default()
}

/// Verdict and whether the expected outcome was observed.
pub fn judge(standing: Standing, expected: &Expected, cases: &[CaseReport]) -> (Verdict, bool) {
    let pass = match standing {
        Standing::Conjecture => Verdict::EvidenceOnly,
        Standing::Theorem | Standing::Fact => Verdict::Confirmed,
    };
    let refuted = |case: String, n: i128| (Verdict::Refuted { case, n }, false);
    match expected {
        Expected::NoGaps | Expected::FormulaMatches | Expected::WitnessExists => match first_failure(cases) {
            Some((case, n)) => refuted(case, n),
            None => (pass, true),
        },
        Expected::GapsExactly(list) => {
            let got = pooled(cases);
            let extra = got.iter().find(|g| !list.contains(g));
            let missing = list.iter().find(|g| !got.contains(g));
            match extra.or(missing) {
                Some(&n) => refuted(case_for(cases, n), n),
                None => (pass, true),
            }
        }
        Expected::GapsInclude(list) => {
            for c in cases {
                if let Some(&n) = list.iter().find(|g| !c.gaps.contains(g)) {
                    return refuted(c.label.clone(), n);
                }
            }
            (pass, true)
        }
        Expected::FirstGap(g) => {
            let first = cases.iter().filter_map(|c| c.gaps.first().copied()).min();
            match first {
                Some(f) if f == *g => (pass, true),
                Some(f) if f < *g => refuted(case_for(cases, f), f),
                _ => refuted(case_for(cases, *g), *g),
            }
        }
        Expected::SetEquals { members, first_gaps } => {
            for c in cases {
                let Some(param) = c.param else { continue };
                if !c.gaps.is_empty() && !members.contains(&param) {
                    return refuted(c.label.clone(), c.gaps[0]);
                }
            }
            // a member without gaps may just need a larger N
            let all_members_seen = members.iter().all(|m| {
                cases.iter().any(|c| c.param == Some(*m) && !c.gaps.is_empty())
                    || !cases.iter().any(|c| c.param == Some(*m))
            });
            let firsts_ok = first_gaps.iter().all(|(m, n)| {
                cases.iter().find(|c| c.param == Some(*m)).is_none_or(|c| c.gaps.first() == Some(n))
            });
            (pass, all_members_seen && firsts_ok)
        }
        Expected::EveryCaseFails => match cases.iter().find(|c| c.gaps.is_empty()) {
            Some(c) => refuted(c.label.clone(), c.hi),
            None => (pass, true),
        },
        Expected::LiteralFails => match first_failure(cases) {
            Some((case, n)) => (Verdict::Refuted { case, n }, true),
            None => (pass, false),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(label: &str, param: Option<i128>, gaps: Vec<i128>) -> CaseReport {
        CaseReport { param, ..CaseReport::new(label, 0, 100, gaps) }
    }

    #[test]
    fn judge_rules() {
        let ok = [case("a", None, vec![])];
        assert_eq!(judge(Standing::Theorem, &Expected::NoGaps, &ok), (Verdict::Confirmed, true));
        assert_eq!(judge(Standing::Conjecture, &Expected::NoGaps, &ok), (Verdict::EvidenceOnly, true));
        let bad = [case("a", None, vec![]), case("b", None, vec![7, 9])];
        assert_eq!(
            judge(Standing::Theorem, &Expected::NoGaps, &bad),
            (Verdict::Refuted { case: "b".into(), n: 7 }, false)
        );
        assert!(matches!(judge(Standing::Fact, &Expected::FirstGap(7), &bad), (Verdict::Confirmed, true)));
        assert!(matches!(judge(Standing::Fact, &Expected::FirstGap(9), &bad).0, Verdict::Refuted { n: 7, .. }));
        assert!(matches!(judge(Standing::Fact, &Expected::FirstGap(3), &ok).0, Verdict::Refuted { n: 3, .. }));
        assert!(judge(Standing::Fact, &Expected::GapsExactly(vec![7, 9]), &bad).1);
        assert!(!judge(Standing::Fact, &Expected::GapsExactly(vec![7]), &bad).1);
        assert!(judge(Standing::Conjecture, &Expected::LiteralFails, &bad).1);
        assert_eq!(judge(Standing::Conjecture, &Expected::LiteralFails, &ok), (Verdict::EvidenceOnly, false));
    }

    #[test]
    fn set_equals_rules() {
        let exp = Expected::SetEquals { members: vec![1, 2], first_gaps: vec![(1, 5)] };
        let cases = [case("c=1", Some(1), vec![5]), case("c=2", Some(2), vec![8]), case("c=3", Some(3), vec![])];
        assert_eq!(judge(Standing::Conjecture, &exp, &cases), (Verdict::EvidenceOnly, true));
        let missing = [case("c=1", Some(1), vec![5]), case("c=2", Some(2), vec![])];
        assert_eq!(judge(Standing::Conjecture, &exp, &missing), (Verdict::EvidenceOnly, false));
        let extra = [case("c=1", Some(1), vec![5]), case("c=3", Some(3), vec![11])];
        assert!(matches!(judge(Standing::Conjecture, &exp, &extra).0, Verdict::Refuted { n: 11, .. }));
    }
}
