use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::term::{PreparedTerm, TermSpec, DEFAULT_NODE_BUDGET};
use crate::atoms::Witness;
use crate::bitarray::BitArray;
use crate::error::{Error, Result};

/// Side condition on the tuple of term values.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossConstraint {
    #[default]
    None,
    AtLeastOneTermOdd,
    AtLeastOneTermEven,
    /// Three terms whose median value is odd.
    SortedMiddleTermOdd,
    DistinctTermValues,
    DistinctAndOneEven,
}

impl CrossConstraint {
    /// Whether a full tuple of term values passes.
    pub fn accepts(self, values: &[i128]) -> bool {
        let distinct = || values.iter().enumerate().all(|(i, v)| !values[..i].contains(v));
        match self {
            CrossConstraint::None => true,
            CrossConstraint::AtLeastOneTermOdd => values.iter().any(|v| v.rem_euclid(2) == 1),
            CrossConstraint::AtLeastOneTermEven => values.iter().any(|v| v.rem_euclid(2) == 0),
            CrossConstraint::SortedMiddleTermOdd => {
                let mut s = values.to_vec();
                s.sort_unstable();
                s.len() == 3 && s[1].rem_euclid(2) == 1
            }
            CrossConstraint::DistinctTermValues => distinct(),
            CrossConstraint::DistinctAndOneEven => distinct() && values.iter().any(|v| v.rem_euclid(2) == 0),
        }
    }

    fn parity(self) -> Option<i128> {
        match self {
            CrossConstraint::AtLeastOneTermOdd => Some(1),
            CrossConstraint::AtLeastOneTermEven => Some(0),
            _ => None,
        }
    }

    fn is_direct(self) -> bool {
        matches!(
            self,
            CrossConstraint::SortedMiddleTermOdd
                | CrossConstraint::DistinctTermValues
                | CrossConstraint::DistinctAndOneEven
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoverageProblem {
    pub terms: Vec<TermSpec>,
    pub cross: CrossConstraint,
    pub lo: i128,
    pub hi: i128,
}

impl CoverageProblem {
    pub fn new(terms: Vec<TermSpec>, cross: CrossConstraint, lo: i128, hi: i128) -> Result<Self> {
        let p = CoverageProblem { terms, cross, lo, hi };
        p.validate()?;
        Ok(p)
    }

    pub fn with_range(&self, lo: i128, hi: i128) -> Self {
        CoverageProblem { lo, hi, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.terms.is_empty() || self.terms.len() > 4 {
            return Err(Error::invalid(format!("a problem has 1 to 4 terms, got {}", self.terms.len())));
        }
        if self.lo < 0 || self.hi < self.lo {
            return Err(Error::invalid(format!("bad target range [{}, {}]", self.lo, self.hi)));
        }
        if self.cross == CrossConstraint::SortedMiddleTermOdd && self.terms.len() != 3 {
            return Err(Error::invalid("the sorted-middle constraint needs exactly three terms"));
        }
        let mut seen = Vec::new();
        for t in &self.terms {
            t.validate()?;
            for v in t.vars() {
                if seen.contains(&v) {
                    return Err(Error::invalid(format!("variable {v} appears in two terms")));
                }
                seen.push(v);
            }
        }
        Ok(())
    }

    /// Whether the given per-term witnesses represent `n`.
    pub fn verify(&self, n: i128, witnesses: &[Witness]) -> Result<bool> {
        if witnesses.len() != self.terms.len() {
            return Ok(false);
        }
        let mut values = Vec::with_capacity(self.terms.len());
        for (t, w) in self.terms.iter().zip(witnesses) {
            match t.evaluate(w)? {
                Some(v) => values.push(v),
                None => return Ok(false),
            }
        }
        Ok(values.iter().sum::<i128>() == n && self.cross.accepts(&values))
    }
}

impl fmt::Display for CoverageProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", terms.join(" + "))?;
        if self.cross != CrossConstraint::None {
            write!(f, " [{:?}]", self.cross)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessMode {
    Off,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    pub witnesses: WitnessMode,
    pub node_budget: u128,
    /// Target window per shard.
    pub shard_len: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { jobs: 0, witnesses: WitnessMode::Off, node_budget: DEFAULT_NODE_BUDGET, shard_len: 1 << 16 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageResult {
    pub lo: i128,
    pub hi: i128,
    pub representable: BitArray,
    pub gaps: Vec<i128>,
    /// One witness per term for each representable target.
    pub witnesses: Option<BTreeMap<i128, Vec<Witness>>>,
}

impl CoverageResult {
    fn from_bits(representable: BitArray, witnesses: Option<BTreeMap<i128, Vec<Witness>>>) -> Self {
        let gaps = representable.zeros();
        CoverageResult { lo: representable.base(), hi: representable.last(), representable, gaps, witnesses }
    }

    pub fn first_gap(&self) -> Option<i128> {
        self.gaps.first().copied()
    }

    /// Joins results over consecutive ranges.
    pub fn merge(mut parts: Vec<CoverageResult>) -> Result<CoverageResult> {
        parts.sort_by_key(|p| p.lo);
        for w in parts.windows(2) {
            if w[0].hi + 1 != w[1].lo {
                return Err(Error::invalid(format!("ranges [{}, {}] and [{}, {}] do not abut", w[0].lo, w[0].hi, w[1].lo, w[1].hi)));
            }
        }
        let bits: Vec<BitArray> = parts.iter().map(|p| p.representable.clone()).collect();
        let representable = BitArray::concat(&bits).ok_or_else(|| Error::invalid("nothing to merge"))?;
        let witnesses = if parts.iter().all(|p| p.witnesses.is_some()) {
            Some(parts.into_iter().flat_map(|p| p.witnesses.unwrap_or_default()).collect())
        } else {
            None
        };
        Ok(CoverageResult::from_bits(representable, witnesses))
    }
}

/// Prefix sumsets shared by every shard of one scan.
struct Prepared {
    terms: Vec<PreparedTerm>,
    /// `all[i]`: sums of the first `i + 1` terms.
    all: Vec<BitArray>,
    /// `sat[i]`: those sums where some term already has the wanted parity.
    sat: Vec<BitArray>,
    parity_masks: Vec<BitArray>,
    parity: Option<i128>,
}

fn parity_mask(values: &BitArray, parity: i128) -> BitArray {
    let mut out = BitArray::new(values.base(), values.last());
    values.iter_ones().filter(|v| v.rem_euclid(2) == parity).for_each(|v| out.set(v));
    out
}

/// `out |= a ⊕ b`, shifting whichever operand has more set bits.
fn or_sumset(out: &mut BitArray, a: &BitArray, b: &BitArray) {
    let (dense, sparse) = if a.count() >= b.count() { (a, b) } else { (b, a) };
    for v in sparse.iter_ones() {
        out.or_shifted(dense, v);
    }
}

fn prepare(problem: &CoverageProblem, opts: &ScanOptions) -> Result<Prepared> {
    problem.validate()?;
    let hi = problem.hi;
    let mins: Vec<i128> = problem.terms.iter().map(|t| t.lower_bound()).collect::<Result<_>>()?;
    let total: i128 = mins.iter().sum();
    let terms: Vec<PreparedTerm> = problem
        .terms
        .iter()
        .zip(&mins)
        .map(|(t, &m)| t.prepare(m, hi - (total - m), opts.node_budget))
        .collect::<Result<_>>()?;
    let parity = problem.cross.parity();
    let parity_masks: Vec<BitArray> = match parity {
        Some(p) => terms.iter().map(|t| parity_mask(&t.values, p)).collect(),
        None => Vec::new(),
    };
    let mut all = vec![terms[0].values.clone()];
    let mut sat = parity_masks.first().cloned().into_iter().collect::<Vec<_>>();
    if !problem.cross.is_direct() {
        let mut acc = mins[0];
        for i in 1..terms.len().saturating_sub(1) {
            acc += mins[i];
            let rest: i128 = mins[i + 1..].iter().sum();
            let mut next = BitArray::new(acc, hi - rest);
            or_sumset(&mut next, &all[i - 1], &terms[i].values);
            if parity.is_some() {
                let mut s = BitArray::new(acc, hi - rest);
                or_sumset(&mut s, &sat[i - 1], &terms[i].values);
                or_sumset(&mut s, &all[i - 1], &parity_masks[i]);
                sat.push(s);
            }
            all.push(next);
        }
    }
    Ok(Prepared { terms, all, sat, parity_masks, parity })
}

impl Prepared {
    fn k(&self) -> usize {
        self.terms.len()
    }

    /// Representable targets in `[lo, hi]` for the bitset path.
    fn window(&self, lo: i128, hi: i128) -> BitArray {
        let k = self.k();
        let mut out = BitArray::new(lo, hi);
        if k == 1 {
            match self.parity {
                Some(_) => out.or_assign(&self.parity_masks[0]),
                None => out.or_assign(&self.terms[0].values),
            }
            return out;
        }
        let last = &self.terms[k - 1].values;
        match self.parity {
            None => or_sumset(&mut out, &self.all[k - 2], last),
            Some(_) => {
                or_sumset(&mut out, &self.sat[k - 2], last);
                or_sumset(&mut out, &self.all[k - 2], &self.parity_masks[k - 1]);
            }
        }
        out
    }

    /// Term values for `n` on the bitset path, smallest last-term value first.
    fn decompose(&self, i: usize, n: i128, need: bool) -> Option<Vec<i128>> {
        let vals = &self.terms[i].values;
        if i == 0 {
            let ok = if need { self.parity_masks[0].get(n) } else { vals.get(n) };
            return ok.then(|| vec![n]);
        }
        let (prev_all, prev_sat) = (&self.all[i - 1], self.sat.get(i - 1));
        for v in vals.iter_ones() {
            let rest = n - v;
            if rest < prev_all.base() {
                break;
            }
            let good_v = self.parity.is_some_and(|p| v.rem_euclid(2) == p);
            let sub = if need && !good_v {
                prev_sat.filter(|s| s.get(rest)).and_then(|_| self.decompose(i - 1, rest, true))
            } else if prev_all.get(rest) {
                self.decompose(i - 1, rest, false)
            } else {
                None
            };
            if let Some(mut s) = sub {
                s.push(v);
                return Some(s);
            }
        }
        None
    }

    fn witnesses_for(&self, values: &[i128]) -> Option<Vec<Witness>> {
        self.terms.iter().zip(values).map(|(t, &v)| t.witness(v)).collect()
    }

    /// Direct enumeration for constraints that see the whole value tuple.
    fn direct(&self, cross: CrossConstraint, lo: i128, hi: i128, record: bool) -> (BitArray, BTreeMap<i128, Vec<i128>>) {
        let lists: Vec<Vec<i128>> = self.terms.iter().map(|t| t.values.iter_ones().collect()).collect();
        let mins: Vec<i128> = lists.iter().map(|l| l.first().copied().unwrap_or(i128::MAX / 4)).collect();
        let mut out = BitArray::new(lo, hi);
        let mut found = BTreeMap::new();
        let mut stack = Vec::with_capacity(lists.len());
        #[allow(clippy::too_many_arguments)]
        fn walk(
            depth: usize,
            sum: i128,
            lists: &[Vec<i128>],
            mins: &[i128],
            stack: &mut Vec<i128>,
            cross: CrossConstraint,
            lo: i128,
            out: &mut BitArray,
            found: &mut BTreeMap<i128, Vec<i128>>,
            record: bool,
        ) {
            if depth == lists.len() {
                if sum >= lo && cross.accepts(stack) && !out.get(sum) {
                    out.set(sum);
                    if record {
                        found.insert(sum, stack.clone());
                    }
                }
                return;
            }
            let rest: i128 = mins[depth + 1..].iter().sum();
            for &v in &lists[depth] {
                if sum + v + rest > out.last() {
                    break;
                }
                stack.push(v);
                walk(depth + 1, sum + v, lists, mins, stack, cross, lo, out, found, record);
                stack.pop();
            }
        }
        walk(0, 0, &lists, &mins, &mut stack, cross, lo, &mut out, &mut found, record);
        (out, found)
    }
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

pub fn coverage_scan(problem: &CoverageProblem) -> Result<CoverageResult> {
    coverage_scan_with(problem, &ScanOptions::default())
}

pub fn coverage_scan_with(problem: &CoverageProblem, opts: &ScanOptions) -> Result<CoverageResult> {
    let prepared = prepare(problem, opts)?;
    let (lo, hi) = (problem.lo, problem.hi);
    let record = opts.witnesses == WitnessMode::All;

    if problem.cross.is_direct() {
        let (bits, found) = prepared.direct(problem.cross, lo, hi, record);
        let witnesses = record.then(|| {
            found
                .into_iter()
                .filter_map(|(n, vals)| prepared.witnesses_for(&vals).map(|w| (n, w)))
                .collect()
        });
        return Ok(CoverageResult::from_bits(bits, witnesses));
    }

    let shard = opts.shard_len.max(64) as i128;
    let windows: Vec<(i128, i128)> =
        (0..=(hi - lo) / shard).map(|i| (lo + i * shard, (lo + (i + 1) * shard - 1).min(hi))).collect();
    let parts: Vec<BitArray> =
        with_pool(opts.jobs, || windows.par_iter().map(|&(a, b)| prepared.window(a, b)).collect())?;
    let bits = BitArray::concat(&parts).expect("at least one window");
    let witnesses = if record {
        let k = prepared.k();
        let need = prepared.parity.is_some();
        let ns: Vec<i128> = bits.iter_ones().collect();
        let found: Vec<(i128, Vec<Witness>)> = with_pool(opts.jobs, || {
            ns.par_iter()
                .filter_map(|&n| {
                    let vals = prepared.decompose(k - 1, n, need)?;
                    Some((n, prepared.witnesses_for(&vals)?))
                })
                .collect()
        })?;
        if found.len() != ns.len() {
            return Err(Error::invalid("witness reconstruction missed a representable target"));
        }
        Some(found.into_iter().collect())
    } else {
        None
    };
    Ok(CoverageResult::from_bits(bits, witnesses))
}

/// Least unrepresentable target in the problem's range.
pub fn first_gap(problem: &CoverageProblem) -> Result<Option<i128>> {
    Ok(coverage_scan(problem)?.first_gap())
}
