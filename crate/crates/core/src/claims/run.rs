use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;

use super::checkpoint::{parameter_hash, Checkpoint};
use super::search::{octagonal_excluded_mismatches, quartic_value, search_x4_minus_y3_plus_z2};
use super::{
    judge, lookup, CaseReport, Check, ClaimReport, ClaimSpec, CountKind, Family, IdentityKind, LemmaKind,
    QuarticBounds, WitnessSample,
};
use crate::arith::{ceil_div, floor_div, is_power_of_two, isqrt};
use crate::atoms::{polygonal_value, triangular_floor_identity, octagonal_shift_identity, Var};
use crate::coverage::{coverage_scan_with, CoverageProblem, DivisorTemplate, ScanOptions, WitnessMode};
use crate::error::{Error, Result};
use crate::primeseq::{self, sieve};
use crate::ternary::{self, DicksonFormId, FormTriple, SphereKind};

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Overrides the claim's default `N`.
    pub bound: Option<i128>,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    pub checkpoint: Option<PathBuf>,
    /// Targets per checkpointed chunk of a coverage case.
    pub chunk: i128,
    /// Witnesses attached to each representable coverage case.
    pub witness_samples: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { bound: None, jobs: 0, checkpoint: None, chunk: 25_000, witness_samples: 2 }
    }
}

pub fn run_claim(id: &str, opts: &RunOptions) -> Result<ClaimReport> {
    run_claim_spec(lookup(id)?, opts)
}

pub fn run_claim_spec(spec: &ClaimSpec, opts: &RunOptions) -> Result<ClaimReport> {
    let n = opts.bound.unwrap_or(spec.default_bound);
    if n < 1 {
        return Err(Error::invalid(format!("bound {n} must be positive")));
    }
    if opts.chunk < 1 {
        return Err(Error::invalid("checkpoint chunk must be positive"));
    }
    let started = Instant::now();
    let hash = parameter_hash(&spec.check, n);
    let checkpoint = match &opts.checkpoint {
        Some(path) => {
            let cp = Checkpoint::load(path, &spec.id, &hash)?.unwrap_or_else(|| Checkpoint::new(&spec.id, hash));
            Some((path.clone(), cp))
        }
        None => None,
    };
    let mut runner = Runner { n, opts, checkpoint, cursor: 0 };
    let cases = if opts.jobs > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
        pool.install(|| runner.run(&spec.check))?
    } else {
        runner.run(&spec.check)?
    };
    let (verdict, expectation_met) = judge(spec.standing, &spec.expected, &cases);
    Ok(ClaimReport {
        id: spec.id.clone(),
        standing: spec.standing,
        bound: n,
        lo: cases.iter().map(|c| c.lo).min().unwrap_or(0),
        hi: cases.iter().map(|c| c.hi).max().unwrap_or(n),
        verdict,
        expectation_met,
        cases,
        elapsed_seconds: started.elapsed().as_secs_f64(),
        checkpoint_cursor: runner.checkpoint.as_ref().and_then(|(_, cp)| cp.last_completed),
    })
}

struct Runner<'a> {
    n: i128,
    opts: &'a RunOptions,
    checkpoint: Option<(PathBuf, Checkpoint)>,
    /// Index of the next case; checkpoint entries are matched by position.
    cursor: usize,
}

impl Runner<'_> {
    fn scan_opts(&self) -> ScanOptions {
        ScanOptions::default()
    }

    /// Prior progress on the current case: `(last completed, gaps so far)`.
    fn resume(&self, label: &str) -> Result<Option<(i128, Vec<i128>)>> {
        let Some((_, cp)) = &self.checkpoint else { return Ok(None) };
        match cp.cases.get(self.cursor) {
            Some(c) if c.label == label => Ok(Some((c.last_completed, c.gaps.clone()))),
            Some(c) => Err(Error::CheckpointCorrupt(format!("case {} is `{}`, expected `{label}`", self.cursor, c.label))),
            None => Ok(None),
        }
    }

    fn record(&mut self, label: &str, n: i128, gaps: &[i128]) -> Result<()> {
        if let Some((path, cp)) = &mut self.checkpoint {
            if cp.cases.len() <= self.cursor {
                cp.advance(label, n, gaps);
            } else {
                let c = &mut cp.cases[self.cursor];
                c.last_completed = n;
                c.gaps.extend_from_slice(gaps);
                cp.last_completed = Some(n);
            }
            cp.save(path)?;
        }
        Ok(())
    }

    /// A case computed in one piece; a checkpoint only skips it when done.
    fn simple(&mut self, label: String, lo: i128, hi: i128, f: impl FnOnce() -> Result<Vec<i128>>) -> Result<CaseReport> {
        let gaps = match self.resume(&label)? {
            Some((done, gaps)) if done >= hi => gaps,
            _ => {
                let gaps = f()?;
                self.record(&label, hi, &gaps)?;
                gaps
            }
        };
        self.cursor += 1;
        Ok(CaseReport::new(label, lo, hi, gaps))
    }

    /// A coverage scan, chunked when checkpointing.
    fn coverage(&mut self, label: String, problem: &CoverageProblem) -> Result<CaseReport> {
        let (lo, hi) = (problem.lo, problem.hi);
        let (mut next, mut gaps) = match self.resume(&label)? {
            Some((done, gaps)) => (done + 1, gaps),
            None => (lo, Vec::new()),
        };
        let step = if self.checkpoint.is_some() { self.opts.chunk } else { hi - lo + 1 };
        while next <= hi {
            let end = (next + step - 1).min(hi);
            let found = coverage_scan_with(&problem.with_range(next, end), &self.scan_opts())?.gaps;
            self.record(&label, end, &found)?;
            gaps.extend(found);
            next = end + 1;
        }
        self.cursor += 1;
        let mut case = CaseReport::new(label, lo, hi, gaps);
        case.witnesses = self.samples(problem, &case.gaps)?;
        Ok(case)
    }

    fn samples(&self, problem: &CoverageProblem, gaps: &[i128]) -> Result<Vec<WitnessSample>> {
        let (lo, hi) = (problem.lo, problem.hi);
        let mut targets: Vec<i128> = [lo, hi].into_iter().filter(|n| gaps.binary_search(n).is_err()).collect();
        targets.dedup();
        targets.truncate(self.opts.witness_samples);
        let opts = ScanOptions { witnesses: WitnessMode::All, ..self.scan_opts() };
        let mut out = Vec::new();
        for n in targets {
            let r = coverage_scan_with(&problem.with_range(n, n), &opts)?;
            if let Some(ws) = r.witnesses.and_then(|mut m| m.remove(&n)) {
                let text: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
                out.push(WitnessSample { n, witness: text.join(", ") });
            }
        }
        Ok(out)
    }

    fn family(&mut self, f: &Family) -> Result<CaseReport> {
        let p = f.problem(self.n)?;
        self.coverage(f.label.clone(), &p)
    }

    fn run(&mut self, check: &Check) -> Result<Vec<CaseReport>> {
        let n = self.n;
        match check {
            Check::Coverage(families) => families.iter().map(|f| self.family(f)).collect(),
            Check::Progression { family, modulus, residue } => {
                let first = family.start.min(n);
                let p = CoverageProblem::new(
                    family.terms.clone(),
                    family.cross,
                    modulus * first + residue,
                    modulus * n + residue,
                )?;
                let mut case = self.coverage(family.label.clone(), &p)?;
                case.gaps = case
                    .gaps
                    .iter()
                    .filter(|&&g| (g - residue) % modulus == 0)
                    .map(|g| (g - residue) / modulus)
                    .collect();
                case.lo = first;
                case.hi = n;
                Ok(vec![case])
            }
            Check::Divisor { label, template, c_lo, c_hi } => {
                (*c_lo..=*c_hi).map(|c| self.divisor_case(label, template, c)).collect()
            }
            Check::Octagonal => {
                Ok(vec![self.simple("p8+p8+2p8 vs excluded set".into(), 0, n, || octagonal_excluded_mismatches(n))?])
            }
            Check::Dickson => DicksonFormId::ALL
                .iter()
                .map(|&id| {
                    let t = id.triple();
                    self.simple(t.to_string(), 0, n, || {
                        let rep = ternary::representable_set(&t, n);
                        Ok((0..=n).filter(|&k| rep.get(k) == ternary::dickson_exceptional(id, k)).collect())
                    })
                })
                .collect(),
            Check::ThreeSquares => Ok(vec![self.simple("x^2+y^2+z^2".into(), 0, n, || {
                let rep = ternary::representable_set(&FormTriple { a: 1, b: 1, c: 1 }, n);
                Ok((0..=n).filter(|&k| rep.get(k) != ternary::is_sum_of_three_squares(k)).collect())
            })?]),
            Check::Count(kind) => Ok(vec![self.simple(format!("{kind:?}"), 1, n, || count_failures(*kind, n))?]),
            Check::HBound => [(1, 1, 1), (1, 1, 2), (1, 1, 5)]
                .into_iter()
                .map(|(a, b, c)| {
                    let t = FormTriple { a, b, c };
                    self.simple(format!("H{t}"), 1, n, || {
                        (1..=n)
                            .filter_map(|k| match (ternary::h_value(&t, k), ternary::h_lower_bound(&t, k)) {
                                (Ok(h), Ok(b)) => (h < b).then_some(Ok(k)),
                                (Err(e), _) | (_, Err(e)) => Some(Err(e)),
                            })
                            .collect()
                    })
                })
                .collect(),
            Check::Lemma(kind) => Ok(vec![self.simple(format!("{kind:?}"), 1, n, || lemma_failures(*kind, n))?]),
            Check::Identity(kind) => {
                let lo = if identity_is_symmetric(*kind) { -n } else { 0 };
                Ok(vec![self.simple(format!("{kind:?}"), lo, n, || identity_failures(*kind, n))?])
            }
            Check::Goldbach(pairs) => pairs
                .iter()
                .map(|&(a, b)| {
                    self.simple(format!("floor(p/{a})+floor(q/{b})"), 3, n, || {
                        let table = sieve((a.max(b) * (n + 1)).max(2))?;
                        let mut out = Vec::new();
                        for k in 3..=n {
                            if primeseq::goldbach_floor_check(a, b, k, &table)?.is_none() {
                                out.push(k);
                            }
                        }
                        Ok(out)
                    })
                })
                .collect(),
            Check::TwinSum => Ok(vec![self.simple("s+t distinct, one even".into(), 1, n, || {
                let table = sieve(9 * n + 10)?;
                let set = primeseq::twin_floor_set(n, &table)?;
                Ok((1..=n).filter(|&k| primeseq::twin_sum_check(k, &set).is_none()).collect())
            })?]),
            Check::TwinPentagonal => Ok(vec![self.simple("s+p5(x)".into(), 1, n, || {
                let table = sieve(9 * n + 10)?;
                let set = primeseq::twin_floor_set(n, &table)?;
                let mut out = Vec::new();
                for k in 1..=n {
                    if primeseq::twin_pentagonal_check(k, &set)?.is_none() {
                        out.push(k);
                    }
                }
                Ok(out)
            })?]),
            Check::PhiSquare => Ok(vec![self.simple("x^2+y^2+phi(z^2)".into(), 2, n, || {
                primeseq::conj512_scan(n.max(2), &sieve(n.max(2))?)
            })?]),
            Check::QuarterPronic => Ok(vec![self.simple("p+floor(k(k+1)/4)".into(), 2, n, || {
                let table = sieve(n.max(2))?;
                let mut out = Vec::new();
                for k in 2..=n {
                    if primeseq::prime_plus_quarter_pronic(k, &table)?.is_none() {
                        out.push(k);
                    }
                }
                Ok(out)
            })?]),
            Check::PrimeTriangular => Ok(vec![self.simple("p+T(x)".into(), 0, n, || {
                primeseq::prime_plus_triangular_scan(n, &sieve(n.max(2))?)
            })?]),
            Check::QuarticWitnesses(list) => {
                let lo = list.iter().map(|w| w.0).min().unwrap_or(0);
                let hi = list.iter().map(|w| w.0).max().unwrap_or(0);
                Ok(vec![self.simple("x^4-y^3+z^2".into(), lo, hi, || {
                    let mut out = Vec::new();
                    for &(m, x, y, z) in list {
                        if quartic_value(x, y, z)? != m || x < 1 || y < 1 || z < 1 {
                            out.push(m);
                        }
                    }
                    Ok(out)
                })?])
            }
            Check::QuarticSearch(bounds) => {
                Ok(vec![self.simple("x^4-y^3+z^2 search".into(), -n, n, || quartic_failures(n, *bounds))?])
            }
        }
    }

    fn divisor_case(&mut self, label: &str, template: &DivisorTemplate, c: i128) -> Result<CaseReport> {
        let p = template.instantiate(c, 0, self.n)?;
        let mut case = self.coverage(format!("{label} c={c}"), &p)?;
        case.param = Some(c);
        Ok(case)
    }
}

fn count_failures(kind: CountKind, n: i128) -> Result<Vec<i128>> {
    let (t, f): (FormTriple, fn(i128) -> Result<i128>) = match kind {
        CountKind::Hurwitz => (FormTriple { a: 1, b: 1, c: 1 }, ternary::hurwitz_sphere_count),
        CountKind::CooperLam => (FormTriple { a: 1, b: 1, c: 2 }, ternary::cooper_lam_count),
        CountKind::Gpq => (FormTriple { a: 1, b: 1, c: 5 }, ternary::gpq_count),
    };
    let rows: Vec<Result<Option<i128>>> = (1..=n)
        .into_par_iter()
        .map(|k| Ok((ternary::rep_count(&t, k * k) as i128 != f(k)?).then_some(k)))
        .collect();
    rows.into_iter().filter_map(|r| r.transpose()).collect()
}

fn sphere_ok(kind: SphereKind, k: i128) -> bool {
    let c = match kind {
        SphereKind::ThreeSquares => 1,
        SphereKind::OneOneTwo => 2,
        SphereKind::OneOneFive => 5,
    };
    match ternary::sphere_point_proper(kind, k) {
        Ok(w) => {
            let (x, y, z) = (w.get(Var('x')).unwrap_or(k), w.get(Var('y')).unwrap_or(k), w.get(Var('z')).unwrap_or(k));
            let z_ok = kind != SphereKind::ThreeSquares || z.abs() < k;
            x * x + y * y + c * z * z == k * k && x.abs() < k && y.abs() < k && z_ok
        }
        Err(_) => false,
    }
}

fn lemma_failures(kind: LemmaKind, n: i128) -> Result<Vec<i128>> {
    let xyz = |w: &crate::atoms::Witness| w.values();
    Ok(match kind {
        LemmaKind::SphereThreeSquares => (1..=n)
            .filter(|&k| !is_power_of_two(k) && !sphere_ok(SphereKind::ThreeSquares, k))
            .collect(),
        LemmaKind::SphereOneOneTwo => (2..=n).filter(|&k| !sphere_ok(SphereKind::OneOneTwo, k)).collect(),
        LemmaKind::SphereOneOneFive => (1..=n)
            .filter(|&k| !is_power_of_two(k) && !sphere_ok(SphereKind::OneOneFive, k))
            .collect(),
        LemmaKind::TwoSquaresAvoidFive => {
            let r = isqrt(n);
            let mut out = Vec::new();
            for u in -r..=r {
                for v in -r..=r {
                    let s = u * u + v * v;
                    if s == 0 || s > n || s % 5 != 0 {
                        continue;
                    }
                    let ok = matches!(ternary::rewrite_two_squares_avoiding_5(u, v),
                        Ok((x, y)) if x * x + y * y == s && (x * y) % 5 != 0);
                    if !ok {
                        out.push(s);
                    }
                }
            }
            out.sort_unstable();
            out.dedup();
            out
        }
        LemmaKind::FiveFiveOneOddZ => (0..=n)
            .filter(|k| matches!(k % 20, 6 | 14))
            .filter(|&k| {
                !matches!(ternary::five_five_one_odd_z(k), Ok(w) if {
                    let v = xyz(&w);
                    5 * v[0] * v[0] + 5 * v[1] * v[1] + v[2] * v[2] == k && v[2].rem_euclid(2) == 1
                })
            })
            .collect(),
        LemmaKind::FiveFiveOneSplitParity => (2..=n)
            .filter(|k| matches!(k % 20, 1 | 9) || matches!(k % 40, 11 | 19))
            .filter(|&k| {
                let mixed = matches!(k % 20, 1 | 9);
                !matches!(ternary::five_five_one_split_parity(k), Ok(w) if {
                    let v = xyz(&w);
                    let parity = if mixed { (v[0] + v[1]).rem_euclid(2) == 1 } else { v[1].rem_euclid(2) == 1 };
                    5 * v[0] * v[0] + 5 * v[1] * v[1] + v[2] * v[2] == k && parity
                })
            })
            .collect(),
    })
}

fn identity_is_symmetric(kind: IdentityKind) -> bool {
    !matches!(
        kind,
        IdentityKind::HexagonalTriangular | IdentityKind::QuarterPronicSet | IdentityKind::TwinSets
    )
}

/// Values `<= n` of `f` over `|x| <= r`, sorted and deduplicated.
fn value_set(r: i128, n: i128, f: impl Fn(i128) -> i128) -> Vec<i128> {
    let mut v: Vec<i128> = (-r..=r).map(f).filter(|&v| (0..=n).contains(&v)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn symmetric_difference(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out: Vec<i128> = a
        .iter()
        .filter(|x| b.binary_search(x).is_err())
        .chain(b.iter().filter(|x| a.binary_search(x).is_err()))
        .copied()
        .collect();
    out.sort_unstable();
    out
}

fn identity_failures(kind: IdentityKind, n: i128) -> Result<Vec<i128>> {
    let p8 = |x| polygonal_value(8, x);
    let xs = || -n..=n;
    let mut out = Vec::new();
    match kind {
        IdentityKind::OctagonalShift => {
            for x in xs() {
                let shift = 4 * p8(x)? + 1 == p8(1 - 2 * x)?;
                if !shift || !(1..=20).all(|m| octagonal_shift_identity(x, m)) {
                    out.push(x);
                }
            }
        }
        IdentityKind::OctagonalShiftAsPrinted => {
            for x in xs() {
                let (a, b) = (p8(x)?, p8(1 - 2 * x)?);
                if !(1..=20).all(|m| floor_div(a, 2 * m) == floor_div(b, 4 * m)) {
                    out.push(x);
                }
            }
        }
        IdentityKind::TriangularFloor => out.extend(xs().filter(|&k| !triangular_floor_identity(k))),
        IdentityKind::SFunction => {
            for x in xs() {
                if ceil_div(p8(-x)?, 2) != x + ceil_div(3 * x * x, 2) {
                    out.push(x);
                }
            }
        }
        IdentityKind::PolygonalBasics => {
            for x in xs() {
                if polygonal_value(3, x)? != x * (x + 1) / 2 || polygonal_value(4, x)? != x * x {
                    out.push(x);
                }
            }
        }
        IdentityKind::HexagonalTriangular => {
            let r = isqrt(2 * n) + 2;
            let tri = value_set(r, n, |x| x * (x + 1) / 2);
            let hex = value_set(r, n, |x| polygonal_value(6, -x).unwrap_or(-1));
            out = symmetric_difference(&tri, &hex);
        }
        IdentityKind::QuarterPronicSet => {
            let r = isqrt(4 * n) + 2;
            let a = value_set(r, n, |x| x * x + floor_div(x, 2));
            let b = value_set(r, n, |k| if k >= 0 { k * (k + 1) / 4 } else { -1 });
            out = symmetric_difference(&a, &b);
        }
        IdentityKind::TwinSets => {
            let table = sieve(9 * n + 10)?;
            let a = primeseq::twin_floor_set(n, &table)?;
            let b = primeseq::twin_floor_set_thirds(n, &table)?;
            out = symmetric_difference(&a, &b);
        }
        IdentityKind::ScalingEmbedding => {
            for x in xs() {
                if !(1..=20).all(|a| floor_div((a * x) * (a * x), a) == a * x * x) {
                    out.push(x);
                }
            }
        }
    }
    Ok(out)
}

fn quartic_failures(n: i128, bounds: QuarticBounds) -> Result<Vec<i128>> {
    let rows: Vec<Result<Option<i128>>> = (-n..=n)
        .into_par_iter()
        .map(|m| match search_x4_minus_y3_plus_z2(m, bounds) {
            Ok(_) => Ok(None),
            Err(Error::BoundExhausted(_)) => Ok(Some(m)),
            Err(e) => Err(e),
        })
        .collect();
    rows.into_iter().filter_map(|r| r.transpose()).collect()
}
