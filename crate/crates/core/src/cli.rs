//! The `floorsum` command line.
//!
//! Exit status: 0 when the outcome is as expected, 1 when a claim is
//! refuted or its expectation is missed (for `scan`, only with
//! `--expect-no-gaps`), 2 for usage and input errors.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::claims::{
    self, catalog, run_claim_spec, table_for, Check, ClaimKind, ClaimReport, ClaimSpec, Expected, Family,
    RunOptions, Standing,
};
use crate::coverage::{CoverageProblem, CrossConstraint, Rounding};
use crate::dsl::{attach_congruence, parse_congruence, parse_cross, parse_family};
use crate::error::{Error, Result};
use crate::report::{write_gap_csv, ReportDocument, Subject, DEFAULT_GAP_LIMIT};
use crate::ternary::{self, FormTriple};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// `print!` that ends the process quietly when stdout is closed, so piping
/// into `head` does not panic.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if write!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(EXIT_OK);
        }
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        out!($($arg)*);
        out!("\n");
    }};
}

#[derive(Debug, Parser)]
#[command(name = "floorsum", version, about = "Bounded checks of floor and ceiling quadratic sum representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one catalog claim.
    Claim {
        id: String,
        /// Override the claim's default bound N.
        #[arg(long)]
        max: Option<i128>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Scan an ad-hoc family such as "x^2 + 3y^2 + floor(z^2/10)".
    Scan {
        expr: String,
        #[arg(long, default_value_t = 10_000)]
        max: i128,
        #[arg(long, default_value_t = 0)]
        min: i128,
        #[command(flatten)]
        rounding: RoundingArgs,
        /// Congruence on one variable, e.g. "y=1 mod 2". Repeatable.
        #[arg(long = "constraint", value_name = "VAR=R,.. mod M")]
        constraints: Vec<String>,
        /// Joint condition: one-odd, one-even, middle-odd, distinct, distinct-one-even.
        #[arg(long)]
        cross: Option<String>,
        /// Exit 1 when any gap is found.
        #[arg(long)]
        expect_no_gaps: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Scan a family with a free denominator `c` over a range of c.
    Exceptional {
        expr: String,
        /// Inclusive range such as 1..12.
        #[arg(long, default_value = "1..12")]
        c_range: String,
        #[arg(long, default_value_t = 10_000)]
        max: i128,
        #[command(flatten)]
        rounding: RoundingArgs,
        #[arg(long)]
        cross: Option<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Representation count of n by ax^2+by^2+cz^2.
    Count {
        a: i128,
        b: i128,
        c: i128,
        n: Option<i128>,
        /// Count on the sphere of this radius, i.e. n = r^2.
        #[arg(long, conflicts_with = "n")]
        square_radius: Option<i128>,
    },
    /// Run the identity, count-formula and lemma checks.
    Identities {
        #[arg(long)]
        max: Option<i128>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// List the claim catalog.
    List {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Resume from and save progress to this file.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Targets per checkpoint save.
    #[arg(long, default_value_t = 25_000)]
    chunk: i128,
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Print the JSON report instead of the summary.
    #[arg(long)]
    json: bool,
    /// Write every gap to a CSV file with header "n".
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Representations shown per case.
    #[arg(long, default_value_t = 2)]
    samples: usize,
    /// Gaps listed in the report before truncation.
    #[arg(long, default_value_t = DEFAULT_GAP_LIMIT)]
    gap_limit: usize,
}

impl RunArgs {
    fn options(&self, bound: Option<i128>) -> RunOptions {
        RunOptions {
            bound,
            jobs: self.jobs,
            checkpoint: self.checkpoint.clone(),
            chunk: self.chunk,
            witness_samples: self.samples,
        }
    }
}

#[derive(Debug, Args)]
#[group(multiple = false)]
struct RoundingArgs {
    /// Round bare fractions down (the default).
    #[arg(long)]
    floor: bool,
    /// Round bare fractions up.
    #[arg(long)]
    ceil: bool,
    /// Keep only exactly divisible numerators of bare fractions.
    #[arg(long)]
    exact: bool,
}

impl RoundingArgs {
    fn rounding(&self) -> Rounding {
        if self.ceil {
            Rounding::Ceil
        } else if self.exact {
            Rounding::Exact
        } else {
            Rounding::Floor
        }
    }
}

pub fn main() -> i32 {
    run(std::env::args_os())
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("floorsum: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Claim { id, max, run } => cmd_claim(&id, max, &run),
        Command::Scan { expr, max, min, rounding, constraints, cross, expect_no_gaps, run } => {
            cmd_scan(&expr, min, max, rounding.rounding(), &constraints, cross.as_deref(), expect_no_gaps, &run)
        }
        Command::Exceptional { expr, c_range, max, rounding, cross, run } => {
            cmd_exceptional(&expr, &c_range, max, rounding.rounding(), cross.as_deref(), &run)
        }
        Command::Count { a, b, c, n, square_radius } => cmd_count(a, b, c, n, square_radius),
        Command::Identities { max, jobs } => cmd_identities(max, jobs),
        Command::List { json } => cmd_list(json),
    }
}

/// Runs `spec`, reporting progress on stderr and writing the requested outputs.
fn execute(spec: &ClaimSpec, subject: Subject, opts: &RunOptions, run: &RunArgs) -> Result<(ClaimReport, ReportDocument)> {
    let bound = opts.bound.unwrap_or(spec.default_bound);
    eprintln!("floorsum: running {} with N = {bound}", spec.id);
    let report = run_claim_spec(spec, opts)?;
    eprintln!("floorsum: finished in {:.2}s", report.elapsed_seconds);
    let doc = ReportDocument::from_claim(subject, &report, run.gap_limit);
    if let Some(path) = &run.report {
        doc.write(path)?;
    }
    if let Some(path) = &run.csv {
        write_gap_csv(path, &report.pooled_gaps())?;
    }
    if run.json {
        out!("{}", doc.to_json());
    } else {
        out!("{}", doc.render_text());
    }
    Ok((report, doc))
}

fn cmd_claim(id: &str, max: Option<i128>, run: &RunArgs) -> Result<i32> {
    let spec = claims::lookup(id)?;
    let subject = Subject::Claim { id: spec.id.clone(), standing: spec.standing, summary: spec.summary.clone() };
    let (report, _) = execute(spec, subject, &run.options(max), run)?;
    Ok(if report.expectation_met { EXIT_OK } else { EXIT_FAILED })
}

fn cross_constraint(name: Option<&str>) -> Result<CrossConstraint> {
    name.map(parse_cross).transpose().map(Option::unwrap_or_default)
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    expr: &str,
    min: i128,
    max: i128,
    rounding: Rounding,
    constraints: &[String],
    cross: Option<&str>,
    expect_no_gaps: bool,
    run: &RunArgs,
) -> Result<i32> {
    if min < 0 || min > max {
        return Err(Error::invalid(format!("range [{min}, {max}] is empty or negative")));
    }
    let parsed = parse_family(expr, rounding)?;
    if parsed.free.is_some() {
        return Err(Error::invalid("denominator `c` is only allowed with `exceptional`"));
    }
    let mut terms = parsed.terms;
    for c in constraints {
        attach_congruence(&mut terms, parse_congruence(c)?)?;
    }
    let cross = cross_constraint(cross)?;
    let problem = CoverageProblem::new(terms.clone(), cross, min, max)?;
    let label = problem.to_string();
    let spec = ClaimSpec {
        id: "scan".into(),
        summary: label.clone(),
        standing: Standing::Conjecture,
        kind: ClaimKind::Coverage,
        check: Check::Coverage(vec![Family::new(label.clone(), terms, min).with_cross(cross)]),
        expected: Expected::NoGaps,
        default_bound: max,
    };
    let (report, _) = execute(&spec, Subject::Scan { problem: label }, &run.options(None), run)?;
    Ok(if expect_no_gaps && report.total_gaps() > 0 { EXIT_FAILED } else { EXIT_OK })
}

fn parse_range(s: &str) -> Result<(i128, i128)> {
    let bad = || Error::invalid(format!("expected a range like 1..12, got `{s}`"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let lo: i128 = a.trim().parse().map_err(|_| bad())?;
    let hi: i128 = b.trim().parse().map_err(|_| bad())?;
    if lo < 1 || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn cmd_exceptional(
    expr: &str,
    c_range: &str,
    max: i128,
    rounding: Rounding,
    cross: Option<&str>,
    run: &RunArgs,
) -> Result<i32> {
    let (c_lo, c_hi) = parse_range(c_range)?;
    let mut template = parse_family(expr, rounding)?.template()?;
    template.cross = cross_constraint(cross)?;
    let label = template.to_string();
    let table = table_for(&template);
    let expected = match table {
        Some((_, members)) => Expected::SetEquals {
            members: members.iter().copied().filter(|c| (c_lo..=c_hi).contains(c)).collect(),
            first_gaps: Vec::new(),
        },
        None => Expected::NoGaps,
    };
    let spec = ClaimSpec {
        id: "exceptional".into(),
        summary: label.clone(),
        standing: Standing::Conjecture,
        kind: ClaimKind::ExceptionalSet,
        check: Check::Divisor { label: label.clone(), template, c_lo, c_hi },
        expected,
        default_bound: max,
    };
    let subject = Subject::Exceptional { family: label, c_lo, c_hi };
    let (report, _) = execute(&spec, subject, &run.options(None), run)?;
    let failing: Vec<i128> = report.cases.iter().filter(|c| !c.gaps.is_empty()).filter_map(|c| c.param).collect();
    if !run.json {
        outln!("  c with gaps  {failing:?}");
        for case in &report.cases {
            let first: Vec<String> = case.gaps.iter().take(8).map(|g| g.to_string()).collect();
            outln!("    c={:<4} {:>6} gaps  [{}]", case.param.unwrap_or_default(), case.gaps.len(), first.join(", "));
        }
    }
    match table {
        Some((id, _)) => {
            if !run.json {
                let verdict = if report.expectation_met { "matches" } else { "does not match" };
                outln!("  {verdict} catalog entry {id}");
            }
            Ok(if report.expectation_met { EXIT_OK } else { EXIT_FAILED })
        }
        None => Ok(EXIT_OK),
    }
}

/// The closed form for `triple` at `n = r^2`, when one is known.
fn closed_form(triple: FormTriple, r: i128) -> Result<Option<(&'static str, i128)>> {
    let s = triple.sorted();
    Ok(match (s.a, s.b, s.c) {
        (1, 1, 1) => Some(("Hurwitz", ternary::hurwitz_sphere_count(r)?)),
        (1, 1, 2) => Some(("Cooper-Lam", ternary::cooper_lam_count(r)?)),
        (1, 1, 5) => Some(("GPQ", ternary::gpq_count(r)?)),
        _ => None,
    })
}

fn cmd_count(a: i128, b: i128, c: i128, n: Option<i128>, radius: Option<i128>) -> Result<i32> {
    let triple = FormTriple::new(a, b, c)?;
    let (n, r) = match (n, radius) {
        (_, Some(r)) if r < 0 => return Err(Error::invalid("radius must be non-negative")),
        (_, Some(r)) => (crate::arith::mul(r, r)?, Some(r)),
        (Some(n), None) if n < 0 => return Err(Error::invalid("n must be non-negative")),
        (Some(n), None) => (n, crate::arith::exact_sqrt(n)),
        (None, None) => return Err(Error::invalid("give n or --square-radius")),
    };
    let count = ternary::rep_count(&triple, n);
    outln!("r_{triple}({n}) = {count}");
    let Some(r) = r.filter(|&r| r >= 1) else { return Ok(EXIT_OK) };
    outln!("H = {}", ternary::h_value(&triple, r)?);
    match closed_form(triple, r)? {
        Some((name, value)) => {
            let ok = value >= 0 && value as u128 == count;
            outln!("{name} formula = {value}, {}", if ok { "match" } else { "mismatch" });
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
        None => Ok(EXIT_OK),
    }
}

fn is_property_suite(check: &Check) -> bool {
    matches!(
        check,
        Check::Identity(_) | Check::Count(_) | Check::HBound | Check::Lemma(_) | Check::Dickson | Check::ThreeSquares
    )
}

fn cmd_identities(max: Option<i128>, jobs: usize) -> Result<i32> {
    let opts = RunOptions { bound: max, jobs, witness_samples: 0, ..RunOptions::default() };
    let mut code = EXIT_OK;
    for spec in catalog().iter().filter(|s| is_property_suite(&s.check)) {
        let report = run_claim_spec(spec, &opts)?;
        let status = if report.expectation_met { "ok" } else { "FAILED" };
        outln!("{status:<6} {:<34} N = {:<7} {}", spec.id, report.bound, spec.summary);
        if !report.expectation_met {
            code = EXIT_FAILED;
        }
    }
    Ok(code)
}

#[derive(Serialize)]
struct ListEntry<'a> {
    id: &'a str,
    standing: Standing,
    kind: ClaimKind,
    default_bound: i128,
    summary: &'a str,
}

fn cmd_list(json: bool) -> Result<i32> {
    let entries: Vec<ListEntry> = catalog()
        .iter()
        .map(|s| ListEntry {
            id: &s.id,
            standing: s.standing,
            kind: s.kind,
            default_bound: s.default_bound,
            summary: &s.summary,
        })
        .collect();
    if json {
        outln!("{}", serde_json::to_string_pretty(&entries).expect("catalog serializes"));
    } else {
        for e in &entries {
            outln!("{:<34} {:<10} {:>7}  {}", e.id, format!("{:?}", e.standing), e.default_bound, e.summary);
        }
    }
    Ok(EXIT_OK)
}
