//! C ABI over the `floorsum` core.
//!
//! Every function returns an [`FsStatus`]; results go through out-pointers.
//! On failure a message is kept per thread and can be read with
//! [`fs_last_error`]. Handles are opaque and must be released with their
//! matching `*_free` function. Integers cross the boundary as `int64_t`;
//! values outside that range report [`FsStatus::Overflow`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use floorsum::claims::{run_claim, ClaimReport, RunOptions, Verdict};
use floorsum::coverage::{coverage_scan, CoverageProblem, CoverageResult, CrossConstraint, Rounding};
use floorsum::dsl::parse_family;
use floorsum::primeseq::{sieve, PrimeTable};
use floorsum::report::{ReportDocument, Subject, DEFAULT_GAP_LIMIT};
use floorsum::ternary::{self, FormTriple};
use floorsum::{atoms, claims, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Overflow = 4,
    UnknownClaim = 5,
    CheckpointCorrupt = 6,
    Io = 7,
    SearchExhausted = 8,
    /// A panic was caught at the boundary.
    Internal = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FsRounding {
    Floor = 0,
    Ceil = 1,
    Exact = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FsVerdict {
    Confirmed = 0,
    EvidenceOnly = 1,
    Refuted = 2,
}

/// Result of a coverage scan.
pub struct FsScan {
    result: CoverageResult,
}

/// Result of a catalog claim run.
pub struct FsClaimReport {
    report: ClaimReport,
}

/// A sieved prime table.
pub struct FsPrimeTable {
    table: PrimeTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FsStatus {
    match e {
        Error::Overflow => FsStatus::Overflow,
        Error::Parse { .. } => FsStatus::Parse,
        Error::UnknownClaim(_) => FsStatus::UnknownClaim,
        Error::CheckpointCorrupt(_) => FsStatus::CheckpointCorrupt,
        Error::Io(_) => FsStatus::Io,
        Error::SearchExhausted(_) | Error::BoundExhausted(_) => FsStatus::SearchExhausted,
        _ => FsStatus::InvalidArgument,
    }
}

struct Fail(FsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording its error and containing panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> FsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FsStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            FsStatus::Internal
        }
    }
}

fn null(name: &str) -> Fail {
    Fail(FsStatus::NullPointer, format!("`{name}` is null"))
}

fn to_i64(v: i128) -> Result<i64, Fail> {
    i64::try_from(v).map_err(|_| Fail(FsStatus::Overflow, format!("{v} does not fit in int64_t")))
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(name))
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(FsStatus::InvalidArgument, format!("`{name}` is not UTF-8")))
}

fn triple(a: i64, b: i64, c: i64) -> Result<FormTriple, Fail> {
    Ok(FormTriple::new(a.into(), b.into(), c.into())?)
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn fs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The m-gonal number `((m-2)x^2 - (m-4)x)/2`.
///
/// # Safety
/// `result` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_polygonal_value(m: i64, x: i64, result: *mut i64) -> FsStatus {
    guard(|| {
        let r = out(result, "result")?;
        if m < 3 {
            return Err(Fail(FsStatus::InvalidArgument, format!("order {m} is below 3")));
        }
        *r = to_i64(atoms::polygonal_value(m.into(), x.into())?)?;
        Ok(())
    })
}

/// Number of integer solutions of `ax^2+by^2+cz^2 = n`.
///
/// # Safety
/// `result` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_rep_count(a: i64, b: i64, c: i64, n: i64, result: *mut u64) -> FsStatus {
    guard(|| {
        let r = out(result, "result")?;
        if n < 0 {
            return Err(Fail(FsStatus::InvalidArgument, "n must be non-negative".into()));
        }
        let count = ternary::rep_count(&triple(a, b, c)?, n.into());
        *r = u64::try_from(count).map_err(|_| Fail(FsStatus::Overflow, "count exceeds uint64_t".into()))?;
        Ok(())
    })
}

/// The H-function of the form at positive `n`.
///
/// # Safety
/// `result` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_h_value(a: i64, b: i64, c: i64, n: i64, result: *mut i64) -> FsStatus {
    guard(|| {
        let r = out(result, "result")?;
        *r = to_i64(ternary::h_value(&triple(a, b, c)?, n.into())?)?;
        Ok(())
    })
}

/// Closed-form count of `x^2+y^2+z^2 = n^2`.
///
/// # Safety
/// `result` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_hurwitz_sphere_count(n: i64, result: *mut i64) -> FsStatus {
    guard(|| {
        let r = out(result, "result")?;
        *r = to_i64(ternary::hurwitz_sphere_count(n.into())?)?;
        Ok(())
    })
}

/// Closed-form count of `x^2+y^2+2z^2 = n^2`.
///
/// # Safety
/// `result` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_cooper_lam_count(n: i64, result: *mut i64) -> FsStatus {
    guard(|| {
        let r = out(result, "result")?;
        *r = to_i64(ternary::cooper_lam_count(n.into())?)?;
        Ok(())
    })
}

/// Closed-form count of `x^2+y^2+5z^2 = n^2`.
///
/// # Safety
/// `result` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_gpq_count(n: i64, result: *mut i64) -> FsStatus {
    guard(|| {
        let r = out(result, "result")?;
        *r = to_i64(ternary::gpq_count(n.into())?)?;
        Ok(())
    })
}

/// Sets `result` to 1 when `n` is in the catalogued exceptional set of the
/// form, 0 otherwise.
///
/// # Safety
/// `result` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_dickson_exceptional(a: i64, b: i64, c: i64, n: i64, result: *mut i32) -> FsStatus {
    guard(|| {
        let r = out(result, "result")?;
        *r = ternary::dickson_exceptional_for(&triple(a, b, c)?, n.into())? as i32;
        Ok(())
    })
}

/// `4^(k+2) q - 2(4^k+2)/3`, the values missed by `p8+p8+2p8`.
///
/// # Safety
/// `result` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_excluded_set_member(k: u32, q: i64, result: *mut i64) -> FsStatus {
    guard(|| {
        let r = out(result, "result")?;
        *r = to_i64(claims::excluded_set_member(k, q.into())?)?;
        Ok(())
    })
}

/// Parses `expr` and scans `[lo, hi]`. Bare fractions use `rounding`.
///
/// # Safety
/// `expr` must be a nul-terminated string; `scan` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_scan_new(
    expr: *const c_char,
    rounding: FsRounding,
    lo: i64,
    hi: i64,
    scan: *mut *mut FsScan,
) -> FsStatus {
    guard(|| {
        let slot = out(scan, "scan")?;
        *slot = ptr::null_mut();
        let rounding = match rounding {
            FsRounding::Floor => Rounding::Floor,
            FsRounding::Ceil => Rounding::Ceil,
            FsRounding::Exact => Rounding::Exact,
        };
        let family = parse_family(text(expr, "expr")?, rounding)?;
        if family.free.is_some() {
            return Err(Fail(FsStatus::InvalidArgument, "denominator `c` needs a value".into()));
        }
        let problem = CoverageProblem::new(family.terms, CrossConstraint::None, lo.into(), hi.into())?;
        let result = coverage_scan(&problem)?;
        *slot = Box::into_raw(Box::new(FsScan { result }));
        Ok(())
    })
}

/// # Safety
/// `scan` must come from [`fs_scan_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fs_scan_free(scan: *mut FsScan) {
    if !scan.is_null() {
        drop(Box::from_raw(scan));
    }
}

/// # Safety
/// `scan` must be a live handle and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_scan_gap_count(scan: *const FsScan, result: *mut usize) -> FsStatus {
    guard(|| {
        let s = scan.as_ref().ok_or_else(|| null("scan"))?;
        *out(result, "result")? = s.result.gaps.len();
        Ok(())
    })
}

/// Copies up to `capacity` gaps, ascending, into `buffer` and stores the
/// number copied in `written`.
///
/// # Safety
/// `buffer` must hold `capacity` elements; the other pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fs_scan_gaps(
    scan: *const FsScan,
    buffer: *mut i64,
    capacity: usize,
    written: *mut usize,
) -> FsStatus {
    guard(|| {
        let s = scan.as_ref().ok_or_else(|| null("scan"))?;
        let w = out(written, "written")?;
        let take = capacity.min(s.result.gaps.len());
        if take > 0 && buffer.is_null() {
            return Err(null("buffer"));
        }
        for (i, &g) in s.result.gaps.iter().take(take).enumerate() {
            *buffer.add(i) = to_i64(g)?;
        }
        *w = take;
        Ok(())
    })
}

/// Sets `result` to 1 when `n` is representable, 0 otherwise.
///
/// # Safety
/// `scan` must be a live handle and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_scan_is_representable(scan: *const FsScan, n: i64, result: *mut i32) -> FsStatus {
    guard(|| {
        let s = scan.as_ref().ok_or_else(|| null("scan"))?;
        let r = out(result, "result")?;
        let n = i128::from(n);
        if n < s.result.lo || n > s.result.hi {
            return Err(Fail(FsStatus::InvalidArgument, format!("{n} is outside the scanned range")));
        }
        *r = s.result.representable.get(n) as i32;
        Ok(())
    })
}

/// Runs catalog claim `id`. A `bound` of 0 uses the claim's default and a
/// `jobs` of 0 uses every core.
///
/// # Safety
/// `id` must be a nul-terminated string; `report` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_claim_run(
    id: *const c_char,
    bound: i64,
    jobs: usize,
    report: *mut *mut FsClaimReport,
) -> FsStatus {
    guard(|| {
        let slot = out(report, "report")?;
        *slot = ptr::null_mut();
        let opts = RunOptions { bound: (bound != 0).then_some(bound.into()), jobs, ..RunOptions::default() };
        let r = run_claim(text(id, "id")?, &opts)?;
        *slot = Box::into_raw(Box::new(FsClaimReport { report: r }));
        Ok(())
    })
}

/// # Safety
/// `report` must come from [`fs_claim_run`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fs_claim_report_free(report: *mut FsClaimReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be a live handle and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_claim_report_verdict(report: *const FsClaimReport, result: *mut FsVerdict) -> FsStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        *out(result, "result")? = match r.report.verdict {
            Verdict::Confirmed => FsVerdict::Confirmed,
            Verdict::EvidenceOnly => FsVerdict::EvidenceOnly,
            Verdict::Refuted { .. } => FsVerdict::Refuted,
        };
        Ok(())
    })
}

/// Sets `result` to 1 when the claim produced its expected outcome.
///
/// # Safety
/// `report` must be a live handle and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_claim_report_expectation_met(report: *const FsClaimReport, result: *mut i32) -> FsStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        *out(result, "result")? = r.report.expectation_met as i32;
        Ok(())
    })
}

/// Distinct gaps pooled over all cases.
///
/// # Safety
/// `report` must be a live handle and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_claim_report_gap_count(report: *const FsClaimReport, result: *mut usize) -> FsStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        *out(result, "result")? = r.report.pooled_gaps().len();
        Ok(())
    })
}

/// The JSON report document. Release it with [`fs_string_free`].
///
/// # Safety
/// `report` must be a live handle and `json` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_claim_report_json(report: *const FsClaimReport, json: *mut *mut c_char) -> FsStatus {
    guard(|| {
        let r = &report.as_ref().ok_or_else(|| null("report"))?.report;
        let slot = out(json, "json")?;
        let spec = claims::lookup(&r.id)?;
        let subject = Subject::Claim { id: r.id.clone(), standing: r.standing, summary: spec.summary.clone() };
        let doc = ReportDocument::from_claim(subject, r, DEFAULT_GAP_LIMIT);
        *slot = CString::new(doc.to_json()).expect("JSON has no nul").into_raw();
        Ok(())
    })
}

/// Sieves the primes up to `limit`.
///
/// # Safety
/// `table` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_prime_table_new(limit: i64, table: *mut *mut FsPrimeTable) -> FsStatus {
    guard(|| {
        let slot = out(table, "table")?;
        *slot = ptr::null_mut();
        let t = sieve(limit.into())?;
        *slot = Box::into_raw(Box::new(FsPrimeTable { table: t }));
        Ok(())
    })
}

/// # Safety
/// `table` must come from [`fs_prime_table_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn fs_prime_table_free(table: *mut FsPrimeTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Number of primes in the table.
///
/// # Safety
/// `table` must be a live handle and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_prime_table_count(table: *const FsPrimeTable, result: *mut usize) -> FsStatus {
    guard(|| {
        let t = table.as_ref().ok_or_else(|| null("table"))?;
        *out(result, "result")? = t.table.primes().len();
        Ok(())
    })
}

/// Sets `result` to 1 when `n` is prime. `n` must not exceed the limit.
///
/// # Safety
/// `table` must be a live handle and `result` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn fs_prime_table_is_prime(table: *const FsPrimeTable, n: i64, result: *mut i32) -> FsStatus {
    guard(|| {
        let t = &table.as_ref().ok_or_else(|| null("table"))?.table;
        let r = out(result, "result")?;
        if i128::from(n) > t.limit() {
            return Err(Fail(FsStatus::InvalidArgument, format!("{n} is above the table limit {}", t.limit())));
        }
        *r = t.is_prime(n.into()) as i32;
        Ok(())
    })
}
