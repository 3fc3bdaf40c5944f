use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use floorsum_ffi::*;

fn last_error() -> String {
    let p = fs_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn values_and_counts() {
    let mut v = 0i64;
    unsafe {
        assert_eq!(fs_polygonal_value(8, -5, &mut v), FsStatus::Ok);
        assert_eq!(v, 85);
        let mut r = 0u64;
        assert_eq!(fs_rep_count(1, 1, 1, 9, &mut r), FsStatus::Ok);
        assert_eq!(r, 30);
        assert_eq!(fs_hurwitz_sphere_count(3, &mut v), FsStatus::Ok);
        assert_eq!(v, 30);
        assert_eq!(fs_cooper_lam_count(2, &mut v), FsStatus::Ok);
        assert_eq!(v, 12);
        assert_eq!(fs_gpq_count(1, &mut v), FsStatus::Ok);
        assert_eq!(v, 4);
        assert_eq!(fs_h_value(1, 1, 1, 3, &mut v), FsStatus::Ok);
        assert_eq!(v, 5);
        assert_eq!(fs_excluded_set_member(1, 1, &mut v), FsStatus::Ok);
        assert_eq!(v, 60);
        let mut flag = -1;
        assert_eq!(fs_dickson_exceptional(1, 1, 2, 14, &mut flag), FsStatus::Ok);
        assert_eq!(flag, 1);
        assert_eq!(fs_dickson_exceptional(1, 1, 2, 13, &mut flag), FsStatus::Ok);
        assert_eq!(flag, 0);
    }
}

#[test]
fn errors_set_status_and_message() {
    let mut v = 0i64;
    unsafe {
        assert_eq!(fs_polygonal_value(2, 1, &mut v), FsStatus::InvalidArgument);
        assert!(last_error().contains("below 3"));
        assert_eq!(fs_polygonal_value(8, 1, ptr::null_mut()), FsStatus::NullPointer);
        assert_eq!(fs_polygonal_value(8, i64::MAX, &mut v), FsStatus::Overflow);
        assert_eq!(fs_rep_count(0, 1, 1, 1, &mut 0), FsStatus::InvalidArgument);
        let bad = CString::new("x^2 + y^7").unwrap();
        let mut scan = ptr::null_mut();
        assert_eq!(fs_scan_new(bad.as_ptr(), FsRounding::Floor, 0, 10, &mut scan), FsStatus::Parse);
        assert!(scan.is_null());
        assert!(last_error().contains("column 9"));
        let id = CString::new("no.such.id").unwrap();
        let mut rep = ptr::null_mut();
        assert_eq!(fs_claim_run(id.as_ptr(), 0, 1, &mut rep), FsStatus::UnknownClaim);
        assert!(rep.is_null());
    }
}

#[test]
fn scan_handle() {
    let expr = CString::new("x^2 + 3y^2 + floor(z^2/10)").unwrap();
    let mut scan = ptr::null_mut();
    unsafe {
        assert_eq!(fs_scan_new(expr.as_ptr(), FsRounding::Floor, 0, 25_000, &mut scan), FsStatus::Ok);
        let mut count = 0usize;
        assert_eq!(fs_scan_gap_count(scan, &mut count), FsStatus::Ok);
        assert_eq!(count, 1);
        let mut buf = [0i64; 4];
        let mut written = 0usize;
        assert_eq!(fs_scan_gaps(scan, buf.as_mut_ptr(), buf.len(), &mut written), FsStatus::Ok);
        assert_eq!((written, buf[0]), (1, 20142));
        let mut flag = -1;
        assert_eq!(fs_scan_is_representable(scan, 20142, &mut flag), FsStatus::Ok);
        assert_eq!(flag, 0);
        assert_eq!(fs_scan_is_representable(scan, 20141, &mut flag), FsStatus::Ok);
        assert_eq!(flag, 1);
        assert_eq!(fs_scan_is_representable(scan, 30_000, &mut flag), FsStatus::InvalidArgument);
        fs_scan_free(scan);
        fs_scan_free(ptr::null_mut());
    }
}

#[test]
fn claim_and_prime_handles() {
    let id = CString::new("rmk1.3").unwrap();
    let mut rep = ptr::null_mut();
    unsafe {
        assert_eq!(fs_claim_run(id.as_ptr(), 0, 2, &mut rep), FsStatus::Ok);
        let mut verdict = FsVerdict::Refuted;
        assert_eq!(fs_claim_report_verdict(rep, &mut verdict), FsStatus::Ok);
        assert_eq!(verdict, FsVerdict::Confirmed);
        let mut met = 0;
        assert_eq!(fs_claim_report_expectation_met(rep, &mut met), FsStatus::Ok);
        assert_eq!(met, 1);
        let mut gaps = 0usize;
        assert_eq!(fs_claim_report_gap_count(rep, &mut gaps), FsStatus::Ok);
        assert_eq!(gaps, 1);
        let mut json = ptr::null_mut();
        assert_eq!(fs_claim_report_json(rep, &mut json), FsStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        fs_string_free(json);
        assert!(text.contains("\"id\": \"rmk1.3\""));
        assert!(text.contains("20142"));
        fs_claim_report_free(rep);

        let mut table = ptr::null_mut();
        assert_eq!(fs_prime_table_new(100, &mut table), FsStatus::Ok);
        let mut n = 0usize;
        assert_eq!(fs_prime_table_count(table, &mut n), FsStatus::Ok);
        assert_eq!(n, 25);
        let mut flag = -1;
        assert_eq!(fs_prime_table_is_prime(table, 97, &mut flag), FsStatus::Ok);
        assert_eq!(flag, 1);
        assert_eq!(fs_prime_table_is_prime(table, 91, &mut flag), FsStatus::Ok);
        assert_eq!(flag, 0);
        assert_eq!(fs_prime_table_is_prime(table, 101, &mut flag), FsStatus::InvalidArgument);
        fs_prime_table_free(table);
    }
}

/// Directory holding the static library built alongside this test.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(|deps| deps.parent()).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_header() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = artifact_dir().join("libfloorsum_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include "floorsum.h"
int main(void) {
    int64_t v = 0;
    if (fs_hurwitz_sphere_count(3, &v) != FS_STATUS_OK || v != 30) return 1;
    FsScan *scan = NULL;
    if (fs_scan_new("floor(x^2/5)+floor(y^2/5)+floor(z^2/5)", FS_ROUNDING_FLOOR, 0, 2000, &scan) != FS_STATUS_OK) return 2;
    size_t gaps = 99;
    if (fs_scan_gap_count(scan, &gaps) != FS_STATUS_OK || gaps != 0) return 3;
    fs_scan_free(scan);
    if (fs_scan_new("x^", FS_ROUNDING_FLOOR, 0, 10, &scan) != FS_STATUS_PARSE || scan != NULL) return 4;
    printf("%s\n", fs_last_error());
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stdout));
    assert!(String::from_utf8_lossy(&run.stdout).contains("parse error"));
}
