use std::path::Path;
use std::process::{Command, Output};

use floorsum::claims::{run_claim, Checkpoint, RunOptions};
use floorsum::report::ReportDocument;

fn floorsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floorsum")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    floorsum(args).status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn report(path: &Path) -> ReportDocument {
    ReportDocument::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn golden_exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["claim", "rmk1.3"], 0),
        (&["claim", "thm1.1.iv.m5", "--max", "10000"], 0),
        (&["claim", "no.such.id"], 2),
        (&["claim", "conj5.1.ii.literal", "--max", "100"], 0),
        (&["claim", "conj1.1.floor.exceptions", "--max", "3"], 1),
        (&["claim", "thm1.1.iv.m5", "--max", "0"], 2),
        (&["scan", "x^2 + 3y^2 + floor(z^2/10)", "--max", "25000"], 0),
        (&["scan", "x^2 + 3y^2 + floor(z^2/10)", "--max", "25000", "--expect-no-gaps"], 1),
        (&["scan", "floor(x^2/5)+floor(y^2/5)+floor(z^2/5)", "--max", "10000", "--expect-no-gaps"], 0),
        (&["scan", "x^2 + y^", "--max", "10"], 2),
        (&["scan", "x^2 + floor(y^2/c)"], 2),
        (&["scan", "x^2+y^2+z^2", "--floor", "--ceil"], 2),
        (&["exceptional", "x^2+2y^2+floor(z^2/c)", "--c-range", "1..10"], 0),
        (&["exceptional", "2x^2+3y^2+floor(z^2/c)", "--c-range", "1..10"], 0),
        (&["exceptional", "x^2+y^2+z^2"], 2),
        (&["count", "1", "1", "1", "--square-radius", "3"], 0),
        (&["count", "1", "1", "2", "--square-radius", "2"], 0),
        (&["count", "1", "1", "5", "--square-radius", "1"], 0),
        (&["count", "1", "1"], 2),
        (&["list"], 0),
        (&["identities", "--max", "200"], 0),
        (&["--help"], 0),
        (&["bogus"], 2),
    ];
    for (args, want) in cases {
        assert_eq!(code(args), *want, "floorsum {}", args.join(" "));
    }
}

#[test]
fn outputs_carry_the_expected_values() {
    let o = floorsum(&["count", "1", "1", "1", "--square-radius", "3"]);
    let text = stdout(&o);
    assert!(text.contains("= 30"), "{text}");
    assert!(text.contains("H = 5"));
    assert!(text.contains("match"));
    assert!(stdout(&floorsum(&["count", "1", "1", "2", "--square-radius", "2"])).contains("= 12"));
    assert!(stdout(&floorsum(&["count", "1", "1", "5", "--square-radius", "1"])).contains("= 4"));

    let o = floorsum(&["exceptional", "2x^2+3y^2+floor(z^2/c)", "--c-range", "1..10"]);
    assert!(stdout(&o).contains("c with gaps  [1, 2, 8]"), "{}", stdout(&o));
    let o = floorsum(&["exceptional", "x^2+2y^2+floor(z^2/c)", "--c-range", "1..10"]);
    assert!(stdout(&o).contains("c with gaps  [1]"));

    let o = floorsum(&["scan", "ceil(x^2/1)+ceil(y^2/1)+ceil(z^2/5)", "--max", "10000", "--json"]);
    let doc = ReportDocument::from_json(&stdout(&o)).unwrap();
    assert!(doc.gap_count > 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("running"), "progress goes to stderr");

    let o = floorsum(&["list", "--json"]);
    let list: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(list.as_array().unwrap().len() >= 60);
}

#[test]
fn reports_csv_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("r.json");
    let csv = dir.path().join("g.csv");
    let args = ["scan", "x^2 + 3y^2 + floor(z^2/10)", "--max", "25000", "--report"];
    let o = Command::new(env!("CARGO_BIN_EXE_floorsum"))
        .args(args)
        .arg(&rep)
        .arg("--csv")
        .arg(&csv)
        .output()
        .unwrap();
    assert!(o.status.success());
    let text = std::fs::read_to_string(&rep).unwrap();
    let doc = ReportDocument::from_json(&text).unwrap();
    assert_eq!(doc.to_json(), text);
    assert_eq!(doc.gaps, vec![20142]);
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), "n\n20142\n");
}

#[test]
fn job_count_does_not_change_reports() {
    let dir = tempfile::tempdir().unwrap();
    let mut docs = Vec::new();
    for jobs in ["1", "3", "8"] {
        let path = dir.path().join(format!("j{jobs}.json"));
        let o = Command::new(env!("CARGO_BIN_EXE_floorsum"))
            .args(["claim", "conj1.2.i", "--max", "3000", "--jobs", jobs, "--report"])
            .arg(&path)
            .output()
            .unwrap();
        assert!(o.status.success());
        docs.push(report(&path).without_timing().to_json());
    }
    assert_eq!(docs[0], docs[1]);
    assert_eq!(docs[0], docs[2]);
}

#[test]
fn interrupted_run_resumes_to_the_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let cp = dir.path().join("cp.json");
    let id = "conj1.1.pronic.exceptions";
    let full = RunOptions { bound: Some(4000), checkpoint: Some(cp.clone()), chunk: 700, ..RunOptions::default() };
    let reference = run_claim(id, &RunOptions { bound: Some(4000), ..RunOptions::default() }).unwrap();
    let complete = run_claim(id, &full).unwrap();
    assert_eq!(complete.cases, reference.cases);

    // Cut the saved state back to the middle of the second case.
    let text = std::fs::read_to_string(&cp).unwrap();
    let mut state = Checkpoint::from_json(&text).unwrap();
    state.cases.truncate(2);
    let cut = 2099;
    state.cases[1].last_completed = cut;
    state.cases[1].gaps.retain(|&g| g <= cut);
    state.last_completed = Some(cut);
    state.save(&cp).unwrap();

    let resumed = run_claim(id, &full).unwrap();
    assert_eq!(resumed.cases, reference.cases);
    assert_eq!(resumed.verdict, reference.verdict);

    // A checkpoint for other parameters is refused.
    let other = RunOptions { bound: Some(4001), ..full.clone() };
    assert!(run_claim(id, &other).is_err());
    assert_eq!(
        code(&["claim", id, "--max", "4001", "--checkpoint", cp.to_str().unwrap()]),
        2,
        "hash mismatch is reported as an input error"
    );

    // The same through the binary, resuming a partial file.
    let cli_cp = dir.path().join("cli.json");
    std::fs::write(&cli_cp, state.to_json()).unwrap();
    let rep = dir.path().join("resumed.json");
    let o = Command::new(env!("CARGO_BIN_EXE_floorsum"))
        .args(["claim", id, "--max", "4000", "--chunk", "700", "--checkpoint"])
        .arg(&cli_cp)
        .arg("--report")
        .arg(&rep)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let fresh = dir.path().join("fresh.json");
    let o = Command::new(env!("CARGO_BIN_EXE_floorsum"))
        .args(["claim", id, "--max", "4000", "--report"])
        .arg(&fresh)
        .output()
        .unwrap();
    assert!(o.status.success());
    let (a, b) = (report(&rep).without_timing(), report(&fresh).without_timing());
    assert_eq!(a.gaps, b.gaps);
    assert_eq!(a.cases, b.cases);
    assert_eq!(a.verdict, b.verdict);
}
