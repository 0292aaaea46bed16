//! Golden output, exit-code, and file-handling tests for the binary.

use std::process::Command;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hsc-lab"));
    c.env_remove("HSC_LAB_CAP");
    c
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = bin().args(args).output().expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().expect("no signal"),
    )
}

#[test]
fn zharmonic_golden_lines() {
    let (out, _, code) = run(&["zharmonic", "2", "4", "4"]);
    assert_eq!(out, "HARMONIC witness=0,1,3\n");
    assert_eq!(code, 0);

    let (out, _, code) = run(&["zharmonic", "4", "6", "10"]);
    assert_eq!(out, "NOT_HARMONIC reason=P2_PIGEONHOLE\n");
    assert_eq!(code, 1);

    let (out, _, code) = run(&["zharmonic", "6", "10", "15"]);
    assert_eq!(out, "HARMONIC witness=0,1,2\n");
    assert_eq!(code, 0);
}

#[test]
fn zharmonic_error_exit_codes() {
    // entry below 2 is a domain error
    let (_, err, code) = run(&["zharmonic", "1", "4"]);
    assert_eq!(code, 2, "{err}");
    // tuple over the length cap is a resource error
    let (_, err, code) = run(&["zharmonic", "2", "2", "2", "2", "2", "2", "2", "2", "2"]);
    assert_eq!(code, 3, "{err}");
    // missing entries is a usage error (clap)
    let (_, _, code) = run(&["zharmonic"]);
    assert_eq!(code, 2);
}

#[test]
fn gharmonic_golden() {
    let (out, _, code) = run(&["gharmonic", "--catalog", "S3", "3", "3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("FOUND reps="), "{out}");
    assert_eq!(out.matches("subgroup").count(), 2);

    let (out, _, code) = run(&["gharmonic", "--catalog", "C60", "4", "6", "10"]);
    assert_eq!(out, "NONE\n");
    assert_eq!(code, 1);

    // index that does not divide the order
    let (_, _, code) = run(&["gharmonic", "--catalog", "S3", "4"]);
    assert_eq!(code, 2);
    // exactly one group source required
    let (_, _, code) = run(&["gharmonic", "3", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn hsc_and_lemmas_golden() {
    let (out, _, code) = run(&["hsc", "--catalog", "C120"]);
    assert_eq!(out, "HOLDS stage=ARITHMETIC\n");
    assert_eq!(code, 0);

    let (out, _, code) = run(&["lemmas", "--catalog", "A4"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 6);
    assert!(out.lines().all(|l| l.ends_with(" OK")), "{out}");
    assert!(out.lines().any(|l| l.starts_with("L-gcd2 group=A4 instances=")));
}

#[test]
fn records_format_is_tab_separated_with_tags() {
    let (out, _, _) = run(&["theorem-a", "--max", "360", "--format", "records"]);
    let tags: Vec<&str> = out
        .lines()
        .map(|l| l.split('\t').next().unwrap())
        .collect();
    assert_eq!(tags, vec!["ORDER", "STAGE1_GCD2", "STAGE1_GCD3", "SURVIVORS"]);
    assert!(out.lines().next().unwrap().split('\t').count() >= 5);

    let (out, _, _) = run(&["zharmonic", "2", "4", "--format", "records"]);
    assert_eq!(out, "ZVERDICT\tHARMONIC\t0,1\n");

    let (out, _, _) = run(&["lemmas", "--catalog", "S3", "--format", "records"]);
    assert!(out.lines().all(|l| l.starts_with("LEMMA\t")));
}

#[test]
fn out_flag_persists_records() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.tsv");
    let (stdout, _, code) = bin()
        .args(["theorem-a", "--max", "241", "--out"])
        .arg(&path)
        .output()
        .map(|o| {
            (
                String::from_utf8(o.stdout).unwrap(),
                String::from_utf8(o.stderr).unwrap(),
                o.status.code().unwrap(),
            )
        })
        .unwrap();
    assert_eq!(code, 0);
    // console stays in table format, the file carries the records
    assert!(stdout.contains("SURVIVORS: []"));
    let persisted = std::fs::read_to_string(&path).unwrap();
    assert!(persisted.contains("ORDER\t240\t2\t1\t1\t0"));
    assert!(persisted.ends_with("SURVIVORS\t\n"));
}

#[test]
fn stage_one_reports_stage1_survivors() {
    let (out, _, code) = run(&["theorem-a", "--max", "241", "--stage", "1"]);
    assert!(out.contains("SURVIVORS: [240]"), "{out}");
    assert_eq!(code, 1);

    let (out, _, code) = run(&["theorem-a", "--max", "240"]);
    assert!(out.contains("SURVIVORS: []"), "{out}");
    assert_eq!(code, 0);
}

#[test]
fn group_files_load_and_parse_errors_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.group");
    std::fs::write(&path, "# S3 on three points\ndegree 3\nname S3-from-file\n1 0 2\n1 2 0\n").unwrap();
    let (out, _, code) = bin()
        .arg("lemmas")
        .arg("--file")
        .arg(&path)
        .output()
        .map(|o| {
            (
                String::from_utf8(o.stdout).unwrap(),
                String::from_utf8(o.stderr).unwrap(),
                o.status.code().unwrap(),
            )
        })
        .unwrap();
    assert_eq!(code, 0);
    assert!(out.contains("group=S3-from-file"), "{out}");

    let bad = dir.path().join("bad.group");
    std::fs::write(&bad, "degree 3\nname broken\n0 0 1\n").unwrap();
    let (_, err, code) = bin()
        .arg("hsc")
        .arg("--file")
        .arg(&bad)
        .output()
        .map(|o| {
            (
                String::from_utf8(o.stdout).unwrap(),
                String::from_utf8(o.stderr).unwrap(),
                o.status.code().unwrap(),
            )
        })
        .unwrap();
    assert_eq!(code, 2, "{err}");

    let (_, _, code) = run(&["hsc", "--file", "/nonexistent/x.group"]);
    assert_eq!(code, 2);
}

#[test]
fn shipped_group_files_load() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../groups");
    let expected = [
        ("S3.group", 6usize),
        ("D4.group", 8),
        ("Q8.group", 8),
        ("C12.group", 12),
        ("C2xC2xC2.group", 8),
    ];
    for (file, order) in expected {
        let path = dir.join(file);
        let text = std::fs::read_to_string(&path).unwrap();
        let g = hsc_core::group::parse_group(&text, 360).unwrap();
        assert_eq!(g.order(), order, "{file}");
        let out = bin().arg("hsc").arg("--file").arg(&path).output().unwrap();
        assert_eq!(out.status.code(), Some(0), "{file}");
    }
}

#[test]
fn order_cap_env_and_flag() {
    let out = bin()
        .args(["hsc", "--catalog", "C60"])
        .env("HSC_LAB_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "cap from env must reject C60");

    // the explicit flag overrides the environment
    let out = bin()
        .args(["hsc", "--catalog", "C60", "--cap", "100"])
        .env("HSC_LAB_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let out = bin()
        .args(["hsc", "--catalog", "C6"])
        .env("HSC_LAB_CAP", "banana")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_documents_the_record_format() {
    let (out, _, code) = run(&["--help"]);
    assert_eq!(code, 0);
    for tag in ["ORDER", "ZVERDICT", "CONFIG", "HSC", "LEMMA", "Exit codes"] {
        assert!(out.contains(tag), "--help must document `{tag}`");
    }
}

#[test]
fn every_command_is_deterministic_across_jobs() {
    for args in [
        vec!["gharmonic", "--catalog", "D12", "2", "4", "6", "12"],
        vec!["hsc", "--catalog", "D12"],
        vec!["lemmas", "--catalog", "S3xC4"],
    ] {
        let mut with_jobs = args.clone();
        with_jobs.extend(["--jobs", "8"]);
        let a = run(&args);
        let b = run(&with_jobs);
        assert_eq!(a.0, b.0, "{args:?}");
        assert_eq!(a.2, b.2, "{args:?}");
    }
}
