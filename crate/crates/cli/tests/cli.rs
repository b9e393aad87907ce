use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

fn abelchi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abelchi"))
        .args(args)
        .current_dir(workspace_root())
        .env_remove("ABELCHI_FIXTURES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Compares against `tests/golden/<name>`; `ABELCHI_BLESS=1` rewrites it.
fn golden(name: &str, args: &[&str], code: i32) {
    let out = abelchi(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", stderr(&out));
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("ABELCHI_BLESS").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
    }
    let want = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(stdout(&out), want, "output of {args:?} differs from {name}");
}

const F: &str = "fixtures/paper";

fn fixture(name: &str) -> String {
    format!("{F}/{name}")
}

#[test]
fn chi_goldens() {
    golden(
        "chi-even-spheres.txt",
        &["chi", &fixture("even-spheres.json")],
        0,
    );
    golden(
        "chi-zero-complex.json",
        &["--json", "chi", &fixture("zero-complex.json")],
        0,
    );
    golden(
        "chi-spheres-and-wedge.json",
        &[
            "chi",
            "--json",
            &fixture("all-spheres.json"),
            &fixture("wedge-growth.json"),
        ],
        0,
    );
}

#[test]
fn sequence_command_goldens() {
    golden(
        "classify-signed-quadratic.txt",
        &["classify", &fixture("signed-quadratic.json")],
        0,
    );
    golden(
        "genfun-signed-quadratic.json",
        &["genfun", "--json", &fixture("signed-quadratic.json")],
        0,
    );
    golden(
        "oracle-even-spheres.txt",
        &["oracle", "--terms", "8", &fixture("even-spheres.json")],
        0,
    );
    golden(
        "holder-alternating-mean.txt",
        &["holder", &fixture("alternating-mean.json")],
        0,
    );
    golden(
        "oracle-even-spheres.json",
        &[
            "--json",
            "oracle",
            "--terms",
            "8",
            &fixture("even-spheres.json"),
        ],
        0,
    );
}

#[test]
fn ses_and_xi_goldens() {
    golden(
        "delta-split-ses.txt",
        &["delta", &fixture("split-ses.json")],
        0,
    );
    golden(
        "delta-split-ses.json",
        &["delta", "--json", &fixture("split-ses.json")],
        0,
    );
    golden(
        "admissible-split-ses.txt",
        &["admissible", &fixture("split-ses.json")],
        0,
    );
    golden(
        "additivity-split-ses.json",
        &["--json", "additivity", &fixture("split-ses.json")],
        0,
    );
    golden(
        "xi-free-rank-one.txt",
        &["xi", &fixture("xi-free-rank-one.json")],
        0,
    );
}

#[test]
fn verify_goldens() {
    for suite in [
        "paper-examples",
        "additivity",
        "rank-identity",
        "xi-half",
        "translativity",
    ] {
        golden(&format!("verify-{suite}.txt"), &["verify", suite], 0);
    }
    golden(
        "verify-paper-examples.json",
        &["--json", "verify", "paper-examples"],
        0,
    );
}

#[test]
fn oracle_lists_alternating_ones() {
    let out = abelchi(&[
        "--json",
        "oracle",
        "--terms",
        "8",
        &fixture("even-spheres.json"),
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let coeffs: Vec<&str> = v["values"]["table"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row[1].as_str().unwrap())
        .collect();
    assert_eq!(coeffs, ["1", "0", "1", "0", "1", "0", "1", "0"]);
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let args = ["--json", "--timestamps", "verify", "paper-examples"];
    let (a, b) = (abelchi(&args), abelchi(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        a.stdout,
        abelchi(&["--json", "verify", "paper-examples"]).stdout
    );
}

#[test]
fn timestamps_only_in_human_output() {
    let out = stdout(&abelchi(&[
        "--timestamps",
        "chi",
        &fixture("all-spheres.json"),
    ]));
    let (first, rest) = out.split_once('\n').unwrap();
    assert!(first.starts_with("# generated "), "{first}");
    assert_eq!(
        rest,
        stdout(&abelchi(&["chi", &fixture("all-spheres.json")]))
    );
}

const D: &str = "crates/cli/tests/data";

#[test]
fn exit_code_two_for_invalid_input() {
    let malformed = abelchi(&["chi", &format!("{D}/malformed.json")]);
    assert_eq!(malformed.status.code(), Some(2));
    assert!(
        stderr(&malformed).contains("line 4 column 11"),
        "{}",
        stderr(&malformed)
    );

    let bad = abelchi(&["chi", &format!("{D}/bad-matrix.json")]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("integer entries"));

    for args in [
        vec!["delta".to_string(), format!("{D}/impostor-ses.json")],
        vec!["chi".to_string(), fixture("alternating-mean.json")],
        vec!["xi".to_string(), fixture("even-spheres.json")],
        vec!["chi".to_string(), format!("{D}/does-not-exist.json")],
        vec!["verify".to_string(), "no-such-suite".to_string()],
        vec!["chi".to_string()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(abelchi(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn exit_code_three_for_unmet_preconditions() {
    let out = abelchi(&["additivity", &format!("{D}/not-abel-ses.json")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("not an Abel complex"));
    assert!(stdout(&out).is_empty());
    let short = abelchi(&[
        "holder",
        "--horizon",
        "5",
        &fixture("alternating-mean.json"),
    ]);
    assert_eq!(short.status.code(), Some(3));
    // Hölder means of (-1)^n (n+1) approach 0 only like log(n)/n.
    let slow = abelchi(&["holder", &fixture("wedge-growth.json")]);
    assert_eq!(slow.status.code(), Some(3));
    assert!(stderr(&slow).contains("no Hölder order stabilized"));
}

#[test]
fn exit_code_four_for_failed_verdicts() {
    golden(
        "admissible-inadmissible.txt",
        &["admissible", &format!("{D}/inadmissible-ses.json")],
        4,
    );
}

#[test]
fn fixture_directory_override() {
    let dir = std::env::temp_dir().join(format!("abelchi-fixtures-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::copy(
        workspace_root().join(fixture("even-spheres.json")),
        dir.join("even.json"),
    )
    .unwrap();
    let run = |manifest: &str| {
        std::fs::write(dir.join("expected.json"), manifest).unwrap();
        Command::new(env!("CARGO_BIN_EXE_abelchi"))
            .args(["verify", "paper-examples"])
            .env("ABELCHI_FIXTURES", &dir)
            .output()
            .unwrap()
    };
    let good = run(r#"{"even.json": {"chi": "1/2"}}"#);
    assert_eq!(good.status.code(), Some(0), "{}", stderr(&good));
    let wrong = run(r#"{"even.json": {"chi": "1/3"}}"#);
    assert_eq!(wrong.status.code(), Some(4));
    assert!(stdout(&wrong).contains("FAIL even.json: chi: expected \"1/3\", got \"1/2\""));
    let typo = run(r#"{"even.json": {"chai": "1/2"}}"#);
    assert_eq!(typo.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
