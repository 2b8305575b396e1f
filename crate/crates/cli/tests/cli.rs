use std::process::{Command, Output};

fn qbethe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbethe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_config(name: &str, body: &str) -> String {
    let path = std::env::temp_dir().join(format!("qbethe-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn empty_sets_sum_is_one() {
    let o = qbethe(&["eval", "scalar", "--method", "sum"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn determinant_and_sum_agree_on_explicit_config() {
    let cfg = write_config(
        "routes",
        r#"{"kappa": ["1", "5/3", "1"], "uC": ["3"], "vC": ["5/7"], "uB": ["-2"], "vB": ["11/3"]}"#,
    );
    let o = qbethe(&[
        "eval",
        "scalar",
        "--method",
        "det1,sum,intermediate",
        "--config",
        &cfg,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("verdict: equal"), "{text}");
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn wrong_twist_is_a_contract_error() {
    let o = qbethe(&["eval", "scalar", "--method", "detq2", "--kappa", "1,1,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("contract violation"));
}

#[test]
fn props_reports_are_reproducible() {
    let run = |threads: &str| {
        let o = qbethe(&[
            "verify",
            "--suite",
            "props",
            "--max-a",
            "2",
            "--max-b",
            "2",
            "--trials",
            "3",
            "--seed",
            "7",
            "--threads",
            threads,
        ]);
        assert!(o.status.success());
        stdout(&o)
            .lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                assert_eq!(v["status"], "pass");
                v["ms"] = 0.into();
                v
            })
            .collect::<Vec<_>>()
    };
    let first = run("1");
    assert!(!first.is_empty());
    assert_eq!(first, run("1"));
    assert_eq!(first, run("3"));
}

#[test]
fn report_file_holds_json_lines() {
    let path = std::env::temp_dir().join(format!("qbethe-cli-{}-report.jsonl", std::process::id()));
    let p = path.to_string_lossy().into_owned();
    let o = qbethe(&[
        "verify", "--suite", "kernel", "--trials", "1", "--report", &p,
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 80);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        for key in [
            "suite", "case", "seed", "sizes", "lhs", "rhs", "status", "ms",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn limits_from_the_command_line() {
    let cfg = write_config("slopes", r#"{"uC": [], "vC": [], "uB": [], "vB": []}"#);
    let o = qbethe(&["limit", "q1-scalar", "--config", &cfg]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(
        text.contains("S1 limit: 1")
            && text.contains("Sq2 limit: 1")
            && text.contains("verdict: equal"),
        "{text}"
    );

    let o = qbethe(&[
        "limit",
        "diag-entry",
        "--max-a",
        "1",
        "--max-b",
        "0",
        "--trials",
        "1",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);

    let o = qbethe(&["limit", "q1-kernels", "--trials", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 80);
}

#[test]
fn form_factors_from_the_command_line() {
    let cfg = write_config(
        "ff",
        r#"{"uC": ["3"], "uB": ["-5"], "z": "7", "r1_at_z": "2", "r3_at_z": "1"}"#,
    );
    let o = qbethe(&["eval", "formfactor", "--method", "ff22", "--config", &cfg]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(
        text.contains("ff22 interpolation: -105/64") && text.contains("verdict: equal"),
        "{text}"
    );

    let o = qbethe(&[
        "eval",
        "formfactor",
        "--method",
        "ff33q2",
        "--kappa",
        "1,1,4",
        "--config",
        &cfg,
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verdict: equal"));
}

#[test]
fn unknown_suite_is_rejected() {
    let o = qbethe(&["verify", "--suite", "everything"]);
    assert_eq!(o.status.code(), Some(2));
}
