use std::process::{Command, Output};

fn rescomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rescomp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = rescomp(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn period_of_q3_mod_13() {
    let v = json(&[
        "period", "--q", "3", "--a", "0", "--b", "1", "--mod", "13", "--format", "json",
    ]);
    assert_eq!(v["schemaVersion"], 1);
    assert_eq!(v["kind"], "period");
    assert_eq!(v["data"]["length"], 52);
    assert_eq!(v["data"]["residues"].as_array().unwrap().len(), 52);
}

#[test]
fn pell_classification() {
    let v = json(&[
        "classify", "--q", "2", "--bound", "2000", "--format", "json",
    ]);
    let members: Vec<u64> =
        serde_json::from_value(v["data"]["classification"]["members"].clone()).unwrap();
    assert_eq!(members, vec![2, 3, 5, 9, 25, 27, 81, 125, 243, 625, 729]);
}

#[test]
fn explain_beyond_bound() {
    let v = json(&[
        "classify",
        "--q",
        "3",
        "--bound",
        "2000",
        "--explain",
        "2197,22000",
        "--format",
        "json",
    ]);
    let ex = v["data"]["explanations"].as_array().unwrap();
    assert_eq!(ex[0]["conclusion"], "member");
    assert_eq!(ex[1]["conclusion"], "non-member");
}

#[test]
fn negative_coefficient() {
    let out = rescomp(&["order", "--q=-3", "--mod", "13"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("k(13) = 52"));
}

#[test]
fn order_of_q3_mod_4() {
    let out = rescomp(&["order", "--q", "3", "--mod", "4"]);
    assert!(stdout(&out).starts_with("k(4) = 6"));
}

#[test]
fn exit_codes() {
    assert_eq!(rescomp(&["--help"]).status.code(), Some(0));
    assert_eq!(rescomp(&["bogus"]).status.code(), Some(1));
    assert_eq!(
        rescomp(&["period", "--q", "0", "--mod", "5"]).status.code(),
        Some(1)
    );
    assert_eq!(
        rescomp(&["period", "--q", "1", "--a", "0", "--b", "0", "--mod", "5"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        rescomp(&["fs", "--q", "1", "--mod", "5000"]).status.code(),
        Some(1)
    );
    assert_eq!(
        rescomp(&["fs", "--q", "3", "--three-power", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        rescomp(&[
            "variant-u",
            "--q",
            "3",
            "--a",
            "1",
            "--b",
            "4",
            "--prime",
            "5"
        ])
        .status
        .code(),
        Some(2)
    );
    let err = rescomp(&["classify", "--q", "1", "--bound", "1"]);
    assert_ne!(err.status.code(), Some(0));
    assert!(err.stdout.is_empty());
}

#[test]
fn variant_u_modes() {
    let v = json(&[
        "variant-u",
        "--q",
        "3",
        "--a",
        "0",
        "--b",
        "1",
        "--bound",
        "12",
        "--format",
        "json",
    ]);
    assert_eq!(v["data"].as_array().unwrap().len(), 11);
    let out = rescomp(&["variant-u", "--q", "3", "--prime", "7"]);
    assert!(stdout(&out).contains("divides 8"));
    assert_eq!(rescomp(&["variant-u", "--q", "3"]).status.code(), Some(1));
}

#[test]
fn fs_and_subseq() {
    let out = rescomp(&["fs", "--q", "1", "--mod", "5"]);
    assert!(stdout(&out).starts_with("# m=5 q=1 totalTerms=24"));
    assert_eq!(
        rescomp(&["fs", "--q", "1", "--three-power", "3"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        rescomp(&["subseq", "--q", "1", "--prime", "5"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn csv_header() {
    let out = rescomp(&["complete", "--q", "1", "--bound", "8", "--format", "csv"]);
    let text = stdout(&out);
    assert!(text.starts_with("variant,a,b,q,modulus,complete,uniform"));
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn output_independent_of_thread_count() {
    for (cmd, format) in [
        ("classify", "json"),
        ("classify", "csv"),
        ("complete", "csv"),
    ] {
        let run = |jobs: &str| {
            let out = rescomp(&[
                cmd, "--q", "3", "--bound", "600", "--format", format, "--jobs", jobs,
            ]);
            assert_eq!(out.status.code(), Some(0));
            out.stdout
        };
        assert_eq!(run("1"), run("4"), "{cmd} {format}");
    }
}
