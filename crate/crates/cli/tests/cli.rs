use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use moonshine_core::poly::Polynomial;
use moonshine_core::qvalue::{qvalue_to_text, QValue};
use moonshine_core::ratfunc::ratfunc_equal;
use moonshine_core::rational::{parse_rational, Rational};
use moonshine_core::schwarzfit::corpus::bundled_corpus;
use moonshine_core::schwarzfit::{fit_series, FitOptions};
use moonshine_core::series::LaurentSeries;
use serde_json::Value;

fn cmd(args: &[&str]) -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_moonshine"));
    c.args(args).env_remove("MOONSHINE_DATA_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    cmd(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"))
        .join("cli")
        .join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&all)).unwrap()
}

fn rationals(v: &Value) -> Vec<Rational> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| parse_rational(s.as_str().expect("numbers are strings")).unwrap())
        .collect()
}

fn qvalue_of(v: &Value) -> QValue {
    QValue::new(
        Polynomial::new(rationals(&v["num"])),
        Polynomial::new(rationals(&v["den_core"])),
    )
    .unwrap()
}

fn corpus_text(label: &str) -> String {
    let corpus = bundled_corpus();
    qvalue_to_text(
        corpus
            .iter()
            .find(|e| e.label == label)
            .unwrap()
            .qvalue
            .as_ref()
            .unwrap(),
    )
}

#[test]
fn coeffs_lists_from_a_minus_one() {
    assert_eq!(
        stdout(&["coeffs", "1A", "-n", "4"]),
        "1\n0\n196884\n21493760\n864299970\n20245856256\n"
    );
    assert_eq!(stdout(&["coeffs", "1A", "-n", "1"]), "1\n0\n196884\n");
    let v = json(&["coeffs", "1A", "-n", "10"]);
    assert_eq!(v["coefficients"][11], "22567393309593600");
    assert_eq!(
        stdout(&["--format", "tsv", "coeffs", "2B", "-n", "1"]),
        "n\tcoefficient\n-1\t1\n0\t0\n1\t276\n"
    );
}

#[test]
fn unknown_class_is_a_usage_error() {
    let out = run(&["coeffs", "999Z", "-n", "3"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown class"));
    assert_eq!(code(&run(&["coeffs", "1A"])), 2);
    assert_eq!(code(&run(&["qfit", "1A", "--max-r", "0"])), 2);
}

#[test]
fn mathematical_failures_exit_one() {
    assert_eq!(code(&run(&["coeffs", "12D", "-n", "3"])), 1);
    assert_eq!(
        code(&run(&["qfit", "1A", "--max-r", "1", "--max-s", "1"])),
        1
    );
    assert_eq!(code(&run(&["recover", "--class", "46B", "-n", "3"])), 1);
    assert_eq!(code(&run(&["recover", "--class", "12D", "-n", "3"])), 0);
}

#[test]
fn qfit_reports_numerator_and_square_factor() {
    let out = stdout(&["qfit", "2B"]);
    assert!(out.contains("N\t1 32 2752\n"), "{out}");
    assert!(out.contains("square\t1 16 -960\n"), "{out}");
    assert!(out.contains("degrees\t2 4\n"), "{out}");
    let v = json(&[
        "qfit",
        "2B",
        "--strategy",
        "exhaustive",
        "--pivot",
        "smallest-magnitude",
    ]);
    assert_eq!(v["square_factor"], serde_json::json!(["1", "16", "-960"]));
    assert_eq!(v["nullspace_dim"], 1);
}

#[test]
fn recover_from_file_stdin_and_corpus() {
    let expected = "1 0 196884 21493760 864299970\n";
    let path = scratch("recover").join("1A.q");
    std::fs::write(&path, corpus_text("1A")).unwrap();
    assert_eq!(
        stdout(&["recover", path.to_str().unwrap(), "-n", "3"]),
        expected
    );
    assert_eq!(stdout(&["recover", "--class", "1A", "-n", "3"]), expected);

    let mut child = cmd(&["recover", "-", "-n", "3"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(corpus_text("1A").as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected);

    std::fs::write(&path, "1 2 x\n1\n").unwrap();
    assert_eq!(
        code(&run(&["recover", path.to_str().unwrap(), "-n", "3"])),
        2
    );
    assert_eq!(code(&run(&["recover", "/nonexistent/q.txt", "-n", "3"])), 2);
}

#[test]
fn shift_reads_off_the_shifted_qvalue() {
    let out = stdout(&["shift", "1A", "-c", "744"]);
    assert!(
        out.contains("Q\t(1 - 1968z + 2654208z^2) / (4z^2 (1 - 1728z)^2)\n"),
        "{out}"
    );
    let back = json(&["shift", "1A", "-c", "-744"]);
    assert_eq!(back["shift"], "-744");
}

#[test]
fn verify_reports_and_exit_status() {
    let out = stdout(&["verify", "--classes", "1A,2A,2B,3A,3B,3C"]);
    let rows: Vec<&str> = out.lines().take(6).collect();
    assert!(
        rows.iter()
            .all(|l| l.ends_with("match") && !l.contains("mismatch")),
        "{out}"
    );
    let v = json(&["verify", "--classes", "39B,1A"]);
    assert_eq!(v["rows"][0]["status"], "typo-suspected");
    assert_eq!(v["rows"][1]["class"], "1A");
    assert_eq!(code(&run(&["verify", "--classes", "1A,999Z"])), 2);
}

#[test]
fn verify_detects_an_altered_entry() {
    let dir = scratch("altered");
    let text =
        moonshine_core::data::QTABLE.replacen("1A\t1 -480 1743552\t", "1A\t1 -480 1743553\t", 1);
    assert_ne!(text, moonshine_core::data::QTABLE);
    std::fs::write(dir.join("qtable.tsv"), text).unwrap();
    let out = cmd(&["verify", "--classes", "1A,2A"])
        .env("MOONSHINE_DATA_DIR", &dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("mismatch"));
}

#[test]
fn verify_is_stable_in_order_and_parallelism() {
    let subset = "1A,2B,3C,5A,8D,9B,13B,25A,27A,27B,39B,12D";
    let statuses = |order: &str, jobs: &str| -> Vec<(String, String)> {
        let v = json(&[
            "verify",
            "--order",
            order,
            "--jobs",
            jobs,
            "--classes",
            subset,
        ]);
        v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| {
                (
                    r["class"].as_str().unwrap().to_owned(),
                    r["status"].as_str().unwrap().to_owned(),
                )
            })
            .collect()
    };
    let base = statuses("40", "1");
    assert_eq!(base.len(), 12);
    assert_eq!(base, statuses("80", "4"));
    let a = stdout(&["verify", "--jobs", "1", "--classes", subset]);
    let b = stdout(&["verify", "--jobs", "3", "--classes", subset]);
    assert_eq!(a, b);
}

#[test]
fn json_coefficients_refit_to_the_same_qvalue() {
    for label in ["1A", "2B", "4C", "13B"] {
        let coeffs = json(&["coeffs", label, "-n", "300"]);
        let values = rationals(&coeffs["coefficients"]);
        assert_eq!(values.len(), 302);
        let t = LaurentSeries::new(-1, values, 301);
        let refit = fit_series(&t, &FitOptions::default()).unwrap();
        let reported = qvalue_of(&json(&["qfit", label])["qvalue"]);
        assert!(
            ratfunc_equal(
                &refit.qvalue.to_rational_function(),
                &reported.to_rational_function()
            ),
            "{label}: {} vs {}",
            refit.qvalue,
            reported
        );
    }
}

#[test]
fn data_dir_overrides_bundled_tables() {
    let dir = scratch("seeds");
    std::fs::write(
        dir.join("registry.tsv"),
        "1A\t1A\t1:196884\t2:21493760\t3:864299970\t5:333202640600\n",
    )
    .unwrap();
    let via_env = cmd(&["coeffs", "1A", "-n", "6"])
        .env("MOONSHINE_DATA_DIR", &dir)
        .output()
        .unwrap();
    assert!(via_env.status.success());
    assert!(String::from_utf8(via_env.stdout)
        .unwrap()
        .ends_with("4252023300096\n"));
    let via_flag = stdout(&[
        "--data-dir",
        dir.to_str().unwrap(),
        "coeffs",
        "1A",
        "-n",
        "6",
    ]);
    assert!(via_flag.ends_with("4252023300096\n"));
}

#[test]
fn data_dir_restricts_to_its_registry() {
    let dir = scratch("only-1a");
    std::fs::write(
        dir.join("registry.tsv"),
        "1A\t1A\t1:196884\t2:21493760\t3:864299970\t5:333202640600\n",
    )
    .unwrap();
    let out = run(&[
        "--data-dir",
        dir.to_str().unwrap(),
        "coeffs",
        "2B",
        "-n",
        "1",
    ]);
    assert_eq!(code(&out), 2);
    let missing = run(&[
        "--registry",
        "/nonexistent/registry.tsv",
        "coeffs",
        "1A",
        "-n",
        "1",
    ]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn hyper_queries() {
    assert_eq!(stdout(&["hyper", "pochhammer", "-1/2", "3"]), "-3/8\n");
    assert_eq!(
        stdout(&["hyper", "series", "1/2", "1/2", "1", "-n", "4"]),
        "1\n1/4\n9/64\n25/256\n"
    );
    assert_eq!(
        stdout(&["hyper", "series", "1", "1", "1", "-n", "3", "--a0", "-2"]),
        "-2\n-2\n-2\n"
    );
    let q = json(&["hyper", "gauss-q", "0", "0", "1"]);
    assert_eq!(q["num"], serde_json::json!(["1"]));
    assert_eq!(q["den"], serde_json::json!(["0", "0", "4"]));
    let ab = stdout(&["hyper", "gauss-q", "1/3", "-1/5", "2/7"]);
    assert_eq!(ab, stdout(&["hyper", "gauss-q", "-1/5", "1/3", "2/7"]));
    assert_eq!(code(&run(&["hyper", "gauss-q", "1", "1", "0"])), 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--format", "json", "qfit", "3C"][..],
        &["--format", "tsv", "coeffs", "5A", "-n", "50"],
    ] {
        assert_eq!(stdout(args), stdout(args));
    }
}
