use std::path::PathBuf;
use std::process::{Command, Output};

use num_complex::Complex64;
use qeuler_core::qalg::parse_rat;
use qeuler_core::QRatFunc;
use serde_json::Value;

fn qeuler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qeuler"))
        .args(args)
        .env_remove("QEULER_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qeuler-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn euler_examples() {
    let out = qeuler(&["euler", "--n", "1", "--h", "1", "--r", "1", "--arg", "0/1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "-1*q / 1 + q^2\n");
    let out = qeuler(&["euler", "--n", "2", "--h", "0", "--r", "0", "--arg", "3/1"]);
    assert_eq!(stdout(&out), "1 + 2*q + 3*q^2 + 2*q^3 + q^4 / 1\n");
    let out = qeuler(&["euler", "--n", "1", "--h", "1", "--r", "1", "--arg", "0/1", "--at", "1/2"]);
    assert_eq!(stdout(&out), "-2/5\n");
}

#[test]
fn exit_codes() {
    let pass = qeuler(&["verify", "thm2.2", "--a", "3", "--b", "5", "--n", "2", "--h", "1", "--r", "1", "--x", "0"]);
    assert_eq!(code(&pass), 0);
    assert!(stdout(&pass).starts_with("PASS thm2.2"));

    let parity = qeuler(&["verify", "thm2.2", "--a", "2", "--b", "1", "--n", "1", "--h", "1", "--r", "1", "--x", "0"]);
    assert_eq!(code(&parity), 2);
    assert!(String::from_utf8_lossy(&parity.stderr).contains("odd"));

    let lemma = qeuler(&["verify", "lemma1.1", "--n", "3", "--x", "2", "--h", "3", "--r", "2", "--q", "0.7", "--tol", "1e-9"]);
    assert_eq!(code(&lemma), 0);

    // No double-precision series reaches 1e-17 here, so the check must fail.
    let fail = qeuler(&["verify", "lemma1.1", "--n", "4", "--x", "1", "--h", "3", "--r", "3", "--q", "0.9", "--tol", "1e-17"]);
    assert_eq!(code(&fail), 1);
    assert!(stdout(&fail).starts_with("FAIL"));

    for bad in [
        vec!["verify", "thm9.9", "--n", "1"],
        vec!["verify", "umbral", "--n", "1"],
        vec!["euler", "--n", "1", "--h", "1", "--r", "1", "--arg", "1/0"],
        vec!["euler", "--n", "1", "--h", "-2", "--r", "1", "--arg", "-3/2", "--at", "0"],
        vec!["euler", "--n", "x", "--h", "1", "--r", "1"],
        vec!["ssum", "--n", "1", "--i", "2", "--h", "0", "--r", "1", "--a", "3"],
        vec!["zeta", "--s", "1", "--x", "0", "--h", "2", "--r", "1", "--q", "0.5"],
    ] {
        assert_eq!(code(&qeuler(&bad)), 2, "{bad:?}");
    }
}

#[test]
fn json_round_trip_is_byte_identical() {
    let out = qeuler(&["euler", "--n", "3", "--h", "-1", "--r", "2", "--arg", "5/3", "--format", "json"]);
    let text = stdout(&out);
    let parsed: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&parsed).unwrap() + "\n", text);
    let f: QRatFunc = serde_json::from_value(parsed["value"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&f).unwrap(), parsed["value"]);
    let plain = qeuler(&["euler", "--n", "3", "--h", "-1", "--r", "2", "--arg", "5/3"]);
    assert_eq!(stdout(&plain).trim_end().parse::<QRatFunc>().unwrap(), f);
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader.records().map(|r| r.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn json_cell_matches(json: &Value, csv: &str) -> bool {
    match json {
        Value::Number(n) => n.as_f64().unwrap() == csv.parse::<f64>().unwrap(),
        Value::String(s) => s == csv,
        Value::Object(o) if o.contains_key("num") => {
            serde_json::from_value::<QRatFunc>(json.clone()).unwrap() == csv.parse::<QRatFunc>().unwrap()
        }
        Value::Object(o) => {
            let z: Complex64 = csv.parse().unwrap();
            o["re"].as_f64().unwrap() == z.re && o["im"].as_f64().unwrap() == z.im
        }
        _ => false,
    }
}

fn cross_decode(args: &[&str]) {
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let json: Vec<Value> = serde_json::from_str(&stdout(&qeuler(&json_args))).unwrap();
    let (header, rows) = csv_rows(&stdout(&qeuler(&csv_args)));
    assert_eq!(json.len(), rows.len());
    assert!(!rows.is_empty());
    for (obj, row) in json.iter().zip(&rows) {
        let obj = obj.as_object().unwrap();
        assert_eq!(obj.keys().cloned().collect::<Vec<_>>(), header);
        for (key, cell) in header.iter().zip(row) {
            assert!(json_cell_matches(&obj[key], cell), "{key}: {} vs {cell}", obj[key]);
        }
    }
}

#[test]
fn json_and_csv_encode_the_same_values() {
    cross_decode(&["table", "euler", "--n", "0..3", "--h", "-1,1", "--r", "1..2", "--x", "0,2", "--c", "1,3"]);
    cross_decode(&["table", "euler", "--n", "0..2", "--h", "1", "--r", "1", "--x", "0", "--at", "1/2"]);
    cross_decode(&["table", "ssum", "--n", "0..2", "--i", "0..2", "--h", "-1..1", "--r", "1,2", "--a", "3"]);
    cross_decode(&["table", "zeta", "--s", "-1;0.5+2i", "--x", "1,2.5", "--h", "2", "--r", "1,2", "--q", "0.3,0.6"]);
}

#[test]
fn tables() {
    let out = qeuler(&["table", "euler", "--n", "0..2", "--h", "1", "--r", "1", "--x", "0", "--at", "1/2", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(header, ["n", "h", "r", "N", "c", "value"]);
    let values: Vec<_> = rows.iter().map(|r| parse_rat(&r[5]).unwrap()).collect();
    assert_eq!(values.len(), 3);
    assert_eq!(rows[1][5], "-2/5");

    let empty = qeuler(&["table", "euler", "--n", "", "--h", "1", "--r", "1", "--x", "0", "--format", "csv"]);
    assert_eq!(code(&empty), 0);
    assert_eq!(stdout(&empty), "n,h,r,N,c,value\n");

    let divergent = qeuler(&["table", "zeta", "--s", "1", "--x", "1", "--h", "0", "--r", "1", "--q", "0.5"]);
    assert_eq!(code(&divergent), 2);
    assert!(String::from_utf8_lossy(&divergent.stderr).contains("converge"));
}

#[test]
fn config_files_and_output_paths() {
    let config = scratch("grid.json");
    std::fs::write(
        &config,
        r#"{"identity": "thm2.1", "ranges": {"a": [1], "b": [3], "r": [1, 2], "dh": [1], "x": [1]}, "s": [-1, "2+1i"], "q": [0.4], "tol": 1e-8}"#,
    )
    .unwrap();
    let target = scratch("reports.json");
    let out = qeuler(&[
        "verify",
        "--config",
        config.to_str().unwrap(),
        "--format",
        "json",
        "--output",
        target.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let reports: Vec<Value> = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(reports.len(), 4);
    assert!(reports.iter().all(|r| r["equal"] == Value::Bool(true)));

    let mixed = qeuler(&["verify", "--config", config.to_str().unwrap(), "--n", "1"]);
    assert_eq!(code(&mixed), 2);
    let wrong = qeuler(&["verify", "thm2.2", "--config", config.to_str().unwrap()]);
    assert_eq!(code(&wrong), 2);
}

#[test]
fn output_is_independent_of_worker_count() {
    let args = ["verify", "thm2.4", "--a", "1,3", "--b", "3,5", "--n", "0..2", "--h", "-1..1", "--r", "1,2", "--x", "0,1"];
    let mut one = args.to_vec();
    one.extend(["--jobs", "1"]);
    let mut four = args.to_vec();
    four.extend(["--jobs", "4"]);
    let a = qeuler(&one);
    let b = Command::new(env!("CARGO_BIN_EXE_qeuler"))
        .args(&args)
        .env("QEULER_JOBS", "3")
        .output()
        .unwrap();
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&qeuler(&four)));
    assert_eq!(stdout(&a), stdout(&b));
}
