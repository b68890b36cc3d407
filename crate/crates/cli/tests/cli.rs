use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn cohsys(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohsys"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = cohsys(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stderr.is_empty());
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn exit_code(args: &[&str]) -> i32 {
    let out = cohsys(args);
    assert!(out.stdout.is_empty(), "no payload on failure");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(!err.trim().is_empty());
    out.status.code().unwrap()
}

fn rational(v: &Value) -> (i64, i64) {
    (v["num"].as_i64().unwrap(), v["den"].as_i64().unwrap())
}

#[test]
fn info_reports_dimension_and_thresholds() {
    let v = ok_json(&["info", "--n", "3", "--d", "5", "--k", "1", "--g", "2"]);
    assert_eq!(v["beta"], 11);
    assert_eq!(rational(&v["alpha_T"]), (1, 1));
    assert_eq!(v["nonempty"], true);
    assert_eq!(rational(&v["nonempty_range"]["hi"]), (5, 2));
}

#[test]
fn info_trivial_type_is_empty() {
    let v = ok_json(&["info", "--n", "3", "--d", "3", "--k", "3", "--g", "2"]);
    assert_eq!(v["nonempty"], false);
}

#[test]
fn missing_flag_exits_2() {
    assert_eq!(exit_code(&["info", "--n", "3", "--d", "5", "--k", "1"]), 2);
    assert_eq!(exit_code(&["info", "--n", "3", "--d", "5", "--k", "1", "--g", "1"]), 2);
}

#[test]
fn certified_walls() {
    let v = ok_json(&["critical", "--n", "4", "--d", "7", "--k", "2", "--g", "2", "--certified"]);
    let walls = v.as_array().unwrap();
    assert_eq!(walls.len(), 1);
    assert_eq!(rational(&walls[0]["alpha"]), (5, 2));
    let p = &walls[0]["patterns"][0];
    assert_eq!((p["n1"].as_i64(), p["d1"].as_i64()), (Some(1), Some(3)));
    assert_eq!((p["c21"].as_i64(), p["c12"].as_i64()), (Some(2), Some(8)));

    let v = ok_json(&["critical", "--n", "3", "--d", "5", "--k", "1", "--g", "2", "--certified"]);
    assert_eq!(v, serde_json::json!([]));
}

#[test]
fn candidates_sorted_and_inverted_range_rejected() {
    let v = ok_json(&["critical", "--n", "5", "--d", "11", "--k", "2", "--g", "3", "--candidates"]);
    let alphas: Vec<(i64, i64)> = v.as_array().unwrap().iter().map(|w| rational(&w["alpha"])).collect();
    assert!(!alphas.is_empty());
    assert!(alphas.windows(2).all(|w| w[0].0 * w[1].1 < w[1].0 * w[0].1));

    let args = ["critical", "--n", "4", "--d", "7", "--k", "2", "--g", "2", "--candidates", "--lo", "9/2", "--hi", "7/2"];
    assert_eq!(exit_code(&args), 2);
    assert_eq!(exit_code(&["critical", "--n", "4", "--d", "7", "--k", "2", "--g", "2"]), 2);
}

#[test]
fn poincare_rank_three() {
    let v = ok_json(&["poincare", "--n", "3", "--d", "5", "--g", "2", "--alpha", "2/1"]);
    let coeffs: Vec<i64> = v["coeffs"].as_array().unwrap().iter().map(|c| c.as_i64().unwrap()).collect();
    assert_eq!(
        coeffs,
        [1, 4, 8, 16, 32, 48, 56, 60, 63, 64, 64, 64, 64, 64, 63, 60, 56, 48, 32, 16, 8, 4, 1]
    );
    assert_eq!(v["degree"], 22);
    assert_eq!(v["beta"], 11);
    assert_eq!(v["palindrome"], true);
}

#[test]
fn poincare_error_codes() {
    assert_eq!(exit_code(&["poincare", "--n", "4", "--d", "7", "--g", "2", "--alpha", "5/2"]), 3);
    assert_eq!(exit_code(&["poincare", "--n", "4", "--d", "6", "--g", "2", "--alpha", "2/1"]), 4);
    assert_eq!(exit_code(&["poincare", "--n", "4", "--d", "7", "--g", "2", "--alpha", "9/1"]), 2);
    assert_eq!(exit_code(&["poincare", "--n", "4", "--d", "7", "--g", "2", "--alpha", "x"]), 2);
}

#[test]
fn poincare_chamber_index_matches_alpha() {
    let by_index = ok_json(&["poincare", "--n", "4", "--d", "7", "--g", "2", "--chamber", "1"]);
    let by_alpha = ok_json(&["poincare", "--n", "4", "--d", "7", "--g", "2", "--alpha", "3/1"]);
    assert_eq!(by_index["coeffs"], by_alpha["coeffs"]);
}

#[test]
fn poincare_csv_columns() {
    let out = cohsys(&["poincare", "--n", "4", "--d", "7", "--g", "2", "--chamber", "0", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers().unwrap().clone();
    let row = rdr.records().next().unwrap().unwrap();
    assert_eq!(header.get(header.len() - 1), Some("b38"));
    let beta: usize = row[header.iter().position(|h| h == "beta").unwrap()].parse().unwrap();
    assert_eq!(header.iter().filter(|h| h.starts_with('b') && *h != "beta").count(), 2 * beta + 1);
}

#[test]
fn report_examples() {
    let v = ok_json(&["report", "--n", "4", "--d", "7", "--k", "2", "--g", "2", "--alpha", "3/1"]);
    assert_eq!(v["pi1"]["text"], "Z^4");
    assert_eq!(v["pi2"]["text"], "Z x Z");
    assert_eq!(v["conjectures"], serde_json::json!([]));

    let v = ok_json(&["report", "--n", "4", "--d", "6", "--k", "2", "--g", "2", "--alpha", "2/1"]);
    assert_eq!(v["exceptions"], serde_json::json!(["g2_k_n-2_d_even_unknown"]));
    assert_eq!(v["pic"]["status"], "unknown");

    let v = ok_json(&["report", "--n", "3", "--d", "2", "--k", "2", "--g", "2", "--alpha", "1/1"]);
    assert_eq!(v["brill_noether"], "G^0_4");

    assert_eq!(exit_code(&["report", "--n", "3", "--d", "2", "--k", "3", "--g", "2", "--alpha", "1/1"]), 2);
}

#[test]
fn report_conjectures_only_on_request() {
    let args = ["report", "--n", "5", "--d", "9", "--k", "2", "--g", "3", "--alpha", "2/1", "--conjectures"];
    let v = ok_json(&args);
    assert_eq!(v["pi2"]["text"], "extension of Z x Z_3 by Z");
    assert_eq!(v["conjectures"][0]["conjecture"], true);
}

#[test]
fn sweep_writes_ordered_json_lines_reproducibly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.jsonl");
    let p = path.to_str().unwrap();
    let args = ["sweep", "--n", "3:4", "--d", "1:9", "--g", "2:3", "--parity", "odd", "--out", p];

    let summary = ok_json(&args);
    let first = fs::read(&path).unwrap();
    let lines: Vec<Value> = first
        .split(|&b| b == b'\n')
        .filter(|l| !l.is_empty())
        .map(|l| serde_json::from_slice(l).unwrap())
        .collect();
    assert!(lines.len() >= 20);
    assert_eq!(summary["records"].as_u64(), Some(lines.len() as u64));
    let keys: Vec<(i64, i64, i64, i64)> = lines
        .iter()
        .map(|l| {
            let f = |k: &str| l[k].as_i64().unwrap();
            (f("n"), f("d"), f("g"), f("chamber"))
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(lines.iter().all(|l| l["poincare"]["coeffs"].is_array()));

    ok_json(&args);
    assert_eq!(fs::read(&path).unwrap(), first);
}

#[test]
fn sweep_thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, name: &str| {
        let path = dir.path().join(name);
        let out = Command::new(env!("CARGO_BIN_EXE_cohsys"))
            .args(["sweep", "--n", "3:5", "--d", "1:11", "--g", "2:3", "--out", path.to_str().unwrap()])
            .env("COHSYS_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        fs::read(path).unwrap()
    };
    assert_eq!(run("1", "a"), run("4", "b"));
}

#[test]
fn sweep_empty_range_and_bad_paths() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.jsonl");
    let v = ok_json(&["sweep", "--n", "5:3", "--d", "1:9", "--g", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(v["records"], 0);
    assert_eq!(fs::read(&path).unwrap(), b"");

    let bad = dir.path().join("missing/dir/out.jsonl");
    assert_eq!(exit_code(&["sweep", "--n", "3", "--d", "5", "--g", "2", "--out", bad.to_str().unwrap()]), 5);
    assert_eq!(exit_code(&["sweep", "--n", "1:3", "--d", "5", "--g", "2", "--out", path.to_str().unwrap()]), 2);
}

#[test]
fn sweep_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    ok_json(&["sweep", "--n", "3:4", "--d", "1:5", "--g", "2", "--parity", "all", "--format", "csv", "--out", path.to_str().unwrap()]);
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    let header = rdr.headers().unwrap().clone();
    assert_eq!(&header[0], "n");
    let rows: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
    assert!(rows.iter().any(|r| &r[6] == "even_degree"));
    assert!(rows.iter().all(|r| r.len() == header.len()));
}
