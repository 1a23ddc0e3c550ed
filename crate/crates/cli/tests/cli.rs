use std::path::PathBuf;
use std::process::{Command, Output};

use markov_dyck::{build_rotational, census, fibonacci_graph, HeightData};
use serde_json::Value;

fn mdyck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdyck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).expect("valid json")
}

#[test]
fn entropy_two_level() {
    let out = mdyck(&["entropy", "--data", "1,2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let value = v["value"].as_f64().unwrap();
    assert!((value - 6f64.sqrt().ln()).abs() < 1e-12);
    assert_eq!(v["closed_forms"][0]["contained"], true);
    assert_eq!(v["verified"], true);
    let lo: f64 = v["entropy"]["decimal"][0].as_str().unwrap().parse().unwrap();
    assert!(lo <= 6f64.sqrt().ln());
}

#[test]
fn entropy_flags_published_cubic() {
    // the corrected cubic agrees; the published one does not
    let out = mdyck(&["entropy", "--data", "1,1,2"]);
    assert_eq!(code(&out), 2);
    let v = json(&out);
    assert_eq!(v["verified"], true);
    assert_eq!(v["as_written_mismatch"], true);
}

#[test]
fn fibonacci_entropy() {
    let out = mdyck(&["entropy", "--graph", "fibonacci", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("quantity,value,check\n"));
    assert!(text.contains("3 log 2 - log 3"));
}

#[test]
fn zeta_dyck_matches_census() {
    let out = mdyck(&["zeta", "--data", "2", "--order", "8"]);
    let v = json(&out);
    assert_eq!(v["first_mismatch"], Value::Null);
    assert!(v["classes"].as_array().unwrap().iter().all(|c| c["outcome"]["status"] == "match"));
    let coeffs: Vec<&str> = v["zeta"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(&coeffs[..3], &["1", "4", "14"]);
    // the published product exponent disagrees, which is reported as status 2
    assert_eq!(code(&out), 2);
}

#[test]
fn zeta_reports_as_written_exponent() {
    let out = mdyck(&["zeta", "--data", "1,2", "--order", "8"]);
    assert_eq!(code(&out), 2);
    let v = json(&out);
    let displays = v["displays"].as_array().unwrap();
    let find = |reading: &str| {
        displays
            .iter()
            .find(|d| d["display"] == "product_formula" && d["reading"] == reading)
            .unwrap()
            .clone()
    };
    assert_eq!(find("as_written")["outcome"]["order"], 2);
    assert_eq!(find("corrected")["outcome"]["status"], "match");
}

#[test]
fn zeta_periodic_data() {
    let out = mdyck(&["zeta", "--data", "1,2", "--copies", "2", "--order", "12", "--n", "6"]);
    let v = json(&out);
    assert_eq!(v["excursions_periodic"], true);
    assert_eq!(v["report"]["first_mismatch"], Value::Null);
    assert_eq!(v["report"]["census_order"], 6);
}

#[test]
fn census_fibonacci_rows() {
    let out = mdyck(&["census", "--graph", "fibonacci", "--n", "6"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    let oracle = census(&fibonacci_graph(), 6).unwrap();
    for (row, want) in rows.iter().zip(oracle.rows()) {
        assert_eq!(row["total"], want.total.to_string());
        assert_eq!(row["negative"], row["positive"]);
    }
    assert!(v["invariant_violations"].as_array().unwrap().is_empty());
}

#[test]
fn census_csv_header_and_counts() {
    let out = mdyck(&["census", "--graph", "dyck:2", "--n", "4", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,total,neutral,negative,positive"));
    let oracle = census(&build_rotational(&HeightData::new(vec![2]).unwrap()), 4).unwrap();
    for (line, want) in lines.zip(oracle.rows()) {
        assert_eq!(line.split(',').nth(1), Some(want.total.to_string().as_str()));
    }
}

#[test]
fn graph_exports() {
    let out = mdyck(&["graph", "--data", "1,2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["vertices"], 2);
    assert_eq!(v["edges"], 3);
    assert_eq!(v["homogeneity"]["data"], serde_json::json!([1, 2]));
    assert_eq!(v["companion"]["matrix"], serde_json::json!([["0", "3"], ["2", "0"]]));

    let dot = stdout(&mdyck(&["graph", "--data", "1,2", "--format", "dot"]));
    assert!(dot.starts_with("digraph G {\n") && dot.ends_with("}\n"));
    assert_eq!(dot.matches("->").count(), 3);

    let fib = json(&mdyck(&["graph", "--graph", "fibonacci"]));
    assert_eq!(fib["homogeneity"]["homogeneous"], false);
}

#[test]
fn conjugacy_round_trip() {
    let out = mdyck(&["conjugacy", "--data", "1,1,2", "--steps", "200", "--seed", "3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["round_trip"]["mismatches"], 0);
    assert!(v["interior_rate"].as_f64().unwrap() >= 0.9);
    assert_eq!(v["reduction"]["perron_agree"], true);
    assert_eq!(v["prng"], "ChaCha8");
}

#[test]
fn sample_is_deterministic() {
    let args = ["sample", "--data", "1,2", "--steps", "20000", "--seed", "11"];
    let a = mdyck(&args);
    let b = mdyck(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 20_002);
    let header: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(header["prng"], "ChaCha8");
    assert_eq!(header["seed"], 11);
    let footer: Value = serde_json::from_str(lines[20_001]).unwrap();
    assert_eq!(footer["report"]["forward"]["majority_holds"], true);

    let other = mdyck(&["sample", "--data", "1,2", "--steps", "20000", "--seed", "12"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(code(&mdyck(&["entropy", "--data", "1,1"])), 1);
    assert_eq!(code(&mdyck(&["entropy", "--data", "1,x"])), 1);
    assert_eq!(code(&mdyck(&["entropy"])), 1);
    assert_eq!(code(&mdyck(&["entropy", "--graph", "petersen"])), 1);
    assert_eq!(code(&mdyck(&["census", "--data", "2", "--format", "dot"])), 1);
    assert_eq!(code(&mdyck(&["sample", "--graph", "fibonacci"])), 1);
    assert_eq!(code(&mdyck(&["nonsense"])), 1);
    assert_eq!(code(&mdyck(&["--help"])), 0);
}

#[test]
fn budget_exits_three() {
    let out = mdyck(&["census", "--data", "1,1,2", "--n", "12", "--budget", "500"]);
    assert_eq!(code(&out), 3);
    assert!(out.stdout.is_empty());
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("mdyck-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn config_file_mirrors_flags() {
    let path = temp_file("census.conf", "# census run\ngraph = dyck:3\nn = 4\nformat = csv\n");
    let p = path.to_str().unwrap();
    let from_file = mdyck(&["census", "--config", p]);
    let from_flags = mdyck(&["census", "--graph", "dyck:3", "--n", "4", "--format", "csv"]);
    assert_eq!(code(&from_file), 0);
    assert_eq!(from_file.stdout, from_flags.stdout);
    // flags take precedence
    let overridden = mdyck(&["census", "--config", p, "--n", "2"]);
    assert_eq!(stdout(&overridden).lines().count(), 3);

    let bad = temp_file("bad.conf", "colour = blue\n");
    assert_eq!(code(&mdyck(&["census", "--config", bad.to_str().unwrap()])), 1);
    std::fs::remove_file(path).ok();
    std::fs::remove_file(bad).ok();
}
