use std::process::{Command, Output};

use serde_json::Value;

fn zdspec(args: &[&str]) -> Output {
    zdspec_env(args, &[])
}

fn zdspec_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_zdspec"));
    cmd.args(args).env_remove("ZDSPEC_SIZE_CAP").env_remove("ZDSPEC_DENSE_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn strings(v: &Value) -> Vec<Vec<String>> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect())
        .collect()
}

#[test]
fn quotient_csv() {
    let o = zdspec(&["quotient", "--kind", "p", "--m", "2", "--n", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0,0,1\n0,1,2\n1,3,3\n");
}

#[test]
fn quotient_json() {
    let o = zdspec(&["quotient", "--kind", "q", "--m", "3", "--n", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(strings(&v["matrix"]), [["0", "0", "2"], ["0", "4", "2"], ["8", "8", "2"]]);
    assert_eq!(v["rank"], 3);
    assert_eq!(v["determinant"], v["formula_determinant"]);
    assert_eq!(v["walk_closed_matches_iterative"], true);
}

#[test]
fn quotient_text_shows_walk_and_determinant() {
    let o = zdspec(&["quotient", "--kind", "q", "--m", "2", "--n", "4"]);
    let text = stdout(&o);
    assert!(text.contains("\n1 4 9\n"), "{text}");
    assert!(text.contains("determinant: -1\n"));
    assert!(text.contains("rank: 3\n"));
}

#[test]
fn usage_errors() {
    for args in [
        &["quotient", "--kind", "p", "--m", "2", "--n", "1"][..],
        &["quotient", "--kind", "p", "--m", "1", "--n", "4"],
        &["quotient", "--kind", "p", "--m", "2", "--n", "4", "--format", "dot"],
        &["verify", "--m", "1..3", "--n", "2..4"],
        &["verify", "--m", "4..2"],
        &["export", "--m", "2", "--n", "3", "--what", "graph", "--format", "text"],
        &["report", "--m", "2", "--n", "3", "--dense-cap", "50", "--size-cap", "10"],
        &["report", "--m", "2", "--n", "3", "--grouping-gap", "-1"],
        &["frobnicate"],
    ] {
        assert_eq!(zdspec(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn report_boolean_four() {
    let o = zdspec(&["report", "--m", "2", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["graph"], "full");
    assert_eq!(reports[1]["graph"], "bipartite");
    let main: Vec<f64> = reports[0]["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["main"] == true)
        .map(|e| e["value"].as_f64().unwrap())
        .collect();
    let s = 21f64.sqrt();
    let want = [-1.0, (5.0 - s) / 2.0, (5.0 + s) / 2.0];
    assert_eq!(main.len(), 3);
    for (x, y) in main.iter().zip(want) {
        assert!((x - y).abs() < 1e-8);
    }
    for r in reports {
        for c in r["checks"].as_array().unwrap() {
            assert_eq!(c["pass"], true, "{c}");
        }
    }
}

#[test]
fn report_complete_bipartite() {
    let o = zdspec(&["report", "--m", "3", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let eig: Vec<(f64, u64, bool)> = v[0]["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["value"].as_f64().unwrap(), e["multiplicity"].as_u64().unwrap(), e["main"].as_bool().unwrap()))
        .collect();
    assert_eq!(eig.len(), 3);
    assert!((eig[0].0 + 2.0).abs() < 1e-10 && eig[0].1 == 1 && !eig[0].2);
    assert!(eig[1].0.abs() < 1e-10 && eig[1].1 == 2 && !eig[1].2);
    assert!((eig[2].0 - 2.0).abs() < 1e-10 && eig[2].1 == 1 && eig[2].2);
}

#[test]
fn report_beyond_dense_cap() {
    let o = zdspec(&["report", "--m", "5", "--n", "6"]);
    assert_eq!(o.status.code(), Some(3));
    let v = json(&o);
    assert!(v[0]["refused"].as_str().unwrap().contains("dense cap"));
    assert!(v[0]["eigenvalues"].as_array().unwrap().is_empty());
    let names: Vec<&str> = v[0]["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"p_walk_rank"));
    assert!(names.contains(&"full_krylov_rank"));
    assert!(v[1]["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn caps_from_environment() {
    let o = zdspec_env(&["report", "--m", "2", "--n", "4"], &[("ZDSPEC_DENSE_CAP", "10")]);
    assert_eq!(o.status.code(), Some(3));
    let o = zdspec_env(
        &["export", "--m", "3", "--n", "4", "--what", "graph"],
        &[("ZDSPEC_SIZE_CAP", "50"), ("ZDSPEC_DENSE_CAP", "50")],
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
    // flags win over the environment
    let o = zdspec_env(&["report", "--m", "2", "--n", "4", "--dense-cap", "100"], &[("ZDSPEC_DENSE_CAP", "10")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_small_grid() {
    let o = zdspec(&["verify", "--m", "2..2", "--n", "2..2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all 1 cells passed"));

    let o = zdspec(&["verify", "--m", "2..3", "--n", "3..4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let cells: Vec<(u64, u64)> = json(&o)
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["m"].as_u64().unwrap(), c["n"].as_u64().unwrap()))
        .collect();
    assert_eq!(cells, [(2, 3), (2, 4), (3, 3), (3, 4)]);
}

#[test]
fn verify_reports_failures() {
    // a projection threshold above 1 cannot classify anything as main
    let o = zdspec(&["verify", "--m", "2..2", "--n", "3..3", "--projection-threshold", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("failures:"));
}

#[test]
fn export_subgraph_dot() {
    let o = zdspec(&["export", "--m", "2", "--n", "4", "--what", "subgraph", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    let mut edges: Vec<(String, String)> = dot
        .lines()
        .filter_map(|l| l.trim().strip_suffix(';')?.split_once(" -- "))
        .map(|(a, b)| (a.trim_matches('"').to_string(), b.trim_matches('"').to_string()))
        .collect();
    edges.sort();
    // X_{*0} = ab10, X_{0*} = cd01, adjacent iff ab and cd share no nonzero position
    let mut expected = Vec::new();
    for ab in 0..4u32 {
        for cd in 0..4u32 {
            if ab & cd == 0 {
                let (x, y) = (format!("{ab:02b}10"), format!("{cd:02b}01"));
                expected.push(if x < y { (x, y) } else { (y, x) });
            }
        }
    }
    expected.sort();
    assert_eq!(edges, expected);
    let mut vertices: Vec<&str> = dot.lines().filter(|l| l.starts_with("    \"")).collect();
    vertices.dedup();
    assert_eq!(vertices.len(), 8);
    assert_eq!(dot.matches("rank = same").count(), 3);
}

#[test]
fn export_csv_and_json() {
    let o = zdspec(&["export", "--m", "2", "--n", "2", "--what", "graph", "--format", "csv"]);
    assert_eq!(stdout(&o), "0,1\n1,0\n");
    let o = zdspec(&["export", "--m", "2", "--n", "3", "--what", "graph", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["m"], 2);
    assert_eq!(v["n"], 3);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(v["edges"].as_array().unwrap().len(), 6);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["report", "--m", "3", "--n", "4"][..],
        &["export", "--m", "3", "--n", "3", "--what", "graph", "--format", "dot"],
        &["verify", "--m", "2..3", "--n", "2..3", "--format", "json"],
    ] {
        assert_eq!(zdspec(args).stdout, zdspec(args).stdout, "{args:?}");
    }
}
