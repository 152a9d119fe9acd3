use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use liefree::autgrp::{g_tilde, h};
use liefree::exact::{frac, rat, Matrix};
use liefree::liealg::{heisenberg, AlgebraJson};
use liefree::LieAlgebra;
use serde_json::Value;

fn liefree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liefree"))
        .args(args)
        .env_remove("LIEFREE_GRID_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad json ({e}): {}", stdout(o)))
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("liefree-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn matrix_json(m: &Matrix) -> String {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect())
        .collect();
    serde_json::to_string(&rows).unwrap()
}

#[test]
fn dims_text_and_json() {
    let o = liefree(&["dims", "3", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("total  14"));
    let o = liefree(&["dims", "3", "3", "--json"]);
    let v = json(&o);
    assert_eq!(v["total"], 14);
    assert_eq!(v["center"], 8);
    assert_eq!(v["degrees"].as_array().unwrap().len(), 3);
}

#[test]
fn basis_json_has_one_row_per_element() {
    let v = json(&liefree(&["--json", "basis", "2", "4"]));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows.iter().filter(|r| r["degree"] == 4).count(), 3);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(liefree(&["dims", "1", "3"]).status.code(), Some(2));
    assert_eq!(liefree(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(liefree(&["metric", "--algebra", "free:two,3"]).status.code(), Some(2));
    assert_eq!(liefree(&["algebra", "/nonexistent/liefree.json"]).status.code(), Some(2));
    assert_eq!(liefree(&["aut", "--algebra", "n32", "--matrix", "/nonexistent"]).status.code(), Some(2));
}

#[test]
fn algebra_json_round_trip() {
    let o = liefree(&["algebra", "cotangent:heisenberg:1"]);
    assert_eq!(o.status.code(), Some(0));
    let parsed: AlgebraJson = serde_json::from_slice(&o.stdout).unwrap();
    let g = LieAlgebra::from_json(&parsed).unwrap();
    assert_eq!(g.dim(), 6);
    let path = temp_file("double.json", &stdout(&o));
    let again = liefree(&["algebra", path.to_str().unwrap()]);
    assert_eq!(stdout(&again), stdout(&o));

    let h1 = serde_json::to_string(&heisenberg(1).unwrap().to_json()).unwrap();
    let path = temp_file("h1.json", &h1);
    let v = json(&liefree(&["--json", "metric", "--algebra", path.to_str().unwrap()]));
    assert_eq!(v["verdict"]["admits"], false);
    assert_eq!(v["verdict"]["reason"], "fails_e1");
}

#[test]
fn metric_search_and_form_check() {
    let v = json(&liefree(&["--json", "metric", "--algebra", "n23"]));
    assert_eq!(v["invariant_forms"], 4);
    assert_eq!(v["verdict"]["admits"], true);

    let good = temp_file("b23.json", &matrix_json(liefree::metric::b23().gram()));
    let o = liefree(&["metric", "--algebra", "n23", "--form", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let mut m = Matrix::identity(5);
    m[(0, 0)] = rat(2);
    let bad = temp_file("not-invariant.json", &matrix_json(&m));
    let o = liefree(&["--json", "metric", "--algebra", "n23", "--form", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["invariant"], false);
}

#[test]
fn grid_budget_env_is_honoured() {
    let g = LieAlgebra::from_unit_brackets(8, &[(1, 2, 5), (1, 3, 6), (1, 4, 7), (2, 3, 8)]).unwrap();
    let path = temp_file("degenerate.json", &serde_json::to_string(&g.to_json()).unwrap());
    let o = Command::new(env!("CARGO_BIN_EXE_liefree"))
        .args(["metric", "--algebra", path.to_str().unwrap()])
        .env("LIEFREE_GRID_BUDGET", "50")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("50"));

    let o = Command::new(env!("CARGO_BIN_EXE_liefree"))
        .args(["--json", "scan", "--instances", "3,2", "2,4"])
        .env("LIEFREE_GRID_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert!(v[0]["free"]["error"].as_str().unwrap().contains("budget"));
    assert_eq!(v[1]["free"]["reason"], "fails_e1");
}

#[test]
fn scan_reports_both_families() {
    let v = json(&liefree(&["--json", "scan", "--instances", "3,2", "2,4"]));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["free"]["admits"], true);
    assert_eq!(rows[1]["metabelian"]["admits"], false);
}

#[test]
fn derivations_of_named_algebras() {
    for (name, der, skew) in [("n23", 10, 6), ("n32", 18, 11)] {
        let o = liefree(&["--json", "derivations", "--algebra", name]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        let v = json(&o);
        assert_eq!(v["der"], der);
        assert_eq!(v["skew"], skew);
    }
    let v = json(&liefree(&["--json", "derivations", "--algebra", "heisenberg:1"]));
    assert_eq!(v["inner"], 2);
    assert!(v["skew"].is_null());
}

#[test]
fn aut_matrix_files() {
    let a = Matrix::from_rows(vec![vec![rat(2), frac(1, 3)], vec![rat(3), rat(1)]]).unwrap();
    let t = g_tilde(&a).unwrap().into_matrix();
    let t = &t * h(&rat(1), &frac(-1, 2), &rat(4)).matrix();
    let orth = temp_file("orth.json", &matrix_json(&t));
    let o = liefree(&["--json", "aut", "--matrix", orth.to_str().unwrap(), "--factor", "--metric"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["automorphism"], true);
    assert_eq!(v["orthogonal"], true);
    assert_eq!(v["factorization"]["y"], "-1/2");
    assert_eq!(v["factorization"]["u"], "0");

    let mut scaled = Matrix::identity(5);
    for (i, s) in [2, 1, 2, 4, 2].into_iter().enumerate() {
        scaled[(i, i)] = rat(s);
    }
    let path = temp_file("scaled.json", &matrix_json(&scaled));
    let o = liefree(&["aut", "--matrix", path.to_str().unwrap(), "--factor"]);
    assert_eq!(o.status.code(), Some(0));
    let o = liefree(&["aut", "--matrix", path.to_str().unwrap(), "--metric"]);
    assert_eq!(o.status.code(), Some(1));

    scaled[(4, 4)] = rat(3);
    let path = temp_file("broken.json", &matrix_json(&scaled));
    let o = liefree(&["--json", "aut", "--matrix", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["automorphism"], false);
}

#[test]
fn verify_paper_json() {
    let o = liefree(&["--json", "verify-paper"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["claims"].as_array().unwrap().len(), 11);
}
