//! Command-line front end. The `liefree` binary only parses arguments and
//! maps [`Output`] to stdout and an exit code.

use std::fmt::Write as _;
use std::fs;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::autgrp::{aut23_factor, aut23_shape, is_automorphism, is_orthogonal_automorphism, AutMatrix};
use crate::derivs::{derivation_space, inner_derivations, skew_derivation_space, verify_structure, AlgebraTag};
use crate::error::{Error, Result};
use crate::exact::{format_rational, Matrix};
use crate::hall::{hall_basis, witt_dim};
use crate::liealg::{cotangent_double, free_metabelian, free_nilpotent, heisenberg, n23, n32, AlgebraJson, LieAlgebra};
use crate::metric::{
    adinv_space, admits_adinvariant_with_budget, classify_free, grid_budget_from_env, is_adinvariant,
    BilinearForm,
};
use crate::report::{verify_all, CLASSIFY_INSTANCES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "liefree", version, about = "Exact computations on free nilpotent Lie algebras")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Graded dimensions of n_{m,k}.
    Dims { m: usize, k: usize },
    /// Hall basis of n_{m,k}.
    Basis { m: usize, k: usize },
    /// Emit an algebra as JSON.
    ///
    /// SOURCE is free:m,k, metabelian:m,k, heisenberg:n, abelian:n, n23, n32,
    /// cotangent:SOURCE or a path to a JSON file.
    Algebra { source: String },
    /// Decide whether an algebra admits an ad-invariant metric.
    Metric {
        #[arg(long)]
        algebra: String,
        /// Gram matrix file to test instead of searching.
        #[arg(long)]
        form: Option<String>,
    },
    /// Classify free and free metabelian algebras.
    Scan {
        /// Instances as `m,k` pairs, e.g. `2,3 3,2`.
        #[arg(long, num_args = 1..)]
        instances: Vec<String>,
    },
    /// Derivation, skew-derivation and inner-derivation algebras.
    Derivations {
        #[arg(long)]
        algebra: String,
        /// Gram matrix file for skew derivations.
        #[arg(long)]
        metric: Option<String>,
    },
    /// Automorphism membership and the factorization on n23.
    Aut {
        #[arg(long, default_value = "n23")]
        algebra: String,
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        factor: bool,
        /// Also test orthogonality; without a file the normalized metric is used.
        #[arg(long, num_args = 0..=1, default_missing_value = "")]
        metric: Option<String>,
    },
    /// Run every reproduction check.
    VerifyPaper,
}

/// Rendered result of a command.
#[derive(Debug)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { code: EXIT_OK, stdout }
    }

    fn with(passed: bool, stdout: String) -> Self {
        Output {
            code: if passed { EXIT_OK } else { EXIT_FAILED },
            stdout,
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn pair(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("expected `m,k`, got `{s}`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn number(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected a number, got `{s}`")))
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{path}: {e}")))
}

/// Numbers become strings so that `1` and `"1/2"` are both accepted.
fn stringify_numbers(v: &mut Value, keys: Option<&[&str]>) {
    match v {
        Value::Array(a) => a.iter_mut().for_each(|x| stringify_numbers(x, keys)),
        Value::Object(o) => {
            for (k, x) in o.iter_mut() {
                if x.is_number() && keys.is_none_or(|ks| ks.contains(&k.as_str())) {
                    *x = Value::String(x.to_string());
                } else {
                    stringify_numbers(x, keys);
                }
            }
        }
        Value::Number(_) if keys.is_none() => *v = Value::String(v.to_string()),
        _ => {}
    }
}

pub fn parse_algebra_json(text: &str) -> Result<LieAlgebra> {
    let mut v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    stringify_numbers(&mut v, Some(&["c"]));
    let j: AlgebraJson = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
    LieAlgebra::from_json(&j)
}

/// A matrix as a JSON array of rows of numbers or rational strings.
pub fn parse_matrix_json(text: &str) -> Result<Matrix> {
    let mut v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    stringify_numbers(&mut v, None);
    serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
}

pub fn load_algebra(source: &str) -> Result<LieAlgebra> {
    let (kind, arg) = source.split_once(':').unwrap_or((source, ""));
    match kind {
        "free" => {
            let (m, k) = pair(arg)?;
            free_nilpotent(m, k)
        }
        "metabelian" => {
            let (m, k) = pair(arg)?;
            free_metabelian(m, k)
        }
        "heisenberg" => heisenberg(number(arg)?),
        "abelian" => Ok(LieAlgebra::abelian(number(arg)?)),
        "cotangent" => Ok(cotangent_double(&load_algebra(arg)?).0),
        "n23" if arg.is_empty() => Ok(n23()),
        "n32" if arg.is_empty() => Ok(n32()),
        _ => parse_algebra_json(&read(source)?),
    }
}

fn load_form(path: &str) -> Result<BilinearForm> {
    BilinearForm::new(parse_matrix_json(&read(path)?)?)
}

fn tag_of(source: &str, g: &LieAlgebra) -> Option<AlgebraTag> {
    AlgebraTag::parse(source).ok().or_else(|| {
        if *g == n23() {
            Some(AlgebraTag::N23)
        } else if *g == n32() {
            Some(AlgebraTag::N32)
        } else {
            None
        }
    })
}

fn check_size(m: usize, k: usize) -> Result<()> {
    if m < 2 || k < 1 {
        return Err(Error::InvalidArgument(format!("need m >= 2 and k >= 1, got m={m}, k={k}")));
    }
    if (m as u64).checked_pow(k as u32).is_none() {
        return Err(Error::InvalidArgument(format!("m^k overflows for m={m}, k={k}")));
    }
    Ok(())
}

pub fn cmd_dims(m: usize, k: usize, json_out: bool) -> Result<Output> {
    check_size(m, k)?;
    let degrees: Vec<u64> = (1..=k).map(|s| witt_dim(m, s)).collect();
    let total: u64 = degrees.iter().sum();
    let center = degrees[k - 1];
    if json_out {
        let rows: Vec<Value> = degrees
            .iter()
            .enumerate()
            .map(|(s, d)| json!({ "s": s + 1, "dim": d }))
            .collect();
        return Ok(Output::ok(to_json(&json!({
            "m": m, "k": k, "degrees": rows, "total": total, "center": center,
        }))));
    }
    let mut out = String::new();
    writeln!(out, "n_{{{m},{k}}}").unwrap();
    for (s, d) in degrees.iter().enumerate() {
        writeln!(out, "  d_{m}({}) = {d}", s + 1).unwrap();
    }
    writeln!(out, "total  {total}").unwrap();
    write!(out, "center {center}").unwrap();
    Ok(Output::ok(out))
}

pub fn cmd_basis(m: usize, k: usize, json_out: bool) -> Result<Output> {
    check_size(m, k)?;
    let b = hall_basis(m, k)?;
    let rows: Vec<(usize, usize, String)> = b
        .names()
        .into_iter()
        .enumerate()
        .map(|(i, name)| (i + 1, b.length(i), name))
        .collect();
    if json_out {
        let v: Vec<Value> = rows
            .iter()
            .map(|(i, d, name)| json!({ "index": i, "degree": d, "element": name }))
            .collect();
        return Ok(Output::ok(to_json(&v)));
    }
    let mut out = String::new();
    for (i, d, name) in rows {
        writeln!(out, "{i:>4}  {d}  {name}").unwrap();
    }
    Ok(Output::ok(out.trim_end().to_string()))
}

pub fn cmd_algebra(source: &str) -> Result<Output> {
    Ok(Output::ok(to_json(&load_algebra(source)?.to_json())))
}

pub fn cmd_metric(source: &str, form: Option<&str>, budget: u64, json_out: bool) -> Result<Output> {
    let g = load_algebra(source)?;
    if let Some(path) = form {
        let b = load_form(path)?;
        let invariant = is_adinvariant(&g, &b)?;
        let nondegenerate = b.is_nondegenerate();
        let passed = invariant && nondegenerate;
        let text = if json_out {
            to_json(&json!({
                "invariant": invariant,
                "nondegenerate": nondegenerate,
                "det": format_rational(&b.det()),
            }))
        } else {
            format!(
                "invariant: {invariant}\nnondegenerate: {nondegenerate} (det {})",
                format_rational(&b.det())
            )
        };
        return Ok(Output::with(passed, text));
    }
    let verdict = admits_adinvariant_with_budget(&g, budget)?;
    let summary = verdict.summary();
    if json_out {
        return Ok(Output::ok(to_json(&json!({
            "dim": g.dim(),
            "invariant_forms": adinv_space(&g).dim(),
            "verdict": summary,
        }))));
    }
    let mut out = format!(
        "dim {}\nadmits ad-invariant metric: {}\nreason: {}",
        g.dim(),
        if verdict.admits { "yes" } else { "no" },
        summary.reason
    );
    if let Some(d) = summary.solution_space_dim {
        write!(out, "\ninvariant symmetric forms: {d}").unwrap();
    }
    if let Some(w) = verdict.witness() {
        write!(out, "\nwitness:\n{}", w.gram()).unwrap();
    }
    Ok(Output::ok(out))
}

pub fn cmd_scan(instances: &[String], budget: u64, json_out: bool) -> Result<Output> {
    let list: Vec<(usize, usize)> = if instances.is_empty() {
        CLASSIFY_INSTANCES.to_vec()
    } else {
        instances
            .iter()
            .flat_map(|s| s.split_whitespace())
            .map(pair)
            .collect::<Result<_>>()?
    };
    for &(m, k) in &list {
        check_size(m, k)?;
    }
    let rows = classify_free(&list, budget);
    let code = if rows.iter().any(|r| r.free.is_err() || r.metabelian.is_err()) {
        EXIT_USAGE
    } else {
        EXIT_OK
    };
    if json_out {
        let v: Vec<_> = rows.iter().map(|r| r.summary()).collect();
        return Ok(Output { code, stdout: to_json(&v) });
    }
    let show = |r: &std::result::Result<crate::metric::MetricVerdict, Error>| match r {
        Ok(v) => format!("{:<5} {}", if v.admits { "yes" } else { "no" }, v.reason_label()),
        Err(e) => format!("error {e}"),
    };
    let mut out = format!("{:<7} {:>4} {:<28} {:>4} {}\n", "(m,k)", "dim", "free", "dim", "metabelian");
    for r in &rows {
        let d = |x: Option<usize>| x.map_or("-".to_string(), |d| d.to_string());
        writeln!(
            out,
            "{:<7} {:>4} {:<28} {:>4} {}",
            format!("({},{})", r.m, r.k),
            d(r.free_dim),
            show(&r.free),
            d(r.metabelian_dim),
            show(&r.metabelian)
        )
        .unwrap();
    }
    Ok(Output {
        code,
        stdout: out.trim_end().to_string(),
    })
}

pub fn cmd_derivations(source: &str, metric: Option<&str>, json_out: bool) -> Result<Output> {
    let g = load_algebra(source)?;
    let tag = tag_of(source, &g);
    let form = match (metric, tag) {
        (Some(path), _) => Some(load_form(path)?),
        (None, Some(t)) => Some(t.metric()),
        (None, None) => None,
    };
    let der = derivation_space(&g);
    let skew = form
        .as_ref()
        .map(|b| skew_derivation_space(&g, b))
        .transpose()?;
    let inner = inner_derivations(&g);
    let report = tag.map(verify_structure);
    let passed = report.as_ref().is_none_or(|r| r.all_passed());
    if json_out {
        return Ok(Output::with(
            passed,
            to_json(&json!({
                "dim": g.dim(),
                "der": der.dim(),
                "skew": skew.as_ref().map(|s| s.dim()),
                "inner": inner.dim(),
                "relations": report,
            })),
        ));
    }
    let mut out = format!("Der    {}\n", der.dim());
    if let Some(s) = &skew {
        writeln!(out, "Der_a  {}", s.dim()).unwrap();
    }
    write!(out, "inner  {}", inner.dim()).unwrap();
    if let Some(r) = &report {
        for rel in &r.relations {
            write!(out, "\n[{}] {}", if rel.passed { "PASS" } else { "FAIL" }, rel.name).unwrap();
            if !rel.passed && !rel.detail.is_empty() {
                write!(out, ": {}", rel.detail).unwrap();
            }
        }
        for n in &r.notes {
            write!(out, "\nnote: {n}").unwrap();
        }
    }
    Ok(Output::with(passed, out))
}

pub fn cmd_aut(source: &str, matrix: &str, factor: bool, metric: Option<&str>, json_out: bool) -> Result<Output> {
    let g = load_algebra(source)?;
    let t = parse_matrix_json(&read(matrix)?)?;
    let automorphism = is_automorphism(&g, &t)?;
    let mut passed = automorphism;
    let mut v = json!({ "automorphism": automorphism });
    let is23 = tag_of(source, &g) == Some(AlgebraTag::N23);
    if is23 {
        v["shape"] = json!(aut23_shape(&t));
    }
    if let Some(path) = metric {
        let form = if path.is_empty() {
            tag_of(source, &g)
                .map(|tag| tag.metric())
                .ok_or_else(|| Error::InvalidArgument("--metric needs a file for this algebra".into()))?
        } else {
            load_form(path)?
        };
        let orthogonal = is_orthogonal_automorphism(&g, &form, &t)?;
        passed &= orthogonal;
        v["orthogonal"] = json!(orthogonal);
    }
    if factor {
        if !is23 {
            return Err(Error::InvalidArgument("--factor is only available for n23".into()));
        }
        if automorphism {
            let f = aut23_factor(&AutMatrix::n23(t.clone())?);
            passed &= f.is_ok();
            v["factorization"] = match f {
                Ok(f) => serde_json::to_value(f.to_json()).expect("serializable"),
                Err(e) => json!({ "error": e.to_string() }),
            };
        }
    }
    if json_out {
        return Ok(Output::with(passed, to_json(&v)));
    }
    let mut out = String::new();
    for (k, val) in v.as_object().expect("object") {
        match val {
            Value::Bool(b) => writeln!(out, "{k}: {b}").unwrap(),
            other => writeln!(out, "{k}: {other}").unwrap(),
        }
    }
    Ok(Output::with(passed, out.trim_end().to_string()))
}

pub fn cmd_verify_paper(budget: u64, json_out: bool) -> Output {
    let report = verify_all(budget);
    let text = if json_out {
        to_json(&report)
    } else {
        report.to_string()
    };
    Output::with(report.passed, text)
}

pub fn run(cli: &Cli) -> Result<Output> {
    let budget = grid_budget_from_env();
    let j = cli.json;
    match &cli.command {
        Command::Dims { m, k } => cmd_dims(*m, *k, j),
        Command::Basis { m, k } => cmd_basis(*m, *k, j),
        Command::Algebra { source } => cmd_algebra(source),
        Command::Metric { algebra, form } => cmd_metric(algebra, form.as_deref(), budget, j),
        Command::Scan { instances } => cmd_scan(instances, budget, j),
        Command::Derivations { algebra, metric } => cmd_derivations(algebra, metric.as_deref(), j),
        Command::Aut {
            algebra,
            matrix,
            factor,
            metric,
        } => cmd_aut(algebra, matrix, *factor, metric.as_deref(), j),
        Command::VerifyPaper => Ok(cmd_verify_paper(budget, j)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_examples() {
        for (m, k, total, center) in [(3, 2, 6, 3), (2, 3, 5, 2), (2, 4, 8, 3)] {
            let out = cmd_dims(m, k, true).unwrap();
            let v: Value = serde_json::from_str(&out.stdout).unwrap();
            assert_eq!(v["total"], total);
            assert_eq!(v["center"], center);
        }
        assert!(cmd_dims(1, 2, false).is_err());
        assert!(cmd_dims(50, 50, false).is_err());
    }

    #[test]
    fn sources() {
        assert_eq!(load_algebra("free:3,2").unwrap().dim(), 6);
        assert_eq!(load_algebra("heisenberg:1").unwrap().dim(), 3);
        assert_eq!(load_algebra("cotangent:heisenberg:1").unwrap().dim(), 6);
        assert_eq!(load_algebra("metabelian:2,5").unwrap().dim(), 12);
        assert!(load_algebra("free:3").is_err());
        assert!(load_algebra("/nonexistent.json").is_err());
    }

    #[test]
    fn user_json() {
        // [e1,e2]=e1 and [e1,e3]=e1 satisfy Jacobi
        let ok = r#"{"dim":3,"basis":["e1","e2","e3"],"brackets":[
            {"i":1,"j":2,"terms":[{"k":1,"c":"1"}]},
            {"i":1,"j":3,"terms":[{"k":1,"c":1}]}]}"#;
        assert_eq!(parse_algebra_json(ok).unwrap().dim(), 3);
        let bad = r#"{"dim":3,"basis":["a","b","c"],"brackets":[
            {"i":1,"j":2,"terms":[{"k":3,"c":"1"}]},
            {"i":1,"j":3,"terms":[{"k":1,"c":"1"}]}]}"#;
        assert!(matches!(parse_algebra_json(bad), Err(Error::Jacobi(..))));
        assert!(parse_algebra_json("{").is_err());
    }

    #[test]
    fn matrices_accept_numbers_and_strings() {
        let m = parse_matrix_json(r#"[[1, "1/2"], ["-3", 0]]"#).unwrap();
        assert_eq!(m[(0, 1)], crate::exact::frac(1, 2));
        assert!(parse_matrix_json(r#"[[1, 2], [3]]"#).is_err());
    }

    #[test]
    fn algebra_roundtrip() {
        for src in ["free:2,4", "metabelian:2,5", "cotangent:n32", "heisenberg:2"] {
            let g = load_algebra(src).unwrap();
            let out = cmd_algebra(src).unwrap();
            assert_eq!(parse_algebra_json(&out.stdout).unwrap(), g);
        }
    }

    #[test]
    fn named_derivations() {
        let out = cmd_derivations("n23", None, true).unwrap();
        assert_eq!(out.code, EXIT_OK);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["der"], 10);
        assert_eq!(v["skew"], 6);
    }
}
