use std::process::{Command, Output};

use serde_json::Value;

fn lincode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lincode"))
        .args(args)
        .env_remove("LINCODE_BUDGET")
        .env_remove("LINCODE_WORKERS")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn field_info_reports_subfield_and_modulus() {
    let out = lincode(&["field-info", "--p", "2", "--m", "4", "--d", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["params"]["e"], 2);
    assert_eq!(v["modulus"], serde_json::json!([1, 1, 0, 0, 1]));
    assert_eq!(v["pi_order"], 15);
    assert_eq!(v["pi_primitive"], true);
}

#[test]
fn parameter_errors_exit_2() {
    let out = lincode(&["field-info", "--p", "4", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("p must be prime"));

    let out = lincode(&["field-info", "--p", "2", "--m", "4", "--d", "2", "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("k exceeds m/e = 2"));

    let out = lincode(&["field-info", "--p", "2", "--m", "4", "--modulus", "1,0,0,0,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not primitive"));

    let out = lincode(&["weight-dist", "--p", "2", "--m", "2", "--k", "2", "--method", "dense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lincode(&["wenger-spectrum", "--p", "2", "--m", "2", "--method", "moebius"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lincode(&["weight-dist", "--p", "2", "--m", "2", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn weight_dist_all_agrees() {
    let out = lincode(&["weight-dist", "--p", "2", "--m", "2", "--d", "1", "--k", "2", "--method", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["agree"], true);
    let methods = v["methods"].as_array().unwrap();
    assert_eq!(methods.len(), 3);
    for t in methods {
        assert_eq!(
            t["rows"],
            serde_json::json!([
                {"r": 0, "weight": 3, "count": "6"},
                {"r": 1, "weight": 2, "count": "9"}
            ])
        );
    }
}

#[test]
fn formula_needs_no_enumeration() {
    let out = lincode(&["weight-dist", "--method", "formula", "--p", "2", "--m", "12", "--d", "1", "--k", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let total: num_bigint::BigUint = v["methods"][0]["total"].as_str().unwrap().parse().unwrap();
    assert_eq!(total + 1u32, num_bigint::BigUint::from(2u32).pow(144));
}

#[test]
fn budget_errors_exit_3() {
    let out = lincode(&["weight-dist", "--method", "brute_force", "--p", "5", "--m", "4", "--k", "4"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("152587890625"));

    let out = lincode(&["lattice-checks", "--q", "2", "--n", "20"]);
    assert_eq!(out.status.code(), Some(3));

    let out = lincode(&["wenger-spectrum", "--p", "2", "--m", "4", "--k", "2", "--method", "dense"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn method_all_skips_over_budget_routes() {
    let out = lincode(&["weight-dist", "--p", "5", "--m", "4", "--k", "4", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["skipped"][0]["method"], "brute_force");
    assert_eq!(v["methods"].as_array().unwrap().len(), 2);
}

#[test]
fn budget_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_lincode"))
        .args(["weight-dist", "--method", "brute_force", "--p", "2", "--m", "4", "--k", "2"])
        .env("LINCODE_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("requires 256"));

    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_lincode"))
            .args(["weight-dist", "--p", "2", "--m", "4", "--k", "3"])
            .env("LINCODE_WORKERS", workers)
            .output()
            .unwrap()
    };
    assert_eq!(run("1").stdout, run("3").stdout);
}

#[test]
fn wenger_reports_erratum() {
    let out = lincode(&["wenger-spectrum", "--p", "2", "--m", "2", "--d", "1", "--k", "2", "--method", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "consistent");
    assert_eq!(v["erratum_flagged"], true);
    assert_eq!(v["paper_zero_expr"], "18");
    assert_eq!(v["corrected_zero"], "42");
    assert_eq!(v["formula_counting_agree"], true);
    assert_eq!(v["dense_agree"], true);
}

#[test]
fn wenger_formula_only_still_checks_mass() {
    let out = lincode(&["wenger-spectrum", "--p", "3", "--m", "6", "--d", "2", "--k", "3", "--method", "formula"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["mass_checks"], serde_json::json!({"vertices": true, "trace_sq": true}));
    assert_eq!(v["methods"]["counting"], Value::Null);
    assert_eq!(v["methods"]["dense_residual"], Value::Null);
}

#[test]
fn wenger_csv_rows() {
    let out = lincode(&["wenger-spectrum", "--p", "2", "--m", "2", "--d", "1", "--k", "1", "--method", "formula", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "method,sign,lambda_sq_exponent,multiplicity\n\
         formula,-1,4,1\nformula,-1,2,12\nformula,0,,6\nformula,1,2,12\nformula,1,4,1\n"
    );
}

#[test]
fn conjecture_vacuous_and_audit_fields() {
    let out = lincode(&["verify-conjecture", "--u-max", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["cases"], 7);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["i"] == 0 && c["lhs"] == "1"));

    let out = lincode(&["verify-conjecture", "--q", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lattice_checks_pass_and_are_deterministic() {
    let a = lincode(&["lattice-checks", "--q", "2", "--n", "3", "--seed", "7"]);
    let b = lincode(&["lattice-checks", "--q", "2", "--n", "3", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["subspaces"], 16);
    assert_eq!(v["passed"], true);
    assert_eq!(v["gaussian_binomials"], serde_json::json!(["1", "7", "7", "1"]));
}

#[test]
fn moore_rank_test_passes() {
    let out = lincode(&["moore-rank-test", "--p", "3", "--m", "3", "--k", "3", "--trials", "200", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("independent_tuples,200\nfull_rank,200\n"));
    assert!(text.ends_with("passed,true\n"));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("lincode-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.txt");
    let out = lincode(&["weight-dist", "--p", "2", "--m", "2", "--k", "2", "--format", "table", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("verdict: agree"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn modulus_override_keeps_distribution() {
    let a = lincode(&["weight-dist", "--p", "2", "--m", "4", "--d", "1", "--k", "3", "--format", "csv"]);
    let b = lincode(&["weight-dist", "--p", "2", "--m", "4", "--d", "1", "--k", "3", "--modulus", "1,0,0,1,1", "--format", "csv"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
