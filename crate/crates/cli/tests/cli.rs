use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn seqtrans(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqtrans"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = seqtrans(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn ln2_delta_spot_value_is_exact() {
    let r = json(&[
        "accelerate", "--problem", "ln2", "--terms", "3", "--family", "S", "--variant", "d", "--beta", "1",
        "--kmax", "1", "--scalar", "rational",
    ]);
    assert_eq!(r["table"][1]["entries"][0]["value"], "7/10");
    assert_eq!(r["recommended"]["value"], "7/10");
}

#[test]
fn constant_input_is_reproduced_with_zero_error_estimate() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "c.txt", "3\n3\n3\n3\n3\n3\n");
    for scalar in ["f64", "rational"] {
        let r = json(&["accelerate", "--input", &input, "--as-sums", "--family", "lambda", "--scalar", scalar]);
        assert_eq!(r["recommended"]["value_f64"], 3.0);
        assert_eq!(r["recommended"]["k"], 5);
        assert_eq!(r["error_estimate"].as_f64().or_else(|| r["error_estimate"].as_str().map(|s| s.parse().unwrap())), Some(0.0));
    }
}

#[test]
fn constant_input_with_data_based_estimates_is_a_numerical_error() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "c.txt", "3\n3\n3\n3\n");
    let out = seqtrans(&["accelerate", "--input", &input, "--as-sums", "--family", "S", "--variant", "d"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("remainder estimate vanishes"));
}

#[test]
fn euler_series_delta_matches_the_integral() {
    let r = json(&["accelerate", "--problem", "euler-z1", "--terms", "26", "--family", "S", "--variant", "d"]);
    // Gompertz constant, the value of the integral at z = 1
    let gompertz = 0.596_347_362_323_194_1;
    let v = r["recommended"]["value_f64"].as_f64().unwrap();
    assert!((v - gompertz).abs() <= 1e-6, "{v}");
    assert!((r["source"]["oracle"].as_f64().unwrap() - gompertz).abs() < 1e-12);
}

#[test]
fn predict_exp_gives_one_quarter() {
    let r = json(&["predict", "--problem", "exp", "--terms", "3", "--variant", "d", "--k", "1", "--n", "0"]);
    assert_eq!(r["predictions"][0]["index"], 3);
    assert_eq!(r["predictions"][0]["value"], "1/4");
    assert_eq!(r["guaranteed_order"], 3);
    assert_eq!(r["approximant"]["numerator"], serde_json::json!(["1", "1/2"]));
    assert_eq!(r["approximant"]["denominator"], serde_json::json!(["1", "-1/2"]));
}

#[test]
fn predict_geometric_t_variant_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.json", "[1, 1, 1]");
    let r = json(&["predict", "--input", &input, "--variant", "t", "--k", "2", "--n", "0", "--count", "5"]);
    let preds = r["predictions"].as_array().unwrap();
    assert_eq!(preds.len(), 5);
    assert!(preds.iter().all(|p| p["value"] == "1"));
}

#[test]
fn predict_rejects_short_input_with_exit_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "short.txt", "1\n1\n");
    let out = seqtrans(&["predict", "--input", &input, "--variant", "d", "--k", "1", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("at least 3 coefficients"), "{err}");
}

#[test]
fn accelerate_rejects_order_beyond_input() {
    let out = seqtrans(&["accelerate", "--problem", "ln2", "--terms", "5", "--family", "S", "--variant", "d", "--kmax", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("needs at least 8 values"));
}

#[test]
fn compare_ln2_errors_decrease() {
    let r = json(&[
        "compare", "--problem", "ln2", "--terms", "12", "--family", "S", "--variant", "d", "--baseline", "epsilon",
    ]);
    assert_eq!(r["methods"], serde_json::json!(["S:d", "epsilon"]));
    let rows = r["rows"].as_array().unwrap();
    for col in 0..2 {
        let errs: Vec<f64> = rows.iter().filter_map(|row| row["errors"][col].as_f64()).collect();
        for w in errs[2..].windows(2) {
            assert!(w[1] < w[0], "column {col}: {errs:?}");
        }
        if col == 0 {
            assert!(*errs.last().unwrap() < 1e-8);
        }
    }
}

#[test]
fn compare_without_reference_omits_errors() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "t.txt", "1\n-1/2\n1/3\n-1/4\n1/5\n-1/6\n");
    let r = json(&["compare", "--input", &input, "--family", "L", "--variant", "t", "--baseline", "epsilon"]);
    assert!(r["oracle"].is_null());
    assert!(r["rows"].as_array().unwrap().iter().all(|row| row.get("errors").is_none()));
    let with = json(&[
        "compare", "--input", &input, "--family", "L", "--variant", "t", "--exact", "0.6931471805599453",
    ]);
    assert!(with["rows"][0]["errors"].is_array());
}

#[test]
fn compare_duplicate_method_gives_identical_columns() {
    let r = json(&["compare", "--problem", "zeta2", "--family", "L", "--variant", "u", "--baseline", "L:u"]);
    for row in r["rows"].as_array().unwrap() {
        assert_eq!(row["values"][0], row["values"][1]);
        assert_eq!(row["errors"][0], row["errors"][1]);
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("out{i}.json"));
        let p = path.to_str().unwrap();
        let out = seqtrans(&[
            "compare", "--problem", "ln2", "--family", "S", "--variant", "d", "--baseline", "epsilon", "--baseline",
            "L:t", "--baseline", "lambda", "--output", p,
        ]);
        assert!(out.status.success());
        outputs.push(fs::read(&path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let a = seqtrans(&["accelerate", "--problem", "zeta2", "--family", "C", "--variant", "v", "--alpha", "2", "--format", "csv"]);
    let b = seqtrans(&["accelerate", "--problem", "zeta2", "--family", "C", "--variant", "v", "--alpha", "2", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn scalar_modes_agree_on_valid_entries() {
    let cases: [&[&str]; 3] = [
        &["--problem", "ln2", "--family", "S", "--variant", "d"],
        &["--problem", "zeta2", "--family", "L", "--variant", "u"],
        &["--problem", "geometric-half", "--family", "M", "--variant", "t", "--xi", "3"],
    ];
    for case in cases {
        let run = |scalar: &str| {
            let mut args = vec!["accelerate", "--kmax", "8", "--terms", "12", "--scalar", scalar];
            args.extend_from_slice(case);
            json(&args)
        };
        let float = run("f64");
        let exact = run("rational");
        for (rf, re) in float["table"].as_array().unwrap().iter().zip(exact["table"].as_array().unwrap()) {
            for (ef, ee) in rf["entries"].as_array().unwrap().iter().zip(re["entries"].as_array().unwrap()) {
                if ef["valid"] != true {
                    continue;
                }
                let x = ef["value_f64"].as_f64().unwrap();
                let y = ee["value_f64"].as_f64().unwrap();
                assert!((x - y).abs() <= 1e-10 * y.abs(), "{case:?}: {x} vs {y}");
            }
        }
    }
}

#[test]
fn configuration_errors_exit_with_1() {
    let cases: [&[&str]; 6] = [
        &["accelerate", "--problem", "ln2", "--family", "epsilon", "--variant", "d"],
        &["accelerate", "--problem", "ln2", "--family", "X", "--variant", "d"],
        &["accelerate", "--problem", "ln2", "--family", "S"],
        &["accelerate", "--problem", "ln2", "--family", "S", "--variant", "d", "--xi", "2"],
        &["accelerate", "--problem", "ln2", "--family", "G", "--variant", "d"],
        &["accelerate", "--no-such-flag"],
    ];
    for args in cases {
        let out = seqtrans(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
    }
    let out = seqtrans(&["accelerate", "--problem", "ln2", "--family", "epsilon", "--variant", "d"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("uses no remainder estimate"));
}

#[test]
fn unreadable_or_malformed_input_exits_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "1\nabc\n");
    let out = seqtrans(&["accelerate", "--input", &bad, "--family", "S", "--variant", "d"]);
    assert_eq!(out.status.code(), Some(2));
    let missing = dir.path().join("missing.txt");
    let out = seqtrans(&["accelerate", "--input", missing.to_str().unwrap(), "--family", "lambda"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn general_family_with_schedule_string() {
    let r = json(&["accelerate", "--problem", "ln2", "--terms", "12", "--family", "G", "--variant", "t", "--q", "m^2"]);
    let v = r["recommended"]["value_f64"].as_f64().unwrap();
    assert!((v - std::f64::consts::LN_2).abs() < 1e-6);
    let r = json(&[
        "accelerate", "--problem", "ln2", "--terms", "6", "--family", "G", "--variant", "d", "--q", "list:1,4,9,16",
    ]);
    assert_eq!(r["k_max"], 4);
}

#[test]
fn explicit_omega_reproduces_a_model_sequence() {
    // s_n = 1 + (1/2)^n (2 + 3/(n+1)): exact at order 2 with omega_n = (1/2)^n and L(beta=1)
    let dir = tempfile::tempdir().unwrap();
    let sums: Vec<String> = (0..5)
        .map(|n| {
            let w = 0.5f64.powi(n);
            format!("{}", 1.0 + w * (2.0 + 3.0 / (n as f64 + 1.0)))
        })
        .collect();
    let omega: Vec<String> = (0..5).map(|n| format!("{}", 0.5f64.powi(n))).collect();
    let input = write(dir.path(), "s.txt", &sums.join("\n"));
    let om = write(dir.path(), "w.txt", &omega.join("\n"));
    let r = json(&[
        "accelerate", "--input", &input, "--as-sums", "--family", "L", "--variant", "explicit-omega", "--omega", &om,
        "--kmax", "2", "--scalar", "rational",
    ]);
    assert_eq!(r["table"][2]["entries"][0]["value"], "1");
    let out = seqtrans(&["accelerate", "--input", &input, "--family", "L", "--variant", "explicit-omega"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn csv_and_list_problems() {
    let out = seqtrans(&["accelerate", "--problem", "ln2", "--terms", "4", "--family", "lambda", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("k,n,valid,value,denominator_magnitude\n"));
    assert_eq!(text.lines().count(), 1 + 4 + 3 + 2 + 1);
    let r = json(&["list-problems"]);
    let names: Vec<&str> = r.as_array().unwrap().iter().map(|p| p["name"].as_str().unwrap()).collect();
    for name in ["ln2", "zeta2", "euler-z1", "geometric-half", "exp", "ln1p"] {
        assert!(names.contains(&name));
    }
    let csv = seqtrans(&["list-problems", "--format", "csv"]);
    assert!(String::from_utf8(csv.stdout).unwrap().starts_with("name,classification,value,description\n"));
}
