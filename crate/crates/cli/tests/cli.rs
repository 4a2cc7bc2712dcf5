use std::process::{Command, Output};

use serde_json::Value;

fn specht(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specht"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn verdict<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["name"] == name)
        .map(|v| &v["value"])
        .unwrap_or_else(|| panic!("no verdict {name}"))
}

#[test]
fn radical_check_three_three() {
    let out = specht(&["radical-check", "--shape", "3,3", "--max-deg", "7", "--char", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    for key in ["command", "config", "verdicts", "tables", "timing_ms", "version"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["command"], "radical-check");
    assert_eq!(*verdict(&r, "equal_up_to_degree"), Value::Bool(true));
    assert!(r["timing_ms"].is_null());
    for v in r["verdicts"].as_array().unwrap() {
        assert!(!v["provenance"].as_str().unwrap().is_empty());
    }
}

#[test]
fn radical_check_reports_separating_polynomial() {
    let out = specht(&["radical-check", "--shape", "3,2,1", "--max-deg", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(*verdict(&r, "first_disagreement"), Value::from(3));
    assert!(verdict(&r, "separating_polynomial").as_str().unwrap().contains('x'));
}

#[test]
fn catalan_four() {
    let out = specht(&["catalan", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(*verdict(&r, "catalan"), Value::from(14));
    assert_eq!(*verdict(&r, "minimal_generators_of_intersection"), Value::from(14));
}

#[test]
fn betti_char_two_totals_and_layout() {
    let out = specht(&["betti", "--shape", "3,3", "--char", "2", "--format", "m2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("total: 1 5 9 6 1"), "{text}");
    assert!(text.contains("    3: . . 9 5 1"), "{text}");
    assert!(text.contains("    4: . . . 1 ."), "{text}");
}

#[test]
fn cm_check_non_cm_is_exit_one() {
    let out = specht(&["cm-check", "--shape", "3,3", "--char", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(*verdict(&json(&out), "is_cm"), Value::Bool(false));
    let out = specht(&["cm-check", "--shape", "2,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(*verdict(&json(&out), "is_gorenstein"), Value::Bool(true));
}

#[test]
fn reports_are_deterministic() {
    let args = ["minimal-primes", "--shape", "3,2,1", "--seed", "7"];
    let a = specht(&args);
    let b = specht(&args);
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    let rows = r["tables"]["minimal_primes"].as_array().unwrap();
    assert!(rows
        .iter()
        .any(|p| p["blocks"] == "1,2,3|4,5,6" && p["height"] == 4));
}

#[test]
fn timing_only_when_requested() {
    let r = json(&specht(&["purity", "--shape", "3,3", "--timing"]));
    assert!(r["timing_ms"].is_u64());
}

#[test]
fn exit_codes_for_errors() {
    assert_eq!(specht(&["gens", "--shape", "2,x"]).status.code(), Some(2));
    assert_eq!(specht(&["gens", "--shape", "2,2", "--char", "4"]).status.code(), Some(2));
    assert_eq!(specht(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(specht(&["hilbert"]).status.code(), Some(2));
    assert_eq!(specht(&["minimal-primes", "--shape", "5,5"]).status.code(), Some(3));
}

#[test]
fn condition_star_false_with_witness() {
    let out = specht(&["condition-star", "--shape", "2,2", "--blocks", "1,2|3,4"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(*verdict(&r, "deciders_agree"), Value::Bool(true));
    assert!(verdict(&r, "witness_tableau").is_string());
}

#[test]
fn socle_probe_characteristics() {
    let out = specht(&["socle-probe", "--n", "6", "--char", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(*verdict(&r, "witness_in_socle"), Value::Bool(true));
    assert_eq!(*verdict(&r, "e1_injective_2"), Value::Bool(false));
    let out = specht(&["socle-probe", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(*verdict(&r, "dim_equals_2n_minus_2"), Value::Bool(true));
    assert_eq!(*verdict(&r, "socle_dim_2"), Value::from(0));
}

#[test]
fn straighten_and_markdown() {
    let out = specht(&["straighten", "--tableau", "3,1,2/5,4", "--format", "md"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# straighten"));
    assert!(text.contains("| reconstructs | true |"));
}

#[test]
fn experiment_is_observational() {
    let out = specht(&["experiment", "--n-max", "5", "--primes", "0,3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let rows = r["tables"]["observations"].as_array().unwrap();
    let aa1 = rows
        .iter()
        .find(|row| row["shape"] == "2,2,1" && row["field"] == "ZZ/3")
        .expect("(2,2,1) over F_3");
    assert!(aa1["consistent"].is_boolean());
}
