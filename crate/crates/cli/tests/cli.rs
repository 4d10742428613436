use std::process::{Command, Output};

use locmin::curve::{verify_curve_and_sample, Certificate};
use locmin::poly::parse;
use serde_json::Value;

const FIG1_099: &str = "y^2*(x^2+y)^2 + 3*0.99*x^6*y^2 + 3*x^4*y^3 + 0.01*x^8*y^3";
const FIG1: &str = "y^2*(x^2+y)^2 + 3*x^6*y^2 + 3*x^4*y^3 + 0.01*x^8*y^3";
const EXAMPLE3: &str = "x^2*y^6 - 2*x^4*y^5 + x^6*y^4 + y^10 - 10*x*y^9 - 0.1*x^8*y^4";
const EXAMPLE6: &str = "(x-y)^6 - (x-y)^2*x^5 + x^8";

fn locmin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locmin")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn example2_local_min() {
    let o = locmin(&["check", "2*x^4*y^2+3*x^2*y^3+2*y^4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("LocalMin"));
}

#[test]
fn example6_needs_two_terms() {
    let o = locmin(&["check", EXAMPLE6, "--max-nu", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("NotLocalMin"));
    assert!(out.contains("x(t) = t^2, y(t) = t^2 + 2*t^3"), "{out}");
    let o = locmin(&["check", EXAMPLE6, "--max-nu", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("open faces: (1, 1)"));
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        vec!["check", "x + y"],
        vec!["check", "x^2 + * y"],
        vec!["check", "0"],
        vec!["check"],
        vec!["check", "x^2", "--depth", "0"],
        vec!["decompose", "x^2*y^2", "--a1", "2", "--a2", "4"],
        vec!["frobnicate"],
    ] {
        let o = locmin(&args);
        assert_eq!(o.status.code(), Some(64), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn parse_error_points_at_position() {
    let o = locmin(&["check", "x^2 + * y"]);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("position 6"), "{err}");
    assert!(err.contains("        ^"), "{err}");
}

#[test]
fn json_certificate_round_trips() {
    for (expr, code) in [(FIG1_099, 1), (FIG1, 1), (EXAMPLE3, 1), ("x^2*(x-y)^2 + 2*y^5", 1)] {
        let o = locmin(&["check", expr, "--json"]);
        assert_eq!(o.status.code(), Some(code), "{expr}");
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["status"], "NotLocalMin");
        let cert: Certificate = serde_json::from_value(v["certificate"].clone()).unwrap();
        let p = parse(v["input"].as_str().unwrap()).unwrap();
        assert!(verify_curve_and_sample(&p, &cert), "{expr}");
        assert!(v["trace"].as_array().is_some_and(|t| !t.is_empty()));
        for step in v["trace"].as_array().unwrap() {
            assert!(step["rule"].is_string() && step["basis"].is_string());
        }
    }
}

#[test]
fn json_local_min_schema() {
    let o = locmin(&["check", "x^4 + y^4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "LocalMin");
    assert!(v["certificate"].is_null());
    assert_eq!(v["unresolved"], serde_json::json!([]));
}

#[test]
fn trace_levels() {
    let quiet = stdout(&locmin(&["check", FIG1_099]));
    let rules = stdout(&locmin(&["check", FIG1_099, "--trace", "1"]));
    let data = stdout(&locmin(&["check", FIG1_099, "--trace", "2"]));
    assert!(!quiet.contains("trace:"));
    assert!(rules.contains("jointness") && !rules.contains("\"note\""));
    assert!(data.contains("\"note\""));
}

#[test]
fn file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.txt");
    std::fs::write(&path, format!("{EXAMPLE3}\n")).unwrap();
    let o = locmin(&["check", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = locmin(&["check", "x^2", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn newton_svg_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("fig1.svg");
    let o = locmin(&["newton", "y^2*(x^2+y)^2 + 3*x^6*y^2 + 3*x^4*y^3", "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("class=\"omega\"").count(), 2);
    assert_eq!(text.matches("class=\"southwest-edge\"").count(), 1);
    let model: Value = serde_json::from_str(&std::fs::read_to_string(svg.with_extension("json")).unwrap()).unwrap();
    assert_eq!(model["omega"], serde_json::json!([[0, 4], [4, 2]]));

    let svg3 = dir.path().join("ex3.svg");
    let o = locmin(&["newton", EXAMPLE3, "--svg", svg3.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let model: Value = serde_json::from_slice(&o.stdout).unwrap();
    let edge = model["faces"].as_array().unwrap().iter().find(|f| f["group"] == 3).unwrap();
    assert_eq!(edge["points"], serde_json::json!([[2, 6], [4, 5], [6, 4]]));
    assert_eq!(edge["normal"], serde_json::json!([1, 2]));

    let mono = dir.path().join("mono.svg");
    assert_eq!(locmin(&["newton", "x^2*y^2", "--svg", mono.to_str().unwrap()]).status.code(), Some(0));
    let text = std::fs::read_to_string(&mono).unwrap();
    assert_eq!(text.matches("class=\"support\"").count(), 1);
    assert_eq!(text.matches("class=\"omega\"").count(), 1);
}

#[test]
fn decompose_example6() {
    let o = locmin(&["decompose", EXAMPLE6, "--a1", "1", "--a2", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let forms = v["forms"].as_array().unwrap();
    let g: Vec<_> = forms.iter().map(|f| parse(&f["g"].as_str().unwrap().replace('u', "x")).unwrap()).collect();
    assert_eq!(g[0], parse("(1-x)^6").unwrap());
    assert_eq!(g[1], parse("-(1-x)^2").unwrap());
    assert_eq!(g[2], parse("1").unwrap());
    let levels: Vec<_> = forms.iter().map(|f| f["level"].as_u64().unwrap()).collect();
    assert_eq!(levels, vec![6, 7, 8]);
}

#[test]
fn decompose_total_degree_grading() {
    let o = locmin(&["decompose", "x^2 + x*y^3 + y^5 + x^4", "--a1", "1", "--a2", "1"]);
    let out = stdout(&o);
    assert!(out.contains("B = 2") && out.contains("B = 4") && out.contains("B = 5"), "{out}");
}

#[test]
fn exit_code_depends_on_status_only() {
    for trace in ["0", "2"] {
        let a = locmin(&["check", FIG1, "--trace", trace]).status.code();
        let b = locmin(&["check", FIG1, "--json"]).status.code();
        assert_eq!(a, b);
    }
}
