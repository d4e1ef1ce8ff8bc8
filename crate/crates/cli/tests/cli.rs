use std::io::Write;
use std::process::{Command, Output, Stdio};

use curvetower::exactalg::parse_bipoly;
use proptest::prelude::*;
use serde_json::Value;

const EX: &str = "(y^4+x^3)^6+x^17*y^3";

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_curvetower"));
    c.env_remove("CURVETOWER_MAX_DEGREE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child =
        bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = run(&a);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn model_curve_report() {
    let v = json(&["analyze", "--poly", EX]);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["mu"], "416");
    assert_eq!(v["tower"]["k"], "2");
    let ps: Vec<&str> = v["tower"]["levels"].as_array().unwrap().iter().map(|l| l["P"].as_str().unwrap()).collect();
    assert_eq!(ps, ["(4,3)", "(6,5)"]);
    let zeta: Vec<(String, String)> = v["zeta"]["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| (f["e"].as_str().unwrap().to_string(), f["sign"].as_str().unwrap().to_string()))
        .collect();
    let want = [("18", "-"), ("24", "-"), ("72", "+"), ("77", "-"), ("462", "+")];
    assert_eq!(zeta, want.map(|(e, s)| (e.to_string(), s.to_string())));
    let h6 = v["roots"].as_array().unwrap().iter().find(|r| r["a"] == "6").unwrap();
    assert_eq!(h6["H"], "y^6 + 3/2*x^3*y^2");
    assert!(v.get("timing").is_none());
}

#[test]
fn cusp_report() {
    let v = json(&["analyze", "--poly", "y^2+x^3", "--with-table", "--with-diagram"]);
    assert_eq!(v["mu"], "2");
    assert_eq!(v["tower"]["k"], "1");
    assert_eq!(v["tower"]["levels"][0]["P"], "(2,3)");
    assert!(v["diagram"].as_str().unwrap().contains("face P=(2,3)"));
    assert!(v["diagram"].as_str().unwrap().lines().all(|l| l.chars().count() <= 80));
    assert_eq!(v["intersections"]["divisors"][0]["value"], "3");
}

#[test]
fn smooth_germ_is_rejected() {
    let o = run(&["analyze", "--poly", "y"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("smooth germ / a_1=1"));
}

#[test]
fn bare_root_in_text() {
    let o = run(&["roots", "--poly", EX, "--index", "6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "y^6 + 3/2*x^3*y^2\n");
}

#[test]
fn intersection_with_oracle() {
    let v = json(&["intersect", "--poly", EX, "--with", "y^6+3/2*x^3*y^2", "--oracle"]);
    assert_eq!(v["intersection"]["value"], "108");
    assert_eq!(v["oracle"]["value"], "108");
    assert_eq!(v["oracle"]["agree"], true);
}

#[test]
fn low_genus_classification() {
    let v = json(&["infinity", "--poly", "y^3+x^2+1", "--classify"]);
    assert_eq!(v["classify"]["genus"], "1");
    assert_eq!(v["classify"]["description"], "smooth cubic, tangency order 3 at infinity");
    let o = run(&["infinity", "--poly", "y", "--classify"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn generated_curves_are_lines() {
    for format in ["text", "json"] {
        let g = run(&["generate", "--weights", "2,3", "--format", format]);
        assert_eq!(code(&g), 0);
        let o = run_stdin(&["infinity", "--poly", "-", "--ams", "--format", "json"], &g.stdout);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["ams"]["verdict"], "LINE");
    }
    let v = json(&["generate", "--weights", "2,3"]);
    assert_eq!(v["example"]["n"], "6");
    assert_eq!(v["example"]["mu"], "20");
}

#[test]
fn equisingularity_verdicts() {
    let v = json(&["equising", "--deform", EX, "--m", "25"]);
    assert_eq!(v["deformation"]["nm"], "600");
    assert_eq!(v["deformation"]["generic_intersection"], "600");
    assert_eq!(v["equising"]["left"], "462");
    assert_eq!(v["equising"]["certified"], true);
    let v = json(&["equising", "--family", "y^2+x^3+t*x^2"]);
    assert_eq!(v["equising"]["certified"], false);
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32); 7] = [
        (&["analyze", "--poly", "y^2+"], 2),
        (&["analyze", "--poly", "3y"], 2),
        (&["analyze"], 2),
        (&["analyze", "--poly", "y^2-x^2"], 3),
        (&["analyze", "--poly", "y^2-2*x^2"], 4),
        (&["analyze", "--poly", "(y^2+x^3)^2+x^40*y", "--max-retries", "0"], 5),
        (&["roots", "--poly", "y^4+x", "--index", "3"], 3),
    ];
    for (args, want) in cases {
        assert_eq!(code(&run(args)), want, "{:?}", args);
    }
    let o = bin().args(["analyze", "--poly", "y^6+x^5"]).env("CURVETOWER_MAX_DEGREE", "4").output().unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn deterministic_output() {
    let invocations: [&[&str]; 4] = [
        &["analyze", "--poly", EX, "--format", "json", "--with-table"],
        &["analyze", "--poly", EX, "--with-diagram"],
        &["infinity", "--poly", "y^5+x^2+1", "--format", "json"],
        &["generate", "--weights", "2,2,3", "--format", "json"],
    ];
    for args in invocations {
        assert_eq!(run(args).stdout, run(args).stdout, "{:?}", args);
    }
}

/// Every string that parses as a polynomial is the canonical rendering of
/// what it parses to.
fn check_round_trip(v: &Value, path: &str) {
    match v {
        Value::String(t) => {
            if let Ok(p) = parse_bipoly(t) {
                if !t.chars().all(|c| c.is_ascii_digit() || c == '/' || c == '-') {
                    assert_eq!(parse_bipoly(&p.render()).unwrap(), p, "{}", path);
                    if !path.ends_with("/text") {
                        let p = if t.contains(['u', 'v']) { p.with_names(["u", "v"]) } else { p };
                        assert_eq!(p.render(), *t, "{}", path);
                    }
                }
            }
        }
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| check_round_trip(x, &format!("{}/{}", path, i))),
        Value::Object(m) => m.iter().for_each(|(k, x)| check_round_trip(x, &format!("{}/{}", path, k))),
        _ => {}
    }
}

#[test]
fn printed_polynomials_round_trip() {
    let reports = [
        json(&["analyze", "--poly", EX, "--with-table"]),
        json(&["analyze", "--poly", "(y^3+x^2)^2+x^5*y"]),
        json(&["infinity", "--poly", "y^3+x^2+1"]),
        json(&["infinity", "--poly", "(y^2+x)^3+y", "--ams"]),
        json(&["generate", "--weights", "2,3,2"]),
        json(&["equising", "--family", "y^3+x^4+t*x^3*y"]),
    ];
    for r in &reports {
        check_round_trip(r, "");
    }
}

#[test]
fn batch_keeps_input_order() {
    let dir = std::env::temp_dir().join(format!("curvetower-batch-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("inputs.txt");
    std::fs::write(&file, format!("y^2+x^3\n# comment\n{}\ny^2+\ny^3+x^2\n", EX)).unwrap();
    let path = file.to_str().unwrap();
    let o = run(&["analyze", "--batch", path, "--format", "json"]);
    assert_eq!(code(&o), 2);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rs = v["results"].as_array().unwrap();
    let mus: Vec<&Value> = rs.iter().map(|r| &r["mu"]).collect();
    assert_eq!(mus, [&Value::from("2"), &Value::from("416"), &Value::Null, &Value::from("2")]);
    assert_eq!(rs[2]["exit_code"], "2");
    assert_eq!(run(&["analyze", "--batch", path]).stdout, run(&["analyze", "--batch", path]).stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

fn malformed() -> impl Strategy<Value = String> {
    let valid = prop::sample::select(vec!["y^2+x^3", "(y^4+x^3)^6+x^17*y^3", "y^3-x^7+x^5*y", "1/2*y^2+x^5"]);
    let prefix = prop::sample::select(vec![")", "*", "^2", "#", "/", "2 "]);
    let suffix = prop::sample::select(vec!["+", "*", "^", "(", ")", "#", " z", "^-1", "^y", " x", "/0", "**2", "y y"]);
    (valid, prefix, suffix, any::<bool>())
        .prop_map(|(v, p, s, front)| if front { format!("{}{}", p, v) } else { format!("{}{}", v, s) })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn malformed_input_exits_with_parse_code(text in malformed()) {
        let o = run(&["analyze", "--poly", &text]);
        prop_assert_eq!(code(&o), 2, "{:?}", text);
    }

    #[test]
    fn well_formed_germs_use_the_contract(
        n in 2u32..=6,
        m in 2u32..=9,
        extra in prop::collection::vec((0u32..12, 0u32..6, -3i32..=3), 0..3),
    ) {
        let mut text = format!("y^{}+x^{}", n, m);
        for (a, b, c) in extra {
            text.push_str(&format!("+{}*x^{}*y^{}", c, a, b));
        }
        let o = run(&["analyze", "--poly", &text, "--format", "json"]);
        let c = code(&o);
        prop_assert!([0, 3, 4, 5].contains(&c), "{} gave {}", text, c);
        if c == 0 {
            let v: Value = serde_json::from_slice(&o.stdout).unwrap();
            let mu: i64 = v["mu"].as_str().unwrap().parse().unwrap();
            let deg: i64 = v["zeta"]["degree"].as_str().unwrap().parse().unwrap();
            prop_assert_eq!(deg, mu - 1);
        }
    }
}
