use std::path::PathBuf;
use std::process::{Command, Output};

use qschubert::algebra::{Polynomial, TermJson};
use qschubert::classical::{ExpansionJson, SchubertExpansion};
use qschubert::engine::Engine;
use qschubert::fixtures::GoldenFixture;
use qschubert::quantum::quantum_chevalley;
use qschubert::rootsystem::GroupSpec;
use qschubert::weyl::DEFAULT_SIZE_LIMIT;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qschubert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn fixture_path(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    root.to_string_lossy().into_owned()
}

fn poly(v: &Value, rank: usize) -> Polynomial {
    let terms: Vec<TermJson> = serde_json::from_value(v["terms"].clone()).unwrap();
    Polynomial::from_json_terms(rank, &terms).unwrap()
}

fn engine(label: &str) -> Engine {
    Engine::new(&GroupSpec::from_label(label, false).unwrap(), DEFAULT_SIZE_LIMIT, None).unwrap()
}

#[test]
fn classical_table_with_fixture_top() {
    let top = fixture_path("b2_top.json");
    let out = json(&["classical-table", "--type", "B2", "--top", &top]);
    assert_eq!(out["schema"], "qschubert/1");
    let rows = out["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    let group = engine("B2");
    let fx = GoldenFixture::b2().unwrap();
    for (word, expected) in &fx.classical {
        let w = group.group().parse_element(word).unwrap();
        let row = rows
            .iter()
            .find(|r| r["element"]["word"] == serde_json::json!(group.group().element_json(w).word))
            .unwrap();
        assert_eq!(poly(&row["poly"], 2), *expected, "row {word}");
    }
}

#[test]
fn dictionary_rendering_in_text_output() {
    let top = fixture_path("b2_top.json");
    let out = run(&["classical-table", "--type", "B2", "--top", &top, "--dict", "x1=2*l1-l2,x2=l2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("s2*s1*s2\t-l1^2*l2 + l1*l2^2    [-1/4*x1^2*x2 + 1/4*x2^3]"), "{text}");
}

#[test]
fn a1_quantum_table() {
    let out = json(&["quantum-table", "--type", "A1"]);
    let rows = out["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(poly(&rows[1]["poly"], 1), Polynomial::lambda(1, 0));
    assert!(poly(&rows[1]["correction"], 1).is_zero());
}

#[test]
fn gw_all_degrees_agree_with_chevalley() {
    let e = engine("B2");
    let group = e.group();
    let s1 = group.simple(0);
    let expected = quantum_chevalley(group, 0, s1).unwrap();
    for w in group.ids() {
        let word = group.word(w).iter().map(|i| format!("s{}", i + 1)).collect::<String>();
        let word = if word.is_empty() { "e".to_string() } else { word };
        let out = json(&["gw", "--type", "B2", "--u", "s1", "--v", "s1", "--w", &word, "--all-d"]);
        let mut got = Polynomial::zero(2);
        for entry in out["invariants"].as_array().unwrap() {
            let d: Vec<u32> = serde_json::from_value(entry["d"].clone()).unwrap();
            let term = TermJson {
                lambda: vec![0, 0],
                q: d,
                coeff: entry["value"].as_str().unwrap().to_string(),
            };
            got += &Polynomial::from_json_terms(2, &[term]).unwrap();
        }
        let want = expected.coeff(w).cloned().unwrap_or_else(|| Polynomial::zero(2));
        assert_eq!(got, want, "w = {word}");
    }
}

#[test]
fn gw_single_degree() {
    let out = json(&["gw", "--type", "B2", "--u", "s1", "--v", "s1", "--w", "e", "--d", "1,0"]);
    assert_eq!(out["invariants"][0]["value"], "1/1");
    let bad = run(&["gw", "--type", "B2", "--u", "s1", "--v", "s1", "--w", "e", "--d", "1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn product_json_round_trips() {
    let out = json(&["product", "--type", "G2", "--u", "s1s2", "--v", "s2s1s2"]);
    let parsed: ExpansionJson = serde_json::from_value(out["product"].clone()).unwrap();
    let e = engine("G2");
    let group = e.group();
    let back = SchubertExpansion::from_json(&parsed, group).unwrap();
    let u = group.parse_element("s1s2").unwrap();
    let v = group.parse_element("s2s1s2").unwrap();
    assert_eq!(back, e.quantum_product(u, v).unwrap());
}

#[test]
fn output_is_deterministic() {
    let args = ["quantum-table", "--type", "B2", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["verify", "--type", "A2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn verify_exit_codes() {
    let a1 = run(&["verify", "--type", "A1"]);
    assert_eq!(a1.status.code(), Some(0));
    let report = json(&["verify", "--type", "G2"]);
    assert_eq!(report["passed"], true);

    // The bundled B2 golden data disagrees with the engine in three places,
    // so B2 verification fails on exactly those checks.
    let b2 = run(&["verify", "--type", "B2", "--format", "json"]);
    assert_eq!(b2.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&b2.stdout).unwrap();
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        failed,
        [
            "golden B2 quantum table",
            "golden B2 relations",
            "golden B2 ψ of the top class"
        ]
    );
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        &["info"][..],
        &["info", "--type", "X3"],
        &["product", "--type", "B2", "--u", "s1s1", "--v", "s1"],
        &["product", "--type", "B2", "--u", "s3", "--v", "s1"],
        &["classical-table", "--type", "B2", "--top", "/nonexistent/top.json"],
        &["info", "--type", "B2", "--dict", "x1=l1"],
        &["info", "--type", "B2", "--bogus"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn invalid_top_class_is_rejected() {
    let dir = std::env::temp_dir().join(format!("qschubert-top-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("top.json");
    std::fs::write(&path, r#"{"expression": "l1^4"}"#).unwrap();
    let out = run(&["classical-table", "--type", "B2", "--top", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("top class"));
}

#[test]
fn resource_limits_exit_3() {
    assert_eq!(run(&["info", "--type", "B3", "--size-limit", "10"]).status.code(), Some(3));
    assert_eq!(run(&["info", "--type", "E6"]).status.code(), Some(3));
}

#[test]
fn cartan_file_and_dump_round_trip() {
    let dir = std::env::temp_dir().join(format!("qschubert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cartan = dir.join("g2.json");
    std::fs::write(&cartan, r#"{"cartan": [[2, -3], [-1, 2]]}"#).unwrap();
    let info = json(&["info", "--cartan", cartan.to_str().unwrap()]);
    assert_eq!(info["order"], 12);
    assert_eq!(info["type"], "custom");

    let dump = dir.join("b3.json");
    let direct = json(&["info", "--type", "B3", "--dump", dump.to_str().unwrap()]);
    let loaded = json(&["info", "--load", dump.to_str().unwrap()]);
    assert_eq!(direct, loaded);
}
