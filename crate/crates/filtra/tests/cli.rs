use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use filtra::json;
use filtra_core::chain::ChainComplex;
use filtra_core::exactlin::{Field, Matrix};
use filtra_core::sequence::{step_sequence, Sequence};
use serde_json::{json, Value};

fn filtra(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_filtra"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "failed: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_file(name: &str, contents: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn sequence_file(name: &str, x: &Sequence) -> String {
    write_file(name, &json::to_text(&json::sequence_to_json(x)))
}

#[test]
fn t_adic_pipe_into_ss() {
    let seq = stdout(&filtra(&["example", "t-adic", "--d", "4"], None));
    let out = stdout(&filtra(&["ss", "--max-page", "2", "--format", "json", "-"], Some(&seq)));
    let pages: Value = serde_json::from_str(&out).unwrap();
    let e1 = &pages[0];
    assert_eq!(e1["r"], 1);
    let cells = e1["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 4);
    assert!(cells.iter().all(|c| c["dim"] == 1 && c["d_rank"] == 0));
    assert_eq!(pages.as_array().unwrap().len(), 2);
}

#[test]
fn gr_of_a_step_sequence_has_one_component() {
    let a = ChainComplex::two_term(1, Matrix::from_i64(Field::Rational, 1, 2, &[1, 1]));
    let path = sequence_file("step.json", &step_sequence(3, a));
    let g: Value = serde_json::from_str(&stdout(&filtra(&["gr", &path], None))).unwrap();
    let comps = g["components"].as_object().unwrap();
    assert_eq!(comps.len(), 1);
    assert!(comps.contains_key("3"));
}

#[test]
fn constant_sequence_has_zero_pages() {
    let c = ChainComplex::concentrated(Field::Rational, 0, 2);
    let path = sequence_file("constant.json", &Sequence::constant(c));
    let table = stdout(&filtra(&["ss", "--max-page", "3", &path], None));
    assert_eq!(table, "E_1: zero\nE_2: zero\nE_3: zero\n");
    let pages: Value = serde_json::from_str(&stdout(&filtra(&["ss", "--max-page", "3", "--format", "json", &path], None))).unwrap();
    assert!(pages.as_array().unwrap().iter().all(|p| p["cells"].as_array().unwrap().is_empty()));
}

#[test]
fn random_example_is_reproducible() {
    let golden = include_str!("golden/random_seed7.json");
    let first = stdout(&filtra(&["example", "random", "--seed", "7"], None));
    let second = stdout(&filtra(&["example", "random", "--seed", "7"], None));
    assert_eq!(first, golden);
    assert_eq!(second, golden);
    let other = stdout(&filtra(&["example", "random", "--seed", "8"], None));
    assert_ne!(other, golden);
}

#[test]
fn t_adic_example_shape() {
    let x: Value = serde_json::from_str(&stdout(&filtra(&["example", "t-adic", "--d", "2"], None))).unwrap();
    assert_eq!(x["window"], json!([-3, 0]));
    let dims: Vec<Value> = x["levels"].as_array().unwrap().iter().map(|l| l["degrees"]["0"].clone()).collect();
    assert_eq!(dims, [Value::Null, Value::Null, json!(1), json!(2)]);
}

#[test]
fn diff_ops_examples() {
    let one = stdout(&filtra(&["example", "diff-ops", "--d", "1"], None));
    let g: Value = serde_json::from_str(&stdout(&filtra(&["algebra-gr", "--format", "json", "-"], Some(&one)))).unwrap();
    assert_eq!(g["algebra"]["carrier"]["components"].as_object().unwrap().len(), 1);
    let three = stdout(&filtra(&["example", "diff-ops", "--d", "3"], None));
    let report = stdout(&filtra(&["algebra-gr", "-"], Some(&three)));
    assert!(report.starts_with("associative: true\nunital: true\ncommutative: true\n"));
    assert_eq!(stdout(&filtra(&["validate", "-"], Some(&three))), "valid filtered algebra\n");
}

#[test]
fn outputs_round_trip() {
    for args in [
        vec!["example", "t-adic", "--d", "3", "--field", "fp:7"],
        vec!["example", "diff-ops", "--d", "2"],
        vec!["example", "random", "--seed", "1"],
        vec!["example", "random", "--seed", "2", "--field", "fp:5"],
    ] {
        let text = stdout(&filtra(&args, None));
        let doc = json::document_from_json(&json::parse(&text).unwrap()).unwrap();
        assert_eq!(json::to_text(&doc.to_json()), text);
    }
    let seq = stdout(&filtra(&["example", "random", "--seed", "3"], None));
    for verb in ["gr", "complete"] {
        let text = stdout(&filtra(&[verb, "-"], Some(&seq)));
        let doc = json::document_from_json(&json::parse(&text).unwrap()).unwrap();
        assert_eq!(json::to_text(&doc.to_json()), text);
    }
}

#[test]
fn report_verbs() {
    let seq = stdout(&filtra(&["example", "t-adic", "--d", "3"], None));
    assert_eq!(stdout(&filtra(&["is-complete", "-"], Some(&seq))), "complete: true\n");
    let path = write_file("t_adic_3.json", &seq);
    let t: Value = serde_json::from_str(&stdout(&filtra(&["tensor", &path, &path], None))).unwrap();
    assert_eq!(t["window"], json!([-8, 0]));
    let h: Value = serde_json::from_str(&stdout(&filtra(&["hom", &path, &path], None))).unwrap();
    assert!(h["window"].is_array());
    let dual: Value = serde_json::from_str(&stdout(&filtra(&["dual", "--format", "json", &path], None))).unwrap();
    assert_eq!(dual["dualizable"], true);
    assert_eq!(dual["graded_dualizable"], true);
    let ab: Value = serde_json::from_str(&stdout(&filtra(&["abutment", "--format", "json", &path], None))).unwrap();
    assert_eq!(ab["matches"], true);
}

#[test]
fn geq_on_one_plus_t() {
    let f = filtra_core::generate::one_plus_t_with_constant_tail(2, Field::Rational).unwrap();
    let path = write_file("one_plus_t.json", &json::to_text(&json::sequence_map_to_json(&f)));
    let out: Value = serde_json::from_str(&stdout(&filtra(&["geq", "--format", "json", &path], None))).unwrap();
    assert_eq!(out, json!({"graded_equivalence": true, "levelwise_quasi_iso": false, "completion_levelwise_quasi_iso": true}));
}

fn exit_code(args: &[&str], stdin: Option<&str>) -> i32 {
    filtra(args, stdin).status.code().unwrap()
}

#[test]
fn invalid_inputs_exit_with_one() {
    let bad_complex = json!({
        "field": {"kind": "rational"},
        "degrees": {"0": 1, "1": 1, "2": 1},
        "differentials": {"1": [["1"]], "2": [["1"]]}
    });
    let bad_sequence = json!({"window": [0, 0], "levels": [bad_complex], "steps": []});
    for text in [bad_complex.to_string(), bad_sequence.to_string()] {
        for verb in ["gr", "complete", "is-complete", "dual", "ss", "abutment", "validate"] {
            let out = filtra(&[verb, "-"], Some(&text));
            assert_eq!(out.status.code(), Some(1), "{verb}");
            assert!(String::from_utf8_lossy(&out.stderr).contains("d∘d"), "{verb}");
        }
    }

    // A map that does not commute with the steps of the t-adic sequence.
    let x = filtra_core::generate::t_adic(2, Field::Rational).unwrap();
    let mut map = json!({
        "source": json::sequence_to_json(&x),
        "target": json::sequence_to_json(&x),
        "components": [{}, {}, {"0": [["1"]]}, {"0": [["0", "0"], ["0", "0"]]}],
    });
    let text = map.to_string();
    let out = filtra(&["geq", "-"], Some(&text));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not commute"));
    map["components"][3] = json!({"0": [["1", "0"], ["0", "1"]]});
    assert_eq!(exit_code(&["geq", "-"], Some(&map.to_string())), 0);

    assert_eq!(exit_code(&["gr", "-"], Some("{not json")), 1);
    assert_eq!(exit_code(&["gr", "-"], Some(r#"{"window": [0, 0]}"#)), 1);
    assert_eq!(exit_code(&["tensor", "-", "-"], Some("{}")), 1);
    let wrong_kind = json::to_text(&json::complex_to_json(x.top()));
    assert_eq!(exit_code(&["geq", "-"], Some(&wrong_kind)), 1);
}

#[test]
fn broken_algebra_exits_with_one() {
    let a = stdout(&filtra(&["example", "diff-ops", "--d", "2"], None));
    let mut v: Value = serde_json::from_str(&a).unwrap();
    v["mult"]["0,0"]["0"][0][0] = json!("2");
    let text = v.to_string();
    for verb in ["validate", "algebra-gr"] {
        let out = filtra(&[verb, "-"], Some(&text));
        assert_eq!(out.status.code(), Some(1), "{verb}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("invalid algebra"));
    }
}

#[test]
fn non_monic_input_to_tensor_exits_with_one() {
    let c = ChainComplex::concentrated(Field::Rational, 0, 1);
    let zero = ChainComplex::zero(Field::Rational);
    let x = Sequence::new(
        (0, 1),
        vec![c.clone(), zero.clone()],
        vec![filtra_core::chain::ChainMap::zero(&c, &zero)],
    )
    .unwrap();
    let path = sequence_file("non_monic.json", &x);
    let out = filtra(&["tensor", &path, &path], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not injective"));
    assert_eq!(stdout(&filtra(&["validate", &path], None)), "valid sequence (not monic)\n");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(exit_code(&["frobnicate"], None), 2);
    assert_eq!(exit_code(&["ss"], None), 2);
    assert_eq!(exit_code(&["ss", "--max-page", "0", "-"], None), 2);
    assert_eq!(exit_code(&["example", "t-adic"], None), 2);
    assert_eq!(exit_code(&["example", "t-adic", "--d", "0"], None), 2);
    assert_eq!(exit_code(&["example", "random", "--field", "fp:6"], None), 2);
    assert_eq!(exit_code(&["example", "diff-ops", "--d", "2", "--field", "fp:5"], None), 2);
    assert_eq!(exit_code(&["example", "postnikov"], None), 2);
    assert_eq!(exit_code(&["gr", "/nonexistent/file.json"], None), 2);
    assert_eq!(exit_code(&["gr", "--format", "yaml", "-"], None), 2);
    assert_eq!(exit_code(&["--help"], None), 0);
}

#[test]
fn postnikov_example() {
    let c = ChainComplex::two_term(2, Matrix::from_i64(Field::Rational, 1, 2, &[1, 0]));
    let path = write_file("complex.json", &json::to_text(&json::complex_to_json(&c)));
    let x: Value = serde_json::from_str(&stdout(&filtra(&["example", "postnikov", &path], None))).unwrap();
    assert_eq!(x["window"], json!([-3, -1]));
    let ab: Value =
        serde_json::from_str(&stdout(&filtra(&["abutment", "--format", "json", "-"], Some(&x.to_string())))).unwrap();
    assert_eq!(ab["matches"], true);
}
