use std::process::{Command, Output};

use grassmann::polyring::PolynomialJson;
use grassmann::semigroup::{PathMultiset, PathMultisetJson};
use grassmann::trees::{parse_tree, LeafPair};
use grassmann::{IntPolynomial, TruncatedSeries};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grassmann")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn numerator_text() {
    assert_eq!(stdout(&["numerator", "--n", "4", "--method", "ie"]), "1 - z1*z2*z3*z4\n");
    assert_eq!(stdout(&["numerator", "--n", "3", "--method", "sym"]), "1\n");
    let tree = stdout(&["numerator", "--n", "4", "--method", "ie", "--tree", "((*,*),(*,*))"]);
    assert_eq!(tree, "1 - z1*z2*z3*z4\n");
}

#[test]
fn dim_both_methods() {
    assert_eq!(stdout(&["dim", "--n", "4", "--grading", "1,1,1,1", "--method", "oracle"]), "2\n");
    assert_eq!(stdout(&["dim", "--n", "4", "--grading", "1,1,1,1", "--method", "series"]), "2\n");
    assert_eq!(stdout(&["dim", "--n", "5", "--grading", "4,4,4,4,4"]), "16\n");
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["--format", "json", "dim", "--n", "4", "--grading", "2,2,2,2"])).unwrap();
    assert_eq!(json["dim"], 3);
}

#[test]
fn series_json_round_trips() {
    let text = stdout(&["--format", "json", "series", "--n", "4", "--max-degree", "6"]);
    let parsed: PolynomialJson = serde_json::from_str(&text).unwrap();
    let w = TruncatedSeries::from_json(&parsed).unwrap();
    assert_eq!(w.cap(), 6);
    let again = stdout(&["--format", "json", "series", "--n", "4", "--max-degree", "6", "--method", "numerator"]);
    assert_eq!(TruncatedSeries::from_json(&serde_json::from_str(&again).unwrap()).unwrap(), w);
}

#[test]
fn numerator_json_round_trips() {
    let text = stdout(&["--format", "json", "numerator", "--n", "5", "--method", "sym"]);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["method"], "sym");
    assert_eq!(value["conjectural"], true);
    let f = IntPolynomial::from_json(&serde_json::from_value(value).unwrap()).unwrap();
    assert_eq!(f.len(), 12);
}

#[test]
fn decompose_outputs() {
    let tree = "((*,*),(*,*))";
    assert_eq!(stdout(&["decompose", "--tree", tree, "--values", "1,1,2,1,1"]), "{(1,3):1, (2,4):1}\n");
    let json = stdout(&["--format", "json", "decompose", "--tree", tree, "--values", "1,1,2,1,1"]);
    let m = PathMultiset::from_json(&serde_json::from_str::<PathMultisetJson>(&json).unwrap()).unwrap();
    assert_eq!(m.multiplicity(LeafPair::new(2, 4).unwrap()), 1);
    assert_eq!(m.sum_on(&parse_tree(tree).unwrap()).unwrap(), vec![1, 1, 2, 1, 1]);

    let out = run(&["decompose", "--tree", tree, "--values", "1,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("not in the semigroup"));
    assert_eq!(run(&["decompose", "--tree", tree, "--values", "1,0"]).status.code(), Some(2));
}

#[test]
fn relations_output() {
    assert_eq!(stdout(&["relations", "--tree", "((*,*),(*,*))"]), "W2(1,2,3,4): x14*x23 - x13*x24  [t^2]\n");
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["--format", "json", "relations", "--tree", "((*,*),(*,(*,*)))"])).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 5);
}

#[test]
fn fixtures_note_the_index_shift() {
    let text = stdout(&["fixtures"]);
    assert!(text.starts_with("# source listing uses z0"));
    assert!(text.contains("n=4: 1 - z1*z2*z3*z4\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["numerator", "--n", "7", "--method", "ie"]).status.code(), Some(3));
    assert_eq!(run(&["numerator", "--n", "1", "--method", "ie"]).status.code(), Some(2));
    assert_eq!(run(&["numerator", "--n", "4", "--method", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["numerator", "--n", "4", "--method", "sym", "--tree", "((*,*),(*,*))"]).status.code(), Some(2));
    assert_eq!(run(&["relations", "--tree", "((*,*),*"]).status.code(), Some(2));
    assert_eq!(run(&["dim", "--n", "4", "--grading", "1,1,1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "cross", "--n", "7", "--max-degree", "4"]).status.code(), Some(3));
    assert_eq!(
        run(&["verify", "cross", "--n", "7", "--max-degree", "4", "--methods", "recursion,oracle"]).status.code(),
        Some(0)
    );
}

#[test]
fn output_is_independent_of_thread_count() {
    for args in [
        &["--format", "json", "verify", "cross", "--n", "5", "--max-degree", "8"][..],
        &["--format", "json", "numerator", "--n", "6", "--method", "ie"][..],
        &["verify", "delpezzo"][..],
    ] {
        let one = stdout(&[&["--jobs", "1"][..], args].concat());
        let four = stdout(&[&["--jobs", "4"][..], args].concat());
        assert_eq!(one, four, "{args:?}");
        assert_eq!(one, stdout(args));
    }
}

#[test]
fn cross_report_json_shape() {
    let text = stdout(&["--format", "json", "verify", "cross", "--n", "4", "--max-degree", "6"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["cap"], 6);
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "pass");
        assert!(c["name"].is_string() && c["detail"].is_string());
    }
}
