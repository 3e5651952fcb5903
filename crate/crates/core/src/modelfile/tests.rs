use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::fixtures;
use crate::generate::{random_model, GeneratorConfig};

const CIRCUIT: &str = r#"{
  "signature": {
    "exogenous": ["B", "C"],
    "endogenous": ["S"],
    "ranges": {"B": [0, 1], "C": [0, 1], "S": 2}
  },
  "functions": {"S": {"expr": "B=1 & C=1"}},
  "team": [{"B": 0, "C": 0}, {"B": 0, "C": 1}],
  "actual": 1
}"#;

#[test]
fn circuit_from_expression() {
    let doc = parse_model(CIRCUIT).unwrap();
    assert_eq!(doc.epistemic_model().unwrap(), fixtures::circuit());
    assert_eq!(doc.actual, Some(fixtures::circuit_a2()));
}

#[test]
fn circuit_from_table() {
    let text = CIRCUIT.replace(
        r#"{"expr": "B=1 & C=1"}"#,
        r#"{"table": [{"inputs": {"B": 1, "C": 1}, "output": 1}], "default": 0}"#,
    );
    assert_eq!(parse_model(&text).unwrap(), parse_model(CIRCUIT).unwrap());
}

#[test]
fn expressions() {
    let text = r#"{
      "signature": {"exogenous": ["X"], "endogenous": ["Y", "Z"],
                    "ranges": {"X": 3, "Y": ["lo", "hi"], "Z": 3}},
      "functions": {
        "Y": {"expr": "if X=2 | ~(X!=0) then hi else lo"},
        "Z": {"expr": "if Y=hi then X else 1"}
      },
      "team": [{"X": 0}, {"X": 1}, {"X": 2}]
    }"#;
    let doc = parse_model(text).unwrap();
    let sig = doc.signature();
    let shown: Vec<String> = doc
        .team
        .iter()
        .map(|v| v.display(sig).to_string())
        .collect();
    assert_eq!(
        shown,
        ["(X=0, Y=hi, Z=0)", "(X=1, Y=lo, Z=1)", "(X=2, Y=hi, Z=2)"]
    );
    assert_eq!(doc.actual, None);
}

#[test]
fn full_rows_are_checked() {
    let ok = CIRCUIT.replace(r#"{"B": 0, "C": 1}"#, r#"{"B": 0, "C": 1, "S": 0}"#);
    assert!(parse_model(&ok).is_ok());
    let bad = CIRCUIT.replace(r#"{"B": 0, "C": 1}"#, r#"{"B": 0, "C": 1, "S": 1}"#);
    assert!(matches!(
        parse_model(&bad),
        Err(ModelFileError::BadRow { index: 1, .. })
    ));
    let partial = CIRCUIT.replace(r#"{"B": 0, "C": 1}"#, r#"{"B": 0, "S": 0}"#);
    assert!(matches!(
        parse_model(&partial),
        Err(ModelFileError::RowShape { index: 1 })
    ));
}

#[test]
fn errors() {
    let missing = CIRCUIT.replace(r#""S": {"expr": "B=1 & C=1"}"#, "");
    assert!(matches!(
        parse_model(&missing),
        Err(ModelFileError::MissingFunction(_))
    ));
    let selfref = CIRCUIT.replace("B=1 & C=1", "S=1");
    assert!(matches!(
        parse_model(&selfref),
        Err(ModelFileError::SelfReference { .. })
    ));
    let syntax = CIRCUIT.replace("B=1 & C=1", "B=1 &");
    assert!(matches!(
        parse_model(&syntax),
        Err(ModelFileError::ExprSyntax { .. })
    ));
    let value = CIRCUIT.replace("B=1 & C=1", "if B=1 then 7 else 0");
    assert!(matches!(
        parse_model(&value),
        Err(ModelFileError::ExprValue { .. })
    ));
    let incomplete = CIRCUIT.replace(
        r#"{"expr": "B=1 & C=1"}"#,
        r#"{"table": [{"inputs": {"B": 1}, "output": 1}]}"#,
    );
    assert!(matches!(
        parse_model(&incomplete),
        Err(ModelFileError::IncompleteTable { .. })
    ));
    let actual = CIRCUIT.replace(r#""actual": 1"#, r#""actual": 2"#);
    assert!(matches!(
        parse_model(&actual),
        Err(ModelFileError::ActualOutOfBounds { .. })
    ));
    let outside = CIRCUIT.replace(r#""actual": 1"#, r#""actual": {"B": 1, "C": 1}"#);
    assert!(matches!(
        parse_model(&outside),
        Err(ModelFileError::Causal(CausalError::ActualNotInTeam(_)))
    ));
    assert!(matches!(parse_model("{"), Err(ModelFileError::Json(_))));
}

#[test]
fn cyclic_functions_load_but_do_not_solve() {
    let text = r#"{
      "signature": {"exogenous": [], "endogenous": ["V1", "V2"], "ranges": {"V1": 2, "V2": 2}},
      "functions": {"V1": {"expr": "V2=1"}, "V2": {"expr": "V1=1"}},
      "team": [{}]
    }"#;
    let f = parse_functions(text).unwrap();
    assert!(!f.is_recursive());
    assert!(matches!(
        parse_model(text),
        Err(ModelFileError::BadRow {
            source: CausalError::NonRecursive { .. },
            ..
        })
    ));
}

#[test]
fn circuit_round_trip() {
    let doc = parse_model(CIRCUIT).unwrap();
    let text = write_model(&doc.functions, &doc.team, doc.actual.as_ref()).unwrap();
    assert_eq!(parse_model(&text).unwrap(), doc);
}

proptest! {
    #[test]
    fn random_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = random_model(&mut rng, &GeneratorConfig::default());
        let actual = model.team().members()[0].clone();
        let text = write_model(model.functions(), model.team(), Some(&actual)).unwrap();
        let doc = parse_model(&text).unwrap();
        prop_assert_eq!(doc.epistemic_model().unwrap(), model);
        prop_assert_eq!(doc.actual, Some(actual));
    }
}
