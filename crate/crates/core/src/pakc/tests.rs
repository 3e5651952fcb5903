use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::epistemic::{EpistemicCausalModel, Team};
use crate::fixtures;
use crate::semantics::{eval_at, valid_on_model};
use crate::Valuation;

fn sig() -> Arc<Signature> {
    fixtures::circuit_signature()
}

fn v(name: &str) -> VarId {
    sig().var(name).unwrap()
}

fn atom(name: &str, value: u16) -> Formula {
    Formula::atom(v(name), ValueId(value))
}

fn assign(pairs: &[(&str, &str)]) -> InterventionAssignment {
    InterventionAssignment::from_names(&sig(), pairs.iter().copied()).unwrap()
}

#[test]
fn parses_spec_examples() {
    let s = sig();
    assert_eq!(
        parse("[B:=1] S=1", &s).unwrap(),
        Formula::intervene(assign(&[("B", "1")]), atom("S", 1))
    );
    assert_eq!(
        parse("K [B:=1] S=1", &s).unwrap(),
        Formula::know(Formula::intervene(assign(&[("B", "1")]), atom("S", 1)))
    );
    assert!(matches!(
        parse("[B:=1][C:=1] S=1", &s),
        Err(FormulaError::NestedIntervention { pos: 6 })
    ));
}

#[test]
fn derived_connectives_expand() {
    let s = sig();
    let p = atom("B", 1);
    let q = atom("S", 0);
    assert_eq!(
        parse("B=1 -> S=0", &s).unwrap(),
        Formula::imp(p.clone(), q.clone())
    );
    assert_eq!(
        parse("B=1 | S=0", &s).unwrap(),
        Formula::or(p.clone(), q.clone())
    );
    assert_eq!(
        parse("B=1 <-> S=0", &s).unwrap(),
        Formula::iff(p.clone(), q.clone())
    );
    // right associativity and precedence
    assert_eq!(
        parse("B=1 & S=0 | C=1 -> S=1", &s).unwrap(),
        Formula::imp(
            Formula::or(Formula::and(p.clone(), q.clone()), atom("C", 1)),
            atom("S", 1)
        )
    );
    assert_eq!(
        parse("B=1 -> S=0 -> C=1", &s).unwrap(),
        Formula::imp(p.clone(), Formula::imp(q.clone(), atom("C", 1)))
    );
    assert_eq!(
        parse("~K B=1 & S=0", &s).unwrap(),
        Formula::and(Formula::not(Formula::know(p)), q)
    );
}

#[test]
fn parse_errors() {
    let s = sig();
    assert!(matches!(
        parse("[B:=] S=1", &s),
        Err(FormulaError::Syntax(_))
    ));
    assert!(matches!(parse("S=1 &", &s), Err(FormulaError::Syntax(_))));
    assert!(matches!(parse("(S=1", &s), Err(FormulaError::Syntax(_))));
    assert!(matches!(
        parse("Q=1", &s),
        Err(FormulaError::Invalid {
            pos: 0,
            source: CausalError::UnknownVariable(_)
        })
    ));
    assert!(matches!(
        parse("S=2", &s),
        Err(FormulaError::Invalid {
            pos: 2,
            source: CausalError::UnknownValue { .. }
        })
    ));
    assert!(matches!(
        parse("[B:=1, B:=0] S=1", &s),
        Err(FormulaError::Invalid {
            source: CausalError::DuplicateBinding(_),
            ..
        })
    ));
    // an intervention inside an announcement inside an intervention
    assert!(matches!(
        parse("[B:=1] [[C:=1] S=1 !] S=1", &s),
        Err(FormulaError::NestedIntervention { .. })
    ));
    assert!(parse("[B:=1] [C=1 !] K S=1", &s).is_ok());
}

#[test]
fn k_as_variable_name() {
    let s = Signature::numeric(&[("K", 2)], &[]).unwrap();
    assert_eq!(
        parse("K K=1", &s).unwrap(),
        Formula::know(Formula::atom(VarId(0), ValueId(1)))
    );
}

#[test]
fn prints_spec_examples() {
    let s = sig();
    assert_eq!(atom("S", 1).display(&s).to_string(), "S=1");
    let f = Formula::announce(atom("C", 1), Formula::know(atom("C", 1)));
    assert_eq!(f.display(&s).to_string(), "[C=1 !] K C=1");
    let f = Formula::Intervene(InterventionAssignment::empty(), Arc::new(atom("S", 0)));
    assert_eq!(f.display(&s).to_string(), "S=0");
    let f = Formula::intervene(
        assign(&[("B", "1"), ("C", "0")]),
        Formula::not(atom("S", 1)),
    );
    assert_eq!(f.display(&s).to_string(), "[B:=1, C:=0] ~S=1");
    let f = Formula::and(Formula::and(atom("B", 1), atom("C", 1)), atom("S", 1));
    assert_eq!(f.display(&s).to_string(), "(B=1 & C=1) & S=1");
    assert_eq!(parse(&f.display(&s).to_string(), &s).unwrap(), f);
}

#[test]
fn classify_examples() {
    let i = Formula::intervene(assign(&[("B", "1")]), atom("S", 1));
    assert_eq!(i.classify(), Fragment::Kc);
    assert_eq!(Formula::announce(atom("C", 1), i).classify(), Fragment::L1);
    let k = Formula::intervene(assign(&[("B", "1")]), Formula::know(atom("S", 1)));
    assert_eq!(k.classify(), Fragment::Pakc);
}

#[test]
fn causes_on_circuit() {
    let model = fixtures::circuit();
    let s = sig();
    let b_to_s = causes_formula(&s, v("B"), v("S"), DEFAULT_CAP).unwrap();
    assert!(valid_on_model(&model, &b_to_s).unwrap());
    assert!(model.team().iter().all(|a| eval_at(&model, a, &b_to_s)));
    let c_to_b = causes_formula(&s, v("C"), v("B"), DEFAULT_CAP).unwrap();
    assert!(model.team().iter().all(|a| !eval_at(&model, a, &c_to_b)));
    assert!(matches!(
        causes_formula(&s, v("B"), v("B"), DEFAULT_CAP),
        Err(FormulaError::SameVariable(_))
    ));
    assert!(matches!(
        causes_formula(&s, v("B"), v("S"), 3),
        Err(FormulaError::CapExceeded { .. })
    ));
}

#[test]
fn causes_counts_disjuncts() {
    let s = Signature::numeric(&[("X", 2)], &[("Z", 2)]).unwrap();
    let f = causes_formula(&s, VarId(0), VarId(1), DEFAULT_CAP).unwrap();
    let mut interventions = 0;
    f.walk(&mut |g| {
        if let Formula::Intervene(a, _) = g {
            assert_eq!(a.len(), 1);
            interventions += 1;
        }
    });
    assert_eq!(interventions, 2 * 4);
    // a singleton range leaves no pairs, hence a contradiction
    let s = Signature::numeric(&[("X", 1)], &[("Z", 2)]).unwrap();
    let f = causes_formula(&s, VarId(0), VarId(1), DEFAULT_CAP).unwrap();
    assert_eq!(f, Formula::falsum(&s));
}

#[test]
fn dependence_on_circuit() {
    let model = fixtures::circuit();
    let s = sig();
    let at_a2 = |f: &Formula| eval_at(&model, &fixtures::circuit_a2(), f);
    assert!(at_a2(
        &e_dependence_formula(&s, &[v("B")], v("S"), DEFAULT_CAP).unwrap()
    ));
    assert!(at_a2(
        &e_dependence_formula(&s, &[v("C")], v("S"), DEFAULT_CAP).unwrap()
    ));
    assert!(!at_a2(
        &c_dependence_formula(&s, &[v("B")], v("S"), DEFAULT_CAP).unwrap()
    ));
    assert!(at_a2(
        &c_dependence_formula(&s, &[v("B"), v("C")], v("S"), DEFAULT_CAP).unwrap()
    ));
    // exogenous target: true iff the team agrees on it
    assert!(!at_a2(
        &c_dependence_formula(&s, &[v("B")], v("C"), DEFAULT_CAP).unwrap()
    ));
    let agreeing = EpistemicCausalModel::new(
        model.functions().clone(),
        Team::new([
            fixtures::circuit_a2(),
            Valuation::from_names(&s, [("B", "1"), ("C", "1"), ("S", "1")]).unwrap(),
        ]),
    )
    .unwrap();
    let f = c_dependence_formula(&s, &[v("B")], v("C"), DEFAULT_CAP).unwrap();
    assert!(valid_on_model(&agreeing, &f).unwrap());

    let unit = Signature::numeric(&[("X", 2)], &[("Y", 1)]).unwrap();
    let f = e_dependence_formula(&unit, &[VarId(0)], VarId(1), DEFAULT_CAP).unwrap();
    let funcs = StructuralFunctionSet::from_fn(Arc::new(unit.clone()), |_, _| ValueId(0)).unwrap();
    let m = EpistemicCausalModel::new(funcs, Team::new(Valuation::all(&unit))).unwrap();
    assert!(valid_on_model(&m, &f).unwrap());

    assert!(matches!(
        e_dependence_formula(&s, &[], v("S"), DEFAULT_CAP),
        Err(FormulaError::EmptyVariableList)
    ));
    assert!(matches!(
        e_dependence_formula(&s, &[v("B"), v("B")], v("S"), DEFAULT_CAP),
        Err(FormulaError::DuplicateVariable(_))
    ));
    assert!(matches!(
        c_dependence_formula(&s, &[v("S")], v("S"), DEFAULT_CAP),
        Err(FormulaError::TargetInList(_))
    ));
}

use crate::causal::StructuralFunctionSet;

fn arb_assignment() -> impl Strategy<Value = InterventionAssignment> {
    prop::collection::vec((0usize..3, 0u16..2), 1..3).prop_map(|picks| {
        let mut bindings: Vec<(VarId, ValueId)> = Vec::new();
        for (var, value) in picks {
            if bindings.iter().all(|(w, _)| w.0 != var) {
                bindings.push((VarId(var), ValueId(value)));
            }
        }
        InterventionAssignment::from_vec_unchecked(bindings)
    })
}

/// Random stratified formulas over the circuit signature.
fn arb_formula(allow_intervention: bool) -> BoxedStrategy<Formula> {
    let leaf = (0usize..3, 0u16..2).prop_map(|(v, x)| Formula::atom(VarId(v), ValueId(x)));
    if allow_intervention {
        leaf.prop_recursive(5, 48, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                inner.clone().prop_map(Formula::know),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::announce(a, b)),
                (arb_assignment(), arb_formula(false))
                    .prop_map(|(a, body)| Formula::intervene(a, body)),
            ]
        })
        .boxed()
    } else {
        leaf.prop_recursive(3, 16, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                inner.clone().prop_map(Formula::know),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::announce(a, b)),
            ]
        })
        .boxed()
    }
}

proptest! {
    #[test]
    fn print_parse_round_trip(f in arb_formula(true)) {
        let s = sig();
        prop_assert!(f.validate(&s).is_ok());
        let text = f.display(&s).to_string();
        prop_assert_eq!(parse(&text, &s).unwrap(), f, "{}", text);
    }

    #[test]
    fn classify_is_monotone(f in arb_formula(true)) {
        let c = f.classify();
        let mut announces = false;
        f.walk(&mut |g| announces |= matches!(g, Formula::Announce(..)));
        if c == Fragment::Kc {
            prop_assert!(!announces);
        }
    }
}

#[test]
fn derived_connectives_print_as_sugar() {
    let sig = crate::fixtures::circuit_signature();
    for text in [
        "C=1 -> S=0",
        "(C=1 | S=1) & B=0",
        "K (C=1 -> S=1)",
        "B=0 -> C=0 -> S=0",
        "~(B=0 & C=0)",
        "[C=1 -> S=0 !] K (S=0 | S=1)",
    ] {
        let f = parse(text, &sig).unwrap();
        assert_eq!(f.display(&sig).to_string(), text);
    }
    // a negated antecedent reads as a disjunction
    let f = parse("~C=1 -> S=0", &sig).unwrap();
    assert_eq!(f.display(&sig).to_string(), "C=1 | S=0");
}
