use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use super::*;

fn circuit_sig() -> Arc<Signature> {
    Arc::new(Signature::numeric(&[("B", 2), ("C", 2)], &[("S", 2)]).unwrap())
}

fn circuit_functions() -> StructuralFunctionSet {
    StructuralFunctionSet::from_fn(circuit_sig(), |_, vals| {
        ValueId((vals[0].0 == 1 && vals[1].0 == 1) as u16)
    })
    .unwrap()
}

fn val(sig: &Signature, pairs: &[(&str, &str)]) -> Valuation {
    Valuation::from_names(sig, pairs.iter().copied()).unwrap()
}

fn names(sig: &Signature, set: &BTreeSet<VarId>) -> Vec<String> {
    set.iter().map(|v| sig.name(*v).to_string()).collect()
}

/// Parents straight from the quantifiers: some tuple of the other variables
/// and two distinct values of `X` with different outputs.
fn parents_oracle(f: &StructuralFunctionSet, v: VarId) -> BTreeSet<VarId> {
    let sig = f.signature();
    let mut out = BTreeSet::new();
    for x in sig.vars().filter(|&x| x != v) {
        for base in Valuation::all(sig) {
            let outputs: Vec<ValueId> = sig
                .values(x)
                .map(|xv| {
                    let mut vals = base.values().to_vec();
                    vals[x.0] = xv;
                    f.apply(v, &vals)
                })
                .collect();
            if outputs.iter().any(|o| *o != outputs[0]) {
                out.insert(x);
            }
        }
    }
    out
}

#[test]
fn circuit_parents() {
    let f = circuit_functions();
    let sig = f.signature();
    assert_eq!(names(sig, &f.parents_of("S").unwrap()), ["B", "C"]);
    assert!(matches!(
        f.parents_of("B"),
        Err(CausalError::NotEndogenous(_))
    ));
    assert!(matches!(
        f.parents_of("Q"),
        Err(CausalError::UnknownVariable(_))
    ));
}

#[test]
fn constant_and_copy_tables() {
    let sig = circuit_sig();
    let constant = StructuralFunctionSet::from_fn(sig.clone(), |_, _| ValueId(0)).unwrap();
    assert!(constant.parents_of("S").unwrap().is_empty());
    let copy_b = StructuralFunctionSet::from_fn(sig.clone(), |_, vals| vals[0]).unwrap();
    assert_eq!(names(&sig, &copy_b.parents_of("S").unwrap()), ["B"]);
}

#[test]
fn recursivity() {
    assert!(circuit_functions().is_recursive());

    let sig = Arc::new(Signature::numeric(&[], &[("V1", 2), ("V2", 2)]).unwrap());
    let swap =
        StructuralFunctionSet::from_fn(
            sig.clone(),
            |v, vals| {
                if v == VarId(0) {
                    vals[1]
                } else {
                    vals[0]
                }
            },
        )
        .unwrap();
    assert!(!swap.is_recursive());
    let cycle = swap.topological_order().unwrap_err();
    assert_eq!(cycle, vec![VarId(0), VarId(1)]);
    assert!(matches!(
        swap.solve([]),
        Err(CausalError::NonRecursive { .. })
    ));

    let sig = Arc::new(Signature::numeric(&[("U", 2)], &[("V1", 2), ("V2", 2)]).unwrap());
    let chain = StructuralFunctionSet::from_fn(
        sig,
        |v, vals| {
            if v == VarId(1) {
                vals[0]
            } else {
                vals[1]
            }
        },
    )
    .unwrap();
    assert!(chain.is_recursive());
    assert_eq!(
        chain.topological_order().unwrap(),
        vec![VarId(0), VarId(1), VarId(2)]
    );
}

#[test]
fn compliance() {
    let f = circuit_functions();
    let sig = f.signature();
    assert!(f.complies(&val(sig, &[("C", "1"), ("B", "0"), ("S", "0")])));
    assert!(!f.complies(&val(sig, &[("C", "1"), ("B", "1"), ("S", "0")])));

    let exo_only = Arc::new(Signature::numeric(&[("U", 3)], &[]).unwrap());
    let none = StructuralFunctionSet::from_tables(exo_only.clone(), vec![]).unwrap();
    for v in Valuation::all(&exo_only) {
        assert!(none.complies(&v));
    }
}

#[test]
fn solve_circuit() {
    let f = circuit_functions();
    let sig = f.signature().clone();
    let b = sig.var("B").unwrap();
    let c = sig.var("C").unwrap();
    let cases = [
        ((1, 1), [("B", "1"), ("C", "1"), ("S", "1")]),
        ((0, 1), [("B", "0"), ("C", "1"), ("S", "0")]),
        ((1, 0), [("B", "1"), ("C", "0"), ("S", "0")]),
    ];
    for ((bv, cv), expected) in cases {
        let got = f.solve([(b, ValueId(bv)), (c, ValueId(cv))]).unwrap();
        assert_eq!(got, val(&sig, &expected));
    }
    assert!(matches!(
        f.solve([(b, ValueId(1))]),
        Err(CausalError::MissingExogenous(_))
    ));
    assert!(matches!(
        f.solve([
            (b, ValueId(1)),
            (c, ValueId(0)),
            (sig.var("S").unwrap(), ValueId(0))
        ]),
        Err(CausalError::NotExogenous(_))
    ));
}

#[test]
fn intervene_circuit() {
    let f = circuit_functions();
    let sig = f.signature().clone();
    let a1 = CausalModel::new(f.clone(), val(&sig, &[("C", "0"), ("B", "0"), ("S", "0")])).unwrap();
    let a2 = CausalModel::new(f.clone(), val(&sig, &[("C", "1"), ("B", "0"), ("S", "0")])).unwrap();
    let b1 = InterventionAssignment::from_names(&sig, [("B", "1")]).unwrap();
    assert_eq!(
        a1.intervene(&b1).unwrap().valuation(),
        &val(&sig, &[("C", "0"), ("B", "1"), ("S", "0")])
    );
    assert_eq!(
        a2.intervene(&b1).unwrap().valuation(),
        &val(&sig, &[("C", "1"), ("B", "1"), ("S", "1")])
    );
    assert_eq!(a2.intervene(&InterventionAssignment::empty()).unwrap(), a2);

    let s = sig.var("S").unwrap();
    let s1 = InterventionAssignment::from_names(&sig, [("S", "1")]).unwrap();
    let forced = a1.intervene(&s1).unwrap();
    assert_eq!(forced.valuation().get(s), ValueId(1));
    assert!(forced.functions().parents(s).unwrap().is_empty());

    assert!(matches!(
        InterventionAssignment::from_names(&sig, [("B", "1"), ("B", "0")]),
        Err(CausalError::DuplicateBinding(_))
    ));
    assert!(matches!(
        InterventionAssignment::from_names(&sig, [("B", "7")]),
        Err(CausalError::UnknownValue { .. })
    ));
    assert!(matches!(
        InterventionAssignment::new(&sig, [(s, ValueId(2))]),
        Err(CausalError::ValueOutOfRange { .. })
    ));
}

#[test]
fn model_rejects_non_compliant() {
    let f = circuit_functions();
    let sig = f.signature().clone();
    assert!(matches!(
        CausalModel::new(f, val(&sig, &[("C", "1"), ("B", "1"), ("S", "0")])),
        Err(CausalError::NonCompliant(_))
    ));
}

/// Random signature with at most three variables of range at most three,
/// plus arbitrary (possibly cyclic) tables.
fn arb_functions() -> impl Strategy<Value = StructuralFunctionSet> {
    (1usize..=3, 0usize..=3)
        .prop_flat_map(|(n, exo)| {
            let exo = exo.min(n);
            (Just(exo), prop::collection::vec(1usize..=3, n))
        })
        .prop_flat_map(|(exo, ranges)| {
            let n = ranges.len();
            let sizes: Vec<usize> = (exo..n)
                .map(|v| {
                    ranges
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != v)
                        .map(|(_, r)| *r)
                        .product()
                })
                .collect();
            let tables: Vec<_> = (exo..n)
                .zip(sizes)
                .map(|(v, size)| prop::collection::vec(0..ranges[v] as u16, size))
                .collect();
            (Just(exo), Just(ranges), tables)
        })
        .prop_map(|(exo, ranges, tables)| {
            let names: Vec<String> = (0..ranges.len()).map(|i| format!("X{i}")).collect();
            let sig = Signature::new(
                names[..exo].to_vec(),
                names[exo..].to_vec(),
                ranges
                    .iter()
                    .map(|&r| (0..r).map(|x| x.to_string()).collect())
                    .collect(),
            )
            .unwrap();
            let tables = tables
                .into_iter()
                .map(|t| t.into_iter().map(ValueId).collect())
                .collect();
            StructuralFunctionSet::from_tables(Arc::new(sig), tables).unwrap()
        })
}

fn arb_assignment(sig: &Signature, picks: &[(usize, u16)]) -> InterventionAssignment {
    let mut bindings: Vec<(VarId, ValueId)> = Vec::new();
    for &(v, x) in picks {
        let v = VarId(v % sig.num_vars());
        if bindings.iter().all(|(w, _)| *w != v) {
            bindings.push((v, ValueId(x % sig.range_len(v) as u16)));
        }
    }
    InterventionAssignment::new(sig, bindings).unwrap()
}

proptest! {
    #[test]
    fn parents_match_definition(f in arb_functions()) {
        for v in f.signature().endogenous() {
            prop_assert_eq!(f.parents(v).unwrap(), parents_oracle(&f, v));
        }
    }

    #[test]
    fn solve_is_the_unique_compliant_extension(f in arb_functions()) {
        prop_assume!(f.is_recursive());
        let sig = f.signature().clone();
        let all = Valuation::all(&sig);
        let exo_assignments: Vec<Valuation> = {
            let exo_sig_vals: BTreeSet<Vec<ValueId>> = all
                .iter()
                .map(|v| v.values()[..sig.num_exogenous()].to_vec())
                .collect();
            exo_sig_vals
                .into_iter()
                .map(|e| all.iter().find(|v| v.values()[..e.len()] == e[..]).unwrap().clone())
                .collect()
        };
        for witness in exo_assignments {
            let exo: Vec<(VarId, ValueId)> = sig.exogenous().map(|u| (u, witness.get(u))).collect();
            let solved = f.solve(exo.iter().copied()).unwrap();
            prop_assert!(f.complies(&solved));
            let compliant: Vec<&Valuation> = all
                .iter()
                .filter(|v| exo.iter().all(|&(u, x)| v.get(u) == x) && f.complies(v))
                .collect();
            prop_assert_eq!(compliant, vec![&solved]);
        }
    }

    #[test]
    fn intervention_preserves_model_invariants(
        f in arb_functions(),
        picks in prop::collection::vec((0usize..3, 0u16..3), 0..3),
        pick_val in 0usize..64,
    ) {
        prop_assume!(f.is_recursive());
        let sig = f.signature().clone();
        let compliant: Vec<Valuation> = Valuation::all(&sig).into_iter().filter(|v| f.complies(v)).collect();
        let start = compliant[pick_val % compliant.len()].clone();
        let model = CausalModel::new(f.clone(), start.clone()).unwrap();
        let a = arb_assignment(&sig, &picks);
        let once = model.intervene(&a).unwrap();
        prop_assert!(once.functions().is_recursive());
        prop_assert!(once.functions().complies(once.valuation()));
        for &(v, x) in a.bindings() {
            prop_assert_eq!(once.valuation().get(v), x);
        }
        // exogenous variables outside the assignment are immune
        for u in sig.exogenous().filter(|u| !a.binds(*u)) {
            prop_assert_eq!(once.valuation().get(u), start.get(u));
        }
        let twice = once.intervene(&a).unwrap();
        prop_assert_eq!(twice, once);
    }
}
