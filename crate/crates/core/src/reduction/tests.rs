use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::axioms::{axiom_instances, AxiomInstanceRequest, Schema};
use super::*;
use crate::epistemic::PointedModel;
use crate::fixtures;
use crate::generate::{random_model, random_pakc, GeneratorConfig};
use crate::pakc::{parse, DEFAULT_CAP};
use crate::semantics::{eval_at, valid_on_model};

fn circuit_parse(text: &str) -> Formula {
    parse(text, &fixtures::circuit_signature()).unwrap()
}

#[test]
fn tr1_pushes_interventions_to_atoms() {
    let f = circuit_parse("[B:=1] K S=1");
    assert_eq!(tr1(&f), circuit_parse("K [B:=1] S=1"));
    let f = circuit_parse("[B:=1] (S=1 & ~C=0)");
    assert_eq!(tr1(&f), circuit_parse("[B:=1] S=1 & ~[B:=1] C=0"));
}

#[test]
fn tr1_handles_announcements_under_interventions() {
    let f = circuit_parse("[B:=1] [C=1 !] S=1");
    assert_eq!(tr1(&f), circuit_parse("[B:=1] C=1 -> [B:=1] S=1"));
    assert_eq!(tr1(&f).classify(), Fragment::Kc);
}

#[test]
fn tr2_removes_announcements() {
    let f = circuit_parse("[C=1 !] K C=1");
    assert_eq!(
        tr2(&f).unwrap(),
        circuit_parse("C=1 -> K (C=1 -> (C=1 -> C=1))")
    );
    let f = circuit_parse("[C=1 !] [B:=1] S=1");
    assert_eq!(tr2(&f).unwrap(), circuit_parse("C=1 -> [B:=1] S=1"));
}

#[test]
fn tr2_rejects_complex_intervention_bodies() {
    let f = circuit_parse("[B:=1] K S=1");
    assert_eq!(tr2(&f), Err(ReductionError::NotL1(Fragment::Pakc)));
}

#[test]
fn kc_input_is_untouched() {
    let f = circuit_parse("K [B:=1] S=1 & ~C=0");
    assert_eq!(tr2(&f).unwrap(), f);
    assert_eq!(reduce(&f), f);
}

#[test]
fn circuit_reduction_preserves_truth() {
    let model = fixtures::circuit();
    for text in [
        "[B:=1] K S=1",
        "K [B:=1] S=1",
        "[C=1 !] K [B:=1] S=1",
        "[B:=1] [C=1 !] K S=1",
        "[~S=1 !] [C=0 !] K C=0",
    ] {
        let f = circuit_parse(text);
        let r = reduce(&f);
        assert_eq!(r.classify(), Fragment::Kc, "{text}");
        for a in model.team() {
            assert_eq!(eval_at(&model, a, &f), eval_at(&model, a, &r), "{text}");
        }
    }
}

fn small() -> GeneratorConfig {
    GeneratorConfig {
        max_vars: 3,
        max_range: 3,
        max_team: 5,
        ..GeneratorConfig::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduction_preserves_truth(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = random_model(&mut rng, &small());
        let f = random_pakc(&mut rng, model.signature(), 3, 2);
        let t1 = tr1(&f);
        prop_assert!(matches!(t1.classify(), Fragment::Kc | Fragment::L1));
        let r = reduce(&f);
        prop_assert_eq!(r.classify(), Fragment::Kc);
        for p in PointedModel::pointings(&model) {
            let expected = eval_at(p.model(), p.actual(), &f);
            prop_assert_eq!(eval_at(p.model(), p.actual(), &t1), expected);
            prop_assert_eq!(eval_at(p.model(), p.actual(), &r), expected);
        }
    }

    #[test]
    fn axiom_instances_are_valid(seed in any::<u64>(), schema in 0..Schema::ALL.len()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = random_model(&mut rng, &small());
        let req = AxiomInstanceRequest {
            schema: Schema::ALL[schema],
            signature: model.functions().signature_arc().clone(),
            max_intervention: 2,
            max_depth: 2,
            seed,
            count: 5,
            cap: DEFAULT_CAP,
        };
        for f in axiom_instances(&req).unwrap() {
            prop_assert!(valid_on_model(&model, &f).unwrap(), "{}", f.display(model.signature()));
        }
    }
}

#[test]
fn axiom_instances_are_deterministic() {
    let req = AxiomInstanceRequest {
        schema: Schema::Rp2,
        signature: fixtures::circuit_signature(),
        max_intervention: 2,
        max_depth: 2,
        seed: 7,
        count: 10,
        cap: DEFAULT_CAP,
    };
    assert_eq!(
        axiom_instances(&req).unwrap(),
        axiom_instances(&req).unwrap()
    );
    assert_eq!(axiom_instances(&req).unwrap().len(), 10);
}

#[test]
fn schema_names_round_trip() {
    for s in Schema::ALL {
        assert_eq!(s.name().parse::<Schema>().unwrap(), s);
    }
    assert!("HP9".parse::<Schema>().is_err());
}
