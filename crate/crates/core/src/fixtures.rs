//! Small ready-made models used in examples and tests.

use std::sync::Arc;

use crate::causal::{Signature, StructuralFunctionSet, Valuation, ValueId};
use crate::epistemic::{EpistemicCausalModel, PointedModel, Team};

/// Signature of the sprinkler circuit: exogenous binary `B` (button) and `C`
/// (circuit breaker), endogenous binary `S` (sprinkler).
pub fn circuit_signature() -> Arc<Signature> {
    Arc::new(Signature::numeric(&[("B", 2), ("C", 2)], &[("S", 2)]).expect("valid signature"))
}

/// `S = 1` iff `B = 1` and `C = 1`.
pub fn circuit_functions() -> StructuralFunctionSet {
    StructuralFunctionSet::from_fn(circuit_signature(), |_, vals| {
        ValueId(u16::from(vals[0].0 == 1 && vals[1].0 == 1))
    })
    .expect("valid tables")
}

/// `A1 = (B=0, C=0, S=0)`.
pub fn circuit_a1() -> Valuation {
    Valuation::from_names(&circuit_signature(), [("B", "0"), ("C", "0"), ("S", "0")]).unwrap()
}

/// `A2 = (B=0, C=1, S=0)`.
pub fn circuit_a2() -> Valuation {
    Valuation::from_names(&circuit_signature(), [("B", "0"), ("C", "1"), ("S", "0")]).unwrap()
}

/// The circuit with team `{A1, A2}`: the agent sees the button and the
/// sprinkler but not the breaker.
pub fn circuit() -> EpistemicCausalModel {
    EpistemicCausalModel::new(circuit_functions(), Team::new([circuit_a1(), circuit_a2()]))
        .expect("valid model")
}

/// The circuit pointed at `A2`.
pub fn circuit_pointed() -> PointedModel {
    PointedModel::new(circuit(), circuit_a2()).expect("A2 is a member")
}
