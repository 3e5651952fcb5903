//! Epistemic causal models: structural functions, interventions, knowledge
//! and public announcements, together with causal team semantics.

pub mod causal;
pub mod epistemic;
pub mod fixtures;
pub mod generate;
pub mod harness;
pub mod modelfile;
pub mod pakc;
pub mod reduction;
pub mod semantics;
mod syntax;
pub mod team;

pub use causal::{
    CausalError, CausalModel, InterventionAssignment, Signature, StructuralFunctionSet, Valuation,
    ValueId, VarId,
};
pub use epistemic::{EpistemicCausalModel, PointedModel, Team};
pub use pakc::{Formula, FormulaError, Fragment};
pub use syntax::SyntaxError;
