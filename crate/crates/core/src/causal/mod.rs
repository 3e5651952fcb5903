//! Signatures, structural functions, valuations and single-valuation
//! interventions on recursive causal models.

mod functions;
pub(crate) mod signature;
mod valuation;

#[cfg(test)]
mod tests;

use thiserror::Error;

pub use functions::StructuralFunctionSet;
pub use signature::{Signature, ValueId, VarId};
pub use valuation::{InterventionAssignment, Valuation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CausalError {
    #[error("signature has no variables")]
    EmptySignature,
    #[error("expected {expected} ranges, got {got}")]
    RangeCount { expected: usize, got: usize },
    #[error("invalid variable name `{0}`")]
    InvalidName(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{0}` has an empty range")]
    EmptyRange(String),
    #[error("range of `{0}` is too large")]
    RangeTooLarge(String),
    #[error("invalid value token `{value}` for `{var}`")]
    InvalidValue { var: String, value: String },
    #[error("duplicate value `{value}` in range of `{var}`")]
    DuplicateValue { var: String, value: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("`{value}` is not in the range of `{var}`")]
    UnknownValue { var: String, value: String },
    #[error("value index {value} out of range for `{var}`")]
    ValueOutOfRange { var: String, value: usize },
    #[error("`{0}` is not endogenous")]
    NotEndogenous(String),
    #[error("`{0}` is not exogenous")]
    NotExogenous(String),
    #[error("variable `{0}` bound twice")]
    DuplicateBinding(String),
    #[error("no value given for `{0}`")]
    MissingValue(String),
    #[error("no value given for exogenous `{0}`")]
    MissingExogenous(String),
    #[error("valuation has {got} values, signature has {expected} variables")]
    ValuationArity { expected: usize, got: usize },
    #[error("expected {expected} tables, got {got}")]
    TableCount { expected: usize, got: usize },
    #[error("table for `{var}` has {got} entries, expected {expected}")]
    TableSize {
        var: String,
        expected: usize,
        got: usize,
    },
    #[error("table for `{0}` is too large")]
    TableTooLarge(String),
    #[error("structural functions are not recursive: cycle {}", cycle.join(" -> "))]
    NonRecursive { cycle: Vec<String> },
    #[error("valuation {0} does not comply with the structural functions")]
    NonCompliant(String),
    #[error("team is empty")]
    EmptyTeam,
    #[error("actual valuation {0} is not a member of the team")]
    ActualNotInTeam(String),
    #[error("signatures differ")]
    SignatureMismatch,
}

/// A recursive causal model `⟨S, F, A⟩` with a compliant valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalModel {
    functions: StructuralFunctionSet,
    valuation: Valuation,
}

impl CausalModel {
    pub fn new(
        functions: StructuralFunctionSet,
        valuation: Valuation,
    ) -> Result<Self, CausalError> {
        if !functions.is_recursive() {
            return Err(functions.non_recursive_error());
        }
        let sig = functions.signature();
        Valuation::new(sig, valuation.values().to_vec())?;
        if !functions.complies(&valuation) {
            return Err(CausalError::NonCompliant(
                valuation.display(sig).to_string(),
            ));
        }
        Ok(CausalModel {
            functions,
            valuation,
        })
    }

    pub fn functions(&self) -> &StructuralFunctionSet {
        &self.functions
    }

    pub fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    pub fn signature(&self) -> &Signature {
        self.functions.signature()
    }

    /// `M_{X=x} = ⟨S, F_{X=x}, A^F_{X=x}⟩`.
    pub fn intervene(&self, a: &InterventionAssignment) -> Result<CausalModel, CausalError> {
        let a = InterventionAssignment::new(self.signature(), a.bindings().iter().copied())?;
        if a.is_empty() {
            return Ok(self.clone());
        }
        let valuation = self.functions.intervene_valuation(&a, &self.valuation)?;
        Ok(CausalModel {
            functions: self.functions.intervene(&a),
            valuation,
        })
    }
}
