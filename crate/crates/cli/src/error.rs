use thiserror::Error;

use epicausal::modelfile::ModelFileError;
use epicausal::reduction::ReductionError;
use epicausal::team::TeamError;
use epicausal::{CausalError, FormulaError};

/// A batch or cross check found a disagreement.
pub const FAILED_CHECK: u8 = 1;
pub const USAGE: u8 = 2;
pub const IO: u8 = 3;
pub const MODEL: u8 = 4;
pub const FORMULA: u8 = 5;
pub const FRAGMENT: u8 = 6;
pub const NON_RECURSIVE: u8 = 7;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] ModelFileError),
    #[error(transparent)]
    Causal(#[from] CausalError),
    #[error("{0}")]
    Formula(String),
    #[error(transparent)]
    Pakc(#[from] FormulaError),
    #[error(transparent)]
    Team(#[from] TeamError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

fn causal_code(e: &CausalError) -> u8 {
    match e {
        CausalError::NonRecursive { .. } => NON_RECURSIVE,
        _ => MODEL,
    }
}

fn formula_code(e: &FormulaError) -> u8 {
    match e {
        FormulaError::CapExceeded { .. } => FRAGMENT,
        _ => FORMULA,
    }
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => USAGE,
            CliError::Model(ModelFileError::Io { .. }) => IO,
            CliError::Model(
                ModelFileError::Causal(e)
                | ModelFileError::BadRow { source: e, .. }
                | ModelFileError::BadActual(e),
            ) => causal_code(e),
            CliError::Model(_) => MODEL,
            CliError::Causal(e) => causal_code(e),
            CliError::Formula(_) => FORMULA,
            CliError::Pakc(e) => formula_code(e),
            CliError::Team(e) => match e {
                TeamError::Formula(e) => formula_code(e),
                TeamError::DependenceNotAllowed
                | TeamError::NestedCounterfactual
                | TeamError::OrCapExceeded { .. }
                | TeamError::TranslationCapExceeded { .. } => FRAGMENT,
                TeamError::EmptyTeam => MODEL,
                _ => FORMULA,
            },
            CliError::Reduction(_) => FRAGMENT,
        }
    }
}
