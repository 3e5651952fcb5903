//! Causal team semantics for the language of dependence and counterfactuals,
//! and its translations into the epistemic causal language.

mod equivalence;
mod eval;
mod parser;
mod printer;
mod translate;


use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::causal::{
    CausalError, InterventionAssignment, Signature, StructuralFunctionSet, ValueId, VarId,
};
use crate::epistemic::{check_team, EpistemicCausalModel, Team};
use crate::pakc::FormulaError;
use crate::syntax::SyntaxError;

pub use equivalence::{
    check_global_equivalence, check_local_equivalence, GlobalReport, LocalReport,
};
pub use eval::{team_eval, team_eval_all_covers, DEFAULT_OR_CAP};
pub use parser::parse_cod;
pub use translate::{e_translate, tr_star_translate, tr_translate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TeamError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("at position {pos}: {source}")]
    Invalid { pos: usize, source: CausalError },
    #[error(transparent)]
    Causal(#[from] CausalError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("dependence atom in the antecedent of a selective implication")]
    DependenceInAntecedent,
    #[error("dependence atom where a dependence-free formula is required")]
    DependenceNotAllowed,
    #[error("nested counterfactual")]
    NestedCounterfactual,
    #[error("split disjunction over a team of {size} members exceeds the cap of {cap}")]
    OrCapExceeded { size: usize, cap: usize },
    #[error("translating a split disjunction needs 2^{valuations} disjuncts, cap is {cap}")]
    TranslationCapExceeded { valuations: usize, cap: usize },
    #[error("variable `{0}` occurs twice in a dependence atom")]
    DuplicateVariable(String),
    #[error("causal team is empty")]
    EmptyTeam,
}

/// A formula of the causal team language.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CodFormula {
    Eq {
        var: VarId,
        value: ValueId,
    },
    Neq {
        var: VarId,
        value: ValueId,
    },
    /// `=(X⃗; Y)`; an empty `xs` states that `Y` is constant.
    Dep {
        xs: Vec<VarId>,
        y: VarId,
    },
    And(Arc<CodFormula>, Arc<CodFormula>),
    /// Split disjunction.
    Or(Arc<CodFormula>, Arc<CodFormula>),
    /// Selective implication; the antecedent has no dependence atoms.
    SelImp(Arc<CodFormula>, Arc<CodFormula>),
    /// `X⃗=x⃗ □→ φ`. Bindings are kept as written; repeated variables with
    /// different values make the antecedent inconsistent.
    Cf(Vec<(VarId, ValueId)>, Arc<CodFormula>),
}

impl CodFormula {
    pub fn eq(var: VarId, value: ValueId) -> Self {
        CodFormula::Eq { var, value }
    }

    pub fn neq(var: VarId, value: ValueId) -> Self {
        CodFormula::Neq { var, value }
    }

    pub fn dep(xs: Vec<VarId>, y: VarId) -> Self {
        CodFormula::Dep { xs, y }
    }

    pub fn and(a: impl Into<Arc<CodFormula>>, b: impl Into<Arc<CodFormula>>) -> Self {
        CodFormula::And(a.into(), b.into())
    }

    pub fn or(a: impl Into<Arc<CodFormula>>, b: impl Into<Arc<CodFormula>>) -> Self {
        CodFormula::Or(a.into(), b.into())
    }

    pub fn sel_imp(a: impl Into<Arc<CodFormula>>, b: impl Into<Arc<CodFormula>>) -> Self {
        CodFormula::SelImp(a.into(), b.into())
    }

    pub fn cf(bindings: Vec<(VarId, ValueId)>, body: impl Into<Arc<CodFormula>>) -> Self {
        CodFormula::Cf(bindings, body.into())
    }

    /// Visits every node in pre-order.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a CodFormula)) {
        visit(self);
        match self {
            CodFormula::Eq { .. } | CodFormula::Neq { .. } | CodFormula::Dep { .. } => {}
            CodFormula::Cf(_, a) => a.walk(visit),
            CodFormula::And(a, b) | CodFormula::Or(a, b) | CodFormula::SelImp(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
        }
    }

    pub fn has_dependence(&self) -> bool {
        let mut found = false;
        self.walk(&mut |f| found |= matches!(f, CodFormula::Dep { .. }));
        found
    }

    pub fn has_counterfactual(&self) -> bool {
        let mut found = false;
        self.walk(&mut |f| found |= matches!(f, CodFormula::Cf(..)));
        found
    }

    /// No counterfactual occurs inside the body of a counterfactual.
    pub fn is_non_nested(&self) -> bool {
        let mut ok = true;
        self.walk(&mut |f| {
            if let CodFormula::Cf(_, body) = f {
                ok &= !body.has_counterfactual();
            }
        });
        ok
    }

    pub fn count_or(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |f| n += usize::from(matches!(f, CodFormula::Or(..))));
        n
    }

    pub fn depth(&self) -> usize {
        match self {
            CodFormula::Eq { .. } | CodFormula::Neq { .. } | CodFormula::Dep { .. } => 0,
            CodFormula::Cf(_, a) => 1 + a.depth(),
            CodFormula::And(a, b) | CodFormula::Or(a, b) | CodFormula::SelImp(a, b) => {
                1 + a.depth().max(b.depth())
            }
        }
    }

    /// Checks variables and values against `sig` and that selective
    /// implications have dependence-free antecedents.
    pub fn validate(&self, sig: &Signature) -> Result<(), TeamError> {
        let mut result = Ok(());
        let check = |v: VarId, x: Option<ValueId>| -> Result<(), TeamError> {
            if !sig.contains(v) {
                return Err(CausalError::UnknownVariable(format!("#{}", v.0)).into());
            }
            match x {
                Some(x) if !sig.in_range(v, x) => Err(CausalError::ValueOutOfRange {
                    var: sig.name(v).to_string(),
                    value: x.index(),
                }
                .into()),
                _ => Ok(()),
            }
        };
        self.walk(&mut |f| {
            if result.is_err() {
                return;
            }
            result = match f {
                CodFormula::Eq { var, value } | CodFormula::Neq { var, value } => {
                    check(*var, Some(*value))
                }
                CodFormula::Dep { xs, y } => xs
                    .iter()
                    .enumerate()
                    .try_for_each(|(i, &x)| {
                        check(x, None)?;
                        if xs[..i].contains(&x) {
                            return Err(TeamError::DuplicateVariable(sig.name(x).to_string()));
                        }
                        Ok(())
                    })
                    .and_then(|_| check(*y, None)),
                CodFormula::Cf(bindings, _) => {
                    bindings.iter().try_for_each(|&(v, x)| check(v, Some(x)))
                }
                CodFormula::SelImp(a, _) if a.has_dependence() => {
                    Err(TeamError::DependenceInAntecedent)
                }
                _ => Ok(()),
            };
        });
        result
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        printer::Printer { f: self, sig }
    }
}

/// The consistent assignment of a counterfactual antecedent, or `None` when
/// a variable is bound to two different values.
pub fn consistent_assignment(bindings: &[(VarId, ValueId)]) -> Option<InterventionAssignment> {
    let mut out: Vec<(VarId, ValueId)> = Vec::with_capacity(bindings.len());
    for &(v, x) in bindings {
        match out.iter().find(|(w, _)| *w == v) {
            Some(&(_, y)) if y != x => return None,
            Some(_) => {}
            None => out.push((v, x)),
        }
    }
    Some(InterventionAssignment::from_vec_unchecked(out))
}

/// A function set together with a possibly empty team of compliant valuations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalTeam {
    functions: StructuralFunctionSet,
    team: Team,
}

impl CausalTeam {
    pub fn new(functions: StructuralFunctionSet, team: Team) -> Result<Self, CausalError> {
        check_team(&functions, &team)?;
        Ok(CausalTeam { functions, team })
    }

    pub fn functions(&self) -> &StructuralFunctionSet {
        &self.functions
    }

    pub fn team(&self) -> &Team {
        &self.team
    }

    pub fn signature(&self) -> &Signature {
        self.functions.signature()
    }

    /// The epistemic model with the same functions and team.
    pub fn to_epistemic(&self) -> Result<EpistemicCausalModel, TeamError> {
        if self.team.is_empty() {
            return Err(TeamError::EmptyTeam);
        }
        Ok(EpistemicCausalModel::from_parts_unchecked(
            self.functions.clone(),
            self.team.clone(),
        ))
    }
}

impl From<EpistemicCausalModel> for CausalTeam {
    fn from(m: EpistemicCausalModel) -> Self {
        CausalTeam {
            functions: m.functions().clone(),
            team: m.team().clone(),
        }
    }
}
