//! The epistemic causal language with interventions, knowledge and public
//! announcements, and its fragments L1 and KC.

mod derived;
mod parser;
mod printer;

#[cfg(test)]
mod tests;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::causal::{CausalError, InterventionAssignment, Signature, ValueId, VarId};
use crate::syntax::SyntaxError;

pub use derived::{c_dependence_formula, causes_formula, e_dependence_formula};
pub use parser::parse;

/// Default bound on the number of disjuncts or conjuncts a derived formula
/// may expand to.
pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("at position {pos}: {source}")]
    Invalid { pos: usize, source: CausalError },
    #[error(transparent)]
    Causal(#[from] CausalError),
    #[error("nested intervention at position {pos}")]
    NestedIntervention { pos: usize },
    #[error("formula is not stratified: intervention inside an intervention body")]
    NotStratified,
    #[error("expansion of {what} needs {needed} terms, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: String,
        cap: usize,
    },
    #[error("cause and effect must be distinct variables, got `{0}` twice")]
    SameVariable(String),
    #[error("variable list is empty")]
    EmptyVariableList,
    #[error("variable `{0}` occurs twice in the list")]
    DuplicateVariable(String),
    #[error("`{0}` must not occur in the determining list")]
    TargetInList(String),
}

/// A formula tree. Derived connectives are expanded into `Not` and `And`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom {
        var: VarId,
        value: ValueId,
    },
    Not(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Know(Arc<Formula>),
    /// `[ψ!] φ`
    Announce(Arc<Formula>, Arc<Formula>),
    /// `[X:=x] γ`, where `γ` contains no intervention.
    Intervene(InterventionAssignment, Arc<Formula>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fragment {
    Kc,
    L1,
    Pakc,
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fragment::Kc => "KC",
            Fragment::L1 => "L1",
            Fragment::Pakc => "PAKC",
        })
    }
}

impl Formula {
    pub fn atom(var: VarId, value: ValueId) -> Formula {
        Formula::Atom { var, value }
    }

    pub fn not(f: impl Into<Arc<Formula>>) -> Formula {
        Formula::Not(f.into())
    }

    pub fn and(a: impl Into<Arc<Formula>>, b: impl Into<Arc<Formula>>) -> Formula {
        Formula::And(a.into(), b.into())
    }

    pub fn know(f: impl Into<Arc<Formula>>) -> Formula {
        Formula::Know(f.into())
    }

    pub fn announce(psi: impl Into<Arc<Formula>>, body: impl Into<Arc<Formula>>) -> Formula {
        Formula::Announce(psi.into(), body.into())
    }

    /// `[a] body`; an empty assignment yields `body` itself.
    pub fn intervene(a: InterventionAssignment, body: impl Into<Arc<Formula>>) -> Formula {
        let body = body.into();
        if a.is_empty() {
            Arc::unwrap_or_clone(body)
        } else {
            Formula::Intervene(a, body)
        }
    }

    /// `a -> b`, i.e. `~(a & ~b)`.
    pub fn imp(a: impl Into<Arc<Formula>>, b: impl Into<Arc<Formula>>) -> Formula {
        Formula::not(Formula::and(a, Formula::not(b)))
    }

    /// `a | b`, i.e. `~(~a & ~b)`.
    pub fn or(a: impl Into<Arc<Formula>>, b: impl Into<Arc<Formula>>) -> Formula {
        Formula::not(Formula::and(Formula::not(a), Formula::not(b)))
    }

    /// `a <-> b`, i.e. `(a -> b) & (b -> a)`.
    pub fn iff(a: impl Into<Arc<Formula>>, b: impl Into<Arc<Formula>>) -> Formula {
        let (a, b) = (a.into(), b.into());
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    /// A fixed contradiction `v0=r0 & ~v0=r0` on the first variable and value.
    pub fn falsum(_sig: &Signature) -> Formula {
        let atom = Arc::new(Formula::atom(VarId(0), ValueId(0)));
        Formula::and(atom.clone(), Formula::not(atom))
    }

    pub fn verum(sig: &Signature) -> Formula {
        Formula::not(Formula::falsum(sig))
    }

    /// Right-nested conjunction; the empty conjunction is [`Formula::verum`].
    pub fn conj(items: impl IntoIterator<Item = Formula>, sig: &Signature) -> Formula {
        fold_right(items, Formula::and).unwrap_or_else(|| Formula::verum(sig))
    }

    /// Right-nested disjunction; the empty disjunction is [`Formula::falsum`].
    pub fn disj(items: impl IntoIterator<Item = Formula>, sig: &Signature) -> Formula {
        fold_right(items, Formula::or).unwrap_or_else(|| Formula::falsum(sig))
    }

    /// Conjunction of the atoms `X=x` for each binding.
    pub fn atoms_conj(bindings: &[(VarId, ValueId)], sig: &Signature) -> Formula {
        Formula::conj(bindings.iter().map(|&(v, x)| Formula::atom(v, x)), sig)
    }

    pub fn classify(&self) -> Fragment {
        let mut announces = false;
        let mut atomic = true;
        self.walk(&mut |f| match f {
            Formula::Announce(..) => announces = true,
            Formula::Intervene(_, body) if !matches!(**body, Formula::Atom { .. }) => {
                atomic = false
            }
            _ => {}
        });
        match (atomic, announces) {
            (true, false) => Fragment::Kc,
            (true, true) => Fragment::L1,
            (false, _) => Fragment::Pakc,
        }
    }

    /// Visits every node in pre-order.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Formula)) {
        visit(self);
        match self {
            Formula::Atom { .. } => {}
            Formula::Not(a) | Formula::Know(a) | Formula::Intervene(_, a) => a.walk(visit),
            Formula::And(a, b) | Formula::Announce(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
        }
    }

    pub fn contains_intervention(&self) -> bool {
        let mut found = false;
        self.walk(&mut |f| found |= matches!(f, Formula::Intervene(..)));
        found
    }

    /// Number of nodes of the formula seen as a tree.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_| n += 1);
        n
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom { .. } => 0,
            Formula::Not(a) | Formula::Know(a) | Formula::Intervene(_, a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Announce(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Checks atoms and assignments against `sig` and the stratification
    /// of interventions.
    pub fn validate(&self, sig: &Signature) -> Result<(), FormulaError> {
        let mut result = Ok(());
        self.walk(&mut |f| {
            if result.is_err() {
                return;
            }
            match f {
                Formula::Atom { var, value } => {
                    if !sig.in_range(*var, *value) {
                        result = Err(out_of_range(sig, *var, *value));
                    }
                }
                Formula::Intervene(a, body) => {
                    if let Err(e) = InterventionAssignment::new(sig, a.bindings().iter().copied()) {
                        result = Err(e.into());
                    } else if body.contains_intervention() {
                        result = Err(FormulaError::NotStratified);
                    }
                }
                _ => {}
            }
        });
        result
    }

    /// Renders the formula in the concrete syntax accepted by [`parse`].
    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        printer::Printer { f: self, sig }
    }
}

fn out_of_range(sig: &Signature, var: VarId, value: ValueId) -> FormulaError {
    if sig.contains(var) {
        CausalError::ValueOutOfRange {
            var: sig.name(var).to_string(),
            value: value.index(),
        }
        .into()
    } else {
        CausalError::UnknownVariable(format!("#{}", var.0)).into()
    }
}

fn fold_right(
    items: impl IntoIterator<Item = Formula>,
    op: impl Fn(Formula, Formula) -> Formula,
) -> Option<Formula> {
    let items: Vec<Formula> = items.into_iter().collect();
    let mut iter = items.into_iter().rev();
    let last = iter.next()?;
    Some(iter.fold(last, |acc, item| op(item, acc)))
}
