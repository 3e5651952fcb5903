//! Model checking of formulas at pointed epistemic causal models.

use std::fmt;

use crate::causal::{Signature, StructuralFunctionSet, Valuation};
use crate::epistemic::{EpistemicCausalModel, PointedModel, Team};
use crate::pakc::{Formula, FormulaError};

/// One node of an evaluation trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLine {
    pub depth: usize,
    pub clause: &'static str,
    pub formula: String,
    pub team_size: usize,
    pub verdict: bool,
}

impl fmt::Display for TraceLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:indent$}{} | {} | {} | {}",
            "",
            self.clause,
            self.formula,
            self.team_size,
            self.verdict,
            indent = 2 * self.depth
        )
    }
}

/// Truth of `f` at `p`. The formula is validated against the signature first.
pub fn eval(p: &PointedModel, f: &Formula) -> Result<bool, FormulaError> {
    f.validate(p.signature())?;
    Ok(eval_at(p.model(), p.actual(), f))
}

/// Truth of `f` at every pointing of `model`.
pub fn valid_on_model(model: &EpistemicCausalModel, f: &Formula) -> Result<bool, FormulaError> {
    f.validate(model.signature())?;
    Ok(valid_on_model_trusted(model, f))
}

/// [`valid_on_model`] for a formula already known to be valid over the signature.
pub fn valid_on_model_trusted(model: &EpistemicCausalModel, f: &Formula) -> bool {
    model.team().iter().all(|a| eval_at(model, a, f))
}

/// Truth of `f` at `(model, actual)` without validation. `actual` must be a
/// member of the team and `f` valid over the signature.
pub fn eval_at(model: &EpistemicCausalModel, actual: &Valuation, f: &Formula) -> bool {
    Evaluator {
        trace: None,
        sig: model.signature(),
    }
    .eval(model.functions(), model.team(), actual, f, 0)
}

/// [`eval`] together with the evaluation tree in pre-order.
pub fn eval_traced(p: &PointedModel, f: &Formula) -> Result<(bool, Vec<TraceLine>), FormulaError> {
    f.validate(p.signature())?;
    let mut lines = Vec::new();
    let verdict = Evaluator {
        trace: Some(&mut lines),
        sig: p.signature(),
    }
    .eval(p.model().functions(), p.model().team(), p.actual(), f, 0);
    Ok((verdict, lines))
}

struct Evaluator<'a, 's> {
    trace: Option<&'a mut Vec<TraceLine>>,
    sig: &'s Signature,
}

impl Evaluator<'_, '_> {
    fn eval(
        &mut self,
        functions: &StructuralFunctionSet,
        team: &Team,
        actual: &Valuation,
        f: &Formula,
        depth: usize,
    ) -> bool {
        let slot = self.trace.as_mut().map(|lines| {
            lines.push(TraceLine {
                depth,
                clause: clause_name(f),
                formula: f.display(self.sig).to_string(),
                team_size: team.len(),
                verdict: false,
            });
            lines.len() - 1
        });
        let verdict = match f {
            Formula::Atom { var, value } => actual.get(*var) == *value,
            Formula::Not(a) => !self.eval(functions, team, actual, a, depth + 1),
            Formula::And(a, b) => {
                self.eval(functions, team, actual, a, depth + 1)
                    && self.eval(functions, team, actual, b, depth + 1)
            }
            Formula::Know(a) => team
                .iter()
                .all(|member| self.eval(functions, team, member, a, depth + 1)),
            Formula::Announce(psi, body) => {
                if !self.eval(functions, team, actual, psi, depth + 1) {
                    true
                } else {
                    // the actual valuation survives, so the restriction is nonempty
                    let kept = team.filter(|member| {
                        member == actual || eval_quiet(functions, team, member, psi, self.sig)
                    });
                    self.eval(functions, &kept, actual, body, depth + 1)
                }
            }
            Formula::Intervene(a, body) => {
                let new_functions = functions.intervene(a);
                let new_team = team
                    .intervene(functions, a)
                    .expect("model functions are recursive");
                let new_actual = functions
                    .intervene_valuation(a, actual)
                    .expect("model functions are recursive");
                self.eval(&new_functions, &new_team, &new_actual, body, depth + 1)
            }
        };
        if let (Some(lines), Some(i)) = (self.trace.as_mut(), slot) {
            lines[i].verdict = verdict;
        }
        verdict
    }
}

fn eval_quiet(
    functions: &StructuralFunctionSet,
    team: &Team,
    actual: &Valuation,
    f: &Formula,
    sig: &Signature,
) -> bool {
    Evaluator { trace: None, sig }.eval(functions, team, actual, f, 0)
}

fn clause_name(f: &Formula) -> &'static str {
    match f {
        Formula::Atom { .. } => "atom",
        Formula::Not(_) => "not",
        Formula::And(..) => "and",
        Formula::Know(_) => "know",
        Formula::Announce(..) => "announce",
        Formula::Intervene(..) => "intervene",
    }
}

/// Convenience wrapper: a pointed model built from parts.
pub fn eval_in(
    model: &EpistemicCausalModel,
    actual: &Valuation,
    f: &Formula,
) -> Result<bool, FormulaError> {
    let p = PointedModel::new(model.clone(), actual.clone())?;
    eval(&p, f)
}
