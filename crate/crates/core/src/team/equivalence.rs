use super::{team_eval, tr_star_translate, tr_translate, CausalTeam, CodFormula, TeamError};
use crate::causal::Valuation;
use crate::pakc::Formula;
use crate::semantics::{eval_at, valid_on_model_trusted};

/// Outcome of comparing team truth with validity of the global translation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalReport {
    pub translation: Formula,
    pub team_verdict: bool,
    pub model_verdict: bool,
}

impl GlobalReport {
    pub fn agrees(&self) -> bool {
        self.team_verdict == self.model_verdict
    }
}

/// Outcome of comparing team truth with the local translation at every
/// pointing of the team.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalReport {
    pub translation: Formula,
    pub team_verdict: bool,
    pub pointings: Vec<(Valuation, bool)>,
}

impl LocalReport {
    /// The verdict does not depend on the pointing.
    pub fn pointing_invariant(&self) -> bool {
        self.pointings.windows(2).all(|w| w[0].1 == w[1].1)
    }

    pub fn agrees(&self) -> bool {
        self.pointings.iter().all(|(_, v)| *v == self.team_verdict)
    }

    /// The first pointing whose verdict differs from the team verdict.
    pub fn counterexample(&self) -> Option<&Valuation> {
        self.pointings
            .iter()
            .find(|(_, v)| *v != self.team_verdict)
            .map(|(s, _)| s)
    }
}

/// Evaluates `f` on `t` and its global translation on the corresponding
/// epistemic model. The team must be nonempty.
pub fn check_global_equivalence(
    t: &CausalTeam,
    f: &CodFormula,
    cap: usize,
    or_cap: usize,
) -> Result<GlobalReport, TeamError> {
    let model = t.to_epistemic()?;
    let team_verdict = team_eval(t, f, or_cap)?;
    let translation = tr_translate(f, t.signature(), cap)?;
    let model_verdict = valid_on_model_trusted(&model, &translation);
    Ok(GlobalReport {
        translation,
        team_verdict,
        model_verdict,
    })
}

/// Evaluates `f` on `t` and its local translation at each pointing.
pub fn check_local_equivalence(
    t: &CausalTeam,
    f: &CodFormula,
    cap: usize,
    or_cap: usize,
) -> Result<LocalReport, TeamError> {
    let model = t.to_epistemic()?;
    let team_verdict = team_eval(t, f, or_cap)?;
    let translation = tr_star_translate(f, t.signature(), cap)?;
    let pointings = model
        .team()
        .iter()
        .map(|s| (s.clone(), eval_at(&model, s, &translation)))
        .collect();
    Ok(LocalReport {
        translation,
        team_verdict,
        pointings,
    })
}
