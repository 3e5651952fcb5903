use std::collections::HashMap;

use super::{consistent_assignment, CausalTeam, CodFormula, TeamError};
use crate::causal::{StructuralFunctionSet, ValueId};
use crate::epistemic::Team;

/// Largest team on which a split disjunction is evaluated by default.
pub const DEFAULT_OR_CAP: usize = 16;

/// Truth of `f` on the causal team `t`. Split disjunctions enumerate the
/// disjoint covers of the current team, which must have at most `or_cap`
/// members.
pub fn team_eval(t: &CausalTeam, f: &CodFormula, or_cap: usize) -> Result<bool, TeamError> {
    f.validate(t.signature())?;
    eval(t.functions(), t.team(), f, or_cap, Covers::Disjoint)
}

/// Like [`team_eval`] but split disjunctions range over every pair of
/// subteams whose union is the team, not only disjoint ones.
pub fn team_eval_all_covers(
    t: &CausalTeam,
    f: &CodFormula,
    or_cap: usize,
) -> Result<bool, TeamError> {
    f.validate(t.signature())?;
    eval(t.functions(), t.team(), f, or_cap, Covers::All)
}

#[derive(Clone, Copy)]
enum Covers {
    Disjoint,
    All,
}

fn eval(
    functions: &StructuralFunctionSet,
    team: &Team,
    f: &CodFormula,
    cap: usize,
    covers: Covers,
) -> Result<bool, TeamError> {
    if team.is_empty() {
        return Ok(true);
    }
    Ok(match f {
        CodFormula::Eq { var, value } => team.iter().all(|s| s.get(*var) == *value),
        CodFormula::Neq { var, value } => team.iter().all(|s| s.get(*var) != *value),
        CodFormula::Dep { xs, y } => {
            let mut seen: HashMap<Vec<ValueId>, ValueId> = HashMap::new();
            team.iter().all(|s| {
                let key: Vec<ValueId> = xs.iter().map(|x| s.get(*x)).collect();
                *seen.entry(key).or_insert(s.get(*y)) == s.get(*y)
            })
        }
        CodFormula::And(a, b) => {
            eval(functions, team, a, cap, covers)? && eval(functions, team, b, cap, covers)?
        }
        CodFormula::Or(a, b) => {
            let n = team.len();
            if n > cap {
                return Err(TeamError::OrCapExceeded { size: n, cap });
            }
            let full: u64 = (1u64 << n) - 1;
            match covers {
                Covers::Disjoint => {
                    for mask in 0..=full {
                        if eval(functions, &team.select(mask), a, cap, covers)?
                            && eval(functions, &team.select(full & !mask), b, cap, covers)?
                        {
                            return Ok(true);
                        }
                    }
                    false
                }
                Covers::All => {
                    for m1 in 0..=full {
                        if !eval(functions, &team.select(m1), a, cap, covers)? {
                            continue;
                        }
                        // every m2 with m1 | m2 = full is the complement plus a subset of m1
                        let rest = full & !m1;
                        let mut extra = m1;
                        loop {
                            if eval(functions, &team.select(rest | extra), b, cap, covers)? {
                                return Ok(true);
                            }
                            if extra == 0 {
                                break;
                            }
                            extra = (extra - 1) & m1;
                        }
                    }
                    false
                }
            }
        }
        CodFormula::SelImp(alpha, body) => {
            let mut selected = Vec::new();
            for s in team {
                let single = Team::new([s.clone()]);
                if eval(functions, &single, alpha, cap, covers)? {
                    selected.push(s.clone());
                }
            }
            eval(functions, &Team::new(selected), body, cap, covers)?
        }
        CodFormula::Cf(bindings, body) => match consistent_assignment(bindings) {
            None => true,
            Some(a) if a.is_empty() => eval(functions, team, body, cap, covers)?,
            Some(a) => {
                let image = team.intervene(functions, &a)?;
                eval(&functions.intervene(&a), &image, body, cap, covers)?
            }
        },
    })
}
