//! Elimination of announcements and complex intervention bodies.
//!
//! [`tr1`] pushes interventions down to atoms, [`tr2`] then removes every
//! announcement, and [`reduce`] composes the two.

pub mod axioms;

#[cfg(test)]
mod tests;

use std::sync::Arc;

use thiserror::Error;

use crate::causal::InterventionAssignment;
use crate::pakc::{Formula, Fragment};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("formula is in {0}, expected L1")]
    NotL1(Fragment),
}

/// Rewrites `f` so that every intervention applies to a single atom.
pub fn tr1(f: &Formula) -> Formula {
    match f {
        Formula::Atom { .. } => f.clone(),
        Formula::Not(a) => Formula::not(tr1(a)),
        Formula::And(a, b) => Formula::and(tr1(a), tr1(b)),
        Formula::Know(a) => Formula::know(tr1(a)),
        Formula::Announce(psi, body) => Formula::announce(tr1(psi), tr1(body)),
        Formula::Intervene(a, body) => push(a, body),
    }
}

/// The translation of `[a] g` for an intervention-free `g`. With an empty
/// `a` this removes every announcement from `g`.
fn push(a: &InterventionAssignment, g: &Formula) -> Formula {
    match g {
        Formula::Atom { .. } => Formula::intervene(a.clone(), g.clone()),
        Formula::Not(x) => Formula::not(push(a, x)),
        Formula::And(x, y) => Formula::and(push(a, x), push(a, y)),
        Formula::Know(x) => Formula::know(push(a, x)),
        Formula::Announce(psi, body) => {
            let p = Arc::new(push(a, psi));
            push_announce(a, &p, body)
        }
        Formula::Intervene(..) => panic!("intervention inside an intervention body"),
    }
}

/// The translation of `[a][ψ!] g` given `p`, the translation of `[a] ψ`.
fn push_announce(a: &InterventionAssignment, p: &Arc<Formula>, g: &Formula) -> Formula {
    match g {
        Formula::Atom { .. } => Formula::imp(p.clone(), push(a, g)),
        Formula::Not(x) => Formula::imp(p.clone(), Formula::not(push_announce(a, p, x))),
        Formula::And(x, y) => Formula::and(push_announce(a, p, x), push_announce(a, p, y)),
        Formula::Know(x) => Formula::imp(
            p.clone(),
            Formula::know(Formula::imp(p.clone(), push_announce(a, p, x))),
        ),
        // inside first: the inner announcement is eliminated before the outer one
        Formula::Announce(..) => {
            let inner = push(&InterventionAssignment::empty(), g);
            push_announce(a, p, &inner)
        }
        Formula::Intervene(..) => panic!("intervention inside an intervention body"),
    }
}

/// Removes every announcement from an L1 formula.
pub fn tr2(f: &Formula) -> Result<Formula, ReductionError> {
    match f.classify() {
        Fragment::Pakc => Err(ReductionError::NotL1(Fragment::Pakc)),
        Fragment::Kc => Ok(f.clone()),
        Fragment::L1 => Ok(tr2_l1(f)),
    }
}

fn tr2_l1(f: &Formula) -> Formula {
    match f {
        Formula::Atom { .. } | Formula::Intervene(..) => f.clone(),
        Formula::Not(a) => Formula::not(tr2_l1(a)),
        Formula::And(a, b) => Formula::and(tr2_l1(a), tr2_l1(b)),
        Formula::Know(a) => Formula::know(tr2_l1(a)),
        Formula::Announce(psi, body) => {
            let p = Arc::new(tr2_l1(psi));
            announce2(&p, body)
        }
    }
}

/// The translation of `[ξ!] g` given `p`, the translation of `ξ`.
fn announce2(p: &Arc<Formula>, g: &Formula) -> Formula {
    match g {
        Formula::Atom { .. } | Formula::Intervene(..) => Formula::imp(p.clone(), g.clone()),
        Formula::Not(x) => Formula::imp(p.clone(), Formula::not(announce2(p, x))),
        Formula::And(x, y) => Formula::and(announce2(p, x), announce2(p, y)),
        Formula::Know(x) => Formula::imp(
            p.clone(),
            Formula::know(Formula::imp(p.clone(), announce2(p, x))),
        ),
        Formula::Announce(..) => announce2(p, &tr2_l1(g)),
    }
}

/// An announcement-free formula equivalent to `f`, in the KC fragment.
pub fn reduce(f: &Formula) -> Formula {
    tr2(&tr1(f)).expect("tr1 output is in L1")
}
