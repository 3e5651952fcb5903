use std::sync::Arc;

use super::{consistent_assignment, CodFormula, TeamError};
use crate::causal::signature::for_each_tuple;
use crate::causal::{Signature, Valuation, VarId};
use crate::pakc::{Formula, FormulaError};

/// The classical reading of a dependence-free formula.
pub fn e_translate(alpha: &CodFormula, sig: &Signature) -> Result<Formula, TeamError> {
    Ok(match alpha {
        CodFormula::Eq { var, value } => Formula::atom(*var, *value),
        CodFormula::Neq { var, value } => Formula::not(Formula::atom(*var, *value)),
        CodFormula::Dep { .. } => return Err(TeamError::DependenceNotAllowed),
        CodFormula::And(a, b) => Formula::and(e_translate(a, sig)?, e_translate(b, sig)?),
        CodFormula::Or(a, b) => Formula::or(e_translate(a, sig)?, e_translate(b, sig)?),
        CodFormula::SelImp(a, b) => Formula::imp(e_translate(a, sig)?, e_translate(b, sig)?),
        CodFormula::Cf(bindings, body) => {
            if body.has_counterfactual() {
                return Err(TeamError::NestedCounterfactual);
            }
            match consistent_assignment(bindings) {
                None => Formula::verum(sig),
                Some(a) => Formula::intervene(a, e_translate(body, sig)?),
            }
        }
    })
}

/// The global translation: truth on a nonempty team equals validity of the
/// result on the corresponding epistemic model.
pub fn tr_translate(f: &CodFormula, sig: &Signature, cap: usize) -> Result<Formula, TeamError> {
    check_input(f, sig)?;
    Translator { sig, cap }.tr(f, false)
}

/// The local translation: as [`tr_translate`] with an extra knowledge
/// operator in the dependence and selective implication clauses.
pub fn tr_star_translate(
    f: &CodFormula,
    sig: &Signature,
    cap: usize,
) -> Result<Formula, TeamError> {
    check_input(f, sig)?;
    Translator { sig, cap }.tr(f, true)
}

fn check_input(f: &CodFormula, sig: &Signature) -> Result<(), TeamError> {
    f.validate(sig)?;
    if !f.is_non_nested() {
        return Err(TeamError::NestedCounterfactual);
    }
    Ok(())
}

struct Translator<'a> {
    sig: &'a Signature,
    cap: usize,
}

impl Translator<'_> {
    fn tr(&self, f: &CodFormula, star: bool) -> Result<Formula, TeamError> {
        let sig = self.sig;
        Ok(match f {
            CodFormula::Eq { var, value } => Formula::know(Formula::atom(*var, *value)),
            CodFormula::Neq { var, value } => {
                Formula::know(Formula::not(Formula::atom(*var, *value)))
            }
            CodFormula::And(a, b) => Formula::and(self.tr(a, star)?, self.tr(b, star)?),
            CodFormula::Cf(bindings, body) => match consistent_assignment(bindings) {
                None => Formula::verum(sig),
                Some(a) => Formula::intervene(a, self.tr(body, star)?),
            },
            CodFormula::SelImp(alpha, body) => {
                let ann = Formula::announce(e_translate(alpha, sig)?, self.tr(body, false)?);
                if star {
                    Formula::know(ann)
                } else {
                    ann
                }
            }
            CodFormula::Dep { xs, y } => self.dep(xs, *y, star)?,
            CodFormula::Or(a, b) => self.or(a, b)?,
        })
    }

    fn dep(&self, xs: &[VarId], y: VarId, star: bool) -> Result<Formula, TeamError> {
        let sig = self.sig;
        let needed = sig
            .product_size(xs)
            .and_then(|n| n.checked_mul(sig.range_len(y)));
        if needed.is_none_or(|n| n > self.cap) {
            return Err(FormulaError::CapExceeded {
                what: "dependence translation",
                needed: needed.map_or_else(|| "overflowing".to_string(), |n| n.to_string()),
                cap: self.cap,
            }
            .into());
        }
        let ranges: Vec<usize> = xs.iter().map(|&x| sig.range_len(x)).collect();
        let mut conjuncts = Vec::new();
        for_each_tuple(&ranges, |t| {
            let bindings: Vec<_> = xs.iter().copied().zip(t.iter().copied()).collect();
            let observed = Arc::new(Formula::atoms_conj(&bindings, sig));
            let disjuncts = sig.values(y).map(|v| {
                let ann = Formula::announce(observed.clone(), Formula::know(Formula::atom(y, v)));
                if star {
                    Formula::know(ann)
                } else {
                    ann
                }
            });
            conjuncts.push(Formula::disj(disjuncts, sig));
        });
        Ok(Formula::conj(conjuncts, sig))
    }

    /// `⋁_{S ⊆ A} K([⋁S !] tr(a) & [~⋁S !] tr(b))` over the set `A` of all
    /// valuations of the signature.
    fn or(&self, a: &CodFormula, b: &CodFormula) -> Result<Formula, TeamError> {
        let sig = self.sig;
        let all = Valuation::all(sig);
        let n = all.len();
        if n >= 63 || (1usize << n) > self.cap {
            return Err(TeamError::TranslationCapExceeded {
                valuations: n,
                cap: self.cap,
            });
        }
        let left = Arc::new(self.tr(a, false)?);
        let right = Arc::new(self.tr(b, false)?);
        let describe: Vec<Formula> = all
            .iter()
            .map(|v| {
                let bindings: Vec<_> = sig.vars().map(|x| (x, v.get(x))).collect();
                Formula::atoms_conj(&bindings, sig)
            })
            .collect();
        let mut disjuncts = Vec::with_capacity(1 << n);
        for mask in 0u64..(1u64 << n) {
            let chosen = describe
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, d)| d.clone());
            let inside = Arc::new(Formula::disj(chosen, sig));
            disjuncts.push(Formula::know(Formula::and(
                Formula::announce(inside.clone(), left.clone()),
                Formula::announce(Formula::not(inside), right.clone()),
            )));
        }
        Ok(Formula::disj(disjuncts, sig))
    }
}
