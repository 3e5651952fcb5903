//! Seeded random generators for signatures, models, teams and formulas.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::causal::signature::for_each_tuple;
use crate::causal::{InterventionAssignment, Signature, StructuralFunctionSet, ValueId, VarId};
use crate::epistemic::{EpistemicCausalModel, Team};
use crate::pakc::Formula;
use crate::team::{CausalTeam, CodFormula};

/// Size bounds for generated objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub max_vars: usize,
    pub max_range: usize,
    pub max_team: usize,
    pub max_depth: usize,
    pub max_intervention: usize,
    /// Most split disjunctions outside selective implication antecedents.
    pub max_or: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            max_vars: 4,
            max_range: 3,
            max_team: 6,
            max_depth: 4,
            max_intervention: 2,
            max_or: 2,
        }
    }
}

/// Exogenous variables are named `U1, U2, ...` and endogenous ones
/// `V1, V2, ...`; values are `0, 1, ...`.
pub fn random_signature(rng: &mut impl Rng, cfg: &GeneratorConfig) -> Arc<Signature> {
    let n = rng.gen_range(1..=cfg.max_vars.max(1));
    let n_exo = rng.gen_range(0..=n);
    let exo: Vec<String> = (1..=n_exo).map(|i| format!("U{i}")).collect();
    let endo: Vec<String> = (1..=n - n_exo).map(|i| format!("V{i}")).collect();
    let max_range = cfg.max_range.max(1);
    let ranges = (0..n)
        .map(|_| {
            let size = if max_range == 1 || rng.gen_bool(0.1) {
                1
            } else {
                rng.gen_range(2..=max_range)
            };
            (0..size).map(|v| v.to_string()).collect()
        })
        .collect();
    Arc::new(Signature::new(exo, endo, ranges).expect("generated names are valid"))
}

/// Recursive functions: endogenous variables are put in a random order and
/// each one reads a random subset of the exogenous and earlier variables
/// through a random table.
pub fn random_functions(rng: &mut impl Rng, sig: &Arc<Signature>) -> StructuralFunctionSet {
    let mut order: Vec<VarId> = sig.endogenous().collect();
    order.shuffle(rng);
    let mut parents: HashMap<VarId, Vec<VarId>> = HashMap::new();
    for (i, &v) in order.iter().enumerate() {
        let candidates = sig.exogenous().chain(order[..i].iter().copied());
        let chosen: Vec<VarId> = candidates.filter(|_| rng.gen_bool(0.5)).collect();
        parents.insert(v, chosen);
    }
    let mut tables: HashMap<(VarId, Vec<ValueId>), ValueId> = HashMap::new();
    StructuralFunctionSet::from_fn(sig.clone(), |target, values| {
        let key: Vec<ValueId> = parents[&target].iter().map(|p| values[p.0]).collect();
        *tables
            .entry((target, key))
            .or_insert_with(|| ValueId(rng.gen_range(0..sig.range_len(target)) as u16))
    })
    .expect("generated tables have the right shape")
}

/// Every compliant valuation of `functions`, one per exogenous tuple.
pub fn compliant_valuations(functions: &StructuralFunctionSet) -> Vec<crate::causal::Valuation> {
    let sig = functions.signature();
    let exo: Vec<VarId> = sig.exogenous().collect();
    let ranges: Vec<usize> = exo.iter().map(|&u| sig.range_len(u)).collect();
    let mut out = Vec::new();
    for_each_tuple(&ranges, |t| {
        let v = functions
            .solve(exo.iter().copied().zip(t.iter().copied()))
            .expect("functions are recursive");
        out.push(v);
    });
    out
}

/// A nonempty team of at most `max_team` compliant valuations.
pub fn random_team(rng: &mut impl Rng, functions: &StructuralFunctionSet, max_team: usize) -> Team {
    let all = compliant_valuations(functions);
    let k = rng.gen_range(1..=max_team.clamp(1, all.len()));
    Team::new(all.choose_multiple(rng, k).cloned())
}

pub fn random_model(rng: &mut impl Rng, cfg: &GeneratorConfig) -> EpistemicCausalModel {
    let sig = random_signature(rng, cfg);
    let functions = random_functions(rng, &sig);
    let team = random_team(rng, &functions, cfg.max_team);
    EpistemicCausalModel::new(functions, team).expect("generated team is compliant")
}

/// A causal team; empty with small probability when `allow_empty` is set.
pub fn random_causal_team(
    rng: &mut impl Rng,
    cfg: &GeneratorConfig,
    allow_empty: bool,
) -> CausalTeam {
    let model = random_model(rng, cfg);
    if allow_empty && rng.gen_bool(0.05) {
        return CausalTeam::new(model.functions().clone(), Team::empty()).expect("empty team");
    }
    model.into()
}

/// Distinct variables in canonical order with random values. The length is
/// drawn from `min_len..=max_len`, clipped to the number of variables.
pub fn random_assignment(
    rng: &mut impl Rng,
    sig: &Signature,
    max_len: usize,
    min_len: usize,
) -> InterventionAssignment {
    let n = sig.num_vars();
    let hi = max_len.min(n);
    let len = rng.gen_range(min_len.min(hi)..=hi);
    let mut vars: Vec<VarId> = sig
        .vars()
        .collect::<Vec<_>>()
        .choose_multiple(rng, len)
        .copied()
        .collect();
    vars.sort();
    let bindings = vars
        .into_iter()
        .map(|v| (v, random_value(rng, sig, v)))
        .collect();
    InterventionAssignment::from_vec_unchecked(bindings)
}

fn random_value(rng: &mut impl Rng, sig: &Signature, v: VarId) -> ValueId {
    ValueId(rng.gen_range(0..sig.range_len(v)) as u16)
}

fn random_atom(rng: &mut impl Rng, sig: &Signature) -> Formula {
    let v = VarId(rng.gen_range(0..sig.num_vars()));
    Formula::atom(v, random_value(rng, sig, v))
}

/// A stratified formula of depth at most `depth`. Intervention bodies come
/// from [`random_gamma`].
pub fn random_pakc(
    rng: &mut impl Rng,
    sig: &Signature,
    depth: usize,
    max_intervention: usize,
) -> Formula {
    let can_intervene = max_intervention > 0;
    if depth == 0 {
        if can_intervene && rng.gen_bool(0.3) {
            let a = random_assignment(rng, sig, max_intervention, 1);
            return Formula::intervene(a, random_atom(rng, sig));
        }
        return random_atom(rng, sig);
    }
    let next = |rng: &mut _| random_pakc(rng, sig, depth - 1, max_intervention);
    match rng.gen_range(0..if can_intervene { 100 } else { 85 }) {
        0..=14 => random_atom(rng, sig),
        15..=34 => Formula::not(next(rng)),
        35..=54 => Formula::and(next(rng), next(rng)),
        55..=69 => Formula::know(next(rng)),
        70..=84 => Formula::announce(next(rng), next(rng)),
        _ => {
            let a = random_assignment(rng, sig, max_intervention, 1);
            Formula::intervene(a, random_gamma(rng, sig, depth - 1))
        }
    }
}

/// An intervention-free formula of depth at most `depth`.
pub fn random_gamma(rng: &mut impl Rng, sig: &Signature, depth: usize) -> Formula {
    random_pakc(rng, sig, depth, 0)
}

/// A non-nested formula of the causal team language with at most
/// `cfg.max_or` split disjunctions outside antecedents.
pub fn random_cod(rng: &mut impl Rng, sig: &Signature, cfg: &GeneratorConfig) -> CodFormula {
    let mut gen = CodGen {
        sig,
        max_intervention: cfg.max_intervention,
        or_budget: cfg.max_or,
    };
    gen.formula(rng, cfg.max_depth, false)
}

/// A non-nested dependence-free formula.
pub fn random_alpha(
    rng: &mut impl Rng,
    sig: &Signature,
    depth: usize,
    max_intervention: usize,
) -> CodFormula {
    CodGen {
        sig,
        max_intervention,
        or_budget: 0,
    }
    .alpha(rng, depth, false)
}

struct CodGen<'a> {
    sig: &'a Signature,
    max_intervention: usize,
    or_budget: usize,
}

impl CodGen<'_> {
    fn literal(&self, rng: &mut impl Rng) -> CodFormula {
        let v = VarId(rng.gen_range(0..self.sig.num_vars()));
        let x = random_value(rng, self.sig, v);
        if rng.gen_bool(0.5) {
            CodFormula::eq(v, x)
        } else {
            CodFormula::neq(v, x)
        }
    }

    fn dep(&self, rng: &mut impl Rng) -> CodFormula {
        let n = self.sig.num_vars();
        let y = VarId(rng.gen_range(0..n));
        let mut xs: Vec<VarId> = self.sig.vars().filter(|_| rng.gen_bool(0.4)).collect();
        xs.shuffle(rng);
        CodFormula::dep(xs, y)
    }

    /// Counterfactual bindings; occasionally a variable is repeated, with the
    /// same or a different value.
    fn bindings(&self, rng: &mut impl Rng) -> Vec<(VarId, ValueId)> {
        let a = random_assignment(rng, self.sig, self.max_intervention.max(1), 1);
        let mut bindings = a.bindings().to_vec();
        if rng.gen_bool(0.1) {
            let &(v, _) = bindings.choose(rng).expect("nonempty assignment");
            bindings.push((v, random_value(rng, self.sig, v)));
        }
        bindings
    }

    fn formula(&mut self, rng: &mut impl Rng, depth: usize, in_cf: bool) -> CodFormula {
        if depth == 0 {
            return if rng.gen_bool(0.25) {
                self.dep(rng)
            } else {
                self.literal(rng)
            };
        }
        let roll = rng.gen_range(0..100);
        match roll {
            0..=14 => self.literal(rng),
            15..=24 => self.dep(rng),
            25..=44 => CodFormula::and(
                self.formula(rng, depth - 1, in_cf),
                self.formula(rng, depth - 1, in_cf),
            ),
            45..=59 if self.or_budget > 0 => {
                self.or_budget -= 1;
                CodFormula::or(
                    self.formula(rng, depth - 1, in_cf),
                    self.formula(rng, depth - 1, in_cf),
                )
            }
            60..=79 => CodFormula::sel_imp(
                self.alpha(rng, depth - 1, in_cf),
                self.formula(rng, depth - 1, in_cf),
            ),
            80..=99 if !in_cf => {
                let bindings = self.bindings(rng);
                CodFormula::cf(bindings, self.formula(rng, depth - 1, true))
            }
            _ => CodFormula::and(self.literal(rng), self.formula(rng, depth - 1, in_cf)),
        }
    }

    fn alpha(&self, rng: &mut impl Rng, depth: usize, in_cf: bool) -> CodFormula {
        if depth == 0 {
            return self.literal(rng);
        }
        match rng.gen_range(0..100) {
            0..=29 => self.literal(rng),
            30..=49 => CodFormula::and(
                self.alpha(rng, depth - 1, in_cf),
                self.alpha(rng, depth - 1, in_cf),
            ),
            50..=64 => CodFormula::or(
                self.alpha(rng, depth - 1, in_cf),
                self.alpha(rng, depth - 1, in_cf),
            ),
            65..=79 => CodFormula::sel_imp(
                self.alpha(rng, depth - 1, in_cf),
                self.alpha(rng, depth - 1, in_cf),
            ),
            _ if !in_cf => {
                let bindings = self.bindings(rng);
                CodFormula::cf(bindings, self.alpha(rng, depth - 1, true))
            }
            _ => self.literal(rng),
        }
    }
}
