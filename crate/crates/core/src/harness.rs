//! Seeded batch checks of semantic properties of the library, one mode per
//! [`Which`] variant.
//!
//! Every item draws from its own generator seeded by the base seed and the
//! item index, so results do not depend on the number of worker threads.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::causal::signature::for_each_tuple;
use crate::causal::{Signature, StructuralFunctionSet, Valuation, ValueId, VarId};
use crate::epistemic::{EpistemicCausalModel, Team};
use crate::generate::{
    compliant_valuations, random_alpha, random_causal_team, random_cod, random_functions,
    random_model, random_pakc, random_signature, GeneratorConfig,
};
use crate::modelfile::write_model;
use crate::pakc::{causes_formula, parse, Fragment, DEFAULT_CAP};
use crate::reduction::axioms::{axiom_instances, AxiomInstanceRequest, Schema};
use crate::reduction::{reduce, tr1};
use crate::semantics::{eval_at, valid_on_model_trusted};
use crate::team::{
    check_global_equivalence, check_local_equivalence, e_translate, parse_cod, team_eval,
    CausalTeam, TeamError, DEFAULT_OR_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Which {
    Reduction,
    Global,
    Local,
    Axioms,
    Downward,
    Causes,
    Solve,
    RoundTrip,
}

impl Which {
    pub const ALL: [Which; 8] = [
        Which::Reduction,
        Which::Global,
        Which::Local,
        Which::Axioms,
        Which::Downward,
        Which::Causes,
        Which::Solve,
        Which::RoundTrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Which::Reduction => "reduction",
            Which::Global => "global",
            Which::Local => "local",
            Which::Axioms => "axioms",
            Which::Downward => "downward",
            Which::Causes => "causes",
            Which::Solve => "solve",
            Which::RoundTrip => "roundtrip",
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown check `{0}`")]
pub struct UnknownCheck(String);

impl FromStr for Which {
    type Err = UnknownCheck;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Which::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| UnknownCheck(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivConfig {
    pub which: Which,
    pub seed: u64,
    /// Number of generated items (models, pairs or teams).
    pub count: usize,
    pub jobs: usize,
    pub generator: GeneratorConfig,
    /// Axiom instances per schema and model.
    pub instances: usize,
    pub cap: usize,
    pub or_cap: usize,
}

impl EquivConfig {
    /// Defaults sized for each check.
    pub fn new(which: Which) -> Self {
        let base = GeneratorConfig::default();
        let (count, generator) = match which {
            Which::Reduction => (
                500,
                GeneratorConfig {
                    max_vars: 3,
                    max_range: 3,
                    max_team: 8,
                    max_depth: 5,
                    ..base
                },
            ),
            Which::Axioms => (
                100,
                GeneratorConfig {
                    max_vars: 3,
                    max_range: 3,
                    max_team: 8,
                    max_depth: 2,
                    ..base
                },
            ),
            Which::Global | Which::Local | Which::Downward => (
                if which == Which::Downward { 100 } else { 200 },
                GeneratorConfig {
                    max_vars: 3,
                    max_range: 2,
                    max_team: 6,
                    max_depth: 3,
                    max_or: 2,
                    ..base
                },
            ),
            Which::Causes => (
                200,
                GeneratorConfig {
                    max_vars: 3,
                    max_range: 2,
                    ..base
                },
            ),
            Which::Solve => (
                100,
                GeneratorConfig {
                    max_vars: 4,
                    max_range: 3,
                    ..base
                },
            ),
            Which::RoundTrip => (1000, base),
        };
        EquivConfig {
            which,
            seed: 0,
            count,
            jobs: 1,
            generator,
            instances: 20,
            cap: DEFAULT_CAP,
            or_cap: DEFAULT_OR_CAP,
        }
    }
}

/// A reproducible failure: the item seed, the model file and the formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub seed: u64,
    pub model: String,
    pub formula: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivSummary {
    pub which: Which,
    pub items: usize,
    pub checked: usize,
    pub skipped: usize,
    /// Checks per category, e.g. instances per schema.
    pub tallies: BTreeMap<String, usize>,
    pub failures: Vec<Counterexample>,
}

impl EquivSummary {
    pub fn passed(&self) -> usize {
        self.checked - self.failures.len()
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for EquivSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let noun = match self.which {
            Which::Axioms => "instances valid",
            Which::RoundTrip => "round trips exact",
            Which::Causes => "verdicts agree",
            Which::Solve => "function sets solve uniquely",
            Which::Downward => "properties hold",
            _ => "equivalent",
        };
        writeln!(
            f,
            "{}: {}/{} {} over {} items, {} skipped",
            self.which,
            self.passed(),
            self.checked,
            noun,
            self.items,
            self.skipped
        )?;
        for (k, v) in &self.tallies {
            writeln!(f, "  {k}: {v}")?;
        }
        if self.which == Which::Axioms && self.ok() {
            writeln!(f, "all instances valid")?;
        }
        for c in &self.failures {
            writeln!(f, "counterexample seed={} formula={}", c.seed, c.formula)?;
            writeln!(f, "  {}", c.detail)?;
            for line in c.model.lines() {
                writeln!(f, "  {line}")?;
            }
        }
        Ok(())
    }
}

#[derive(Default)]
struct Outcome {
    checked: usize,
    skipped: usize,
    tallies: BTreeMap<String, usize>,
    failures: Vec<Counterexample>,
}

impl Outcome {
    fn check(&mut self, tally: Option<&str>, ok: bool, fail: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        if let Some(t) = tally {
            *self.tallies.entry(t.to_string()).or_default() += 1;
        }
        if !ok {
            self.failures.push(fail());
        }
    }
}

/// The seed of item `index` under base seed `seed`.
pub fn item_seed(seed: u64, index: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    mix(seed ^ mix(index))
}

pub fn run_equiv(cfg: &EquivConfig) -> EquivSummary {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .expect("thread pool");
    let outcomes: Vec<Outcome> = pool.install(|| match cfg.which {
        Which::Causes => causes_items(cfg)
            .into_par_iter()
            .map(|(seed, functions)| causes_item(cfg, seed, &functions))
            .collect(),
        _ => (0..cfg.count as u64)
            .into_par_iter()
            .map(|i| run_item(cfg, item_seed(cfg.seed, i)))
            .collect(),
    });
    let mut summary = EquivSummary {
        which: cfg.which,
        items: outcomes.len(),
        checked: 0,
        skipped: 0,
        tallies: BTreeMap::new(),
        failures: Vec::new(),
    };
    for o in outcomes {
        summary.checked += o.checked;
        summary.skipped += o.skipped;
        for (k, v) in o.tallies {
            *summary.tallies.entry(k).or_default() += v;
        }
        summary.failures.extend(o.failures);
    }
    summary
}

fn run_item(cfg: &EquivConfig, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match cfg.which {
        Which::Reduction => reduction_item(cfg, seed, &mut rng),
        Which::Global | Which::Local => translation_item(cfg, seed, &mut rng),
        Which::Axioms => axioms_item(cfg, seed, &mut rng),
        Which::Downward => downward_item(cfg, seed, &mut rng),
        Which::Solve => solve_item(cfg, seed, &mut rng),
        Which::RoundTrip => round_trip_item(cfg, seed, &mut rng),
        Which::Causes => unreachable!("causes items are enumerated"),
    }
}

fn model_text(functions: &StructuralFunctionSet, team: &Team) -> String {
    write_model(functions, team, None).unwrap_or_else(|e| format!("<{e}>"))
}

fn reduction_item(cfg: &EquivConfig, seed: u64, rng: &mut ChaCha8Rng) -> Outcome {
    let g = &cfg.generator;
    let model = random_model(rng, g);
    let sig = model.signature();
    let depth = rng.gen_range(0..=g.max_depth);
    let f = random_pakc(rng, sig, depth, g.max_intervention);
    let t1 = tr1(&f);
    let r = reduce(&f);
    let mut problems = Vec::new();
    if !matches!(t1.classify(), Fragment::Kc | Fragment::L1) {
        problems.push(format!("tr1 output is in {}", t1.classify()));
    }
    if r.classify() != Fragment::Kc {
        problems.push(format!("reduce output is in {}", r.classify()));
    }
    for a in model.team() {
        let (v, v1, v2) = (
            eval_at(&model, a, &f),
            eval_at(&model, a, &t1),
            eval_at(&model, a, &r),
        );
        if v != v1 || v != v2 {
            problems.push(format!(
                "at {}: formula {v}, tr1 {v1}, reduce {v2}",
                a.display(sig)
            ));
        }
    }
    let mut out = Outcome::default();
    let tally = if t1.classify() == Fragment::L1 {
        "tr1 in L1"
    } else {
        "tr1 in KC"
    };
    out.check(Some(tally), problems.is_empty(), || Counterexample {
        seed,
        model: model_text(model.functions(), model.team()),
        formula: f.display(sig).to_string(),
        detail: problems.join("; "),
    });
    out
}

fn is_cap_event(e: &TeamError) -> bool {
    matches!(
        e,
        TeamError::OrCapExceeded { .. }
            | TeamError::TranslationCapExceeded { .. }
            | TeamError::Formula(crate::pakc::FormulaError::CapExceeded { .. })
    )
}

fn translation_item(cfg: &EquivConfig, seed: u64, rng: &mut ChaCha8Rng) -> Outcome {
    let g = &cfg.generator;
    let t = random_causal_team(rng, g, false);
    let sig = t.signature();
    let f = random_cod(rng, sig, g);
    let mut out = Outcome::default();
    let fail = |detail: String| Counterexample {
        seed,
        model: model_text(t.functions(), t.team()),
        formula: f.display(sig).to_string(),
        detail,
    };
    let tally = if f.count_or() > 0 {
        "with split disjunction"
    } else {
        "without split disjunction"
    };
    if cfg.which == Which::Global {
        match check_global_equivalence(&t, &f, cfg.cap, cfg.or_cap) {
            Ok(r) => out.check(Some(tally), r.agrees(), || {
                fail(format!(
                    "team {}, translation valid {}",
                    r.team_verdict, r.model_verdict
                ))
            }),
            Err(e) if is_cap_event(&e) => out.skipped += 1,
            Err(e) => out.check(None, false, || fail(e.to_string())),
        }
    } else {
        match check_local_equivalence(&t, &f, cfg.cap, cfg.or_cap) {
            Ok(r) => {
                let forward = !r.team_verdict || r.pointings.iter().all(|(_, v)| *v);
                let backward = r.team_verdict || r.pointings.iter().all(|(_, v)| !*v);
                out.check(
                    Some(tally),
                    forward && backward && r.pointing_invariant(),
                    || {
                        let at: Vec<String> = r
                            .pointings
                            .iter()
                            .map(|(s, v)| format!("{}: {v}", s.display(sig)))
                            .collect();
                        fail(format!(
                            "team {}, pointings {}",
                            r.team_verdict,
                            at.join(", ")
                        ))
                    },
                )
            }
            Err(e) if is_cap_event(&e) => out.skipped += 1,
            Err(e) => out.check(None, false, || fail(e.to_string())),
        }
    }
    out
}

fn axioms_item(cfg: &EquivConfig, seed: u64, rng: &mut ChaCha8Rng) -> Outcome {
    let g = &cfg.generator;
    let model = random_model(rng, g);
    let sig = model.functions().signature_arc().clone();
    let mut out = Outcome::default();
    for schema in Schema::ALL {
        let req = AxiomInstanceRequest {
            schema,
            signature: sig.clone(),
            max_intervention: g.max_intervention,
            max_depth: g.max_depth.max(1),
            seed,
            count: cfg.instances.max(1),
            cap: cfg.cap,
        };
        match axiom_instances(&req) {
            Ok(instances) => {
                for f in instances {
                    out.check(
                        Some(schema.name()),
                        valid_on_model_trusted(&model, &f),
                        || Counterexample {
                            seed,
                            model: model_text(model.functions(), model.team()),
                            formula: f.display(&sig).to_string(),
                            detail: format!("instance of {schema} is not valid"),
                        },
                    );
                }
            }
            Err(_) => out.skipped += 1,
        }
    }
    out
}

fn downward_item(cfg: &EquivConfig, seed: u64, rng: &mut ChaCha8Rng) -> Outcome {
    let g = &cfg.generator;
    let t = random_causal_team(rng, g, false);
    let sig = t.signature().clone();
    let f = random_cod(rng, &sig, g);
    let alpha = random_alpha(rng, &sig, g.max_depth, g.max_intervention);
    let mut out = Outcome::default();
    let fail = |formula: &str, detail: String| Counterexample {
        seed,
        model: model_text(t.functions(), t.team()),
        formula: formula.to_string(),
        detail,
    };
    let shown_f = f.display(&sig).to_string();
    let shown_alpha = alpha.display(&sig).to_string();
    let sub =
        |mask: u64| CausalTeam::new(t.functions().clone(), t.team().select(mask)).expect("subteam");

    match team_eval(&t, &f, cfg.or_cap) {
        Ok(verdict) => {
            let mut bad = None;
            if verdict {
                for mask in 0..(1u64 << t.team().len()) {
                    if !team_eval(&sub(mask), &f, cfg.or_cap).unwrap_or(false) {
                        bad = Some(t.team().select(mask).display(&sig).to_string());
                        break;
                    }
                }
            }
            out.check(Some("downward closure"), bad.is_none(), || {
                fail(
                    &shown_f,
                    format!("fails on subteam {}", bad.clone().unwrap_or_default()),
                )
            });
        }
        Err(e) if is_cap_event(&e) => out.skipped += 1,
        Err(e) => out.check(None, false, || fail(&shown_f, e.to_string())),
    }

    let model = t.to_epistemic().expect("nonempty");
    let e = e_translate(&alpha, &sig).expect("dependence-free");
    let mut bad = Vec::new();
    for s in t.team() {
        let single =
            CausalTeam::new(t.functions().clone(), Team::new([s.clone()])).expect("member");
        if team_eval(&single, &alpha, cfg.or_cap).ok() != Some(eval_at(&model, s, &e)) {
            bad.push(s.display(&sig).to_string());
        }
    }
    out.check(Some("classical reading"), bad.is_empty(), || {
        fail(&shown_alpha, format!("differs at {}", bad.join(", ")))
    });

    let selected = t.team().filter(|s| eval_at(&model, s, &e));
    let restricted = model
        .restrict_team(|s| eval_at(&model, s, &e))
        .map(|m| m.team().clone())
        .unwrap_or_default();
    let by_team: Team = t
        .team()
        .iter()
        .filter(|s| {
            let single =
                CausalTeam::new(t.functions().clone(), Team::new([(*s).clone()])).expect("member");
            team_eval(&single, &alpha, cfg.or_cap).unwrap_or(false)
        })
        .cloned()
        .collect();
    out.check(
        Some("selection"),
        selected == by_team && (selected.is_empty() || restricted == selected),
        || {
            fail(
                &shown_alpha,
                format!(
                    "announcement keeps {}, selection keeps {}",
                    restricted.display(&sig),
                    by_team.display(&sig)
                ),
            )
        },
    );
    out
}

fn solve_item(cfg: &EquivConfig, seed: u64, rng: &mut ChaCha8Rng) -> Outcome {
    let sig = random_signature(rng, &cfg.generator);
    let functions = random_functions(rng, &sig);
    let mut out = Outcome::default();
    let exo: Vec<VarId> = sig.exogenous().collect();
    let mut by_exo: BTreeMap<Vec<ValueId>, Vec<Valuation>> = BTreeMap::new();
    for v in Valuation::all(&sig)
        .into_iter()
        .filter(|v| functions.complies(v))
    {
        by_exo
            .entry(exo.iter().map(|&u| v.get(u)).collect())
            .or_default()
            .push(v);
    }
    let mut problems = Vec::new();
    let ranges: Vec<usize> = exo.iter().map(|&u| sig.range_len(u)).collect();
    let mut tuples = Vec::new();
    for_each_tuple(&ranges, |t| tuples.push(t.to_vec()));
    for t in tuples {
        let found = by_exo.get(&t).map_or(&[][..], Vec::as_slice);
        let solved = functions.solve(exo.iter().copied().zip(t.iter().copied()));
        match (found, solved) {
            ([one], Ok(s)) if *one == s => {}
            (found, solved) => problems.push(format!(
                "{} compliant valuations, solve gave {:?}",
                found.len(),
                solved.map(|s| s.display(&sig).to_string())
            )),
        }
    }
    out.check(
        Some("function sets"),
        problems.is_empty() && functions.is_recursive(),
        || Counterexample {
            seed,
            model: model_text(&functions, &Team::empty()),
            formula: String::new(),
            detail: problems.join("; "),
        },
    );
    out
}

fn round_trip_item(cfg: &EquivConfig, seed: u64, rng: &mut ChaCha8Rng) -> Outcome {
    let g = &cfg.generator;
    let sig = random_signature(rng, g);
    let mut out = Outcome::default();
    let depth = rng.gen_range(0..=g.max_depth);
    let f = random_pakc(rng, &sig, depth, g.max_intervention);
    let text = f.display(&sig).to_string();
    let back = parse(&text, &sig);
    out.check(Some("PAKC"), back.as_ref() == Ok(&f), || Counterexample {
        seed,
        model: String::new(),
        formula: text.clone(),
        detail: format!("parsed back as {back:?}"),
    });
    let c = random_cod(rng, &sig, g);
    let text = c.display(&sig).to_string();
    let back = parse_cod(&text, &sig);
    out.check(Some("COD"), back.as_ref() == Ok(&c), || Counterexample {
        seed,
        model: String::new(),
        formula: text.clone(),
        detail: format!("parsed back as {back:?}"),
    });
    out
}

/// Every recursive function set over every signature within the bounds when
/// the table space is small, otherwise `count` seeded samples.
fn causes_items(cfg: &EquivConfig) -> Vec<(u64, StructuralFunctionSet)> {
    const EXHAUSTIVE_LIMIT: u128 = 1 << 20;
    let g = &cfg.generator;
    let mut shapes = Vec::new();
    for n in 1..=g.max_vars.max(1) {
        for n_exo in 0..=n {
            let mut ranges = vec![1usize; n];
            loop {
                shapes.push((n_exo, ranges.clone()));
                let Some(i) = ranges.iter().position(|&r| r < g.max_range.max(1)) else {
                    break;
                };
                ranges[i] += 1;
                ranges[..i].iter_mut().for_each(|r| *r = 1);
            }
        }
    }
    let space = |n_exo: usize, ranges: &[usize]| -> u128 {
        let others = |v: usize| -> u128 {
            ranges
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != v)
                .map(|(_, &r)| r as u128)
                .product()
        };
        (n_exo..ranges.len())
            .map(|v| (ranges[v] as u128).saturating_pow(others(v).min(64) as u32))
            .fold(1u128, |a, b| a.saturating_mul(b))
    };
    let total: u128 = shapes.iter().map(|(e, r)| space(*e, r)).sum();
    if total > EXHAUSTIVE_LIMIT {
        return (0..cfg.count as u64)
            .map(|i| {
                let seed = item_seed(cfg.seed, i);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let sig = random_signature(&mut rng, g);
                (seed, random_functions(&mut rng, &sig))
            })
            .collect();
    }
    let mut out = Vec::new();
    for (n_exo, ranges) in shapes {
        let names: Vec<String> = (0..ranges.len())
            .map(|i| {
                if i < n_exo {
                    format!("U{}", i + 1)
                } else {
                    format!("V{}", i + 1 - n_exo)
                }
            })
            .collect();
        let sig = std::sync::Arc::new(
            Signature::new(
                names[..n_exo].to_vec(),
                names[n_exo..].to_vec(),
                ranges
                    .iter()
                    .map(|&r| (0..r).map(|v| v.to_string()).collect())
                    .collect(),
            )
            .expect("valid signature"),
        );
        let sizes: Vec<usize> = sig
            .endogenous()
            .map(|v| {
                sig.vars()
                    .filter(|&w| w != v)
                    .map(|w| sig.range_len(w))
                    .product()
            })
            .collect();
        let digits: Vec<usize> = sig
            .endogenous()
            .zip(&sizes)
            .flat_map(|(v, &s)| std::iter::repeat_n(sig.range_len(v), s))
            .collect();
        for_each_tuple(&digits, |entries| {
            let mut tables = Vec::with_capacity(sizes.len());
            let mut rest = entries;
            for &s in &sizes {
                tables.push(rest[..s].to_vec());
                rest = &rest[s..];
            }
            let functions = StructuralFunctionSet::from_tables(sig.clone(), tables).expect("shape");
            if functions.is_recursive() {
                out.push((0, functions));
            }
        });
    }
    out
}

fn causes_item(cfg: &EquivConfig, seed: u64, functions: &StructuralFunctionSet) -> Outcome {
    let sig = functions.signature();
    let model = EpistemicCausalModel::new(
        functions.clone(),
        Team::new(compliant_valuations(functions)),
    )
    .expect("recursive and compliant");
    let mut out = Outcome::default();
    for z in sig.vars() {
        let parents = if sig.is_endogenous(z) {
            functions.parents(z).expect("endogenous")
        } else {
            Default::default()
        };
        for x in sig.vars().filter(|&x| x != z) {
            let expected = parents.contains(&x);
            let tally = if sig.is_endogenous(z) {
                "endogenous effect"
            } else {
                "exogenous effect"
            };
            match causes_formula(sig, x, z, cfg.cap) {
                Ok(f) => {
                    let verdicts: Vec<bool> = model
                        .team()
                        .iter()
                        .map(|a| eval_at(&model, a, &f))
                        .collect();
                    out.check(Some(tally), verdicts.iter().all(|&v| v == expected), || {
                        Counterexample {
                            seed,
                            model: model_text(functions, model.team()),
                            formula: f.display(sig).to_string(),
                            detail: format!(
                                "{} -> {}: parent {expected}, formula {verdicts:?}",
                                sig.name(x),
                                sig.name(z)
                            ),
                        }
                    });
                }
                Err(_) => out.skipped += 1,
            }
        }
    }
    out
}

/// A random model file whose actual valuation is the first team member.
pub fn generate_model_text(seed: u64, g: &GeneratorConfig) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let model = random_model(&mut rng, g);
    write_model(
        model.functions(),
        model.team(),
        model.team().members().first(),
    )
    .expect("generated functions are recursive")
}

/// A random formula over `sig`, in the team language when `cod` is set.
pub fn generate_formula_text(seed: u64, sig: &Signature, g: &GeneratorConfig, cod: bool) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if cod {
        random_cod(&mut rng, sig, g).display(sig).to_string()
    } else {
        random_pakc(&mut rng, sig, g.max_depth, g.max_intervention)
            .display(sig)
            .to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(which: Which, count: usize) -> EquivConfig {
        EquivConfig {
            count,
            ..EquivConfig::new(which)
        }
    }

    #[test]
    fn every_check_passes_on_a_small_run() {
        for which in Which::ALL {
            let s = run_equiv(&small(which, 20));
            assert!(s.ok(), "{s}");
            assert!(s.checked > 0, "{which}");
        }
    }

    #[test]
    fn results_do_not_depend_on_jobs() {
        let one = run_equiv(&small(Which::Global, 30));
        let four = run_equiv(&EquivConfig {
            jobs: 4,
            ..small(Which::Global, 30)
        });
        assert_eq!(one, four);
    }

    #[test]
    fn exhaustive_causes_space() {
        let items = causes_items(&EquivConfig::new(Which::Causes));
        assert!(items.len() > 500, "{}", items.len());
        assert!(items
            .iter()
            .any(|(_, f)| f.signature().num_endogenous() == 3));
        assert!(items.iter().all(|(_, f)| f.is_recursive()));
    }

    #[test]
    fn names_round_trip() {
        for w in Which::ALL {
            assert_eq!(w.name().parse::<Which>().unwrap(), w);
        }
    }
}
