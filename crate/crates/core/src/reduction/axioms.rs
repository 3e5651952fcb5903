//! Instances of the axiom schemas of the epistemic causal logic.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::causal::{InterventionAssignment, Signature, ValueId, VarId};
use crate::generate::{random_gamma, random_pakc};
use crate::pakc::{causes_formula, Formula, FormulaError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Schema {
    Hp1,
    Hp2,
    Hp3,
    Hp4,
    Hp5,
    Hp6,
    Rh1,
    Rh2,
    Ex,
    K,
    T,
    Four,
    Five,
    Cm,
    Rp1,
    Rp2,
    Rp3,
    Rp4,
}

impl Schema {
    pub const ALL: [Schema; 18] = [
        Schema::Hp1,
        Schema::Hp2,
        Schema::Hp3,
        Schema::Hp4,
        Schema::Hp5,
        Schema::Hp6,
        Schema::Rh1,
        Schema::Rh2,
        Schema::Ex,
        Schema::K,
        Schema::T,
        Schema::Four,
        Schema::Five,
        Schema::Cm,
        Schema::Rp1,
        Schema::Rp2,
        Schema::Rp3,
        Schema::Rp4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Schema::Hp1 => "HP1",
            Schema::Hp2 => "HP2",
            Schema::Hp3 => "HP3",
            Schema::Hp4 => "HP4",
            Schema::Hp5 => "HP5",
            Schema::Hp6 => "HP6",
            Schema::Rh1 => "RH1",
            Schema::Rh2 => "RH2",
            Schema::Ex => "EX",
            Schema::K => "K",
            Schema::T => "T",
            Schema::Four => "4",
            Schema::Five => "5",
            Schema::Cm => "CM",
            Schema::Rp1 => "RP1",
            Schema::Rp2 => "RP2",
            Schema::Rp3 => "RP3",
            Schema::Rp4 => "RP4",
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Schema {
    type Err = AxiomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Schema::ALL
            .into_iter()
            .find(|schema| schema.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| AxiomError::UnknownSchema(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("unknown axiom schema `{0}`")]
    UnknownSchema(String),
    #[error("size bounds must be positive")]
    InvalidBounds,
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[derive(Debug, Clone)]
pub struct AxiomInstanceRequest {
    pub schema: Schema,
    pub signature: Arc<Signature>,
    /// Longest intervention list in an instance.
    pub max_intervention: usize,
    /// Depth bound for the arbitrary subformulas of a schema.
    pub max_depth: usize,
    pub seed: u64,
    /// Number of instances wanted; fewer are returned when the schema has
    /// fewer instances over the signature.
    pub count: usize,
    /// Expansion cap for the causal-effect formulas of HP6.
    pub cap: usize,
}

// ---- one builder per schema ----

fn at(a: &InterventionAssignment, z: VarId, v: ValueId) -> Formula {
    Formula::intervene(a.clone(), Formula::atom(z, v))
}

/// `[a] Z=z -> ~[a] Z=z'`
pub fn hp1(a: &InterventionAssignment, z: VarId, v1: ValueId, v2: ValueId) -> Formula {
    Formula::imp(at(a, z, v1), Formula::not(at(a, z, v2)))
}

/// `[a] Z=z1 | ... | [a] Z=zn`
pub fn hp2(a: &InterventionAssignment, z: VarId, sig: &Signature) -> Formula {
    Formula::disj(sig.values(z).map(|v| at(a, z, v)), sig)
}

/// `([a] Z=z & [a] W=w) -> [a, Z:=z] W=w`; `Z` must not be bound by `a`.
pub fn hp3(a: &InterventionAssignment, z: VarId, zv: ValueId, w: VarId, wv: ValueId) -> Formula {
    let az = InterventionAssignment::from_vec_unchecked([a.bindings(), &[(z, zv)]].concat());
    Formula::imp(Formula::and(at(a, z, zv), at(a, w, wv)), at(&az, w, wv))
}

/// `[a, Z:=z] Z=z`; `Z` must not be bound by `a`.
pub fn hp4(a: &InterventionAssignment, z: VarId, zv: ValueId) -> Formula {
    let az = InterventionAssignment::from_vec_unchecked([a.bindings(), &[(z, zv)]].concat());
    at(&az, z, zv)
}

/// `([a, Z:=z] W=w & [a, W:=w] Z=z) -> [a] W=w` for distinct `Z`, `W` not bound by `a`.
pub fn hp5(a: &InterventionAssignment, z: VarId, zv: ValueId, w: VarId, wv: ValueId) -> Formula {
    let az = InterventionAssignment::from_vec_unchecked([a.bindings(), &[(z, zv)]].concat());
    let aw = InterventionAssignment::from_vec_unchecked([a.bindings(), &[(w, wv)]].concat());
    Formula::imp(Formula::and(at(&az, w, wv), at(&aw, z, zv)), at(a, w, wv))
}

/// `(Z0 ⇝ Z1 & ... & Zk-1 ⇝ Zk) -> ~(Zk ⇝ Z0)` for a chain `Z0, ..., Zk`.
pub fn hp6(chain: &[VarId], sig: &Signature, cap: usize) -> Result<Formula, FormulaError> {
    let links = chain
        .windows(2)
        .map(|w| causes_formula(sig, w[0], w[1], cap))
        .collect::<Result<Vec<_>, _>>()?;
    let back = causes_formula(sig, chain[chain.len() - 1], chain[0], cap)?;
    Ok(Formula::imp(Formula::conj(links, sig), Formula::not(back)))
}

/// `[a](g1 & g2) <-> ([a] g1 & [a] g2)`
pub fn rh1(a: &InterventionAssignment, g1: &Formula, g2: &Formula) -> Formula {
    Formula::iff(
        Formula::intervene(a.clone(), Formula::and(g1.clone(), g2.clone())),
        Formula::and(
            Formula::intervene(a.clone(), g1.clone()),
            Formula::intervene(a.clone(), g2.clone()),
        ),
    )
}

/// `[a] ~g <-> ~[a] g`
pub fn rh2(a: &InterventionAssignment, g: &Formula) -> Formula {
    Formula::iff(
        Formula::intervene(a.clone(), Formula::not(g.clone())),
        Formula::not(Formula::intervene(a.clone(), g.clone())),
    )
}

/// `U=u <-> [a] U=u` for exogenous `U` not bound by `a`.
pub fn ex(a: &InterventionAssignment, u: VarId, uv: ValueId) -> Formula {
    Formula::iff(Formula::atom(u, uv), at(a, u, uv))
}

/// `K(p -> q) -> (K p -> K q)`
pub fn k(p: &Formula, q: &Formula) -> Formula {
    Formula::imp(
        Formula::know(Formula::imp(p.clone(), q.clone())),
        Formula::imp(Formula::know(p.clone()), Formula::know(q.clone())),
    )
}

/// `K p -> p`
pub fn t(p: &Formula) -> Formula {
    Formula::imp(Formula::know(p.clone()), p.clone())
}

/// `K p -> K K p`
pub fn four(p: &Formula) -> Formula {
    let kp = Arc::new(Formula::know(p.clone()));
    Formula::imp(kp.clone(), Formula::know(kp))
}

/// `~K p -> K ~K p`
pub fn five(p: &Formula) -> Formula {
    let nkp = Arc::new(Formula::not(Formula::know(p.clone())));
    Formula::imp(nkp.clone(), Formula::know(nkp))
}

/// `[a] K g <-> K [a] g`
pub fn cm(a: &InterventionAssignment, g: &Formula) -> Formula {
    Formula::iff(
        Formula::intervene(a.clone(), Formula::know(g.clone())),
        Formula::know(Formula::intervene(a.clone(), g.clone())),
    )
}

/// `[ψ!][a] Z=z <-> (ψ -> [a] Z=z)`; `a` may be empty.
pub fn rp1(psi: &Formula, a: &InterventionAssignment, z: VarId, zv: ValueId) -> Formula {
    Formula::iff(
        Formula::announce(psi.clone(), at(a, z, zv)),
        Formula::imp(psi.clone(), at(a, z, zv)),
    )
}

/// `[ψ!] ~p <-> (ψ -> ~[ψ!] p)`
pub fn rp2(psi: &Formula, p: &Formula) -> Formula {
    Formula::iff(
        Formula::announce(psi.clone(), Formula::not(p.clone())),
        Formula::imp(
            psi.clone(),
            Formula::not(Formula::announce(psi.clone(), p.clone())),
        ),
    )
}

/// `[ψ!](p & q) <-> ([ψ!] p & [ψ!] q)`
pub fn rp3(psi: &Formula, p: &Formula, q: &Formula) -> Formula {
    Formula::iff(
        Formula::announce(psi.clone(), Formula::and(p.clone(), q.clone())),
        Formula::and(
            Formula::announce(psi.clone(), p.clone()),
            Formula::announce(psi.clone(), q.clone()),
        ),
    )
}

/// `[ψ!] K p <-> (ψ -> K(ψ -> [ψ!] p))`
pub fn rp4(psi: &Formula, p: &Formula) -> Formula {
    Formula::iff(
        Formula::announce(psi.clone(), Formula::know(p.clone())),
        Formula::imp(
            psi.clone(),
            Formula::know(Formula::imp(
                psi.clone(),
                Formula::announce(psi.clone(), p.clone()),
            )),
        ),
    )
}

// ---- instance generation ----

/// All assignments over sorted distinct variables with at most `max_len`
/// bindings, shortest first.
pub fn all_assignments(sig: &Signature, max_len: usize) -> Vec<InterventionAssignment> {
    let mut out = vec![InterventionAssignment::empty()];
    let mut frontier = vec![InterventionAssignment::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for a in &frontier {
            let start = a.bindings().last().map_or(0, |(v, _)| v.0 + 1);
            for v in (start..sig.num_vars()).map(VarId) {
                for x in sig.values(v) {
                    next.push(InterventionAssignment::from_vec_unchecked(
                        [a.bindings(), &[(v, x)]].concat(),
                    ));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn pairs(sig: &Signature) -> Vec<(VarId, ValueId)> {
    sig.vars()
        .flat_map(|v| sig.values(v).map(move |x| (v, x)))
        .collect()
}

/// Chains `Z0, ..., Zk` with `1 <= k <= 3`, consecutive variables distinct
/// and `Zk != Z0`.
fn chains(sig: &Signature) -> Vec<Vec<VarId>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<VarId>> = sig.vars().map(|v| vec![v]).collect();
    while let Some(chain) = stack.pop() {
        if chain.len() >= 2 && chain[0] != chain[chain.len() - 1] {
            out.push(chain.clone());
        }
        if chain.len() < 4 {
            let last = chain[chain.len() - 1];
            for v in sig.vars().filter(|&v| v != last) {
                let mut longer = chain.clone();
                longer.push(v);
                stack.push(longer);
            }
        }
    }
    out.sort();
    out
}

/// Picks `count` items deterministically, or all when there are fewer.
fn pick<T>(items: Vec<T>, count: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
    if items.len() <= count {
        return items;
    }
    let mut keep = vec![false; items.len()];
    for i in sample(rng, items.len(), count) {
        keep[i] = true;
    }
    items
        .into_iter()
        .zip(keep)
        .filter_map(|(item, k)| k.then_some(item))
        .collect()
}

/// Concrete instances of `req.schema` over `req.signature`. Schemas built
/// from atoms and assignments are enumerated exhaustively and then sampled;
/// schemas with arbitrary subformulas draw them at random. The result only
/// depends on the request.
pub fn axiom_instances(req: &AxiomInstanceRequest) -> Result<Vec<Formula>, AxiomError> {
    if req.count == 0 || req.max_depth == 0 || req.cap == 0 {
        return Err(AxiomError::InvalidBounds);
    }
    let sig = &*req.signature;
    let mut rng =
        ChaCha8Rng::seed_from_u64(req.seed ^ (req.schema as u64).wrapping_mul(0x9e37_79b9));
    let assignments = all_assignments(sig, req.max_intervention);
    let atoms = pairs(sig);
    let n = req.count;
    let depth = req.max_depth;
    let random_a = |rng: &mut ChaCha8Rng| {
        crate::generate::random_assignment(rng, sig, req.max_intervention.max(1), 1)
    };
    let out = match req.schema {
        Schema::Hp1 => {
            let mut all = Vec::new();
            for a in &assignments {
                for z in sig.vars() {
                    for v1 in sig.values(z) {
                        for v2 in sig.values(z).filter(|&v2| v2 != v1) {
                            all.push((a, z, v1, v2));
                        }
                    }
                }
            }
            pick(all, n, &mut rng)
                .into_iter()
                .map(|(a, z, v1, v2)| hp1(a, z, v1, v2))
                .collect()
        }
        Schema::Hp2 => {
            let all: Vec<_> = assignments
                .iter()
                .flat_map(|a| sig.vars().map(move |z| (a, z)))
                .collect();
            pick(all, n, &mut rng)
                .into_iter()
                .map(|(a, z)| hp2(a, z, sig))
                .collect()
        }
        Schema::Hp3 | Schema::Hp5 => {
            let mut all = Vec::new();
            for a in &assignments {
                for &(z, zv) in atoms.iter().filter(|(z, _)| !a.binds(*z)) {
                    for &(w, wv) in &atoms {
                        if req.schema == Schema::Hp5 && (w == z || a.binds(w)) {
                            continue;
                        }
                        all.push((a, z, zv, w, wv));
                    }
                }
            }
            let build = if req.schema == Schema::Hp3 { hp3 } else { hp5 };
            pick(all, n, &mut rng)
                .into_iter()
                .map(|(a, z, zv, w, wv)| build(a, z, zv, w, wv))
                .collect()
        }
        Schema::Hp4 => {
            let mut all = Vec::new();
            for a in &assignments {
                for &(z, zv) in atoms.iter().filter(|(z, _)| !a.binds(*z)) {
                    all.push((a, z, zv));
                }
            }
            pick(all, n, &mut rng)
                .into_iter()
                .map(|(a, z, zv)| hp4(a, z, zv))
                .collect()
        }
        Schema::Hp6 => pick(chains(sig), n, &mut rng)
            .into_iter()
            .map(|chain| hp6(&chain, sig, req.cap))
            .collect::<Result<Vec<_>, _>>()?,
        Schema::Ex => {
            let mut all = Vec::new();
            for a in &assignments {
                for u in sig.exogenous().filter(|u| !a.binds(*u)) {
                    for uv in sig.values(u) {
                        all.push((a, u, uv));
                    }
                }
            }
            pick(all, n, &mut rng)
                .into_iter()
                .map(|(a, u, uv)| ex(a, u, uv))
                .collect()
        }
        Schema::Rp1 => {
            let mut all = Vec::new();
            for a in &assignments {
                for &(z, zv) in &atoms {
                    all.push((a, z, zv));
                }
            }
            pick(all, n, &mut rng)
                .into_iter()
                .map(|(a, z, zv)| {
                    let psi = random_pakc(&mut rng, sig, depth, req.max_intervention);
                    rp1(&psi, a, z, zv)
                })
                .collect()
        }
        Schema::Rh1 => (0..n)
            .map(|_| {
                let a = random_a(&mut rng);
                let g1 = random_gamma(&mut rng, sig, depth);
                let g2 = random_gamma(&mut rng, sig, depth);
                rh1(&a, &g1, &g2)
            })
            .collect(),
        Schema::Rh2 | Schema::Cm => (0..n)
            .map(|_| {
                let a = random_a(&mut rng);
                let g = random_gamma(&mut rng, sig, depth);
                if req.schema == Schema::Rh2 {
                    rh2(&a, &g)
                } else {
                    cm(&a, &g)
                }
            })
            .collect(),
        Schema::K | Schema::Rp3 => (0..n)
            .map(|_| {
                let p = random_pakc(&mut rng, sig, depth, req.max_intervention);
                let q = random_pakc(&mut rng, sig, depth, req.max_intervention);
                if req.schema == Schema::K {
                    k(&p, &q)
                } else {
                    let psi = random_pakc(&mut rng, sig, depth, req.max_intervention);
                    rp3(&psi, &p, &q)
                }
            })
            .collect(),
        Schema::T | Schema::Four | Schema::Five => (0..n)
            .map(|_| {
                let p = random_pakc(&mut rng, sig, depth, req.max_intervention);
                match req.schema {
                    Schema::T => t(&p),
                    Schema::Four => four(&p),
                    _ => five(&p),
                }
            })
            .collect(),
        Schema::Rp2 | Schema::Rp4 => (0..n)
            .map(|_| {
                let psi = random_pakc(&mut rng, sig, depth, req.max_intervention);
                let p = random_pakc(&mut rng, sig, depth, req.max_intervention);
                if req.schema == Schema::Rp2 {
                    rp2(&psi, &p)
                } else {
                    rp4(&psi, &p)
                }
            })
            .collect(),
    };
    Ok(out)
}
