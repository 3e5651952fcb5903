//! Formulas defined by finite expansion over the signature: direct causal
//! effect and the two dependence notions.

use super::{Formula, FormulaError};
use crate::causal::signature::for_each_tuple;
use crate::causal::{CausalError, InterventionAssignment, Signature, ValueId, VarId};

fn ordered_pairs(sig: &Signature, v: VarId) -> Vec<(ValueId, ValueId)> {
    let mut out = Vec::new();
    for a in sig.values(v) {
        for b in sig.values(v).filter(|&b| b != a) {
            out.push((a, b));
        }
    }
    out
}

fn check_cap(what: &'static str, needed: Option<usize>, cap: usize) -> Result<(), FormulaError> {
    match needed {
        Some(n) if n <= cap => Ok(()),
        _ => Err(FormulaError::CapExceeded {
            what,
            needed: needed.map_or_else(|| "overflowing".to_string(), |n| n.to_string()),
            cap,
        }),
    }
}

/// Every tuple of values for `vars`, last variable fastest.
fn tuples(sig: &Signature, vars: &[VarId]) -> Vec<Vec<(VarId, ValueId)>> {
    let ranges: Vec<usize> = vars.iter().map(|&v| sig.range_len(v)).collect();
    let mut out = Vec::new();
    for_each_tuple(&ranges, |t| {
        out.push(vars.iter().copied().zip(t.iter().copied()).collect());
    });
    out
}

/// `X ⇝ Z`: some setting of the remaining variables and two values of `X`
/// lead to two different values of `Z`.
pub fn causes_formula(
    sig: &Signature,
    x: VarId,
    z: VarId,
    cap: usize,
) -> Result<Formula, FormulaError> {
    for v in [x, z] {
        if !sig.contains(v) {
            return Err(CausalError::UnknownVariable(format!("#{}", v.0)).into());
        }
    }
    if x == z {
        return Err(FormulaError::SameVariable(sig.name(x).to_string()));
    }
    let rest: Vec<VarId> = sig.vars().filter(|&v| v != x && v != z).collect();
    let xs = ordered_pairs(sig, x);
    let zs = ordered_pairs(sig, z);
    let needed = sig
        .product_size(&rest)
        .and_then(|n| n.checked_mul(xs.len()))
        .and_then(|n| n.checked_mul(zs.len()));
    check_cap("causal-effect disjunction", needed, cap)?;
    let mut disjuncts = Vec::with_capacity(needed.unwrap_or(0));
    for w in tuples(sig, &rest) {
        for &(x1, x2) in &xs {
            let a1 = InterventionAssignment::from_vec_unchecked([&w[..], &[(x, x1)]].concat());
            let a2 = InterventionAssignment::from_vec_unchecked([&w[..], &[(x, x2)]].concat());
            for &(z1, z2) in &zs {
                disjuncts.push(Formula::and(
                    Formula::intervene(a1.clone(), Formula::atom(z, z1)),
                    Formula::intervene(a2.clone(), Formula::atom(z, z2)),
                ));
            }
        }
    }
    Ok(Formula::disj(disjuncts, sig))
}

fn check_list(sig: &Signature, xs: &[VarId], y: VarId) -> Result<(), FormulaError> {
    if xs.is_empty() {
        return Err(FormulaError::EmptyVariableList);
    }
    for (i, &x) in xs.iter().enumerate() {
        if !sig.contains(x) {
            return Err(CausalError::UnknownVariable(format!("#{}", x.0)).into());
        }
        if xs[..i].contains(&x) {
            return Err(FormulaError::DuplicateVariable(sig.name(x).to_string()));
        }
    }
    if !sig.contains(y) {
        return Err(CausalError::UnknownVariable(format!("#{}", y.0)).into());
    }
    if xs.contains(&y) {
        return Err(FormulaError::TargetInList(sig.name(y).to_string()));
    }
    Ok(())
}

fn dependence(
    sig: &Signature,
    xs: &[VarId],
    y: VarId,
    cap: usize,
    what: &'static str,
    disjunct: impl Fn(&[(VarId, ValueId)], ValueId) -> Formula,
) -> Result<Formula, FormulaError> {
    check_list(sig, xs, y)?;
    let needed = sig
        .product_size(xs)
        .and_then(|n| n.checked_mul(sig.range_len(y)));
    check_cap(what, needed, cap)?;
    let conjuncts = tuples(sig, xs)
        .into_iter()
        .map(|t| Formula::disj(sig.values(y).map(|v| disjunct(&t, v)), sig));
    Ok(Formula::conj(conjuncts, sig))
}

/// `Y` e-depends on `X⃗`: for every observation of `X⃗` the agent would come
/// to know the value of `Y`.
pub fn e_dependence_formula(
    sig: &Signature,
    xs: &[VarId],
    y: VarId,
    cap: usize,
) -> Result<Formula, FormulaError> {
    dependence(sig, xs, y, cap, "e-dependence", |t, v| {
        Formula::know(Formula::announce(
            Formula::atoms_conj(t, sig),
            Formula::know(Formula::atom(y, v)),
        ))
    })
}

/// `Y` c-depends on `X⃗`: after every intervention on `X⃗` the agent would
/// know the value of `Y`.
pub fn c_dependence_formula(
    sig: &Signature,
    xs: &[VarId],
    y: VarId,
    cap: usize,
) -> Result<Formula, FormulaError> {
    dependence(sig, xs, y, cap, "c-dependence", |t, v| {
        Formula::intervene(
            InterventionAssignment::from_vec_unchecked(t.to_vec()),
            Formula::know(Formula::atom(y, v)),
        )
    })
}
