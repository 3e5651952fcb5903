use std::fmt;

use super::Formula;
use crate::causal::Signature;

pub(super) struct Printer<'a> {
    pub(super) f: &'a Formula,
    pub(super) sig: &'a Signature,
}

impl fmt::Display for Printer<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(out, self.f, self.sig, 0)
    }
}

const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const PREFIX: u8 = 4;

/// `~(~a & ~b)` is shown as `a | b` and `~(a & ~b)` as `a -> b`.
fn sugar(f: &Formula) -> Option<(u8, &Formula, &Formula)> {
    let Formula::Not(inner) = f else { return None };
    let Formula::And(a, b) = &**inner else {
        return None;
    };
    let Formula::Not(b) = &**b else { return None };
    match &**a {
        Formula::Not(a) => Some((OR, a, b)),
        _ => Some((IMP, a, b)),
    }
}

/// Writes `f` in a context that binds at least as tightly as `min`; binary
/// operators are right associative.
fn write_formula(
    out: &mut fmt::Formatter<'_>,
    f: &Formula,
    sig: &Signature,
    min: u8,
) -> fmt::Result {
    if let Some((prec, a, b)) = sugar(f) {
        return binary(
            out,
            sig,
            min,
            prec,
            a,
            if prec == OR { " | " } else { " -> " },
            b,
        );
    }
    match f {
        Formula::Atom { var, value } => {
            write!(out, "{}={}", sig.name(*var), sig.value_name(*var, *value))
        }
        Formula::Not(a) => {
            out.write_str("~")?;
            write_formula(out, a, sig, PREFIX)
        }
        Formula::And(a, b) => binary(out, sig, min, AND, a, " & ", b),
        Formula::Know(a) => {
            out.write_str("K ")?;
            write_formula(out, a, sig, PREFIX)
        }
        Formula::Announce(psi, body) => {
            out.write_str("[")?;
            write_formula(out, psi, sig, 0)?;
            out.write_str(" !] ")?;
            write_formula(out, body, sig, PREFIX)
        }
        Formula::Intervene(a, body) if a.is_empty() => write_formula(out, body, sig, min),
        Formula::Intervene(a, body) => {
            write!(out, "{} ", a.display(sig))?;
            write_formula(out, body, sig, PREFIX)
        }
    }
}

fn binary(
    out: &mut fmt::Formatter<'_>,
    sig: &Signature,
    min: u8,
    prec: u8,
    a: &Formula,
    op: &str,
    b: &Formula,
) -> fmt::Result {
    let paren = prec < min;
    if paren {
        out.write_str("(")?;
    }
    write_formula(out, a, sig, prec + 1)?;
    out.write_str(op)?;
    write_formula(out, b, sig, prec)?;
    if paren {
        out.write_str(")")?;
    }
    Ok(())
}
