use std::fmt;

use super::CodFormula;
use crate::causal::Signature;

pub(super) struct Printer<'a> {
    pub(super) f: &'a CodFormula,
    pub(super) sig: &'a Signature,
}

impl fmt::Display for Printer<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(out, self.f, self.sig, 0)
    }
}

fn precedence(f: &CodFormula) -> u8 {
    match f {
        CodFormula::SelImp(..) => 1,
        CodFormula::Or(..) => 2,
        CodFormula::And(..) => 3,
        _ => 4,
    }
}

fn write_formula(
    out: &mut fmt::Formatter<'_>,
    f: &CodFormula,
    sig: &Signature,
    min: u8,
) -> fmt::Result {
    let prec = precedence(f);
    if prec < min {
        out.write_str("(")?;
    }
    match f {
        CodFormula::Eq { var, value } => {
            write!(out, "{}={}", sig.name(*var), sig.value_name(*var, *value))?
        }
        CodFormula::Neq { var, value } => {
            write!(out, "{}!={}", sig.name(*var), sig.value_name(*var, *value))?
        }
        CodFormula::Dep { xs, y } => {
            let xs: Vec<&str> = xs.iter().map(|x| sig.name(*x)).collect();
            write!(out, "dep({}; {})", xs.join(", "), sig.name(*y))?
        }
        CodFormula::And(a, b) | CodFormula::Or(a, b) | CodFormula::SelImp(a, b) => {
            let op = match f {
                CodFormula::And(..) => " & ",
                CodFormula::Or(..) => " \\/ ",
                _ => " |> ",
            };
            write_formula(out, a, sig, prec + 1)?;
            out.write_str(op)?;
            write_formula(out, b, sig, prec)?;
        }
        CodFormula::Cf(bindings, body) => {
            out.write_str("[[")?;
            for (i, &(v, x)) in bindings.iter().enumerate() {
                if i > 0 {
                    out.write_str(", ")?;
                }
                write!(out, "{}:={}", sig.name(v), sig.value_name(v, x))?;
            }
            out.write_str("]] ")?;
            write_formula(out, body, sig, 4)?;
        }
    }
    if prec < min {
        out.write_str(")")?;
    }
    Ok(())
}
