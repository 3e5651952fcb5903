use std::sync::Arc;

use super::{Formula, FormulaError};
use crate::causal::{InterventionAssignment, Signature, ValueId, VarId};
use crate::syntax::{SyntaxError, Tok, Tokens};

/// Parses a formula over `sig`. Derived connectives are expanded and
/// interventions inside intervention bodies are rejected.
pub fn parse(text: &str, sig: &Signature) -> Result<Formula, FormulaError> {
    let mut p = Parser {
        toks: Tokens::new(text)?,
        sig,
        in_intervention: false,
    };
    let f = p.iff()?;
    p.toks.finish()?;
    Ok(f)
}

struct Parser<'a> {
    toks: Tokens,
    sig: &'a Signature,
    in_intervention: bool,
}

impl Parser<'_> {
    fn iff(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.imp()?;
        if self.toks.eat(&Tok::Iff) {
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.or()?;
        if self.toks.eat(&Tok::Arrow) {
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.and()?;
        if self.toks.eat(&Tok::Pipe) {
            let rhs = self.or()?;
            return Ok(Formula::or(lhs, rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, FormulaError> {
        let lhs = self.unary()?;
        if self.toks.eat(&Tok::Amp) {
            let rhs = self.and()?;
            return Ok(Formula::and(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        match self.toks.peek() {
            Some(Tok::Tilde) => {
                self.toks.bump();
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Word(w)) if w == "K" && self.toks.peek_at(1) != Some(&Tok::Eq) => {
                self.toks.bump();
                Ok(Formula::know(self.unary()?))
            }
            Some(Tok::LParen) => {
                self.toks.bump();
                let f = self.iff()?;
                self.toks.expect(&Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::LBracket) => self.bracket(),
            Some(Tok::Word(_)) => self.atom(),
            _ => Err(self.toks.error("a formula").into()),
        }
    }

    fn bracket(&mut self) -> Result<Formula, FormulaError> {
        let at = self.toks.offset();
        self.toks.expect(&Tok::LBracket)?;
        let bindings = match (self.toks.peek(), self.toks.peek_at(1)) {
            (Some(Tok::RBracket), _) => Some(Vec::new()),
            (Some(Tok::Word(_)), Some(Tok::Assign)) => Some(self.bindings()?),
            _ => None,
        };
        let Some(bindings) = bindings else {
            let psi = self.iff()?;
            self.toks.expect(&Tok::Bang)?;
            self.toks.expect(&Tok::RBracket)?;
            let body = self.unary()?;
            return Ok(Formula::announce(psi, body));
        };
        self.toks.expect(&Tok::RBracket)?;
        let a = InterventionAssignment::new(self.sig, bindings.iter().map(|&(_, v, x)| (v, x)))
            .map_err(|source| FormulaError::Invalid { pos: at, source })?;
        if a.is_empty() {
            return self.unary();
        }
        if self.in_intervention {
            return Err(FormulaError::NestedIntervention { pos: at });
        }
        self.in_intervention = true;
        let body = self.unary();
        self.in_intervention = false;
        Ok(Formula::Intervene(a, Arc::new(body?)))
    }

    fn bindings(&mut self) -> Result<Vec<(usize, VarId, ValueId)>, FormulaError> {
        let mut out = Vec::new();
        loop {
            let (at, var, value) = self.assignment_pair(&Tok::Assign)?;
            out.push((at, var, value));
            if !self.toks.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    }

    fn atom(&mut self) -> Result<Formula, FormulaError> {
        let (_, var, value) = self.assignment_pair(&Tok::Eq)?;
        Ok(Formula::atom(var, value))
    }

    /// `IDENT sep VALUE`, resolved against the signature.
    fn assignment_pair(&mut self, sep: &Tok) -> Result<(usize, VarId, ValueId), FormulaError> {
        let (at, name) = self.toks.word("a variable")?;
        if !name.starts_with(|c: char| c.is_ascii_alphabetic()) {
            return Err(SyntaxError::new(at, format!("`{name}` is not a variable name")).into());
        }
        self.toks.expect(sep)?;
        let (vat, token) = self.toks.word("a value")?;
        let var = self
            .sig
            .require_var(&name)
            .map_err(|source| FormulaError::Invalid { pos: at, source })?;
        let value = self
            .sig
            .require_value(var, &token)
            .map_err(|source| FormulaError::Invalid { pos: vat, source })?;
        Ok((at, var, value))
    }
}
