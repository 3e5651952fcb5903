use super::{CodFormula, TeamError};
use crate::causal::{Signature, ValueId, VarId};
use crate::syntax::{SyntaxError, Tok, Tokens};

/// Parses a causal team formula over `sig`.
///
/// ```text
/// formula := or ("|>" formula)?
/// or      := and ("\/" or)?
/// and     := unary ("&" and)?
/// unary   := "[[" bindings "]]" unary | "(" formula ")" | atom
/// atom    := "dep" "(" vars ";" IDENT ")" | IDENT "=" VALUE | IDENT "!=" VALUE
/// ```
pub fn parse_cod(text: &str, sig: &Signature) -> Result<CodFormula, TeamError> {
    let mut p = Parser {
        toks: Tokens::new(text)?,
        sig,
    };
    let f = p.sel_imp()?;
    p.toks.finish()?;
    Ok(f)
}

struct Parser<'a> {
    toks: Tokens,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn sel_imp(&mut self) -> Result<CodFormula, TeamError> {
        let lhs = self.or()?;
        if self.toks.eat(&Tok::SelImp) {
            if lhs.has_dependence() {
                return Err(TeamError::DependenceInAntecedent);
            }
            let rhs = self.sel_imp()?;
            return Ok(CodFormula::sel_imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<CodFormula, TeamError> {
        let lhs = self.and()?;
        if self.toks.eat(&Tok::SplitOr) {
            let rhs = self.or()?;
            return Ok(CodFormula::or(lhs, rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<CodFormula, TeamError> {
        let lhs = self.unary()?;
        if self.toks.eat(&Tok::Amp) {
            let rhs = self.and()?;
            return Ok(CodFormula::and(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<CodFormula, TeamError> {
        match self.toks.peek() {
            Some(Tok::LBracket) => {
                self.toks.bump();
                self.toks.expect(&Tok::LBracket)?;
                let mut bindings = Vec::new();
                if self.toks.peek() != Some(&Tok::RBracket) {
                    loop {
                        bindings.push(self.pair(&Tok::Assign)?.1);
                        if !self.toks.eat(&Tok::Comma) {
                            break;
                        }
                    }
                }
                self.toks.expect(&Tok::RBracket)?;
                self.toks.expect(&Tok::RBracket)?;
                let body = self.unary()?;
                Ok(CodFormula::cf(bindings, body))
            }
            Some(Tok::LParen) => {
                self.toks.bump();
                let f = self.sel_imp()?;
                self.toks.expect(&Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Word(w)) if w == "dep" && self.toks.peek_at(1) == Some(&Tok::LParen) => {
                self.dep()
            }
            Some(Tok::Word(_)) => {
                let neq = self.toks.peek_at(1) == Some(&Tok::Neq);
                let sep = if neq { Tok::Neq } else { Tok::Eq };
                let (_, (var, value)) = self.pair(&sep)?;
                Ok(if neq {
                    CodFormula::neq(var, value)
                } else {
                    CodFormula::eq(var, value)
                })
            }
            _ => Err(self.toks.error("a formula").into()),
        }
    }

    fn dep(&mut self) -> Result<CodFormula, TeamError> {
        self.toks.bump();
        self.toks.expect(&Tok::LParen)?;
        let mut xs = Vec::new();
        if self.toks.peek() != Some(&Tok::Semi) {
            loop {
                let (at, x) = self.var()?;
                if xs.contains(&x) {
                    return Err(SyntaxError::new(
                        at,
                        format!("`{}` listed twice", self.sig.name(x)),
                    )
                    .into());
                }
                xs.push(x);
                if !self.toks.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        self.toks.expect(&Tok::Semi)?;
        let (_, y) = self.var()?;
        self.toks.expect(&Tok::RParen)?;
        Ok(CodFormula::dep(xs, y))
    }

    fn var(&mut self) -> Result<(usize, VarId), TeamError> {
        let (at, name) = self.toks.word("a variable")?;
        let v = self
            .sig
            .require_var(&name)
            .map_err(|source| TeamError::Invalid { pos: at, source })?;
        Ok((at, v))
    }

    fn pair(&mut self, sep: &Tok) -> Result<(usize, (VarId, ValueId)), TeamError> {
        let (at, var) = self.var()?;
        self.toks.expect(sep)?;
        let (vat, token) = self.toks.word("a value")?;
        let value = self
            .sig
            .require_value(var, &token)
            .map_err(|source| TeamError::Invalid { pos: vat, source })?;
        Ok((at, (var, value)))
    }
}
