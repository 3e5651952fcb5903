//! Boolean and value expressions for structural functions, compiled to
//! tables at load time.

use crate::causal::{Signature, ValueId, VarId};
use crate::syntax::{SyntaxError, Tok, Tokens};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Expr {
    Bool(bool),
    Literal(String),
    Var(VarId),
    Cmp {
        var: VarId,
        value: ValueId,
        eq: bool,
    },
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    If(Box<Expr>, Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Val<'a> {
    Bool(bool),
    Token(&'a str),
}

/// ```text
/// expr  := "if" expr "then" expr "else" expr | or
/// or    := and ("|" and)*
/// and   := unary ("&" unary)*
/// unary := "~" unary | "(" expr ")" | VAR "=" VALUE | VAR "!=" VALUE
///        | "true" | "false" | VAR | VALUE
/// ```
pub(crate) fn parse_expr(text: &str, sig: &Signature) -> Result<Expr, SyntaxError> {
    let mut p = Parser {
        toks: Tokens::new(text)?,
        sig,
    };
    let e = p.expr()?;
    p.toks.finish()?;
    Ok(e)
}

struct Parser<'a> {
    toks: Tokens,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn keyword(&mut self, k: &str) -> bool {
        if matches!(self.toks.peek(), Some(Tok::Word(w)) if w == k) {
            self.toks.bump();
            true
        } else {
            false
        }
    }

    fn expect_keyword(&mut self, k: &str) -> Result<(), SyntaxError> {
        if self.keyword(k) {
            Ok(())
        } else {
            Err(self.toks.error(&format!("`{k}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        if self.keyword("if") {
            let c = self.expr()?;
            self.expect_keyword("then")?;
            let t = self.expr()?;
            self.expect_keyword("else")?;
            let e = self.expr()?;
            return Ok(Expr::If(c.into(), t.into(), e.into()));
        }
        let mut lhs = self.and()?;
        while self.toks.eat(&Tok::Pipe) {
            lhs = Expr::Or(lhs.into(), self.and()?.into());
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        while self.toks.eat(&Tok::Amp) {
            lhs = Expr::And(lhs.into(), self.unary()?.into());
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if self.toks.eat(&Tok::Tilde) {
            return Ok(Expr::Not(self.unary()?.into()));
        }
        if self.toks.eat(&Tok::LParen) {
            let e = self.expr()?;
            self.toks.expect(&Tok::RParen)?;
            return Ok(e);
        }
        let (at, word) = self.toks.word("an expression")?;
        match (word.as_str(), self.sig.var(&word)) {
            ("true", None) => Ok(Expr::Bool(true)),
            ("false", None) => Ok(Expr::Bool(false)),
            (_, Some(var)) => {
                let eq = match self.toks.peek() {
                    Some(Tok::Eq) => true,
                    Some(Tok::Neq) => false,
                    _ => return Ok(Expr::Var(var)),
                };
                self.toks.bump();
                let (vat, token) = self.toks.word("a value")?;
                let value = self.sig.value(var, &token).ok_or_else(|| {
                    SyntaxError::new(vat, format!("`{token}` is not in the range of `{word}`"))
                })?;
                Ok(Expr::Cmp { var, value, eq })
            }
            _ if crate::causal::signature::is_value_token(&word) => Ok(Expr::Literal(word)),
            _ => Err(SyntaxError::new(at, format!("unexpected `{word}`"))),
        }
    }
}

impl Expr {
    /// Whether the expression mentions `v`.
    pub(crate) fn mentions(&self, v: VarId) -> bool {
        match self {
            Expr::Bool(_) | Expr::Literal(_) => false,
            Expr::Var(x) | Expr::Cmp { var: x, .. } => *x == v,
            Expr::Not(a) => a.mentions(v),
            Expr::And(a, b) | Expr::Or(a, b) => a.mentions(v) || b.mentions(v),
            Expr::If(c, a, b) => c.mentions(v) || a.mentions(v) || b.mentions(v),
        }
    }

    pub(crate) fn eval<'s>(
        &'s self,
        sig: &'s Signature,
        values: &[ValueId],
    ) -> Result<Val<'s>, String> {
        let boolean = |e: &'s Expr| -> Result<bool, String> {
            match e.eval(sig, values)? {
                Val::Bool(b) => Ok(b),
                Val::Token(t) => Err(format!("expected a condition, found value `{t}`")),
            }
        };
        Ok(match self {
            Expr::Bool(b) => Val::Bool(*b),
            Expr::Literal(t) => Val::Token(t),
            Expr::Var(v) => Val::Token(sig.value_name(*v, values[v.0])),
            Expr::Cmp { var, value, eq } => Val::Bool((values[var.0] == *value) == *eq),
            Expr::Not(a) => Val::Bool(!boolean(a)?),
            Expr::And(a, b) => Val::Bool(boolean(a)? && boolean(b)?),
            Expr::Or(a, b) => Val::Bool(boolean(a)? || boolean(b)?),
            Expr::If(c, a, b) => {
                if boolean(c)? {
                    a.eval(sig, values)?
                } else {
                    b.eval(sig, values)?
                }
            }
        })
    }
}
