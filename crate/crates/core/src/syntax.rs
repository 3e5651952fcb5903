//! Tokenizer shared by the two formula languages.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    /// An identifier or a digit string.
    Word(String),
    Tilde,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Bang,
    Assign,
    Eq,
    Neq,
    Arrow,
    Iff,
    Pipe,
    Amp,
    Comma,
    Semi,
    SplitOr,
    SelImp,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Word(w) => return write!(f, "`{w}`"),
            Tok::Tilde => "~",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Bang => "!",
            Tok::Assign => ":=",
            Tok::Eq => "=",
            Tok::Neq => "!=",
            Tok::Arrow => "->",
            Tok::Iff => "<->",
            Tok::Pipe => "|",
            Tok::Amp => "&",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::SplitOr => "\\/",
            Tok::SelImp => "|>",
        };
        write!(f, "`{s}`")
    }
}

/// A syntax error at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {pos}: {message}")]
pub struct SyntaxError {
    pub pos: usize,
    pub message: String,
}

impl SyntaxError {
    pub(crate) fn new(pos: usize, message: impl Into<String>) -> Self {
        SyntaxError {
            pos,
            message: message.into(),
        }
    }
}

pub(crate) fn lex(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_alphanumeric() {
            let alpha = c.is_ascii_alphabetic();
            while i < bytes.len()
                && (bytes[i].is_ascii_digit()
                    || (alpha && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'_')))
            {
                i += 1;
            }
            out.push((start, Tok::Word(text[start..i].to_string())));
            continue;
        }
        let next = bytes.get(i + 1).copied();
        let (tok, len) = match (c, next) {
            (b':', Some(b'=')) => (Tok::Assign, 2),
            (b'!', Some(b'=')) => (Tok::Neq, 2),
            (b'-', Some(b'>')) => (Tok::Arrow, 2),
            (b'<', Some(b'-')) if bytes.get(i + 2) == Some(&b'>') => (Tok::Iff, 3),
            (b'|', Some(b'>')) => (Tok::SelImp, 2),
            (b'\\', Some(b'/')) => (Tok::SplitOr, 2),
            (b'~', _) => (Tok::Tilde, 1),
            (b'[', _) => (Tok::LBracket, 1),
            (b']', _) => (Tok::RBracket, 1),
            (b'(', _) => (Tok::LParen, 1),
            (b')', _) => (Tok::RParen, 1),
            (b'!', _) => (Tok::Bang, 1),
            (b'=', _) => (Tok::Eq, 1),
            (b'|', _) => (Tok::Pipe, 1),
            (b'&', _) => (Tok::Amp, 1),
            (b',', _) => (Tok::Comma, 1),
            (b';', _) => (Tok::Semi, 1),
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(SyntaxError::new(i, format!("unexpected character `{ch}`")));
            }
        };
        out.push((start, tok));
        i += len;
    }
    Ok(out)
}

/// Cursor over a token stream.
pub(crate) struct Tokens {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Tokens {
    pub(crate) fn new(text: &str) -> Result<Self, SyntaxError> {
        Ok(Tokens {
            toks: lex(text)?,
            pos: 0,
            end: text.len(),
        })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.peek_at(0)
    }

    pub(crate) fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    /// Byte offset of the next token, or the input length at the end.
    pub(crate) fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let tok = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos == self.toks.len()
    }

    pub(crate) fn error(&self, expected: &str) -> SyntaxError {
        let found = match self.peek() {
            Some(t) => t.to_string(),
            None => "end of input".to_string(),
        };
        SyntaxError::new(self.offset(), format!("expected {expected}, found {found}"))
    }

    pub(crate) fn expect(&mut self, tok: &Tok) -> Result<(), SyntaxError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&tok.to_string()))
        }
    }

    /// Consumes a word token, returning it with its offset.
    pub(crate) fn word(&mut self, what: &str) -> Result<(usize, String), SyntaxError> {
        let at = self.offset();
        match self.peek() {
            Some(Tok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok((at, w))
            }
            _ => Err(self.error(what)),
        }
    }

    pub(crate) fn finish(&self) -> Result<(), SyntaxError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_operators() {
        let toks: Vec<Tok> = lex("[B:=1] ~S=1 <-> K x_2 != 0 |> a \\/ b -> c | d & dep(X;Y)")
            .unwrap()
            .into_iter()
            .map(|(_, t)| t)
            .collect();
        assert_eq!(toks[0], Tok::LBracket);
        assert_eq!(toks[1], Tok::Word("B".into()));
        assert_eq!(toks[2], Tok::Assign);
        assert!(toks.contains(&Tok::Iff));
        assert!(toks.contains(&Tok::Neq));
        assert!(toks.contains(&Tok::SelImp));
        assert!(toks.contains(&Tok::SplitOr));
        assert!(toks.contains(&Tok::Semi));
        assert!(toks.contains(&Tok::Word("x_2".into())));
    }

    #[test]
    fn digits_and_identifiers_split() {
        let toks: Vec<Tok> = lex("S=10").unwrap().into_iter().map(|(_, t)| t).collect();
        assert_eq!(
            toks,
            vec![Tok::Word("S".into()), Tok::Eq, Tok::Word("10".into())]
        );
        let err = lex("S = 1 # x").unwrap_err();
        assert_eq!(err.pos, 6);
    }
}
