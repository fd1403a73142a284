//! Recursive-descent parser for the polynomial text grammar:
//!
//! ```text
//! expr     := ['-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := variable | rational | '(' expr ')'
//! rational := int ('/' uint)?
//! variable := [a-zA-Z][a-zA-Z0-9_]*
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use super::{PolyError, Polynomial, Vars};
use crate::numeric::BigRat;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn syntax(offset: usize, message: impl Into<String>) -> PolyError {
    PolyError::Syntax {
        offset,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Num(text[start..i].parse().unwrap()), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(syntax(i, format!("unexpected character {ch:?}")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: Vars,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Polynomial, PolyError> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, PolyError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Tok::Num(n) => {
                let e = u32::try_from(&n).map_err(|_| syntax(at, "exponent too large"))?;
                Ok(base.pow(e))
            }
            _ => Err(syntax(at, "expected unsigned integer exponent")),
        }
    }

    fn base(&mut self) -> Result<Polynomial, PolyError> {
        let at = self.offset();
        match self.bump() {
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(Polynomial::var_at(self.vars.clone(), i)),
                None => Err(PolyError::UnknownVariable(name)),
            },
            Tok::Num(n) => {
                let mut value = BigRat::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dat = self.offset();
                    match self.bump() {
                        Tok::Num(d) if !d.is_zero() => value /= BigRat::from_integer(d),
                        Tok::Num(_) => return Err(syntax(dat, "zero denominator")),
                        _ => return Err(syntax(dat, "expected unsigned integer denominator")),
                    }
                }
                Ok(Polynomial::constant(self.vars.clone(), value))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.offset();
                if self.bump() != Tok::RParen {
                    return Err(syntax(close, "expected ')'"));
                }
                Ok(inner)
            }
            Tok::End => Err(syntax(at, "unexpected end of input")),
            t => Err(syntax(at, format!("unexpected token {t:?}"))),
        }
    }
}

fn run(text: &str, vars: Vars) -> Result<Polynomial, PolyError> {
    let toks = tokenize(text)?;
    let mut parser = Parser { toks, pos: 0, vars };
    let poly = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(syntax(parser.offset(), "trailing input"));
    }
    Ok(poly)
}

/// Parses `text`; the variable list is the sorted set of identifiers used.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, PolyError> {
    let mut names: Vec<String> = tokenize(text)?
        .into_iter()
        .filter_map(|(t, _)| match t {
            Tok::Ident(s) => Some(s),
            _ => None,
        })
        .collect();
    names.sort();
    names.dedup();
    run(text, names.into())
}

/// Parses `text` over a fixed variable list; other identifiers are rejected.
pub fn parse_polynomial_in(text: &str, vars: &Vars) -> Result<Polynomial, PolyError> {
    run(text, vars.clone())
}
