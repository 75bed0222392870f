//! Text form of polynomials.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := rational | ident | '(' expr ')'
//! rational := uint ('/' uint)?
//! ```
//!
//! Multiplication is always explicit (`2*t`, never `2t`). Errors carry the
//! byte offset of the offending token.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::poly::{Polynomial, Rational};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Int(n) => format!("number {n}"),
        Tok::Ident(s) => format!("identifier {s}"),
        Tok::Plus => "'+'".to_string(),
        Tok::Minus => "'-'".to_string(),
        Tok::Star => "'*'".to_string(),
        Tok::Slash => "'/'".to_string(),
        Tok::Caret => "'^'".to_string(),
        Tok::LParen => "'('".to_string(),
        Tok::RParen => "')'".to_string(),
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, Error> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            b'/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            b'^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = input[start..i].parse().expect("digit run parses");
                toks.push((start, Tok::Int(n)));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(input[start..i].to_string())));
            }
            _ => {
                return Err(Error::SyntaxError {
                    position: i,
                    message: format!("unexpected character {:?}", b as char),
                });
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ring: &'a Arc<Ring>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_uint(&mut self, what: &str) -> Result<BigInt, Error> {
        let position = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(n),
            Some(tok) => Err(Error::SyntaxError {
                position,
                message: format!("expected {what}, found {}", describe(&tok)),
            }),
            None => Err(Error::SyntaxError {
                position,
                message: format!("expected {what}, found end of input"),
            }),
        }
    }

    fn expr(&mut self) -> Result<Polynomial, Error> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                negate = true;
            }
            Some(Tok::Plus) => {
                self.bump();
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, Error> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, Error> {
        let base = self.base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let position = self.here();
            let e = self.expect_uint("an exponent")?;
            let e: u32 = e.try_into().map_err(|_| Error::SyntaxError {
                position,
                message: "exponent too large".to_string(),
            })?;
            return Ok(base.pow(e as u64));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial, Error> {
        let position = self.here();
        match self.bump() {
            Some(Tok::Int(numer)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let dpos = self.here();
                    let denom = self.expect_uint("a denominator")?;
                    if denom.is_zero() {
                        return Err(Error::SyntaxError {
                            position: dpos,
                            message: "zero denominator".to_string(),
                        });
                    }
                    Ok(Polynomial::constant(self.ring, Rational::new(numer, denom)))
                } else {
                    Ok(Polynomial::constant(self.ring, Rational::from(numer)))
                }
            }
            Some(Tok::Ident(name)) => match self.ring.index_of(&name) {
                Some(i) => Ok(Polynomial::var(self.ring, i)),
                None => Err(Error::UnknownVariable { name }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let cpos = self.here();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    Some(tok) => Err(Error::SyntaxError {
                        position: cpos,
                        message: format!("expected ')', found {}", describe(&tok)),
                    }),
                    None => Err(Error::SyntaxError {
                        position: cpos,
                        message: "expected ')', found end of input".to_string(),
                    }),
                }
            }
            Some(tok) => Err(Error::SyntaxError {
                position,
                message: format!("expected a term, found {}", describe(&tok)),
            }),
            None => Err(Error::SyntaxError {
                position,
                message: "expected a term, found end of input".to_string(),
            }),
        }
    }
}

pub fn parse_polynomial(input: &str, ring: &Arc<Ring>) -> Result<Polynomial, Error> {
    let toks = lex(input)?;
    let mut parser = Parser { toks, pos: 0, end: input.len(), ring };
    let poly = parser.expr()?;
    if let Some(tok) = parser.peek() {
        return Err(Error::SyntaxError {
            position: parser.here(),
            message: format!("unexpected {} after expression", describe(tok)),
        });
    }
    Ok(poly)
}

/// Parse a standalone rational number, e.g. `3`, `-1/2`.
pub fn parse_rational(input: &str) -> Result<Rational, Error> {
    let toks = lex(input)?;
    let end = input.len();
    let mut pos = 0;
    let mut negate = false;
    if matches!(toks.get(pos).map(|(_, t)| t), Some(Tok::Minus)) {
        negate = true;
        pos += 1;
    }
    let numer = match toks.get(pos) {
        Some((_, Tok::Int(n))) => n.clone(),
        other => {
            return Err(Error::SyntaxError {
                position: other.map(|(p, _)| *p).unwrap_or(end),
                message: "expected a number".to_string(),
            });
        }
    };
    pos += 1;
    let mut denom = BigInt::from(1);
    if matches!(toks.get(pos).map(|(_, t)| t), Some(Tok::Slash)) {
        pos += 1;
        match toks.get(pos) {
            Some((p, Tok::Int(d))) => {
                if d.is_zero() {
                    return Err(Error::SyntaxError {
                        position: *p,
                        message: "zero denominator".to_string(),
                    });
                }
                denom = d.clone();
                pos += 1;
            }
            other => {
                return Err(Error::SyntaxError {
                    position: other.map(|(p, _)| *p).unwrap_or(end),
                    message: "expected a denominator".to_string(),
                });
            }
        }
    }
    if let Some((p, tok)) = toks.get(pos) {
        return Err(Error::SyntaxError {
            position: *p,
            message: format!("unexpected {} after number", describe(tok)),
        });
    }
    let q = Rational::new(numer, denom);
    Ok(if negate { -q } else { q })
}
