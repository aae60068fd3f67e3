//! Parser for the polynomial expression syntax.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (['*'] power)*
//! power  := atom ['^' int]
//! atom   := 'x' | 'y' | 'z' | rational | '(' expr ')'
//!         | 'st(' expr ',' expr ')' | 'd' int '(' expr ')' | 'phi(' expr ')'
//!         | 'zm(' ints ')' | 'w(' ints ')'
//! ```
//! `z` stands for `x + y`; `d3` or `d{3}` is the derivation of index 3.

use fmzv_core::{derive, harmonic_product, phi, word_poly, z_monomial, Coeff, Index, Poly};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    X,
    Y,
    Z,
    Num(BigInt, BigInt),
    St,
    Phi,
    Zm,
    W,
    D(u32),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
}

fn err<T>(pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        message: message.into(),
    })
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |start: usize| {
        let mut j = start;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'(' => {
                out.push((i, Tok::LParen));
                i += 1
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1
            }
            b',' => {
                out.push((i, Tok::Comma));
                i += 1
            }
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1
            }
            b'0'..=b'9' => {
                let end = digits(i);
                let num: BigInt = text[i..end].parse().expect("digits");
                let (den, next) = if end < bytes.len() && bytes[end] == b'/' {
                    let dend = digits(end + 1);
                    if dend == end + 1 {
                        return err(end, "expected denominator after `/`");
                    }
                    (text[end + 1..dend].parse().expect("digits"), dend)
                } else {
                    (BigInt::from(1), end)
                };
                if den.is_zero() {
                    return err(end, "zero denominator");
                }
                out.push((i, Tok::Num(num, den)));
                i = next;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let ident = &text[start..i];
                match ident {
                    "st" => out.push((start, Tok::St)),
                    "phi" => out.push((start, Tok::Phi)),
                    "zm" => out.push((start, Tok::Zm)),
                    "w" => out.push((start, Tok::W)),
                    "d" => {
                        let braced = i < bytes.len() && bytes[i] == b'{';
                        let from = if braced { i + 1 } else { i };
                        let end = digits(from);
                        if end == from {
                            return err(from, "expected derivation index after `d`");
                        }
                        let l: u32 = text[from..end].parse().map_err(|_| ParseError {
                            pos: from,
                            message: "derivation index too large".into(),
                        })?;
                        if l == 0 {
                            return err(from, "derivation index must be at least 1");
                        }
                        i = end;
                        if braced {
                            if i >= bytes.len() || bytes[i] != b'}' {
                                return err(i, "expected `}`");
                            }
                            i += 1;
                        }
                        out.push((start, Tok::D(l)));
                    }
                    _ if ident.bytes().all(|b| matches!(b, b'x' | b'y' | b'z')) => {
                        for (k, b) in ident.bytes().enumerate() {
                            let tok = match b {
                                b'x' => Tok::X,
                                b'y' => Tok::Y,
                                _ => Tok::Z,
                            };
                            out.push((start + k, tok));
                        }
                    }
                    _ => return err(start, format!("unknown function name `{}`", ident)),
                }
            }
            _ => return err(i, format!("unexpected character `{}`", c as char)),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        let at = self.offset();
        match self.next() {
            Some(t) if t == tok => Ok(()),
            _ => err(at, format!("expected {}", what)),
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.next();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = acc + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(
                Tok::X
                    | Tok::Y
                    | Tok::Z
                    | Tok::Num(..)
                    | Tok::LParen
                    | Tok::St
                    | Tok::Phi
                    | Tok::Zm
                    | Tok::W
                    | Tok::D(_)
            )
        )
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.peek() == Some(&Tok::Star) {
                self.next();
                acc = acc.concat(&self.power()?);
            } else if self.starts_atom() {
                acc = acc.concat(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.next();
        let at = self.offset();
        match self.next() {
            Some(Tok::Num(n, d)) if d == BigInt::from(1) => {
                let e = n.to_u32().filter(|&e| e <= 64).ok_or_else(|| ParseError {
                    pos: at,
                    message: "exponent out of range".into(),
                })?;
                Ok(base.pow(e))
            }
            _ => err(at, "expected a non-negative integer exponent"),
        }
    }

    fn int_list(&mut self) -> Result<Index, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let mut parts = Vec::new();
        if self.peek() == Some(&Tok::RParen) {
            self.next();
            return Ok(Index::empty());
        }
        loop {
            let at = self.offset();
            match self.next() {
                Some(Tok::Num(n, d)) if d == BigInt::from(1) => match n.to_u32() {
                    Some(k) if k >= 1 => parts.push(k),
                    _ => return err(at, "index parts must be positive integers"),
                },
                _ => return err(at, "expected a positive integer"),
            }
            let at = self.offset();
            match self.next() {
                Some(Tok::Comma) => continue,
                Some(Tok::RParen) => break,
                _ => return err(at, "expected `,` or `)`"),
            }
        }
        Ok(Index::new(parts).expect("parts checked"))
    }

    fn unary_arg(&mut self) -> Result<Poly, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let p = self.expr()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(p)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let at = self.offset();
        match self.next() {
            Some(Tok::X) => Ok(Poly::x()),
            Some(Tok::Y) => Ok(Poly::y()),
            Some(Tok::Z) => Ok(Poly::z()),
            Some(Tok::Num(n, d)) => Ok(Poly::constant(Coeff::new(n, d))),
            Some(Tok::LParen) => {
                let p = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(p)
            }
            Some(Tok::Phi) => Ok(phi(&self.unary_arg()?)),
            Some(Tok::D(l)) => Ok(derive(l, &self.unary_arg()?)),
            Some(Tok::Zm) => Ok(z_monomial(&self.int_list()?)),
            Some(Tok::W) => Ok(word_poly(&self.int_list()?)),
            Some(Tok::St) => {
                self.expect(Tok::LParen, "`(`")?;
                let p = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let q = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                harmonic_product(&p, &q).map_err(|e| ParseError {
                    pos: at,
                    message: e.to_string(),
                })
            }
            Some(_) => err(at, "unexpected token"),
            None => err(at, "unexpected end of input"),
        }
    }
}

/// Parses and fully expands an expression.
pub fn parse_expr(text: &str) -> Result<Poly, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    if parser.peek().is_none() {
        return err(0, "empty expression");
    }
    let p = parser.expr()?;
    if parser.pos < parser.toks.len() {
        return err(parser.offset(), "unexpected trailing input");
    }
    Ok(p)
}
