//! Polynomial text grammar: identifiers `[a-zA-Z][a-zA-Z0-9]*`, integer and
//! rational literals `n` or `n/d`, operators `+ - * ^`, parentheses; `*` is
//! mandatory between factors and whitespace is insignificant.
//!
//! Canonical rendering lists terms in descending term order with reduced
//! fractional coefficients; `parse(render(p)) == p`.

use crate::coeff::render_ratio;
use crate::poly::QPoly;
use crate::vars::VarTable;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { offset: usize, name: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Result<Option<(usize, Tok)>, ParseError> {
        self.skip_ws();
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let start = self.pos;
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            b'0'..=b'9' => {
                let n = self.read_int();
                // A rational literal `n/d`: the slash binds only to digits.
                let save = self.pos;
                self.skip_ws();
                if self.pos < self.src.len() && self.src[self.pos] == b'/' {
                    let slash = self.pos;
                    self.pos += 1;
                    self.skip_ws();
                    if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        let d = self.read_int();
                        if d.is_zero() {
                            return Err(ParseError::Syntax {
                                offset: slash,
                                message: "zero denominator".into(),
                            });
                        }
                        Tok::Num(BigRational::new(n, d))
                    } else {
                        return Err(ParseError::Syntax {
                            offset: slash,
                            message: "expected denominator digits after `/`".into(),
                        });
                    }
                } else {
                    self.pos = save;
                    Tok::Num(BigRational::from_integer(n))
                }
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let mut end = self.pos + 1;
                while end < self.src.len()
                    && (self.src[end].is_ascii_alphanumeric())
                {
                    end += 1;
                }
                let name = std::str::from_utf8(&self.src[self.pos..end]).unwrap().to_string();
                self.pos = end;
                Tok::Ident(name)
            }
            _ => {
                return Err(ParseError::Syntax {
                    offset: start,
                    message: format!("unexpected character `{}`", c as char),
                })
            }
        };
        Ok(Some((start, tok)))
    }

    fn read_int(&mut self) -> BigInt {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        BigInt::from_str(std::str::from_utf8(&self.src[start..self.pos]).unwrap()).unwrap()
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    cursor: usize,
    end: usize,
    vars: Arc<VarTable>,
}

impl Parser {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.cursor)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.cursor).cloned();
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn err_here(&self, message: &str) -> ParseError {
        let offset = self.peek().map(|(o, _)| *o).unwrap_or(self.end);
        ParseError::Syntax { offset, message: message.into() }
    }

    fn expr(&mut self) -> Result<QPoly, ParseError> {
        let mut negate = false;
        // Leading sign(s).
        while let Some((_, tok)) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.bump();
                }
                Tok::Minus => {
                    negate = !negate;
                    self.bump();
                }
                _ => break,
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        while let Some((_, tok)) = self.peek() {
            match tok {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<QPoly, ParseError> {
        let mut acc = self.factor()?;
        while let Some((_, Tok::Star)) = self.peek() {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<QPoly, ParseError> {
        let base = self.atom()?;
        if let Some((_, Tok::Caret)) = self.peek() {
            self.bump();
            match self.bump() {
                Some((_, Tok::Num(n))) if n.is_integer() && !n.is_negative() => {
                    let e = n
                        .to_integer()
                        .try_into()
                        .map_err(|_| self.err_here("exponent too large"))?;
                    Ok(base.pow(e))
                }
                Some((o, _)) => Err(ParseError::Syntax {
                    offset: o,
                    message: "expected non-negative integer exponent".into(),
                }),
                None => Err(self.err_here("expected exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<QPoly, ParseError> {
        match self.bump() {
            Some((_, Tok::Num(n))) => Ok(QPoly::constant_ratio(&self.vars, n)),
            Some((o, Tok::Ident(name))) => {
                if self.vars.position(&name).is_none() {
                    return Err(ParseError::UnknownIdentifier { offset: o, name });
                }
                Ok(QPoly::var_q(&self.vars, &name))
            }
            Some((_, Tok::LParen)) => {
                let e = self.expr()?;
                match self.bump() {
                    Some((_, Tok::RParen)) => Ok(e),
                    Some((o, _)) => {
                        Err(ParseError::Syntax { offset: o, message: "expected `)`".into() })
                    }
                    None => Err(self.err_here("unbalanced parenthesis")),
                }
            }
            Some((_, Tok::Minus)) => Ok(self.atom()?.neg()),
            Some((o, t)) => Err(ParseError::Syntax {
                offset: o,
                message: format!("unexpected token {t:?}"),
            }),
            None => Err(self.err_here("unexpected end of input")),
        }
    }
}

/// Parse a polynomial in the crate grammar over the given variable table.
pub fn parse_poly(text: &str, vars: &Arc<VarTable>) -> Result<QPoly, ParseError> {
    let mut lx = Lexer::new(text);
    let mut toks = Vec::new();
    while let Some(t) = lx.next()? {
        toks.push(t);
    }
    let mut p = Parser { toks, cursor: 0, end: text.len(), vars: vars.clone() };
    let poly = p.expr()?;
    if p.cursor != p.toks.len() {
        return Err(p.err_here("trailing input"));
    }
    Ok(poly)
}

/// Canonical rendering: descending term order, reduced fractions, `*` between
/// factors, `^` for powers.
pub fn render_poly(p: &QPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c.clone() } else { c.clone() };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || m.is_one() {
            factors.push(render_ratio(&abs));
        }
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if e == 1 {
                factors.push(p.vars().name(i).to_string());
            } else {
                factors.push(format!("{}^{}", p.vars().name(i), e));
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::big_int_rat;

    fn tbl() -> Arc<VarTable> {
        VarTable::new(&["a02", "a03", "b20", "b11", "b02", "b21", "b12", "b30", "x", "y"])
    }

    #[test]
    fn parses_published_j1() {
        let t = tbl();
        let p = parse_poly("2*a02*b02 - b02*b11 - b11*b20 + b21", &t).unwrap();
        assert_eq!(p.num_terms(), 4);
        // Canonical rendering round-trips (the term sequence follows the
        // grevlex order, not the print order of the source).
        assert_eq!(parse_poly(&render_poly(&p), &t).unwrap(), p);
    }

    #[test]
    fn zero_literal() {
        let t = tbl();
        assert!(parse_poly("0", &t).unwrap().is_zero());
    }

    #[test]
    fn binomial_identity_cancels() {
        let t = tbl();
        let p = parse_poly("(x+y)^2 - x^2 - 2*x*y - y^2", &t).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn rational_literals() {
        let t = tbl();
        let p = parse_poly("1/2*x + 3/4", &t).unwrap();
        assert_eq!(render_poly(&p), "1/2*x + 3/4");
    }

    #[test]
    fn unknown_identifier_offset() {
        let t = tbl();
        match parse_poly("x + foo", &t) {
            Err(ParseError::UnknownIdentifier { offset, name }) => {
                assert_eq!(offset, 4);
                assert_eq!(name, "foo");
            }
            other => panic!("expected unknown identifier, got {other:?}"),
        }
    }

    #[test]
    fn syntax_error_offset() {
        let t = tbl();
        match parse_poly("x + ?", &t) {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unary_minus_and_constants() {
        let t = tbl();
        let p = parse_poly("-x^2 + -3", &t).unwrap();
        assert_eq!(
            p,
            QPoly::var_q(&t, "x").pow(2).neg().sub(&QPoly::constant(&t, big_int_rat(3)))
        );
        assert_eq!(render_poly(&p), "-x^2 - 3");
    }
}
