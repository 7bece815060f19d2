//! Reader for the polynomial and form text grammar.
//!
//! Accepts sums of products of rational constants, ring variables,
//! differentials `dx` and parenthesised sub-expressions, with `^` used both
//! for integer powers (`x^2`) and for wedges of differentials (`dx^dy`).
//! Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Form, Poly, Rational, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
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
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Lexer> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            toks.push((Tok::Num(s.parse().expect("digits")), col));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let t = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(Error::parse(line, col, format!("unexpected character `{other}`")))
            }
        };
        toks.push((t, col));
        i += 1;
    }
    Ok(Lexer { toks })
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.line, self.col(), msg))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Form> {
        let n = self.ring.len();
        let mut acc: Option<Form> = None;
        let mut sign = 1i64;
        match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
            }
            Some(Tok::Minus) => {
                self.bump();
                sign = -1;
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            let t = if sign < 0 { -t } else { t };
            acc = Some(match acc {
                None => t,
                Some(a) => {
                    let col = self.col();
                    a.checked_add(&t)
                        .map_err(|_| Error::parse(self.line, col, "terms of different form degree"))?
                }
            });
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    sign = 1;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    sign = -1;
                }
                _ => break,
            }
        }
        Ok(acc.unwrap_or_else(|| Form::zero(n, 0)))
    }

    fn term(&mut self) -> Result<Form> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = acc.wedge(&rhs)?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            acc = acc.scale(&Rational::new(1.into(), d));
                        }
                        _ => {
                            self.pos -= 1;
                            return self.err("expected a nonzero integer after `/`");
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Form> {
        let mut base = self.atom()?;
        while let Some(Tok::Caret) = self.peek() {
            self.bump();
            match self.peek().cloned() {
                Some(Tok::Num(e)) => {
                    if base.degree() > 0 && !base.is_zero() {
                        return self.err("powers apply to functions, not forms");
                    }
                    self.bump();
                    let e: u32 = match e.try_into() {
                        Ok(e) => e,
                        Err(_) => return self.err("exponent too large"),
                    };
                    let p = base.to_poly().expect("degree 0");
                    base = Form::from_poly(p.pow(e));
                }
                Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    // `dx^dy`: wedge
                    let rhs = self.atom()?;
                    if rhs.degree() == 0 {
                        return self.err("`^` between non-forms needs an integer exponent");
                    }
                    base = base.wedge(&rhs)?;
                }
                _ => return self.err("expected exponent or differential after `^`"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Form> {
        let n = self.ring.len();
        let col = self.col();
        match self.bump() {
            Some(Tok::Num(v)) => Ok(Form::from_poly(Poly::constant(n, Rational::from_integer(v)))),
            Some(Tok::Ident(name)) => {
                if let Some(i) = self.ring.index(&name) {
                    return Ok(Form::from_poly(Poly::var(n, i)));
                }
                if let Some(rest) = name.strip_prefix('d') {
                    if let Some(i) = self.ring.index(rest) {
                        return Ok(Form::dx(n, i));
                    }
                }
                Err(Error::parse(self.line, col, format!("unknown identifier `{name}`")))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        self.err("expected `)`")
                    }
                }
            }
            Some(_) => {
                self.pos -= 1;
                self.err("expected a number, variable, differential or `(`")
            }
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a form, reporting positions relative to `line` and the column
/// offset `col0` of `text` within that line.
pub fn parse_form_at(ring: &Ring, text: &str, line: usize, col0: usize) -> Result<Form> {
    let lexer = lex(text, line, col0)?;
    let end_col = col0 + text.chars().count() + 1;
    let mut p = Parser {
        ring,
        toks: lexer.toks,
        pos: 0,
        line,
        end_col,
    };
    if p.toks.is_empty() {
        return p.err("empty expression");
    }
    let f = p.expr()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(f)
}

pub fn parse_form(ring: &Ring, text: &str) -> Result<Form> {
    parse_form_at(ring, text, 1, 0)
}

pub fn parse_poly_at(ring: &Ring, text: &str, line: usize, col0: usize) -> Result<Poly> {
    let f = parse_form_at(ring, text, line, col0)?;
    f.to_poly()
        .ok_or_else(|| Error::parse(line, col0 + 1, "expected a polynomial, found a form"))
}

pub fn parse_poly(ring: &Ring, text: &str) -> Result<Poly> {
    parse_poly_at(ring, text, 1, 0)
}
