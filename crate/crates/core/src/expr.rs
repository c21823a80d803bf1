//! Expression grammar for elements, and the canonical printer.
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := rational | (rational '*')? factor ('*' factor)*
//! factor := ('x' | 'z') '[' int ',' int ']' ('^' '-'? int)?
//! rational := int ('/' int)?
//! ```
//!
//! Indices are 1-based. Negative exponents are only allowed on `z`.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coha::CohElement;
use crate::error::{Error, Result};
use crate::kha::LaurentElement;
use crate::poly::{Poly, Rational};
use crate::quiver::VarContext;
use crate::series::Series;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub letter: char,
    /// 1-based vertex.
    pub vertex: usize,
    /// 1-based slot.
    pub slot: usize,
    pub exponent: i32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: Rational,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub terms: Vec<Term>,
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser { chars: src.chars().collect(), pos: 0 }
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.location(pos);
        Error::ExprSyntax { line, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.error_at(self.pos, format!("expected '{c}', found '{d}'"))),
            None => Err(self.error_at(self.pos, format!("expected '{c}', found end of input"))),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.chars.get(self.pos) {
                Some(c) => self.error_at(start, format!("expected an integer, found '{c}'")),
                None => self.error_at(start, "expected an integer, found end of input"),
            });
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn small(&mut self, what: &str) -> Result<usize> {
        let start = self.pos;
        let n = self.integer()?;
        usize::try_from(&n).ok().filter(|&v| v >= 1).ok_or_else(|| self.error_at(start, format!("{what} must be a positive index")))
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.integer()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.integer()?;
            if den.is_zero() {
                return Err(self.error_at(at, "zero denominator"));
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn factor(&mut self) -> Result<Factor> {
        let letter = match self.peek() {
            Some(c @ ('x' | 'z')) => {
                self.pos += 1;
                c
            }
            Some(c) => return Err(self.error_at(self.pos, format!("expected 'x[' or 'z[', found '{c}'"))),
            None => return Err(self.error_at(self.pos, "expected a variable, found end of input")),
        };
        self.expect('[')?;
        let vertex = self.small("vertex")?;
        self.expect(',')?;
        let slot = self.small("slot")?;
        self.expect(']')?;
        let mut exponent = 1i32;
        if self.peek() == Some('^') {
            self.pos += 1;
            let negative = if self.peek() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e_at = self.pos;
            let e = self.integer()?;
            let e = i32::try_from(e).map_err(|_| self.error_at(e_at, "exponent out of range"))?;
            exponent = if negative { -e } else { e };
        }
        if letter == 'x' && exponent < 0 {
            return Err(Error::NegativeXExponent { vertex, slot });
        }
        Ok(Factor { letter, vertex, slot, exponent })
    }

    fn term(&mut self, sign: Rational) -> Result<Term> {
        let mut coeff = sign;
        let mut factors = Vec::new();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff *= self.rational()?;
                if self.peek() != Some('*') {
                    return Ok(Term { coeff, factors });
                }
                self.pos += 1;
                factors.push(self.factor()?);
            }
            _ => factors.push(self.factor()?),
        }
        while self.peek() == Some('*') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(Term { coeff, factors })
    }

    fn parse(mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut sign = Rational::one();
        if let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            if c == '-' {
                sign = -sign;
            }
        }
        terms.push(self.term(sign)?);
        loop {
            match self.peek() {
                None => break,
                Some('+') => {
                    self.pos += 1;
                    terms.push(self.term(Rational::one())?);
                }
                Some('-') => {
                    self.pos += 1;
                    terms.push(self.term(-Rational::one())?);
                }
                Some(c) => return Err(self.error_at(self.pos, format!("unexpected '{c}'"))),
            }
        }
        let expr = Expr { terms };
        expr.letter()?;
        Ok(expr)
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    if src.trim().is_empty() {
        return Err(Error::ExprSyntax { line: 1, column: 1, message: "empty expression".into() });
    }
    Parser::new(src).parse()
}

impl Expr {
    /// The variable letter used, or `None` for a constant expression.
    pub fn letter(&self) -> Result<Option<char>> {
        let mut found = None;
        for f in self.terms.iter().flat_map(|t| &t.factors) {
            match found {
                None => found = Some(f.letter),
                Some(l) if l != f.letter => return Err(Error::MixedAlphabet),
                _ => {}
            }
        }
        Ok(found)
    }

    /// Polynomial in the alphabet of `ctx`; every variable must use `letter`.
    pub fn to_poly(&self, ctx: &VarContext, letter: char) -> Result<Poly> {
        if matches!(self.letter()?, Some(l) if l != letter) {
            return Err(Error::MixedAlphabet);
        }
        let dim = ctx.dim();
        let mut out = Poly::zero(ctx.nvars());
        for t in &self.terms {
            let mut exps = vec![0i32; ctx.nvars()];
            for f in &t.factors {
                let (v, s) = (f.vertex - 1, f.slot - 1);
                if v >= dim.len() || s >= dim.get(v) as usize {
                    return Err(Error::IndexOutOfRange { name: f.letter, vertex: f.vertex, slot: f.slot });
                }
                exps[ctx.var(v, s)] += f.exponent;
            }
            out.add_term(exps, t.coeff.clone());
        }
        Ok(out)
    }

    pub fn to_laurent(&self, ctx: &Arc<VarContext>) -> Result<LaurentElement> {
        LaurentElement::new(ctx, self.to_poly(ctx, 'z')?)
    }

    pub fn to_coh(&self, ctx: &Arc<VarContext>) -> Result<CohElement> {
        CohElement::exact(ctx, self.to_poly(ctx, 'x')?)
    }

    pub fn to_series(&self, ctx: &Arc<VarContext>, order: u32) -> Result<Series> {
        Series::from_poly(ctx, self.to_poly(ctx, 'x')?, order)
    }
}

fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// `x[1,1]*x[1,2]^2`, or `1` for the empty monomial.
pub fn format_monomial(ctx: &VarContext, exps: &[i32], letter: char) -> String {
    let mut parts = Vec::new();
    for (k, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = ctx.var_name(k, letter);
        if e == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Canonical rendering: terms by total degree, then lexicographically by
/// exponent vector.
pub fn format_poly(ctx: &VarContext, poly: &Poly, letter: char) -> String {
    let terms = poly.sorted_terms();
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (exps, c)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let constant = exps.iter().all(|&e| e == 0);
        if constant {
            out.push_str(&format_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&format_monomial(ctx, exps, letter));
        } else {
            let _ = write!(out, "{}*{}", format_rational(&abs), format_monomial(ctx, exps, letter));
        }
    }
    out
}
