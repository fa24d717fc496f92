//! Text syntax for Laurent polynomials, rational functions, and
//! quadratic-extension scalars.
//!
//! Monomials are written `c*t1^a1*t2^a2*...`; exponents may be negative,
//! `^1` may be omitted, whitespace is insignificant. Quotients use
//! parenthesized numerator and denominator, radical parts use the
//! literal token `sqrtD`. Printing is canonical (terms in descending
//! lexicographic order) and parsing a printed value reproduces it
//! exactly.

use super::{ExponentVector, LaurentPoly, QuadExtScalar, Rational, RationalFunction};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
enum Token {
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    SqrtD,
    Int(BigInt),
    Var(usize),
}

fn lex(s: &str) -> Result<Vec<Token>> {
    let bytes = s.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                toks.push(Token::Plus);
                i += 1;
            }
            b'-' => {
                toks.push(Token::Minus);
                i += 1;
            }
            b'*' => {
                toks.push(Token::Star);
                i += 1;
            }
            b'/' => {
                toks.push(Token::Slash);
                i += 1;
            }
            b'^' => {
                toks.push(Token::Caret);
                i += 1;
            }
            b'(' => {
                toks.push(Token::LParen);
                i += 1;
            }
            b')' => {
                toks.push(Token::RParen);
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &s[start..i];
                let n: BigInt = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer literal {text:?}")))?;
                toks.push(Token::Int(n));
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric()) {
                    i += 1;
                }
                let word = &s[start..i];
                if word == "sqrtD" {
                    toks.push(Token::SqrtD);
                } else if let Some(rest) = word.strip_prefix('t') {
                    let idx: usize = rest.parse().map_err(|_| {
                        Error::Parse(format!("bad variable name {word:?}, expected t1, t2, ..."))
                    })?;
                    if idx == 0 {
                        return Err(Error::Parse("variable indices start at t1".into()));
                    }
                    toks.push(Token::Var(idx - 1));
                } else {
                    return Err(Error::Parse(format!("unknown symbol {word:?}")));
                }
            }
            _ => {
                return Err(Error::Parse(format!(
                    "unexpected character {:?} at byte {}",
                    b as char, i
                )))
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    nvars: usize,
}

impl Parser {
    fn new(s: &str, nvars: usize) -> Result<Self> {
        Ok(Parser {
            toks: lex(s)?,
            pos: 0,
            nvars,
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn peek2(&self) -> Option<&Token> {
        self.toks.get(self.pos + 1)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Token) -> Result<()> {
        match self.next() {
            Some(ref t) if t == want => Ok(()),
            other => Err(Error::Parse(format!(
                "expected {want:?}, found {other:?}"
            ))),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    /// Signed integer: optional `-` then digits.
    fn signed_int(&mut self) -> Result<i64> {
        let neg = matches!(self.peek(), Some(Token::Minus));
        if neg {
            self.next();
        }
        match self.next() {
            Some(Token::Int(n)) => {
                let v: i64 = (&n)
                    .try_into()
                    .map_err(|_| Error::Parse(format!("exponent {n} out of range")))?;
                Ok(if neg { -v } else { v })
            }
            other => Err(Error::Parse(format!("expected integer, found {other:?}"))),
        }
    }

    /// One monomial factor: a rational constant or a variable power.
    /// Returns its contribution as (coefficient, exponent).
    fn factor(&mut self) -> Result<(Rational, ExponentVector)> {
        match self.next() {
            Some(Token::Int(n)) => {
                // Lookahead: `a/b` is a rational coefficient only when a
                // denominator literal follows; otherwise the slash
                // belongs to an enclosing quotient.
                if matches!(self.peek(), Some(Token::Slash))
                    && matches!(self.peek2(), Some(Token::Int(_)))
                {
                    self.next();
                    let Some(Token::Int(d)) = self.next() else {
                        unreachable!()
                    };
                    if d.is_zero() {
                        return Err(Error::Parse("zero denominator in coefficient".into()));
                    }
                    Ok((Rational::new(n, d), ExponentVector::zero(self.nvars)))
                } else {
                    Ok((Rational::from(n), ExponentVector::zero(self.nvars)))
                }
            }
            Some(Token::Var(v)) => {
                if v >= self.nvars {
                    return Err(Error::Parse(format!(
                        "variable t{} out of range, context has {} variables",
                        v + 1,
                        self.nvars
                    )));
                }
                let mut k = 1i64;
                if matches!(self.peek(), Some(Token::Caret)) {
                    self.next();
                    k = self.signed_int()?;
                }
                let mut e = ExponentVector::zero(self.nvars);
                e.0[v] = k;
                Ok((Rational::one(), e))
            }
            other => Err(Error::Parse(format!(
                "expected a coefficient or variable, found {other:?}"
            ))),
        }
    }

    /// One term: factors joined by `*`. Stops before `*sqrtD`.
    fn term(&mut self) -> Result<(Rational, ExponentVector)> {
        let (mut c, mut e) = self.factor()?;
        loop {
            match (self.peek(), self.peek2()) {
                (Some(Token::Star), Some(Token::SqrtD)) => break,
                (Some(Token::Star), _) => {
                    self.next();
                    let (c2, e2) = self.factor()?;
                    c *= c2;
                    e = e.add(&e2);
                }
                _ => break,
            }
        }
        Ok((c, e))
    }

    /// Scans the term starting `offset` tokens ahead; true when it ends
    /// in `*sqrtD`, in which case it belongs to the enclosing scalar
    /// grammar, not to a polynomial sum. A `-` only continues the term
    /// right after `^`.
    fn term_ahead_is_radical(&self, offset: usize) -> bool {
        let mut i = self.pos + offset;
        let mut prev_caret = false;
        loop {
            match self.toks.get(i) {
                Some(Token::SqrtD) => return true,
                Some(Token::Caret) => prev_caret = true,
                Some(Token::Minus) if prev_caret => prev_caret = false,
                Some(Token::Int(_) | Token::Var(_) | Token::Star | Token::Slash) => {
                    prev_caret = false
                }
                _ => return false,
            }
            i += 1;
        }
    }

    /// A polynomial: signed terms. Stops before any sign whose term
    /// cannot be parsed at polynomial level (a parenthesized quotient or
    /// a radical term), leaving it to the caller.
    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(self.nvars);
        let mut first = true;
        loop {
            let sign = match (self.peek(), self.peek2()) {
                (Some(Token::Plus), Some(Token::Int(_) | Token::Var(_)))
                    if !self.term_ahead_is_radical(1) =>
                {
                    self.next();
                    Rational::one()
                }
                (Some(Token::Minus), Some(Token::Int(_) | Token::Var(_)))
                    if !self.term_ahead_is_radical(1) =>
                {
                    self.next();
                    -Rational::one()
                }
                _ if first => Rational::one(),
                _ => break,
            };
            let (c, e) = self.term()?;
            out.add_term(e, sign * c);
            first = false;
        }
        Ok(out)
    }

    /// Quotient atom: parenthesized quotient expression or bare polynomial.
    fn rf_atom(&mut self) -> Result<RationalFunction> {
        if matches!(self.peek(), Some(Token::LParen)) {
            self.next();
            let inner = self.rf_expr()?;
            self.expect(&Token::RParen)?;
            Ok(inner)
        } else {
            Ok(RationalFunction::from_poly(self.poly()?))
        }
    }

    /// Quotient expression: `atom` or `atom / atom`.
    fn rf_expr(&mut self) -> Result<RationalFunction> {
        let num = self.rf_atom()?;
        if matches!(self.peek(), Some(Token::Slash)) {
            self.next();
            let den = self.rf_atom()?;
            num.div(&den)
        } else {
            Ok(num)
        }
    }

    /// One summand of a scalar: a quotient expression, optionally times
    /// `sqrtD`, or a bare `sqrtD`.
    fn quad_term(&mut self) -> Result<(bool, RationalFunction)> {
        if matches!(self.peek(), Some(Token::SqrtD)) {
            self.next();
            return Ok((true, RationalFunction::one(self.nvars)));
        }
        let value = self.rf_expr()?;
        if matches!(self.peek(), Some(Token::Star)) && matches!(self.peek2(), Some(Token::SqrtD)) {
            self.next();
            self.next();
            Ok((true, value))
        } else {
            Ok((false, value))
        }
    }
}

/// Parses a Laurent polynomial in `nvars` variables.
pub fn parse_poly(s: &str, nvars: usize) -> Result<LaurentPoly> {
    let mut p = Parser::new(s, nvars)?;
    let out = p.poly()?;
    if !p.at_end() {
        return Err(Error::Parse(format!(
            "trailing input after polynomial: {:?}",
            p.peek()
        )));
    }
    Ok(out)
}

/// Parses a rational function in `nvars` variables.
pub fn parse_ratfun(s: &str, nvars: usize) -> Result<RationalFunction> {
    let mut p = Parser::new(s, nvars)?;
    let out = p.rf_expr()?;
    if !p.at_end() {
        return Err(Error::Parse(format!(
            "trailing input after rational function: {:?}",
            p.peek()
        )));
    }
    Ok(out)
}

/// Parses a scalar `a + b*sqrtD`. `disc` supplies the meaning of
/// `sqrtD`; using `sqrtD` with no discriminant declared is an error.
pub fn parse_quadext(
    s: &str,
    nvars: usize,
    disc: Option<&LaurentPoly>,
) -> Result<QuadExtScalar> {
    let mut p = Parser::new(s, nvars)?;
    let mut rat = RationalFunction::zero(nvars);
    let mut rad = RationalFunction::zero(nvars);
    let mut first = true;
    loop {
        let negate = match p.peek() {
            Some(Token::Plus) => {
                p.next();
                false
            }
            Some(Token::Minus) => {
                p.next();
                true
            }
            None if first => break,
            _ if first => false,
            None => break,
            other => {
                return Err(Error::Parse(format!(
                    "expected + or - between scalar terms, found {other:?}"
                )))
            }
        };
        let (is_radical, value) = p.quad_term()?;
        let value = if negate { value.negate() } else { value };
        if is_radical {
            rad = rad.add(&value);
        } else {
            rat = rat.add(&value);
        }
        first = false;
    }
    if !p.at_end() {
        return Err(Error::Parse(format!(
            "trailing input after scalar: {:?}",
            p.peek()
        )));
    }
    if !rad.is_zero() && disc.is_none() {
        return Err(Error::Parse(
            "sqrtD used but no discriminant is declared in this context".into(),
        ));
    }
    QuadExtScalar::with_parts(rat, rad, disc.cloned())
}

fn print_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical polynomial printer: descending lexicographic term order.
pub(crate) fn print_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag = c.abs();
        let mut pieces: Vec<String> = Vec::new();
        if !mag.is_one() || e.is_zero() {
            pieces.push(print_rational(&mag));
        }
        for (v, &k) in e.entries().iter().enumerate() {
            if k == 0 {
                continue;
            }
            if k == 1 {
                pieces.push(format!("t{}", v + 1));
            } else {
                pieces.push(format!("t{}^{}", v + 1, k));
            }
        }
        out.push_str(&pieces.join("*"));
    }
    out
}

/// Canonical rational-function printer.
pub(crate) fn print_ratfun(r: &RationalFunction) -> String {
    if r.den().is_one() {
        print_poly(r.num())
    } else {
        format!("({})/({})", print_poly(r.num()), print_poly(r.den()))
    }
}

/// Canonical scalar printer: `a + (b)*sqrtD` with either side omitted
/// when zero.
pub(crate) fn print_quadext(q: &QuadExtScalar) -> String {
    if q.rad_part().is_zero() {
        return print_ratfun(q.rat_part());
    }
    let rad = format!("({})*sqrtD", print_ratfun(q.rad_part()));
    if q.rat_part().is_zero() {
        rad
    } else {
        format!("{} + {}", print_ratfun(q.rat_part()), rad)
    }
}
