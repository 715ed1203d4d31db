//! Text format for polynomials and scalars.
//!
//! Terms look like `(3/2+1/2i)*z1^2*z2`, `pi^(1/2)`, `s*z1`, `-2/3*z2^4`.
//! The printer emits a canonical form (terms in exponent order, signed
//! joins) and the parser round-trips it bit-exactly.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::MultiPoly;
use crate::scalar::{term_string, GaussRational, Rational, Scalar};

/// Errors from parsing the text format.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected token `{0}` at position {1}")]
    UnexpectedToken(String, usize),
    #[error("unknown variable `{0}` (expected {1}1..{1}{2})")]
    UnknownVariable(String, String, usize),
    #[error("bad exponent: {0}")]
    BadExponent(String),
    #[error("symbol `s` used without an s^2 context")]
    SymbolContextMissing,
    #[error("non-constant expression where a scalar was expected")]
    NotAScalar,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut toks = Vec::new();
    let bytes: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = bytes[start..i].iter().collect();
                toks.push((Tok::Int(digits.parse().unwrap()), start));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                let name: String = bytes[start..i].iter().collect();
                toks.push((Tok::Ident(name), start));
            }
            _ => return Err(ParseError::UnexpectedToken(c.to_string(), i)),
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    nvars: usize,
    prefix: &'a str,
    s_sq: Option<Rational>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn next(&mut self) -> Result<Tok, ParseError> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or(ParseError::UnexpectedEnd)?;
        self.pos += 1;
        Ok(t.0)
    }

    fn err_here(&self) -> ParseError {
        match self.toks.get(self.pos) {
            Some((t, p)) => ParseError::UnexpectedToken(format!("{:?}", t), *p),
            None => ParseError::UnexpectedEnd,
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err_here())
        }
    }

    // expr := ['-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    // factor := atom ['^' exponent]
    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let (base, is_pi) = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let exp = self.exponent()?;
        if is_pi {
            let half = &exp * Rational::from_integer(2.into());
            if !half.is_integer() {
                return Err(ParseError::BadExponent(exp.to_string()));
            }
            let half: i64 = half
                .to_integer()
                .try_into()
                .map_err(|_| ParseError::BadExponent(exp.to_string()))?;
            return Ok(MultiPoly::constant(self.nvars, Scalar::pi_pow_half(half)));
        }
        if !exp.is_integer() {
            return Err(ParseError::BadExponent(exp.to_string()));
        }
        let e: i64 = exp
            .to_integer()
            .try_into()
            .map_err(|_| ParseError::BadExponent(exp.to_string()))?;
        if e >= 0 {
            Ok(base.pow(e as u32))
        } else {
            // negative exponents only for invertible constants
            let c = base
                .homogeneous_degree()
                .filter(|&d| d == 0)
                .map(|_| base.coeff(&vec![0; self.nvars]))
                .ok_or_else(|| ParseError::BadExponent(exp.to_string()))?;
            let inv = c
                .try_inv()
                .map_err(|e| ParseError::BadExponent(e.to_string()))?;
            Ok(MultiPoly::constant(self.nvars, inv.pow((-e) as u32)))
        }
    }

    // exponent := ['-'] INT | '(' ['-'] INT ['/' INT] ')'
    fn exponent(&mut self) -> Result<Rational, ParseError> {
        match self.next()? {
            Tok::Int(n) => Ok(Rational::from_integer(n)),
            Tok::Minus => match self.next()? {
                Tok::Int(n) => Ok(-Rational::from_integer(n)),
                _ => Err(self.err_here()),
            },
            Tok::LParen => {
                let mut neg = false;
                if self.peek() == Some(&Tok::Minus) {
                    self.pos += 1;
                    neg = true;
                }
                let num = match self.next()? {
                    Tok::Int(n) => n,
                    _ => return Err(self.err_here()),
                };
                let den = if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.next()? {
                        Tok::Int(n) => n,
                        _ => return Err(self.err_here()),
                    }
                } else {
                    BigInt::one()
                };
                self.expect(Tok::RParen)?;
                let q = Rational::new(num, den);
                Ok(if neg { -q } else { q })
            }
            _ => Err(self.err_here()),
        }
    }

    // atom := NUMBER 'i'? | 'i' | 'pi' | 's' | VAR | '(' expr ')'
    // Returns (value, is_pi_literal).
    fn atom(&mut self) -> Result<(MultiPoly, bool), ParseError> {
        match self.next()? {
            Tok::Int(n) => {
                let mut q = Rational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.next()? {
                        Tok::Int(d) => q /= Rational::from_integer(d),
                        _ => return Err(self.err_here()),
                    }
                }
                // `3/2i` means (3/2)*i
                if self.peek() == Some(&Tok::Ident("i".to_string())) {
                    self.pos += 1;
                    let g = GaussRational::new(Rational::zero(), q);
                    return Ok((MultiPoly::constant(self.nvars, Scalar::from_gauss(g)), false));
                }
                Ok((
                    MultiPoly::constant(self.nvars, Scalar::from_rational(q)),
                    false,
                ))
            }
            Tok::Ident(name) => match name.as_str() {
                "i" => Ok((MultiPoly::constant(self.nvars, Scalar::i()), false)),
                "pi" => Ok((MultiPoly::constant(self.nvars, Scalar::pi()), true)),
                "s" => {
                    let t = self
                        .s_sq
                        .clone()
                        .ok_or(ParseError::SymbolContextMissing)?;
                    let s = Scalar::s_symbol(&t).map_err(|_| ParseError::SymbolContextMissing)?;
                    Ok((MultiPoly::constant(self.nvars, s), false))
                }
                _ => {
                    let idx = self.var_index(&name)?;
                    Ok((MultiPoly::var(self.nvars, idx), false))
                }
            },
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok((inner, false))
            }
            _ => {
                self.pos -= 1;
                Err(self.err_here())
            }
        }
    }

    fn var_index(&self, name: &str) -> Result<usize, ParseError> {
        let err = || {
            ParseError::UnknownVariable(name.to_string(), self.prefix.to_string(), self.nvars)
        };
        let rest = name.strip_prefix(self.prefix).ok_or_else(err)?;
        let idx: usize = rest.parse().map_err(|_| err())?;
        if idx >= 1 && idx <= self.nvars {
            Ok(idx - 1)
        } else {
            Err(err())
        }
    }
}

/// Parse a polynomial in `nvars` variables named `prefix1..prefixN`.
pub fn parse_poly(input: &str, nvars: usize, prefix: &str) -> Result<MultiPoly, ParseError> {
    parse_poly_ctx(input, nvars, prefix, None)
}

/// Parse with an `s^2 = t` context so the symbol `s` is meaningful.
pub fn parse_poly_ctx(
    input: &str,
    nvars: usize,
    prefix: &str,
    s_sq: Option<&Rational>,
) -> Result<MultiPoly, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        nvars,
        prefix,
        s_sq: s_sq.cloned(),
    };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err_here());
    }
    Ok(poly)
}

/// Parse a scalar (no variables allowed).
pub fn parse_scalar(input: &str, s_sq: Option<&Rational>) -> Result<Scalar, ParseError> {
    let p = parse_poly_ctx(input, 0, "z", s_sq)?;
    if p.is_zero() {
        return Ok(Scalar::zero());
    }
    if p.homogeneous_degree() == Some(0) {
        Ok(p.coeff(&[]))
    } else {
        Err(ParseError::NotAScalar)
    }
}

fn mono_string(expts: &[i64], prefix: &str) -> String {
    let mut parts = Vec::new();
    for (i, &e) in expts.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if e == 1 {
            parts.push(format!("{}{}", prefix, i + 1));
        } else {
            parts.push(format!("{}{}^{}", prefix, i + 1, e));
        }
    }
    parts.join("*")
}

/// Coefficient rendering: (is_negative, body). An empty body means the
/// coefficient is `±1` and a monomial follows.
fn coeff_string(c: &Scalar, has_mono: bool) -> (bool, String) {
    if let Some((pi_half, s_exp, g)) = c.single_term() {
        let neg = g.is_display_negative();
        let mag = if neg { -g } else { g.clone() };
        if mag.is_one() && (pi_half != 0 || s_exp == 1) {
            (neg, term_string(&mag, pi_half, s_exp))
        } else if mag.is_one() && has_mono {
            (neg, String::new())
        } else {
            (neg, term_string(&mag, pi_half, s_exp))
        }
    } else {
        (false, format!("({})", c))
    }
}

/// Canonical rendering of a polynomial.
pub fn poly_to_text(p: &MultiPoly, prefix: &str) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    for (expts, coeff) in p.terms() {
        let mono = mono_string(expts, prefix);
        let (neg, body) = coeff_string(coeff, !mono.is_empty());
        if first {
            if neg {
                out.push('-');
            }
            first = false;
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match (body.is_empty(), mono.is_empty()) {
            (true, true) => out.push('1'),
            (true, false) => out.push_str(&mono),
            (false, true) => out.push_str(&body),
            (false, false) => {
                out.push_str(&body);
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    out
}
