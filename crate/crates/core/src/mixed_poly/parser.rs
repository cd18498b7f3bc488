//! Parser for the polynomial input grammar.
//!
//! Grammar (whitespace ignored everywhere):
//!
//! ```text
//! expr     := [sign] term (sign term)*
//! term     := factor ('*' factor)*
//! factor   := primary ['^' exponent]          exponent ≥ 1
//! primary  := integer | '(' complex ')' | var
//! var      := '~'? ('z' | 'w') index           index is 1-based
//! complex  := [sign] cpart (sign cpart)*
//! cpart    := 'i' | rational ['i']
//! rational := integer ['/' integer]
//! ```
//!
//! `~zK` denotes the conjugate of variable K; `z` and `w` are interchangeable.

use super::{ExponentVector, GaussianRational, MixedPolynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{message} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { bytes: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.pos, message: message.into() })
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("digits are ascii");
        Ok(s.parse().expect("digit string"))
    }

    fn small_uint(&mut self) -> Result<u32, ParseError> {
        let off = self.pos;
        let v = self.integer()?;
        u32::try_from(&v).map_err(|_| ParseError { offset: off, message: "integer too large".into() })
    }
}

/// Parse `text` as a mixed polynomial in `n` variables.
pub fn parse(text: &str, n: usize) -> Result<MixedPolynomial, ParseError> {
    let mut cur = Cursor::new(text);
    let mut poly = MixedPolynomial::zero(n);
    let mut first = true;
    loop {
        cur.skip_ws();
        if first && cur.pos >= cur.bytes.len() {
            return cur.err("empty input");
        }
        let mut negative = false;
        match cur.peek() {
            Some(b'+') => {
                cur.pos += 1;
            }
            Some(b'-') => {
                cur.pos += 1;
                negative = true;
            }
            Some(_) if first => {}
            Some(_) => return cur.err("expected '+' or '-' between terms"),
            None => break,
        }
        let term = parse_term(&mut cur, n)?;
        let term = if negative { term.neg() } else { term };
        poly = poly.add(&term).expect("same dimension");
        first = false;
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(poly)
}

fn parse_term(cur: &mut Cursor, n: usize) -> Result<MixedPolynomial, ParseError> {
    let mut coeff = GaussianRational::one();
    let mut nu = vec![0u32; n];
    let mut mu = vec![0u32; n];
    loop {
        parse_factor(cur, n, &mut coeff, &mut nu, &mut mu)?;
        if !cur.eat(b'*') {
            break;
        }
    }
    MixedPolynomial::monomial(n, coeff, ExponentVector::new(nu), ExponentVector::new(mu))
        .map_err(|e| ParseError { offset: cur.pos, message: e.to_string() })
}

fn parse_factor(
    cur: &mut Cursor,
    n: usize,
    coeff: &mut GaussianRational,
    nu: &mut [u32],
    mu: &mut [u32],
) -> Result<(), ParseError> {
    enum Base {
        Scalar(GaussianRational),
        Var { idx: usize, conj: bool },
    }
    let base = match cur.peek() {
        Some(b'(') => {
            cur.pos += 1;
            let c = parse_complex(cur)?;
            if !cur.eat(b')') {
                return cur.err("expected ')'");
            }
            Base::Scalar(c)
        }
        Some(b) if b.is_ascii_digit() => {
            let v = cur.integer()?;
            Base::Scalar(GaussianRational::new(BigRational::from_integer(v), BigRational::zero()))
        }
        Some(b'~') | Some(b'z') | Some(b'w') | Some(b'Z') | Some(b'W') => {
            let conj = cur.eat(b'~');
            match cur.peek() {
                Some(b'z') | Some(b'w') | Some(b'Z') | Some(b'W') => {
                    cur.pos += 1;
                }
                _ => return cur.err("expected variable name 'z' or 'w'"),
            }
            let off = cur.pos;
            let idx = cur.small_uint()? as usize;
            if idx == 0 || idx > n {
                return Err(ParseError {
                    offset: off,
                    message: format!("variable index {idx} out of range 1..={n}"),
                });
            }
            Base::Var { idx: idx - 1, conj }
        }
        _ => return cur.err("expected factor"),
    };

    let mut exp = 1u32;
    if cur.eat(b'^') {
        if cur.peek() == Some(b'-') {
            return cur.err("negative exponent");
        }
        let off = cur.pos;
        exp = cur.small_uint()?;
        if exp == 0 {
            return Err(ParseError { offset: off, message: "exponent must be at least 1".into() });
        }
    }

    match base {
        Base::Scalar(c) => {
            let mut acc = GaussianRational::one();
            for _ in 0..exp {
                acc = acc.mul(&c);
            }
            *coeff = coeff.mul(&acc);
        }
        Base::Var { idx, conj } => {
            let slot = if conj { &mut mu[idx] } else { &mut nu[idx] };
            *slot = slot
                .checked_add(exp)
                .ok_or_else(|| ParseError { offset: cur.pos, message: "exponent overflow".into() })?;
        }
    }
    Ok(())
}

fn parse_complex(cur: &mut Cursor) -> Result<GaussianRational, ParseError> {
    let mut acc = GaussianRational::zero();
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            Some(b'+') => {
                cur.pos += 1;
            }
            Some(b'-') => {
                cur.pos += 1;
                negative = true;
            }
            Some(_) if first => {}
            _ => return cur.err("expected complex coefficient part"),
        }
        let part = parse_cpart(cur)?;
        let part = if negative { part.neg() } else { part };
        acc = acc.add(&part);
        first = false;
        if cur.peek() == Some(b')') {
            break;
        }
    }
    if first {
        return cur.err("empty coefficient");
    }
    Ok(acc)
}

fn parse_cpart(cur: &mut Cursor) -> Result<GaussianRational, ParseError> {
    if cur.eat(b'i') {
        return Ok(GaussianRational::i());
    }
    let num = cur.integer()?;
    let mut val = BigRational::from_integer(num);
    if cur.eat(b'/') {
        let off = cur.pos;
        let den = cur.integer()?;
        if den.is_zero() {
            return Err(ParseError { offset: off, message: "zero denominator".into() });
        }
        val /= BigRational::from_integer(den);
    }
    if cur.eat(b'i') {
        Ok(GaussianRational::new(BigRational::zero(), val))
    } else {
        Ok(GaussianRational::new(val, BigRational::zero()))
    }
}
