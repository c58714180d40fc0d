//! Parser for written Chern polynomials such as
//! `2m(5m+2)(15m^2+6m+1)c_1^4+(5m^2+2m+1)c_1^2c_2-c_2^2`.
//!
//! Grammar: sums and differences of implicit products of factors. A factor
//! is an integer, `m`, a class symbol or a parenthesized expression,
//! optionally raised to `^k`. Class symbols are `c_i` (tangent), `c_iS`
//! (subbundle), and `a_i` or `s_i` (formal). A term may end in `/d` for an
//! integer `d`. Indices and exponents above 9 may be braced: `c_{10}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::chern::{ChernPoly, ChernVars, MPoly};
use crate::error::{Error, Result};
use crate::partitions::Partition;

type Value = BTreeMap<Partition, MPoly>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: ChernVars,
}

fn err(msg: impl Into<String>) -> Error {
    Error::Domain(format!("parse error: {}", msg.into()))
}

fn constant(c: MPoly) -> Value {
    let mut v = Value::new();
    if !c.is_zero() {
        v.insert(Partition::empty(), c);
    }
    v
}

fn add(a: &Value, b: &Value, negate: bool) -> Value {
    let mut out = a.clone();
    for (k, c) in b {
        let c = if negate { -c } else { c.clone() };
        let sum = match out.get(k) {
            Some(prev) => prev + &c,
            None => c,
        };
        if sum.is_zero() {
            out.remove(k);
        } else {
            out.insert(k.clone(), sum);
        }
    }
    out
}

fn mul(a: &Value, b: &Value) -> Value {
    let mut out = Value::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let term = constant(ca * cb)
                .into_values()
                .map(|c| (ka.merge(kb), c))
                .collect();
            out = add(&out, &term, false);
        }
    }
    out
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        if self.eat(b'{') {
            let v = self.number()?;
            if !self.eat(b'}') {
                return Err(err("unclosed brace"));
            }
            return Ok(v);
        }
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(format!("expected a number at offset {start}")));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("digits are ascii")
            .parse()
            .map_err(|_| err("number out of range"))
    }

    fn expr(&mut self) -> Result<Value> {
        let mut negate = self.eat(b'-');
        if !negate {
            self.eat(b'+');
        }
        let mut acc = Value::new();
        loop {
            let t = self.term()?;
            acc = add(&acc, &t, negate);
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'0'..=b'9' | b'm' | b'c' | b'a' | b's' | b'(') => {
                    let f = self.factor()?;
                    acc = mul(&acc, &f);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.number()?;
                    if d == 0 {
                        return Err(err("division by zero"));
                    }
                    let inv = BigRational::new(BigInt::one(), BigInt::from(d));
                    acc = acc.into_iter().map(|(k, c)| (k, c.scale(&inv))).collect();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.number()?;
            let mut out = constant(MPoly::one());
            for _ in 0..e {
                out = mul(&out, &base);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Value> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(err("unclosed parenthesis"));
                }
                Ok(v)
            }
            Some(b'm') => {
                self.pos += 1;
                Ok(constant(MPoly::m()))
            }
            Some(b'0'..=b'9') => {
                let v = self.number()?;
                Ok(constant(MPoly::constant(BigRational::from_integer(
                    BigInt::from(v),
                ))))
            }
            Some(c @ (b'c' | b'a' | b's')) => self.class(c),
            other => Err(err(format!(
                "unexpected {:?} at offset {}",
                other.map(char::from),
                self.pos
            ))),
        }
    }

    fn class(&mut self, letter: u8) -> Result<Value> {
        let fits = match self.vars {
            ChernVars::Formal => letter == b'a' || letter == b's',
            _ => letter == b'c',
        };
        if !fits {
            return Err(err(format!(
                "symbol {} does not fit these variables",
                char::from(letter)
            )));
        }
        self.pos += 1;
        if !self.eat(b'_') {
            return Err(err("expected '_' after class letter"));
        }
        let index = self.number()?;
        if index == 0 {
            return Err(err("class index must be positive"));
        }
        let mut power = 1;
        if self.eat(b'^') {
            power = self.number()?;
        }
        let tagged = self.eat(b'S');
        if tagged != (self.vars == ChernVars::Subbundle) {
            return Err(err("the 'S' suffix must match the variable family"));
        }
        let parts = vec![index as u32; power as usize];
        let mut v = Value::new();
        v.insert(Partition::from_multiset(parts), MPoly::one());
        Ok(v)
    }
}

/// Parses a homogeneous polynomial in the given variable family.
pub fn parse_chern(vars: ChernVars, text: &str) -> Result<ChernPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(err(format!("trailing input at offset {}", p.pos)));
    }
    let mut weights = value.keys().map(Partition::weight);
    let degree = weights.next().unwrap_or(0);
    if weights.any(|w| w != degree) {
        return Err(err(format!("{text:?} is not homogeneous")));
    }
    Ok(ChernPoly::from_terms(vars, degree, value))
}

/// Parses a polynomial in `m` alone.
pub fn parse_mpoly(text: &str) -> Result<MPoly> {
    let poly = parse_chern(ChernVars::Tangent, text)?;
    if poly.degree() != 0 {
        return Err(err(format!("{text:?} involves Chern classes")));
    }
    Ok(poly.coeff(&Partition::empty()))
}
