use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::series::TruncatedSeries;
use crate::error::{Error, Result};

/// Bivariate polynomial with integer coefficients, keyed by `(deg_x, deg_y)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, dx: u32, dy: u32) -> Self {
        let mut p = Polynomial::zero();
        p.add_term((dx, dy), c.into());
        p
    }

    fn add_term(&mut self, key: (u32, u32), c: BigInt) {
        let entry = self.terms.entry(key).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (k, c) in &other.terms {
            p.add_term(*k, c.clone());
        }
        p
    }

    pub fn neg(&self) -> Self {
        Polynomial { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Polynomial::zero();
        for ((a, b), c) in &self.terms {
            for ((d, e), f) in &other.terms {
                p.add_term((a + d, b + e), c * f);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Polynomial::constant(1), |acc, _| acc.mul(self))
    }

    /// Substitutes `x = x(t)`, `y = y(t)`.
    pub fn eval_series(&self, x: &TruncatedSeries, y: &TruncatedSeries) -> TruncatedSeries {
        let mut acc = TruncatedSeries::constant(BigRational::zero());
        for ((dx, dy), c) in &self.terms {
            let term = x.pow(*dx).mul(&y.pow(*dy)).scale(&BigRational::from_integer(c.clone()));
            acc = acc.add(&term);
        }
        acc
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for ((dx, dy), c) in &self.terms {
            acc += BigRational::from_integer(c.clone()) * pow_r(x, *dx) * pow_r(y, *dy);
        }
        acc
    }
}

fn pow_r(x: &BigRational, k: u32) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * x)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| (b.0 + b.1).cmp(&(a.0 + a.1)).then(b.cmp(a)));
        for (idx, key) in keys.iter().enumerate() {
            let c = &self.terms[key];
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if !mag.is_one() || *key == (0, 0) {
                factors.push(mag.to_string());
            }
            for (var, d) in [("x", key.0), ("y", key.1)] {
                match d {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{}^{}", var, d)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { chars: s.chars().collect(), pos: 0 };
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(poly)
    }
}

// expr   := term (('+' | '-') term)*
// term   := unary ('*' unary)*
// unary  := '-' unary | power
// power  := atom ('^' integer)?
// atom   := integer | 'x' | 'y' | '(' expr ')'
struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("polynomial: {} at position {}", msg, self.pos))
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn is_minus(c: char) -> bool {
        c == '-' || c == '\u{2212}'
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(c) if Self::is_minus(c) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(c) if Self::is_minus(c) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(Polynomial::monomial(1, 1, 0))
            }
            Some('y') => {
                self.pos += 1;
                Ok(Polynomial::monomial(1, 0, 1))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(Polynomial::constant(self.integer()?)),
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn parses_and_expands() {
        assert_eq!(p("x*y*(x^2 - y^2)"), p("x^3*y - x*y^3"));
        assert_eq!(p("(x+y)^2"), p("x^2 + 2*x*y + y^2"));
        assert_eq!(p("-x + x"), Polynomial::zero());
        assert_eq!(p("x \u{2212} y"), p("x - y"));
        assert_eq!(p("--x"), p("x"));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "x +", "2x", "x^", "(x", "z", "x)"] {
            assert!(bad.parse::<Polynomial>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["x^3*y - x*y^3", "y - 2*x", "-x^2 + 7", "x + y"] {
            let q = p(s);
            assert_eq!(p(&q.to_string()), q);
        }
    }
}
