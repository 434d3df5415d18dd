//! Integer Laurent polynomials in the bracket variable `A`.
//!
//! Every polynomial invariant in the crate lives here. Jones values are kept
//! in `A` as well and only converted to `t^{1/2}` notation on output, using
//! `t = A^{-4}` (so `t^{1/2} = A^{-2}`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("exponent A^{0} is odd; not a Jones polynomial")]
    OddExponent(i64),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Sparse Laurent polynomial with arbitrary-precision integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·A^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    /// The loop value `δ = -A^2 - A^{-2}`.
    pub fn delta() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Builds a polynomial from terms `c·t^{k/2}` given as `(k, c)`.
    pub fn from_half_t<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        Self::from_terms(terms.into_iter().map(|(k, c)| (-2 * k, c)))
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// `A -> A^{-1}`. A ring involution; on Jones values it is `t -> t^{-1}`.
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Renders in the Jones variable, ascending powers of `t`.
    ///
    /// `A^e` becomes `t^{-e/4}`; fails on odd `e`.
    pub fn render_t(&self) -> Result<String, LaurentError> {
        if let Some((e, _)) = self.terms().find(|(e, _)| e % 2 != 0) {
            return Err(LaurentError::OddExponent(e));
        }
        if self.is_zero() {
            return Ok("0".into());
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().rev().enumerate() {
            // half-integer exponent of t, times two
            let h = -e / 2;
            let var = match h {
                0 => String::new(),
                2 => "t".into(),
                h if h % 2 == 0 && h > 0 => format!("t^{}", h / 2),
                h if h % 2 == 0 => format!("t^{{{}}}", h / 2),
                h => format!("t^{{{}/2}}", h),
            };
            push_term(&mut out, i == 0, c, &var);
        }
        Ok(out)
    }

    /// Renders in `A`, ascending powers, e.g. `-A^-10 - A^-2`. Inverse of [`FromStr`].
    pub fn render_a(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let var = match e {
                0 => String::new(),
                1 => "A".into(),
                e => format!("A^{e}"),
            };
            push_term(&mut out, i == 0, c, &var);
        }
        out
    }
}

fn push_term(out: &mut String, first: bool, c: &BigInt, var: &str) {
    let neg = c.is_negative();
    let mag = c.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if var.is_empty() {
        out.push_str(&mag.to_string());
    } else {
        if !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push_str(var);
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_a())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.render_a())
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser { src: s.as_bytes(), pos: 0 }.poly()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, LaurentError> {
        Err(LaurentError::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn exponent(&mut self) -> Result<i64, LaurentError> {
        let braced = self.eat(b'{');
        let neg = self.eat(b'-');
        let Some(d) = self.digits() else {
            return self.err("expected exponent");
        };
        let Ok(v) = d.parse::<i64>() else {
            return self.err("exponent out of range");
        };
        if braced && !self.eat(b'}') {
            return self.err("expected '}'");
        }
        Ok(if neg { -v } else { v })
    }

    fn poly(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut p = LaurentPoly::zero();
        let mut first = true;
        loop {
            let mut neg = false;
            match self.peek() {
                None if !first => break,
                None => return self.err("empty polynomial"),
                Some(b'+') if !first => self.pos += 1,
                Some(b'-') => {
                    self.pos += 1;
                    neg = true;
                }
                Some(_) if first => {}
                Some(_) => return self.err("expected '+' or '-'"),
            }
            first = false;
            let coeff = self.digits().map(|d| d.parse::<BigInt>().unwrap());
            let has_var = {
                let _ = self.eat(b'*');
                self.eat(b'A')
            };
            let exp = if has_var {
                if self.eat(b'^') {
                    self.exponent()?
                } else {
                    1
                }
            } else if coeff.is_none() {
                return self.err("expected coefficient or 'A'");
            } else {
                0
            };
            let mut c = coeff.unwrap_or_else(BigInt::one);
            if neg {
                c = -c;
            }
            p.add_term(exp, c);
        }
        Ok(p)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Mul<&LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        &self * rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_cancels() {
        assert_eq!(&p("A^2 + 1") + &p("-A^2 + A"), p("A + 1"));
        assert_eq!(&p("3A^-4 - A") + &LaurentPoly::zero(), p("3A^-4 - A"));
        let c3 = LaurentPoly::from_terms([(8, 1), (0, 2), (-8, 1)]);
        assert_eq!(&c3 + &LaurentPoly::zero(), c3);
    }

    #[test]
    fn mul_small() {
        assert_eq!(&p("A + A^-1") * &p("A - A^-1"), p("A^2 - A^-2"));
        let d = LaurentPoly::delta();
        assert_eq!(&d * &d, p("A^4 + 2 + A^-4"));
        assert_eq!(&d * &LaurentPoly::one(), d);
    }

    #[test]
    fn invert() {
        assert_eq!(p("A^3 + 2A^-1").invert_variable(), p("A^-3 + 2A"));
        assert_eq!(LaurentPoly::constant(5).invert_variable(), LaurentPoly::constant(5));
        let q = p("7A^5 - A^-2 + 4");
        assert_eq!(q.invert_variable().invert_variable(), q);
    }

    #[test]
    fn render_in_t() {
        assert_eq!(p("-A^-2 - A^-10").render_t().unwrap(), "-t^{1/2} - t^{5/2}");
        assert_eq!(p("A^8 + 2 + A^-8").render_t().unwrap(), "t^{-2} + 2 + t^2");
        assert_eq!(p("A^3").render_t(), Err(LaurentError::OddExponent(3)));
        assert_eq!(p("-A^-4").render_t().unwrap(), "-t");
        assert_eq!(LaurentPoly::zero().render_t().unwrap(), "0");
    }

    #[test]
    fn half_t_constructor() {
        let v = LaurentPoly::from_half_t([(-4, 1), (0, 2), (4, 1)]);
        assert_eq!(v, p("A^8 + 2 + A^-8"));
    }

    #[test]
    fn parse_variants() {
        assert_eq!(p("A"), LaurentPoly::monomial(1, 1));
        assert_eq!(p(" - 2*A^{-3} + 5 "), LaurentPoly::from_terms([(-3, -2), (0, 5)]));
        assert_eq!(p("0"), LaurentPoly::zero());
        assert!("A^".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("2 3".parse::<LaurentPoly>().is_err());
    }
}
