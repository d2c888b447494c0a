//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! Canonical form: no zero coefficients are stored; terms are kept in a
//! `BTreeMap` under the graded-lex monomial order, so iteration order (and
//! hence serialization) is deterministic.

use super::monomial::Monomial;
use super::variable::Variable;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    BigRational::from(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rat>,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum PolyError {
    #[error("variable {0} has no assigned value")]
    UnassignedVariable(String),
    #[error("substitution image for {0} is not affine-linear")]
    NonAffineImage(String),
    #[error("exact division failed")]
    InexactDivision,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { terms }
    }

    pub fn var(v: Variable) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), Rat::one());
        Polynomial { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value if this polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.clone() * c))
                .collect(),
        }
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms
            .keys()
            .flat_map(|m| m.variables())
            .collect()
    }

    pub fn contains_var(&self, v: Variable) -> bool {
        self.terms.keys().any(|m| m.exponent_of(v) > 0)
    }

    /// Leading term under graded-lex (largest monomial).
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Degree ≤ 1 in every variable jointly (an affine-linear expression).
    pub fn is_affine(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() <= 1)
    }

    /// Substitute variables by polynomial images. Unmapped variables stay.
    pub fn substitute(&self, map: &BTreeMap<Variable, Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone());
            for (v, e) in m.iter() {
                match map.get(v) {
                    Some(img) => term = &term * &img.pow(*e),
                    None => {
                        term = &term * &Polynomial::var(*v).pow(*e);
                    }
                }
            }
            out.add_assign(&term);
        }
        out
    }

    pub fn evaluate(&self, point: &BTreeMap<Variable, Rat>) -> Result<Rat, PolyError> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for (v, e) in m.iter() {
                let x = point
                    .get(v)
                    .ok_or_else(|| PolyError::UnassignedVariable(v.to_string()))?;
                for _ in 0..*e {
                    val *= x;
                }
            }
            acc += val;
        }
        Ok(acc)
    }

    /// Exact division; returns `None` when the divisor does not divide exactly.
    pub fn divide_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        let (dm, dc) = divisor.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&rm) {
                return None;
            }
            let qm = dm.quotient_into(&rm);
            let qc = rc / dc;
            // rem -= (qm*qc) * divisor
            for (m, c) in &divisor.terms {
                rem.add_term(qm.mul(m), -(qc.clone() * c));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Extract content: returns `(scalar, primitive)` with `self = scalar * primitive`,
    /// where `primitive` has integer coefficients with gcd 1 and positive
    /// leading coefficient. The zero polynomial yields `(1, 0)`.
    pub fn content_normalize(&self) -> (Rat, Polynomial) {
        if self.is_zero() {
            return (Rat::one(), Polynomial::zero());
        }
        use num_integer::Integer;
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut scalar = Rat::new(num_gcd, den_lcm);
        if self.leading().unwrap().1.is_negative() {
            scalar = -scalar;
        }
        let inv = scalar.recip();
        (scalar, self.scale(&inv))
    }

    /// Coefficients of powers of `v`: map exponent -> polynomial in the rest.
    pub fn collect_powers(&self, v: Variable) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent_of(v);
            let rest = Monomial::from_pairs(m.iter().filter(|(w, _)| *w != v).cloned());
            out.entry(e)
                .or_insert_with(Polynomial::zero)
                .add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        // Iterate the smaller operand on the outside.
        let (small, big) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Polynomial::zero();
        for (m1, c1) in &small.terms {
            for (m2, c2) in &big.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2);
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Canonical text form
// ---------------------------------------------------------------------------

impl fmt::Display for Polynomial {
    /// Terms in descending graded-lex order; coefficients as `p` or `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = abs.is_one();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if coeff_is_one {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Parse the canonical text form produced by `Display`.
///
/// Grammar: sum of terms `[+|-] coeff [* factor]*` where a factor is
/// `variable[^exponent]` and coeff is `int[/int]` (optional when a variable
/// factor is present). Variables: `x{v}_{g}_{s}`, `u{v}_{j}`, `hbar`, or a
/// declared parameter name.
pub fn parse_polynomial(input: &str) -> Result<Polynomial, PolyError> {
    let mut p = Parser {
        bytes: input.as_bytes(),
        pos: 0,
    };
    let poly = p.parse_sum()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(PolyError::Parse(format!(
            "unexpected trailing input at byte {}",
            p.pos
        )));
    }
    Ok(poly)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse_sum(&mut self) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::zero();
        let mut sign = Rat::one();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some(b'+') => {
                self.pos += 1;
            }
            _ => {}
        }
        loop {
            let term = self.parse_term()?;
            acc.add_assign(&term.scale(&sign));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = Rat::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -Rat::one();
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Polynomial, PolyError> {
        let mut coeff = Rat::one();
        let mut mono = Monomial::one();
        let mut any = false;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let q = self.parse_rational()?;
                    coeff *= q;
                    any = true;
                }
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.parse_sum()?;
                    if self.peek() != Some(b')') {
                        return Err(PolyError::Parse("expected ')'".into()));
                    }
                    self.pos += 1;
                    let e = self.parse_opt_exponent()?;
                    // Parenthesized subexpression: fold into the result directly.
                    let base = Polynomial::from_terms([(mono.clone(), coeff.clone())]);
                    let sub = inner.pow(e);
                    let prod = &base * &sub;
                    // Continue multiplying factors after this one.
                    if self.peek() == Some(b'*') {
                        self.pos += 1;
                        let rest = self.parse_term()?;
                        return Ok(&prod * &rest);
                    }
                    return Ok(prod);
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let v = self.parse_variable()?;
                    let e = self.parse_opt_exponent()?;
                    mono = mono.mul(&Monomial::from_pairs([(v, e)]));
                    any = true;
                }
                _ => break,
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if !any {
            return Err(PolyError::Parse(format!(
                "expected a term at byte {}",
                self.pos
            )));
        }
        Ok(Polynomial::from_terms([(mono, coeff)]))
    }

    fn parse_opt_exponent(&mut self) -> Result<u32, PolyError> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.parse_uint()?;
            Ok(n as u32)
        } else {
            Ok(1)
        }
    }

    fn parse_uint(&mut self) -> Result<u64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PolyError::Parse(format!("expected integer at byte {start}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|e| PolyError::Parse(format!("bad integer: {e}")))
    }

    fn parse_rational(&mut self) -> Result<Rat, PolyError> {
        let n = self.parse_uint()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let d = self.parse_uint()?;
            if d == 0 {
                return Err(PolyError::Parse("zero denominator".into()));
            }
            Ok(Rat::new(BigInt::from(n), BigInt::from(d)))
        } else {
            Ok(Rat::from(BigInt::from(n)))
        }
    }

    fn parse_variable(&mut self) -> Result<Variable, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let word = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        if word.is_empty() {
            return Err(PolyError::Parse(format!("expected variable at byte {start}")));
        }
        if word == "hbar" {
            return Ok(Variable::Hbar);
        }
        if let Some(rest) = word.strip_prefix('x') {
            let parts: Vec<&str> = rest.split('_').collect();
            if parts.len() == 3 {
                if let (Ok(v), Ok(g), Ok(s)) = (
                    parts[0].parse::<u32>(),
                    parts[1].parse::<u8>(),
                    parts[2].parse::<u32>(),
                ) {
                    if (g == 1 || g == 2) && s >= 1 {
                        return Ok(Variable::Torus { vertex: v, group: g, slot: s });
                    }
                }
            }
        }
        if let Some(rest) = word.strip_prefix('u') {
            let parts: Vec<&str> = rest.split('_').collect();
            if parts.len() == 2 {
                if let (Ok(v), Ok(j)) = (parts[0].parse::<u32>(), parts[1].parse::<u32>()) {
                    return Ok(Variable::Framing { vertex: v, index: j });
                }
            }
        }
        super::name::Name::new(word)
            .map(Variable::Weight)
            .map_err(|e| PolyError::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        Polynomial::var(Variable::torus(1, 1, 1))
    }
    fn y() -> Polynomial {
        Polynomial::var(Variable::torus(1, 1, 2))
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x() - &y()) * &(&x() + &y());
        let q = &(&x() * &x()) - &(&y() * &y());
        assert_eq!(p, q);
    }

    #[test]
    fn add_zero_identity() {
        let p = &(&x() * &y()) + &Polynomial::constant(rat(3, 2));
        assert_eq!(&p + &Polynomial::zero(), p);
    }

    #[test]
    fn binomial_square() {
        let xp1 = &x() + &Polynomial::one();
        let sq = &xp1 * &xp1;
        let expect = &(&(&x() * &x()) + &x().scale(&int(2))) + &Polynomial::one();
        assert_eq!(sq, expect);
    }

    #[test]
    fn exact_division() {
        let p = &(&x() - &y()) * &(&(&x() + &y()) * &(&x() + &Polynomial::one()));
        let q = p.divide_exact(&(&x() - &y())).unwrap();
        assert_eq!(q, &(&x() + &y()) * &(&x() + &Polynomial::one()));
        assert!(p.divide_exact(&(&x() + &Polynomial::constant(int(7)))).is_none());
    }

    #[test]
    fn display_and_parse_roundtrip() {
        let p = &(&(&x() * &x()).scale(&rat(3, 2)) - &y()) + &Polynomial::constant(int(5));
        let s = p.to_string();
        let q = parse_polynomial(&s).unwrap();
        assert_eq!(p, q);
        assert_eq!(q.to_string(), s);
    }

    #[test]
    fn content() {
        let p = &(&x() * &x()).scale(&int(-4)) - &y().scale(&int(6));
        let (s, prim) = p.content_normalize();
        assert_eq!(s, int(-2));
        assert_eq!(prim, &(&x() * &x()).scale(&int(2)) + &y().scale(&int(3)));
    }
}
