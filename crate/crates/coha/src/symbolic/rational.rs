//! Rational functions with gcd-free factored denominators.
//!
//! A value is `scalar * numer_poly * prod(numer_forms) / prod(denom_forms)`
//! where every form is an affine-linear [`LinearForm`]. The denominator is a
//! multiset of forms; no denominator factor divides the numerator (maintained
//! by trial exact division on construction). No general multivariate gcd is
//! ever computed.

use super::linear_form::{LinearForm, Normalized};
use super::polynomial::{PolyError, Polynomial, Rat};
use super::variable::Variable;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub type FactorSet = BTreeMap<LinearForm, u32>;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum RationalError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor is not a unit times linear factors: {0}")]
    NonInvertible(String),
    #[error("substitution sends denominator factor to zero: {0}")]
    DenominatorVanishes(String),
    #[error("evaluation point lies on pole {0}")]
    PoleAtPoint(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug)]
pub struct FactoredRational {
    scalar: Rat,
    numer_poly: Polynomial,
    numer_forms: FactorSet,
    denom_forms: FactorSet,
}

fn forms_mul(a: &FactorSet, b: &FactorSet) -> FactorSet {
    let mut out = a.clone();
    for (f, e) in b {
        *out.entry(f.clone()).or_insert(0) += e;
    }
    out
}

impl FactoredRational {
    pub fn zero() -> Self {
        FactoredRational {
            scalar: Rat::one(),
            numer_poly: Polynomial::zero(),
            numer_forms: FactorSet::new(),
            denom_forms: FactorSet::new(),
        }
    }

    pub fn one() -> Self {
        FactoredRational::from_scalar(Rat::one())
    }

    pub fn from_scalar(c: Rat) -> Self {
        if c.is_zero() {
            return FactoredRational::zero();
        }
        FactoredRational {
            scalar: c,
            numer_poly: Polynomial::one(),
            numer_forms: FactorSet::new(),
            denom_forms: FactorSet::new(),
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        FactoredRational::new(p, FactorSet::new(), FactorSet::new(), Rat::one())
    }

    pub fn var(v: Variable) -> Self {
        FactoredRational::from_poly(Polynomial::var(v))
    }

    /// General constructor; establishes all canonical-form invariants.
    pub fn new(
        numer_poly: Polynomial,
        numer_forms: FactorSet,
        denom_forms: FactorSet,
        scalar: Rat,
    ) -> Self {
        let mut r = FactoredRational {
            scalar,
            numer_poly,
            numer_forms,
            denom_forms,
        };
        r.canonicalize();
        r
    }

    /// `numer / denom` for plain polynomials; denominator must be a product
    /// of linear factors already (each passed separately).
    pub fn from_poly_over_forms(numer: Polynomial, denoms: Vec<Polynomial>) -> Result<Self, RationalError> {
        let mut dset = FactorSet::new();
        let mut scalar = Rat::one();
        for d in denoms {
            match LinearForm::normalize(&d)? {
                Normalized::Form(s, f) => {
                    scalar /= s;
                    *dset.entry(f).or_insert(0) += 1;
                }
                Normalized::Constant(c) => {
                    if c.is_zero() {
                        return Err(RationalError::DivisionByZero);
                    }
                    scalar /= c;
                }
            }
        }
        Ok(FactoredRational::new(numer, FactorSet::new(), dset, scalar))
    }

    fn canonicalize(&mut self) {
        if self.numer_poly.is_zero() || self.scalar.is_zero() {
            *self = FactoredRational::zero();
            return;
        }
        // Extract polynomial content.
        let (content, prim) = self.numer_poly.content_normalize();
        self.scalar *= content;
        self.numer_poly = prim;
        // An affine numerator migrates into the factored part.
        if !self.numer_poly.is_constant() && self.numer_poly.is_affine() {
            if let Ok(Normalized::Form(s, f)) = LinearForm::normalize(&self.numer_poly) {
                self.scalar *= s;
                self.numer_poly = Polynomial::one();
                *self.numer_forms.entry(f).or_insert(0) += 1;
            }
        }
        // Cancel identical forms across the fraction bar.
        let shared: Vec<LinearForm> = self
            .denom_forms
            .keys()
            .filter(|f| self.numer_forms.contains_key(*f))
            .cloned()
            .collect();
        for f in shared {
            let n = *self.numer_forms.get(&f).unwrap();
            let d = *self.denom_forms.get(&f).unwrap();
            let k = n.min(d);
            if n == k {
                self.numer_forms.remove(&f);
            } else {
                self.numer_forms.insert(f.clone(), n - k);
            }
            if d == k {
                self.denom_forms.remove(&f);
            } else {
                self.denom_forms.insert(f.clone(), d - k);
            }
        }
        // Trial exact division of the polynomial part by denominator factors.
        let forms: Vec<LinearForm> = self.denom_forms.keys().cloned().collect();
        for f in forms {
            let fp = f.as_polynomial();
            while *self.denom_forms.get(&f).unwrap_or(&0) > 0 {
                match self.numer_poly.divide_exact(&fp) {
                    Some(q) => {
                        self.numer_poly = q;
                        let e = self.denom_forms.get_mut(&f).unwrap();
                        *e -= 1;
                        if *e == 0 {
                            self.denom_forms.remove(&f);
                        }
                    }
                    None => break,
                }
            }
        }
        // Division may have disturbed content normalization.
        let (content, prim) = self.numer_poly.content_normalize();
        self.scalar *= content;
        self.numer_poly = prim;
    }

    pub fn is_zero(&self) -> bool {
        self.numer_poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scalar.is_one()
            && self.numer_poly.as_constant().map_or(false, |c| c.is_one())
            && self.numer_forms.is_empty()
            && self.denom_forms.is_empty()
    }

    pub fn scalar(&self) -> &Rat {
        &self.scalar
    }

    pub fn denominator(&self) -> &FactorSet {
        &self.denom_forms
    }

    pub fn numerator_forms(&self) -> &FactorSet {
        &self.numer_forms
    }

    pub fn has_denominator(&self) -> bool {
        !self.denom_forms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.numer_forms.is_empty()
            && self.denom_forms.is_empty()
            && self.numer_poly.is_constant()
        {
            return Some(self.scalar.clone() * self.numer_poly.as_constant().unwrap());
        }
        None
    }

    /// Expanded numerator polynomial including the scalar.
    pub fn expanded_numerator(&self) -> Polynomial {
        let mut p = self.numer_poly.scale(&self.scalar);
        for (f, e) in &self.numer_forms {
            let fp = f.as_polynomial();
            for _ in 0..*e {
                p = &p * &fp;
            }
        }
        p
    }

    /// The value as a polynomial, if the denominator is empty.
    pub fn to_polynomial(&self) -> Option<Polynomial> {
        if self.denom_forms.is_empty() {
            Some(self.expanded_numerator())
        } else {
            None
        }
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        let mut vars = self.numer_poly.variables();
        for f in self.numer_forms.keys().chain(self.denom_forms.keys()) {
            vars.extend(f.variables());
        }
        vars
    }

    pub fn mul(&self, other: &FactoredRational) -> FactoredRational {
        if self.is_zero() || other.is_zero() {
            return FactoredRational::zero();
        }
        FactoredRational::new(
            &self.numer_poly * &other.numer_poly,
            forms_mul(&self.numer_forms, &other.numer_forms),
            forms_mul(&self.denom_forms, &other.denom_forms),
            self.scalar.clone() * &other.scalar,
        )
    }

    pub fn recip(&self) -> Result<FactoredRational, RationalError> {
        if self.is_zero() {
            return Err(RationalError::DivisionByZero);
        }
        if !self.numer_poly.is_constant() {
            return Err(RationalError::NonInvertible(self.to_string()));
        }
        let c = self.numer_poly.as_constant().unwrap();
        Ok(FactoredRational {
            scalar: (self.scalar.clone() * c).recip(),
            numer_poly: Polynomial::one(),
            numer_forms: self.denom_forms.clone(),
            denom_forms: self.numer_forms.clone(),
        })
    }

    pub fn div(&self, other: &FactoredRational) -> Result<FactoredRational, RationalError> {
        match other.recip() {
            Ok(r) => Ok(self.mul(&r)),
            Err(RationalError::NonInvertible(_)) => {
                // Last resort: divide polynomial parts exactly.
                let q = self
                    .numer_poly
                    .divide_exact(&other.numer_poly)
                    .ok_or_else(|| RationalError::NonInvertible(other.to_string()))?;
                Ok(FactoredRational::new(
                    q,
                    forms_mul(&self.numer_forms, &other.denom_forms),
                    forms_mul(&self.denom_forms, &other.numer_forms),
                    self.scalar.clone() / &other.scalar,
                ))
            }
            Err(e) => Err(e),
        }
    }

    pub fn pow(&self, e: i32) -> Result<FactoredRational, RationalError> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = FactoredRational::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn neg(&self) -> FactoredRational {
        let mut out = self.clone();
        if !out.is_zero() {
            out.scalar = -out.scalar;
        }
        out
    }

    pub fn add(&self, other: &FactoredRational) -> FactoredRational {
        FactoredRational::sum(vec![self.clone(), other.clone()])
    }

    pub fn sub(&self, other: &FactoredRational) -> FactoredRational {
        self.add(&other.neg())
    }

    /// Sum of many terms over a single common denominator.
    ///
    /// Symmetrization sums call this with hundreds of terms; lifting each
    /// term once against the global least common denominator avoids
    /// re-canonicalizing intermediate partial sums.
    pub fn sum(terms: Vec<FactoredRational>) -> FactoredRational {
        let terms: Vec<FactoredRational> = terms.into_iter().filter(|t| !t.is_zero()).collect();
        if terms.is_empty() {
            return FactoredRational::zero();
        }
        if terms.len() == 1 {
            return terms.into_iter().next().unwrap();
        }
        // Least common denominator: max exponent per form.
        let mut lcd = FactorSet::new();
        for t in &terms {
            for (f, e) in &t.denom_forms {
                let cur = lcd.entry(f.clone()).or_insert(0);
                *cur = (*cur).max(*e);
            }
        }
        let mut acc = Polynomial::zero();
        for t in &terms {
            let mut lifted = t.numer_poly.scale(&t.scalar);
            for (f, e) in &t.numer_forms {
                let fp = f.as_polynomial();
                for _ in 0..*e {
                    lifted = &lifted * &fp;
                }
            }
            for (f, e) in &lcd {
                let deficit = e - t.denom_forms.get(f).copied().unwrap_or(0);
                if deficit > 0 {
                    let fp = f.as_polynomial();
                    for _ in 0..deficit {
                        lifted = &lifted * &fp;
                    }
                }
            }
            acc.add_assign(&lifted);
        }
        FactoredRational::new(acc, FactorSet::new(), lcd, Rat::one())
    }

    /// Substitute variables by affine-linear images.
    pub fn substitute(
        &self,
        map: &BTreeMap<Variable, Polynomial>,
    ) -> Result<FactoredRational, RationalError> {
        for (v, img) in map {
            if !img.is_affine() {
                return Err(PolyError::NonAffineImage(format!("{v} -> {img}")).into());
            }
        }
        if self.is_zero() {
            return Ok(FactoredRational::zero());
        }
        let mut scalar = self.scalar.clone();
        let numer_poly = self.numer_poly.substitute(map);
        let mut numer_forms = FactorSet::new();
        for (f, e) in &self.numer_forms {
            match LinearForm::normalize(&f.as_polynomial().substitute(map))? {
                Normalized::Form(s, nf) => {
                    for _ in 0..*e {
                        scalar *= &s;
                    }
                    *numer_forms.entry(nf).or_insert(0) += e;
                }
                Normalized::Constant(c) => {
                    if c.is_zero() {
                        return Ok(FactoredRational::zero());
                    }
                    for _ in 0..*e {
                        scalar *= &c;
                    }
                }
            }
        }
        let mut denom_forms = FactorSet::new();
        for (f, e) in &self.denom_forms {
            match LinearForm::normalize(&f.as_polynomial().substitute(map))? {
                Normalized::Form(s, nf) => {
                    for _ in 0..*e {
                        scalar /= &s;
                    }
                    *denom_forms.entry(nf).or_insert(0) += e;
                }
                Normalized::Constant(c) => {
                    if c.is_zero() {
                        return Err(RationalError::DenominatorVanishes(f.to_string()));
                    }
                    for _ in 0..*e {
                        scalar /= &c;
                    }
                }
            }
        }
        Ok(FactoredRational::new(numer_poly, numer_forms, denom_forms, scalar))
    }

    pub fn evaluate(&self, point: &BTreeMap<Variable, Rat>) -> Result<Rat, RationalError> {
        if self.is_zero() {
            return Ok(Rat::zero());
        }
        let mut val = self.scalar.clone() * self.numer_poly.evaluate(point)?;
        for (f, e) in &self.numer_forms {
            let x = f.evaluate(point)?;
            for _ in 0..*e {
                val *= &x;
            }
        }
        for (f, e) in &self.denom_forms {
            let x = f.evaluate(point)?;
            if x.is_zero() {
                return Err(RationalError::PoleAtPoint(f.to_string()));
            }
            for _ in 0..*e {
                val /= &x;
            }
        }
        Ok(val)
    }

    /// Exact equality by cross-multiplication of expanded numerators.
    pub fn eq_exact(&self, other: &FactoredRational) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() == other.is_zero();
        }
        // Fast path: identical canonical data.
        if self.scalar == other.scalar
            && self.numer_poly == other.numer_poly
            && self.numer_forms == other.numer_forms
            && self.denom_forms == other.denom_forms
        {
            return true;
        }
        let lhs = {
            let mut p = self.expanded_numerator();
            for (f, e) in &other.denom_forms {
                let fp = f.as_polynomial();
                for _ in 0..*e {
                    p = &p * &fp;
                }
            }
            p
        };
        let rhs = {
            let mut p = other.expanded_numerator();
            for (f, e) in &self.denom_forms {
                let fp = f.as_polynomial();
                for _ in 0..*e {
                    p = &p * &fp;
                }
            }
            p
        };
        lhs == rhs
    }

    /// Schwartz–Zippel style randomized equality: evaluates both sides at `k`
    /// random integer points (coordinates uniform in ±10^6, resampling on
    /// poles). `false` means definitely unequal.
    pub fn eq_probabilistic<R: Rng>(&self, other: &FactoredRational, k: u32, rng: &mut R) -> bool {
        let mut vars: BTreeSet<Variable> = self.variables();
        vars.extend(other.variables());
        'rounds: for _ in 0..k {
            for _attempt in 0..64 {
                let point: BTreeMap<Variable, Rat> = vars
                    .iter()
                    .map(|v| {
                        let n: i64 = rng.gen_range(-1_000_000..=1_000_000);
                        (*v, Rat::from(num_bigint::BigInt::from(n)))
                    })
                    .collect();
                match (self.evaluate(&point), other.evaluate(&point)) {
                    (Ok(a), Ok(b)) => {
                        if a != b {
                            return false;
                        }
                        continue 'rounds;
                    }
                    _ => continue, // hit a pole; resample
                }
            }
            // Could not find a pole-free point; fall back to exact.
            return self.eq_exact(other);
        }
        true
    }
}

impl PartialEq for FactoredRational {
    fn eq(&self, other: &Self) -> bool {
        self.eq_exact(other)
    }
}

impl Eq for FactoredRational {}

impl fmt::Display for FactoredRational {
    /// Canonical text: expanded numerator (scalar folded in), then the sorted
    /// denominator factor list with exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let numer = self.expanded_numerator();
        if self.denom_forms.is_empty() {
            return write!(f, "{numer}");
        }
        write!(f, "({numer}) / ")?;
        let mut first = true;
        for (form, e) in &self.denom_forms {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "({form})")?;
            } else {
                write!(f, "({form})^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::polynomial::int;

    fn xv() -> Variable {
        Variable::torus(1, 1, 1)
    }
    fn yv() -> Variable {
        Variable::torus(1, 1, 2)
    }
    fn x() -> Polynomial {
        Polynomial::var(xv())
    }
    fn y() -> Polynomial {
        Polynomial::var(yv())
    }

    fn over(p: Polynomial, d: Polynomial) -> FactoredRational {
        FactoredRational::from_poly_over_forms(p, vec![d]).unwrap()
    }

    #[test]
    fn antisymmetric_sum_is_zero() {
        let a = over(Polynomial::one(), &x() - &y());
        let b = over(Polynomial::one(), &y() - &x());
        assert!(a.add(&b).is_zero());
    }

    #[test]
    fn cancellation_on_construction() {
        let numer = &(&x() - &y()) * &(&x() + &y());
        let r = over(numer, &x() - &y());
        assert!(!r.has_denominator());
        assert!(r.eq_exact(&FactoredRational::from_poly(&x() + &y())));
    }

    #[test]
    fn inverse_pair() {
        let a = over(Polynomial::one(), &x() - &y());
        let b = FactoredRational::from_poly(&x() - &y());
        assert!(a.mul(&b).is_one());
    }

    #[test]
    fn sign_flip_substitution() {
        // 1/(x-y) with x -> -x becomes -1/(x+y)
        let a = over(Polynomial::one(), &x() - &y());
        let map = BTreeMap::from([(xv(), -&x())]);
        let got = a.substitute(&map).unwrap();
        let want = over(Polynomial::one(), &x() + &y()).neg();
        assert!(got.eq_exact(&want));
    }

    #[test]
    fn evaluate_and_poles() {
        let r = over(&(&x() * &x()) - &(&y() * &y()), &x() - &y());
        let p = BTreeMap::from([(xv(), int(3)), (yv(), int(1))]);
        assert_eq!(r.evaluate(&p).unwrap(), int(4));
        let pole = over(Polynomial::one(), &x() - &y());
        let q = BTreeMap::from([(xv(), int(1)), (yv(), int(1))]);
        assert!(matches!(
            pole.evaluate(&q),
            Err(RationalError::PoleAtPoint(_))
        ));
        assert_eq!(
            FactoredRational::from_scalar(crate::symbolic::polynomial::rat(7, 2))
                .evaluate(&BTreeMap::new())
                .unwrap(),
            crate::symbolic::polynomial::rat(7, 2)
        );
    }

    #[test]
    fn probabilistic_detects_difference() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let a = FactoredRational::from_poly(x());
        let b = FactoredRational::from_poly(y());
        assert!(!a.eq_probabilistic(&b, 3, &mut rng));
        assert!(a.eq_probabilistic(&a.clone(), 3, &mut rng));
    }
}
