//! Normalized affine-linear forms: the only admissible denominator factors.

use super::polynomial::{Polynomial, Rat};
use super::variable::Variable;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// An affine-linear form in normalized representative:
/// variable coefficients are integers with gcd 1, the first (canonical-order)
/// nonzero coefficient is positive, and the scalar factor has been extracted.
///
/// A form with no variables is not representable here; constant factors live
/// in the extracted scalar.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LinearForm {
    coeffs: Vec<(Variable, Rat)>,
    constant: Rat,
}

/// Outcome of normalizing an affine polynomial into a form and a scalar.
pub enum Normalized {
    /// `poly = scalar * form`
    Form(Rat, LinearForm),
    /// The polynomial was a (possibly zero) constant.
    Constant(Rat),
}

impl LinearForm {
    /// Normalize an affine polynomial. Returns an error if not affine.
    pub fn normalize(p: &Polynomial) -> Result<Normalized, super::polynomial::PolyError> {
        if !p.is_affine() {
            return Err(super::polynomial::PolyError::NonAffineImage(p.to_string()));
        }
        let mut coeffs: BTreeMap<Variable, Rat> = BTreeMap::new();
        let mut constant = Rat::zero();
        for (m, c) in p.terms() {
            match m.iter().next() {
                None => constant = c.clone(),
                Some((v, _)) => {
                    coeffs.insert(*v, c.clone());
                }
            }
        }
        if coeffs.is_empty() {
            return Ok(Normalized::Constant(constant));
        }
        // Clear variable-coefficient content; sign fixed by the first
        // (smallest) variable's coefficient.
        use num_integer::Integer;
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in coeffs.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut scalar = BigRational::new(num_gcd, den_lcm);
        if coeffs.values().next().unwrap().is_negative() {
            scalar = -scalar;
        }
        let inv = scalar.recip();
        let form = LinearForm {
            coeffs: coeffs
                .into_iter()
                .map(|(v, c)| (v, c * &inv))
                .collect(),
            constant: constant * &inv,
        };
        Ok(Normalized::Form(scalar, form))
    }

    /// Build from variable/coefficient pairs plus constant, normalizing.
    pub fn from_parts(
        pairs: impl IntoIterator<Item = (Variable, Rat)>,
        constant: Rat,
    ) -> Normalized {
        let mut p = Polynomial::constant(constant);
        for (v, c) in pairs {
            p.add_assign(&Polynomial::var(v).scale(&c));
        }
        LinearForm::normalize(&p).expect("linear by construction")
    }

    pub fn as_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::constant(self.constant.clone());
        for (v, c) in &self.coeffs {
            p.add_assign(&Polynomial::var(*v).scale(c));
        }
        p
    }

    pub fn coeffs(&self) -> &[(Variable, Rat)] {
        &self.coeffs
    }

    pub fn constant(&self) -> &Rat {
        &self.constant
    }

    pub fn coefficient_of(&self, v: Variable) -> Rat {
        self.coeffs
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn contains_var(&self, v: Variable) -> bool {
        self.coeffs.iter().any(|(w, _)| *w == v)
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.coeffs.iter().map(|(v, _)| *v)
    }

    pub fn evaluate(&self, point: &BTreeMap<Variable, Rat>) -> Result<Rat, super::polynomial::PolyError> {
        self.as_polynomial().evaluate(point)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_polynomial())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::polynomial::int;

    #[test]
    fn normalization_sign_and_content() {
        let x = Variable::torus(1, 1, 1);
        let y = Variable::torus(1, 1, 2);
        // -2x - 2y + 4  ->  scalar -2, form x + y - 2
        let p = {
            let mut p = Polynomial::var(x).scale(&int(-2));
            p.add_assign(&Polynomial::var(y).scale(&int(-2)));
            p.add_assign(&Polynomial::constant(int(4)));
            p
        };
        match LinearForm::normalize(&p).unwrap() {
            Normalized::Form(s, f) => {
                assert_eq!(s, int(-2));
                assert_eq!(f.coefficient_of(x), int(1));
                assert_eq!(f.coefficient_of(y), int(1));
                assert_eq!(*f.constant(), int(-2));
            }
            _ => panic!("expected form"),
        }
    }

    #[test]
    fn constant_detection() {
        match LinearForm::normalize(&Polynomial::constant(int(7))).unwrap() {
            Normalized::Constant(c) => assert_eq!(c, int(7)),
            _ => panic!(),
        }
    }
}
