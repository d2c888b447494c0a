//! Power products over [`Variable`] with a graded-lexicographic order.

use super::variable::Variable;
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;

/// A monomial: sorted list of `(variable, exponent)` with positive exponents.
/// The empty list is the unit monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    degree: u32,
    vars: SmallVec<[(Variable, u32); 3]>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Variable) -> Self {
        Monomial {
            degree: 1,
            vars: smallvec::smallvec![(v, 1)],
        }
    }

    /// Build from unsorted pairs; merges duplicates, drops zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Variable, u32)>) -> Self {
        let mut vars: SmallVec<[(Variable, u32); 3]> = pairs
            .into_iter()
            .filter(|(_, e)| *e > 0)
            .collect();
        vars.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: SmallVec<[(Variable, u32); 3]> = SmallVec::new();
        for (v, e) in vars {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        let degree = merged.iter().map(|(_, e)| e).sum();
        Monomial { degree, vars: merged }
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.degree
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Variable, u32)> {
        self.vars.iter()
    }

    pub fn exponent_of(&self, v: Variable) -> u32 {
        self.vars
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.vars[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut vars: SmallVec<[(Variable, u32); 3]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.vars.len() && j < other.vars.len() {
            match self.vars[i].0.cmp(&other.vars[j].0) {
                Ordering::Less => {
                    vars.push(self.vars[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    vars.push(other.vars[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    vars.push((self.vars[i].0, self.vars[i].1 + other.vars[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        vars.extend_from_slice(&self.vars[i..]);
        vars.extend_from_slice(&other.vars[j..]);
        Monomial {
            degree: self.degree + other.degree,
            vars,
        }
    }

    /// Whether `self` divides `other` variable-wise.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.vars
            .iter()
            .all(|(v, e)| other.exponent_of(*v) >= *e)
    }

    /// Quotient monomial `other / self`; caller must ensure divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        let pairs = other
            .vars
            .iter()
            .map(|(v, e)| (*v, e - self.exponent_of(*v)));
        Monomial::from_pairs(pairs)
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.vars.iter().map(|(v, _)| *v)
    }
}

/// Graded-lexicographic: first by total degree, then lexicographically by
/// exponents read in canonical variable order. This is a genuine monomial
/// order (multiplicative, with 1 minimal), required for exact division.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let (mut i, mut j) = (0, 0);
            loop {
                match (self.vars.get(i), other.vars.get(j)) {
                    (None, None) => return Ordering::Equal,
                    // Missing variable means exponent 0; the side that still
                    // has the smaller (earlier) variable has a positive
                    // exponent there, so it is lexicographically larger.
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((v1, e1)), Some((v2, e2))) => match v1.cmp(v2) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => match e1.cmp(e2) {
                            Ordering::Equal => {
                                i += 1;
                                j += 1;
                            }
                            ord => return ord,
                        },
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.vars {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Variable {
        Variable::torus(1, 1, i)
    }

    #[test]
    fn grlex_is_multiplicative() {
        // Regression for the order being a monomial order.
        let a = Monomial::from_pairs([(v(1), 1), (v(3), 1)]);
        let b = Monomial::from_pairs([(v(2), 2)]);
        let m = Monomial::var(v(1));
        let ord = a.cmp(&b);
        assert_eq!(a.mul(&m).cmp(&b.mul(&m)), ord);
    }

    #[test]
    fn divide() {
        let a = Monomial::from_pairs([(v(1), 2), (v(2), 1)]);
        let b = Monomial::from_pairs([(v(1), 1)]);
        assert!(b.divides(&a));
        assert_eq!(
            b.quotient_into(&a),
            Monomial::from_pairs([(v(1), 1), (v(2), 1)])
        );
    }
}
