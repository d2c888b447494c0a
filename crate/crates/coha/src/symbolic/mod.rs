//! Exact sparse multivariate polynomials and gcd-free rational functions.

pub mod linear_form;
pub mod monomial;
pub mod name;
pub mod polynomial;
pub mod rational;
pub mod series;

pub use linear_form::{LinearForm, Normalized};
pub use monomial::Monomial;
pub use name::Name;
pub use polynomial::{parse_polynomial, int, rat, PolyError, Polynomial, Rat};
pub use rational::{FactorSet, FactoredRational, RationalError};
pub use series::{expand_at_infinity, LaurentSeries};
pub use variable::Variable;

pub mod variable;

/// How two rational functions are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqualityMode {
    Exact,
    /// Randomized integer evaluation at `k` points; `false` is definitive.
    Probabilistic(u32),
}
