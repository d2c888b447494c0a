//! Truncated Laurent expansions at infinity in a single distinguished variable.

use super::polynomial::Polynomial;
use super::rational::FactoredRational;
use super::variable::Variable;

use std::collections::BTreeMap;
use std::fmt;

/// A Laurent series in `var` around infinity: finitely many positive powers,
/// coefficients exact rational functions of the remaining variables.
/// Coefficients are reliable for exponents `>= trunc` only.
#[derive(Clone, Debug)]
pub struct LaurentSeries {
    pub var: Variable,
    /// Lowest exponent with a reliable coefficient.
    pub trunc: i64,
    /// Highest possibly-nonzero exponent.
    pub lead: i64,
    coeffs: BTreeMap<i64, FactoredRational>,
}

impl LaurentSeries {
    pub fn zero(var: Variable, trunc: i64) -> Self {
        LaurentSeries {
            var,
            trunc,
            lead: trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(var: Variable, c: FactoredRational, trunc: i64) -> Self {
        let mut s = LaurentSeries::zero(var, trunc);
        s.lead = 0.max(trunc);
        s.set(0, c);
        s
    }

    pub fn set(&mut self, k: i64, c: FactoredRational) {
        if c.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
            self.lead = self.lead.max(k);
        }
    }

    pub fn coefficient(&self, k: i64) -> FactoredRational {
        self.coeffs
            .get(&k)
            .cloned()
            .unwrap_or_else(FactoredRational::zero)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&i64, &FactoredRational)> {
        self.coeffs.iter()
    }

    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        assert_eq!(self.var, other.var, "series in different variables");
        let trunc = (self.trunc + other.lead).max(other.trunc + self.lead);
        let mut out = LaurentSeries::zero(self.var, trunc);
        out.lead = self.lead + other.lead;
        let mut acc: BTreeMap<i64, Vec<FactoredRational>> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                let k = i + j;
                if k >= trunc {
                    acc.entry(k).or_default().push(a.mul(b));
                }
            }
        }
        for (k, terms) in acc {
            out.set(k, FactoredRational::sum(terms));
        }
        out
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        assert_eq!(self.var, other.var);
        let trunc = self.trunc.max(other.trunc);
        let mut out = LaurentSeries::zero(self.var, trunc);
        out.lead = self.lead.max(other.lead);
        let keys: std::collections::BTreeSet<i64> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .filter(|k| *k >= trunc)
            .collect();
        for k in keys {
            out.set(k, self.coefficient(k).add(&other.coefficient(k)));
        }
        out
    }

    /// Equality of all coefficients for exponents `>= order_floor`.
    pub fn eq_to_order(&self, other: &LaurentSeries, order_floor: i64) -> bool {
        if self.var != other.var || self.trunc > order_floor || other.trunc > order_floor {
            return false;
        }
        let hi = self.lead.max(other.lead);
        let mut k = order_floor;
        while k <= hi {
            if !self.coefficient(k).eq_exact(&other.coefficient(k)) {
                return false;
            }
            k += 1;
        }
        true
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0 + O({}^{})", self.var, self.trunc)?;
            return Ok(());
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{}", self.var, k)?,
            }
        }
        write!(f, " + O({}^{})", self.var, self.trunc - 1)
    }
}

/// Expand a factored rational at infinity in `v`, reliable down to exponent
/// `-order` inclusive. Geometric expansion of each denominator factor; never
/// fails (any factored rational expands at infinity).
pub fn expand_at_infinity(a: &FactoredRational, v: Variable, order: i64) -> LaurentSeries {
    if a.is_zero() {
        return LaurentSeries::zero(v, -order);
    }

    // Positive-degree headroom contributed by numerator parts: geometric
    // factors must be expanded deeper by this amount.
    let numer_v_deg = {
        let p = a
            .to_polynomial()
            .unwrap_or_else(|| a.expanded_numerator());
        // expanded_numerator folds the scalar in; fine for degree counting.
        let powers = p.collect_powers(v);
        powers.keys().max().copied().unwrap_or(0) as i64
    };

    let mut denom_with_v: Vec<(Polynomial, u32)> = Vec::new();
    let mut denom_without_v: Vec<(Polynomial, u32)> = Vec::new();
    for (f, e) in a.denominator() {
        if f.contains_var(v) {
            denom_with_v.push((f.as_polynomial(), *e));
        } else {
            denom_without_v.push((f.as_polynomial(), *e));
        }
    }

    let depth = order + numer_v_deg;

    // Start from the numerator (scalar folded in), split by powers of v.
    let mut series = LaurentSeries::zero(v, i64::MIN / 4);
    {
        let numer = a.expanded_numerator();
        for (e, coeff_poly) in numer.collect_powers(v) {
            series.set(e as i64, FactoredRational::from_poly(coeff_poly));
        }
        if series.coeffs.is_empty() {
            series.set(0, FactoredRational::zero());
        }
    }
    // v-free denominator factors divide every coefficient exactly.
    for (fp, e) in denom_without_v {
        let inv = FactoredRational::from_poly_over_forms(Polynomial::one(), vec![fp])
            .expect("nonzero form")
            .pow(e as i32)
            .expect("positive power");
        let keys: Vec<i64> = series.coeffs.keys().copied().collect();
        for k in keys {
            let c = series.coefficient(k).mul(&inv);
            series.set(k, c);
        }
    }
    // Geometric series for each v-carrying denominator factor:
    // 1/(c*v + r) = (1/c) v^-1 * sum_k (-r/c)^k v^-k.
    for (fp, e) in denom_with_v {
        let powers = fp.collect_powers(v);
        let c = powers
            .get(&1)
            .expect("linear in v")
            .as_constant()
            .expect("coefficient of v in a linear form is constant");
        let rest = powers.get(&0).cloned().unwrap_or_else(Polynomial::zero);
        let ratio = FactoredRational::from_poly(rest.scale(&(-c.clone().recip())));
        let c_inv = FactoredRational::from_scalar(c.recip());
        for _ in 0..e {
            let mut geo = LaurentSeries::zero(v, -(depth + 1));
            let mut term = c_inv.clone();
            let mut k: i64 = -1;
            while k >= -(depth + 1) {
                geo.set(k, term.clone());
                term = term.mul(&ratio);
                k -= 1;
            }
            geo.lead = -1;
            series = series.mul(&geo);
        }
    }
    // Clamp to the requested reliability window.
    let mut out = LaurentSeries::zero(v, -order);
    out.lead = series.lead.max(-order);
    for (k, c) in series.coeffs {
        if k >= -order {
            out.set(k, c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::polynomial::{int, Polynomial};
    use crate::symbolic::rational::FactoredRational;

    fn w() -> Variable {
        Variable::series("w")
    }
    fn u() -> Variable {
        Variable::weight("u")
    }
    fn h() -> Variable {
        Variable::Hbar
    }

    /// Independent oracle: truncated geometric expansion computed directly
    /// from polynomial arithmetic, no shared code with `expand_at_infinity`.
    fn oracle_series_of_ratio(num: &Polynomial, den_rest: &Polynomial, order: i64) -> Vec<Polynomial> {
        // Expansion of num/(w - den_rest) where num = n0 + n1*w:
        // coefficients of w^k for k = 1, 0, -1, ..., computed via
        // 1/(w - r) = sum r^k w^{-k-1}.
        let powers = num.collect_powers(w());
        let n0 = powers.get(&0).cloned().unwrap_or_else(Polynomial::zero);
        let n1 = powers.get(&1).cloned().unwrap_or_else(Polynomial::zero);
        // coefficient of w^{-m} for m = -1..=order (m=-1 means w^1)
        let mut out = Vec::new();
        let mut rpow = Vec::new(); // r^k
        let mut acc = Polynomial::one();
        for _ in 0..=(order + 1) {
            rpow.push(acc.clone());
            acc = &acc * den_rest;
        }
        for m in -1..=order {
            // num * sum_k r^k w^{-k-1}: coefficient of w^{-m} is
            // n1 * r^m (m >= 0, from w * w^{-m-1}) + n0 * r^{m-1} (m >= 1)
            let mut c = Polynomial::zero();
            if m >= 0 {
                c.add_assign(&(&n1 * &rpow[m as usize]));
            }
            if m >= 1 {
                c.add_assign(&(&n0 * &rpow[(m - 1) as usize]));
            }
            out.push(c);
        }
        out
    }

    #[test]
    fn shifted_ratio_expansion() {
        // (w-u)/(w-u-hbar) to order 2: 1 + hbar*w^-1 + hbar*(u+hbar)*w^-2
        let wu = &Polynomial::var(w()) - &Polynomial::var(u());
        let den = &wu - &Polynomial::var(h());
        let r = FactoredRational::from_poly_over_forms(wu.clone(), vec![den]).unwrap();
        let s = expand_at_infinity(&r, w(), 2);

        let hb = Polynomial::var(h());
        let uph = &Polynomial::var(u()) + &hb;
        assert!(s.coefficient(0).eq_exact(&FactoredRational::one()));
        assert!(s
            .coefficient(-1)
            .eq_exact(&FactoredRational::from_poly(hb.clone())));
        assert!(s
            .coefficient(-2)
            .eq_exact(&FactoredRational::from_poly(&hb * &uph)));

        // Cross-check every coefficient against the independent oracle.
        let oracle = oracle_series_of_ratio(&wu, &(&Polynomial::var(u()) + &hb), 2);
        for (i, m) in (-1..=2).enumerate() {
            assert!(
                s.coefficient(-m).eq_exact(&FactoredRational::from_poly(oracle[i].clone())),
                "coefficient of w^{} mismatch",
                -m
            );
        }
    }

    #[test]
    fn plain_geometric() {
        // 1/(w-x) to order 3: w^-1 + x w^-2 + x^2 w^-3
        let xv = Variable::torus(1, 1, 1);
        let den = &Polynomial::var(w()) - &Polynomial::var(xv);
        let r = FactoredRational::from_poly_over_forms(Polynomial::one(), vec![den]).unwrap();
        let s = expand_at_infinity(&r, w(), 3);
        let x = Polynomial::var(xv);
        assert!(s.coefficient(-1).eq_exact(&FactoredRational::one()));
        assert!(s.coefficient(-2).eq_exact(&FactoredRational::from_poly(x.clone())));
        assert!(s.coefficient(-3).eq_exact(&FactoredRational::from_poly(&x * &x)));
        assert!(s.coefficient(0).is_zero());
    }

    #[test]
    fn polynomial_expands_to_itself() {
        let xv = Variable::torus(1, 1, 1);
        let p = &(&Polynomial::var(w()) * &Polynomial::var(w())) + &Polynomial::var(xv);
        let s = expand_at_infinity(&FactoredRational::from_poly(p), w(), 2);
        assert!(s.coefficient(2).eq_exact(&FactoredRational::one()));
        assert!(s
            .coefficient(0)
            .eq_exact(&FactoredRational::from_poly(Polynomial::var(xv))));
        assert!(s.coefficient(-1).is_zero());
        assert!(s.coefficient(1).is_zero());
    }

    #[test]
    fn multiplicativity_up_to_truncation() {
        let xv = Variable::torus(1, 1, 1);
        let a = FactoredRational::from_poly_over_forms(
            Polynomial::one(),
            vec![&Polynomial::var(w()) - &Polynomial::var(xv)],
        )
        .unwrap();
        let b = FactoredRational::from_poly_over_forms(
            &Polynomial::var(w()) + &Polynomial::constant(int(3)),
            vec![&Polynomial::var(w()) + &Polynomial::var(xv)],
        )
        .unwrap();
        let prod = expand_at_infinity(&a.mul(&b), w(), 4);
        let sep = expand_at_infinity(&a, w(), 6).mul(&expand_at_infinity(&b, w(), 6));
        assert!(prod.eq_to_order(&sep, -4));
    }
}
