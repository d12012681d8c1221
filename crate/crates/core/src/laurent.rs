//! Laurent polynomials with exact coefficients.
//!
//! A [`LaurentPoly`] is a finite formal sum of integer powers of `z`,
//! positive and negative, stored sparsely as a degree-to-coefficient map.
//!
//! Invariants:
//! - zero coefficients are never stored; the zero polynomial is the empty map;
//! - in algebra mode every stored coefficient belongs to one algebra, which
//!   [`LaurentPoly::from_terms`] enforces at construction.
//!
//! Arithmetic is exact and total: sums, products, coefficient scalings, and
//! shifts by powers of `z` never truncate. Truncation and division live in
//! the series and fraction modules.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::scalar::{format_scalar, Scalar};

/// Sparse Laurent polynomial over coefficients `C`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPoly<C> {
    coeffs: BTreeMap<i64, C>,
}

impl<C: Coefficient> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
        }
    }

    /// The monomial `c * z^degree`; the zero polynomial when `c` is zero.
    pub fn term(degree: i64, c: C) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(degree, c);
        }
        LaurentPoly { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Self::term(0, c)
    }

    /// Sum a list of monomials. Repeated degrees are accumulated, zeros are
    /// dropped, and mixed coefficient algebras are rejected.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Result<Self> {
        let mut coeffs: BTreeMap<i64, C> = BTreeMap::new();
        let mut exemplar: Option<C> = None;
        for (degree, c) in terms {
            match &exemplar {
                None => exemplar = Some(c.clone()),
                Some(e) => {
                    if !e.same_ring(&c) {
                        return Err(Error::SpecMismatch);
                    }
                }
            }
            insert_add(&mut coeffs, degree, c);
        }
        Ok(LaurentPoly { coeffs })
    }

    /// Coefficient at `degree`, if nonzero.
    pub fn coeff(&self, degree: i64) -> Option<&C> {
        self.coeffs.get(&degree)
    }

    /// Iterate stored terms in ascending degree order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Any stored coefficient; handy for reaching the ambient ring.
    pub fn any_coeff(&self) -> Option<&C> {
        self.coeffs.values().next()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &rhs.coeffs {
            insert_add(&mut coeffs, *k, c.clone());
        }
        LaurentPoly { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut coeffs = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &rhs.coeffs {
                insert_add(&mut coeffs, i + j, a.mul(b));
            }
        }
        LaurentPoly { coeffs }
    }

    /// Multiply every coefficient by `c`.
    pub fn mul_coeff(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = BTreeMap::new();
        for (k, a) in &self.coeffs {
            let prod = a.mul(c);
            if !prod.is_zero() {
                coeffs.insert(*k, prod);
            }
        }
        LaurentPoly { coeffs }
    }

    /// Multiply every coefficient by a rational scalar.
    pub fn mul_rational(&self, s: &Scalar) -> Self {
        if Zero::is_zero(s) {
            return Self::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.scale(s))).collect(),
        }
    }

    /// Multiply by `z^n`.
    pub fn shift(&self, n: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (k + n, c.clone())).collect(),
        }
    }

    /// Substitute `z -> z^-1`.
    pub fn mirror(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }

    /// Keep only the terms of degree at most `bound`.
    pub fn truncate_above(&self, bound: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .range(..=bound)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Keep only the terms of degree at least `bound`.
    pub fn truncate_below(&self, bound: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .range(bound..)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Evaluate at a rational point, staying in the coefficient ring.
    ///
    /// The polynomial must be nonzero (a zero polynomial carries no witness
    /// of the ring its value would live in), and `z0 = 0` is rejected when
    /// negative powers are present.
    pub fn eval_coeffwise(&self, z0: &Scalar) -> Result<C> {
        if Zero::is_zero(z0) && self.min_degree().is_some_and(|m| m < 0) {
            return Err(Error::DenominatorVanishes);
        }
        let mut acc: Option<C> = None;
        for (k, c) in &self.coeffs {
            let term = c.scale(&crate::scalar::pow(z0, *k));
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        acc.ok_or_else(|| {
            Error::PreconditionViolated("cannot evaluate the zero polynomial coefficientwise".into())
        })
    }
}

fn insert_add<C: Coefficient>(map: &mut BTreeMap<i64, C>, degree: i64, c: C) {
    if c.is_zero() {
        return;
    }
    match map.remove(&degree) {
        None => {
            map.insert(degree, c);
        }
        Some(existing) => {
            let sum = existing.add(&c);
            if !sum.is_zero() {
                map.insert(degree, sum);
            }
        }
    }
}

impl LaurentPoly<Scalar> {
    pub fn one() -> Self {
        Self::constant(Scalar::from_integer(1.into()))
    }

    /// Exact evaluation at a rational point.
    ///
    /// `z0 = 0` is allowed only when no negative powers are present;
    /// otherwise the evaluation has a vanishing denominator.
    pub fn eval(&self, z0: &Scalar) -> Result<Scalar> {
        if Zero::is_zero(z0) {
            if self.min_degree().is_some_and(|m| m < 0) {
                return Err(Error::DenominatorVanishes);
            }
            return Ok(self.coeff(0).cloned().unwrap_or_else(Scalar::zero));
        }
        let mut acc = Scalar::zero();
        for (k, c) in &self.coeffs {
            acc += c * &crate::scalar::pow(z0, *k);
        }
        Ok(acc)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(Scalar::is_integer)
    }
}

impl fmt::Display for LaurentPoly<Scalar> {
    /// Ascending degrees with explicit signs, e.g. `z^-1 + 1 + z` or
    /// `2 - 3/2*z^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            let negative = c.is_negative();
            let magnitude = c.abs();
            let body = match (*k, magnitude) {
                (0, m) => format_scalar(&m),
                (1, m) if m.is_one() => "z".to_string(),
                (1, m) => format!("{}*z", format_scalar(&m)),
                (k, m) if m.is_one() => format!("z^{k}"),
                (k, m) => format!("{}*z^{k}", format_scalar(&m)),
            };
            if first {
                write!(f, "{}{body}", if negative { "-" } else { "" })?;
                first = false;
            } else {
                write!(f, " {} {body}", if negative { "-" } else { "+" })?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::scalar::{int, ratio};
    use proptest::prelude::*;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly<Scalar> {
        LaurentPoly::from_terms(terms.iter().map(|&(k, c)| (k, int(c)))).unwrap()
    }

    #[test]
    fn product_of_geometric_factors() {
        let a = poly(&[(0, 1), (1, -1)]);
        let b = poly(&[(0, 1), (1, 1), (2, 1)]);
        assert_eq!(a.mul(&b), poly(&[(0, 1), (3, -1)]));
    }

    #[test]
    fn shift_moves_every_degree() {
        let p = poly(&[(0, 1), (1, 1)]);
        assert_eq!(p.shift(-2), poly(&[(-2, 1), (-1, 1)]));
        assert_eq!(p.shift(3).shift(-3), p);
    }

    #[test]
    fn dual_number_square_difference_collapses() {
        // (1 + eps z)(1 - eps z) = 1 because eps^2 = 0.
        let spec = AlgebraSpec::dual_numbers();
        let one = spec.unit_element();
        let eps = spec.element(vec![int(0), int(1)]).unwrap();
        let plus = LaurentPoly::from_terms(vec![(0, one.clone()), (1, eps.clone())]).unwrap();
        let minus = LaurentPoly::from_terms(vec![(0, one.clone()), (1, eps.negated())]).unwrap();
        assert_eq!(plus.mul(&minus), LaurentPoly::constant(one));
    }

    #[test]
    fn from_terms_accumulates_and_drops_zeros() {
        let p = LaurentPoly::from_terms(vec![(2, int(1)), (2, int(-1)), (0, int(3))]).unwrap();
        assert_eq!(p, poly(&[(0, 3)]));
        assert_eq!(p.num_terms(), 1);
        assert!(LaurentPoly::<Scalar>::from_terms(vec![]).unwrap().is_zero());
    }

    #[test]
    fn mixed_algebras_are_rejected() {
        let spec = AlgebraSpec::dual_numbers();
        let other = AlgebraSpec::dual_numbers(); // distinct Arc, equal content: same ring
        assert!(LaurentPoly::from_terms(vec![
            (0, spec.unit_element()),
            (1, other.unit_element()),
        ])
        .is_ok());
        let one_dim = std::sync::Arc::new(
            AlgebraSpec::new(vec!["1".into()], vec![vec![vec![int(1)]]], vec![int(1)]).unwrap(),
        );
        assert_eq!(
            LaurentPoly::from_terms(vec![
                (0, spec.unit_element()),
                (1, one_dim.unit_element()),
            ])
            .unwrap_err(),
            Error::SpecMismatch
        );
    }

    #[test]
    fn eval_is_exact() {
        let p = poly(&[(-1, 1), (0, 1), (1, 1)]);
        assert_eq!(p.eval(&int(1)).unwrap(), int(3));
        assert_eq!(p.eval(&int(2)).unwrap(), ratio(7, 2));
        assert_eq!(p.eval(&ratio(3, 2)).unwrap(), ratio(2, 3) + int(1) + ratio(3, 2));
        assert_eq!(p.eval(&int(0)).unwrap_err(), Error::DenominatorVanishes);
        assert_eq!(poly(&[(0, 4), (2, 1)]).eval(&int(0)).unwrap(), int(4));
    }

    #[test]
    fn display_matches_the_report_format() {
        assert_eq!(poly(&[(-1, 1), (0, 1), (1, 1)]).to_string(), "z^-1 + 1 + z");
        assert_eq!(poly(&[(0, 2), (2, -1)]).to_string(), "2 - z^2");
        assert_eq!(poly(&[(-3, -2), (1, 5)]).to_string(), "-2*z^-3 + 5*z");
        assert_eq!(LaurentPoly::<Scalar>::zero().to_string(), "0");
        let half = LaurentPoly::term(1, ratio(1, 2));
        assert_eq!(half.to_string(), "1/2*z");
    }

    #[test]
    fn mirror_reverses_degrees() {
        let p = poly(&[(-2, 3), (1, 1)]);
        assert_eq!(p.mirror(), poly(&[(2, 3), (-1, 1)]));
        assert_eq!(p.mirror().mirror(), p);
    }

    prop_compose! {
        fn small_poly()(terms in proptest::collection::vec(((-8i64..=8), (-9i64..=9)), 0..6)) -> LaurentPoly<Scalar> {
            LaurentPoly::from_terms(terms.into_iter().map(|(k, c)| (k, int(c)))).unwrap()
        }
    }

    proptest! {
        #[test]
        fn ring_laws_hold(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.sub(&a), LaurentPoly::zero());
        }

        #[test]
        fn degree_bounds_multiply(a in small_poly(), b in small_poly()) {
            // Over a field the extreme degrees add exactly.
            if let (Some(ma), Some(mb)) = (a.min_degree(), b.min_degree()) {
                prop_assert_eq!(a.mul(&b).min_degree(), Some(ma + mb));
                prop_assert_eq!(
                    a.mul(&b).max_degree(),
                    Some(a.max_degree().unwrap() + b.max_degree().unwrap())
                );
            } else {
                prop_assert!(a.mul(&b).is_zero());
            }
        }

        #[test]
        fn eval_is_a_ring_map(a in small_poly(), b in small_poly()) {
            let z0 = ratio(3, 2);
            prop_assert_eq!(
                a.mul(&b).eval(&z0).unwrap(),
                a.eval(&z0).unwrap() * b.eval(&z0).unwrap()
            );
            prop_assert_eq!(
                a.add(&b).eval(&z0).unwrap(),
                a.eval(&z0).unwrap() + b.eval(&z0).unwrap()
            );
        }
    }
}
