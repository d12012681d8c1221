//! The coefficient abstraction shared by the Laurent machinery.
//!
//! Laurent polynomials and truncated series are generic over their
//! coefficients. Two coefficient types exist: plain rationals ("point mode",
//! where every fixed component is a point and classes are numbers) and
//! [`AlgebraElement`] ("algebra mode", where classes live in a declared
//! finite-dimensional algebra). The trait below is the small ring interface
//! the generic code needs, plus the linear functional used to push structured
//! coefficients down to rationals.
//!
//! Arithmetic on mismatched algebras panics here; container constructors
//! (`LaurentPoly::from_terms` and friends) reject mixed coefficients up
//! front, so a panic indicates a bug rather than bad input data.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Ring operations required of a coefficient, written as methods so that the
/// algebra handle travels with the values.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    /// The zero of the ring this value lives in.
    fn zero_like(&self) -> Self;

    /// The unit of the ring this value lives in.
    fn one_like(&self) -> Self;

    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn add(&self, rhs: &Self) -> Self;

    fn sub(&self, rhs: &Self) -> Self;

    fn neg(&self) -> Self;

    fn mul(&self, rhs: &Self) -> Self;

    /// Multiply by a rational scalar.
    fn scale(&self, s: &Scalar) -> Self;

    /// Exact inverse; `NotAUnit` when none exists.
    fn try_invert(&self) -> Result<Self>;

    /// True when both values live in the same ring.
    fn same_ring(&self, other: &Self) -> bool;

    /// Apply a linear functional, given by its values on the basis, to this
    /// coefficient. For rationals the basis is `{1}` and the functional is
    /// multiplication by its single entry.
    fn pushforward(&self, functional: &[Scalar]) -> Result<Scalar>;

    /// Violations of the ring axioms in the underlying table, if any.
    /// Rationals have none by construction.
    fn ring_violations(&self) -> Vec<String>;
}

impl Coefficient for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero()
    }

    fn one_like(&self) -> Self {
        Scalar::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }

    fn try_invert(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::NotAUnit("0".into()))
        } else {
            Ok(Scalar::one() / self)
        }
    }

    fn same_ring(&self, _other: &Self) -> bool {
        true
    }

    fn pushforward(&self, functional: &[Scalar]) -> Result<Scalar> {
        if functional.len() != 1 {
            return Err(Error::Dataset(format!(
                "pushforward vector has length {}, expected 1 for rational coefficients",
                functional.len()
            )));
        }
        Ok(self * &functional[0])
    }

    fn ring_violations(&self) -> Vec<String> {
        Vec::new()
    }
}

impl Coefficient for AlgebraElement {
    fn zero_like(&self) -> Self {
        self.spec().zero_element()
    }

    fn one_like(&self) -> Self {
        self.spec().unit_element()
    }

    fn is_zero(&self) -> bool {
        AlgebraElement::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("coefficients share an algebra")
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("coefficients share an algebra")
    }

    fn neg(&self) -> Self {
        self.negated()
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("coefficients share an algebra")
    }

    fn scale(&self, s: &Scalar) -> Self {
        AlgebraElement::scale(self, s)
    }

    fn try_invert(&self) -> Result<Self> {
        AlgebraElement::try_invert(self)
    }

    fn same_ring(&self, other: &Self) -> bool {
        self.same_spec(other)
    }

    fn pushforward(&self, functional: &[Scalar]) -> Result<Scalar> {
        if functional.len() != self.coords().len() {
            return Err(Error::Dataset(format!(
                "pushforward vector has length {}, expected {}",
                functional.len(),
                self.coords().len()
            )));
        }
        Ok(self
            .coords()
            .iter()
            .zip(functional)
            .map(|(a, p)| a * p)
            .sum())
    }

    fn ring_violations(&self) -> Vec<String> {
        self.spec()
            .validate()
            .violations
            .iter()
            .map(|v| v.to_string())
            .collect()
    }
}
