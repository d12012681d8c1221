//! Exact rational fractions of Laurent polynomials.
//!
//! This is the second, independent route to the character: instead of
//! expanding each term as a truncated series and cancelling numerically,
//! the terms are summed over a common denominator and the resulting
//! fraction is divided out exactly. The division either terminates with a
//! genuine Laurent polynomial or reports [`Error::NonPolynomialSum`] — there
//! is no tolerance anywhere.
//!
//! Fractions are kept unreduced; exactness comes from the final division,
//! not from normal forms along the way.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalar::Scalar;
use num_traits::Zero;

/// A quotient `num / den` of Laurent polynomials with nonzero denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFraction {
    num: LaurentPoly<Scalar>,
    den: LaurentPoly<Scalar>,
}

impl RationalFraction {
    pub fn new(num: LaurentPoly<Scalar>, den: LaurentPoly<Scalar>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RationalFraction { num, den })
    }

    pub fn num(&self) -> &LaurentPoly<Scalar> {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly<Scalar> {
        &self.den
    }

    /// Evaluate at a nonzero rational point.
    pub fn eval(&self, z0: &Scalar) -> Result<Scalar> {
        let den = self.den.eval(z0)?;
        if den.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(self.num.eval(z0)? / den)
    }
}

/// Sum fractions over a common denominator and divide out exactly.
///
/// Returns the unique Laurent polynomial equal to the sum, or
/// [`Error::NonPolynomialSum`] if the division leaves a remainder.
pub fn fraction_sum_to_poly(terms: &[RationalFraction]) -> Result<LaurentPoly<Scalar>> {
    let mut num = LaurentPoly::zero();
    let mut den = LaurentPoly::one();
    for t in terms {
        // num/den + t.num/t.den over the product denominator.
        num = num.mul(&t.den).add(&t.num.mul(&den));
        den = den.mul(&t.den);
    }
    divide_exact(&num, &den)
}

/// Exact division of Laurent polynomials over the rationals.
///
/// Both arguments are normalized by their lowest degree, reducing to
/// ordinary polynomial long division; a nonzero remainder is reported as
/// [`Error::NonPolynomialSum`].
pub fn divide_exact(
    num: &LaurentPoly<Scalar>,
    den: &LaurentPoly<Scalar>,
) -> Result<LaurentPoly<Scalar>> {
    let vd = den.min_degree().ok_or(Error::ZeroDenominator)?;
    let vn = match num.min_degree() {
        Some(v) => v,
        None => return Ok(LaurentPoly::zero()),
    };

    // Dense coefficient vectors of num / z^vn and den / z^vd.
    let n_deg = (num.max_degree().unwrap() - vn) as usize;
    let d_deg = (den.max_degree().unwrap() - vd) as usize;
    let mut rem: Vec<Scalar> = vec![Scalar::zero(); n_deg + 1];
    for (k, c) in num.iter() {
        rem[(k - vn) as usize] = c.clone();
    }
    let mut dvec: Vec<Scalar> = vec![Scalar::zero(); d_deg + 1];
    for (k, c) in den.iter() {
        dvec[(k - vd) as usize] = c.clone();
    }
    if n_deg < d_deg {
        return Err(Error::NonPolynomialSum);
    }

    let lead = dvec[d_deg].clone();
    let mut quo: Vec<Scalar> = vec![Scalar::zero(); n_deg - d_deg + 1];
    for i in (0..quo.len()).rev() {
        let c = &rem[i + d_deg] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, d) in dvec.iter().enumerate() {
            if !d.is_zero() {
                let delta = &c * d;
                rem[i + j] = &rem[i + j] - &delta;
            }
        }
        quo[i] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(Error::NonPolynomialSum);
    }

    LaurentPoly::from_terms(
        quo.into_iter()
            .enumerate()
            .map(|(i, c)| (i as i64 + vn - vd, c)),
    )
}
