//! Exact rational scalars.
//!
//! Every number in this crate is an arbitrary-precision rational, kept in
//! lowest terms with a positive denominator. Floating point never appears:
//! equality of two results always means exact equality.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational number (lowest terms, positive denominator).
pub type Scalar = BigRational;

/// Integer scalar.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// The scalar `n/d`. Panics when `d == 0`; intended for literals in code.
pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parse a scalar written in decimal as `p` or `p/q`.
///
/// Whitespace around the literal is accepted; a zero denominator is an error.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let trimmed = text.trim();
    let bad = || Error::Number(text.to_string());
    match trimmed.split_once('/') {
        None => {
            let n = BigInt::from_str(trimmed).map_err(|_| bad())?;
            Ok(Scalar::from_integer(n))
        }
        Some((num, den)) => {
            let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(n, d))
        }
    }
}

/// Render a scalar as `p` or `p/q`, omitting a denominator of 1.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Binomial coefficient `C(n, k)` as a scalar; zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> Scalar {
    if k > n {
        return Scalar::zero();
    }
    Scalar::from_integer(num_integer::binomial(BigInt::from(n), BigInt::from(k)))
}

/// `x^k` for any integer `k`. Negative exponents require `x != 0`; raising
/// zero to a negative power panics, so callers guard evaluation points.
pub fn pow(x: &Scalar, k: i64) -> Scalar {
    let e = u32::try_from(k.unsigned_abs()).expect("exponent fits in u32");
    let p = num_traits::Pow::pow(x.clone(), e);
    if k < 0 {
        p.recip()
    } else {
        p
    }
}
