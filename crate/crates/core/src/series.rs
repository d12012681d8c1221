//! Truncated series expansions at `z = 0` and at `z = infinity`.
//!
//! A [`TruncatedSeries`] is a window of exactly-known coefficients of a
//! formal expansion. The two directions are completions on opposite ends of
//! the degree axis:
//!
//! - `AtZero`: the expansion has finitely many negative-degree terms. Every
//!   degree below `low` is exactly zero, the coefficients on `[low, high]`
//!   are stored exactly (zeros omitted), and degrees above `high` are
//!   unknown — `high` is the truncation bound.
//! - `AtInfinity`: the mirror image. Every degree above `high` is exactly
//!   zero, `[low, high]` is stored exactly, and degrees below `low` are
//!   unknown.
//!
//! All window bookkeeping is explicit: binary operations compute the largest
//! window on which the result is determined by the operands and never
//! fabricate coefficients outside it.
//!
//! Inversion expands the geometric series of the normalized tail. Writing
//! `p = z^v (c_0 + higher terms)` with `c_0` the lowest nonzero coefficient,
//! the `AtZero` inverse is `z^-v c_0^-1 sum_l (-t)^l` where
//! `t = c_0^-1 z^-v p - 1`; in particular the inverse's lowest-degree term is
//! `c_0^-1 z^-v` — the coefficient inverted is the lowest nonzero one, not
//! the constant term. The only precondition is that `c_0` is a unit.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Expansion direction of a truncated series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    AtZero,
    AtInfinity,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::AtZero => write!(f, "at zero"),
            Direction::AtInfinity => write!(f, "at infinity"),
        }
    }
}

/// What a series knows about one coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lookup<T> {
    /// Outside the determined window.
    Unknown,
    /// Known to be exactly zero.
    Zero,
    /// Known and nonzero.
    Value(T),
}

/// A window of exactly-known coefficients of a series expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    direction: Direction,
    low: i64,
    high: i64,
    coeffs: BTreeMap<i64, C>,
}

impl<C: Coefficient> TruncatedSeries<C> {
    fn assemble(direction: Direction, low: i64, high: i64, poly: &LaurentPoly<C>) -> Self {
        let coeffs = poly
            .iter()
            .filter(|(k, _)| *k >= low && *k <= high)
            .map(|(k, c)| (k, c.clone()))
            .collect();
        TruncatedSeries {
            direction,
            low,
            high,
            coeffs,
        }
    }

    /// Re-window a Laurent polynomial as a series, losslessly.
    ///
    /// For `AtZero` the bound must reach the top degree of `p`; for
    /// `AtInfinity` it must reach the bottom degree. Otherwise terms of `p`
    /// would fall outside the window and the embedding would lie.
    pub fn embed(p: &LaurentPoly<C>, direction: Direction, bound: i64) -> Result<Self> {
        let (low, high) = match direction {
            Direction::AtZero => {
                if let Some(top) = p.max_degree() {
                    if bound < top {
                        return Err(Error::WindowTooSmall {
                            needed: top,
                            got: bound,
                        });
                    }
                }
                (p.min_degree().unwrap_or(bound), bound)
            }
            Direction::AtInfinity => {
                if let Some(bottom) = p.min_degree() {
                    if bound > bottom {
                        return Err(Error::WindowTooSmall {
                            needed: bottom,
                            got: bound,
                        });
                    }
                }
                (bound, p.max_degree().unwrap_or(bound))
            }
        };
        Ok(Self::assemble(direction, low, high, p))
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Window of stored coefficients, inclusive on both ends.
    pub fn window(&self) -> (i64, i64) {
        (self.low, self.high)
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.high
    }

    /// Stored (hence nonzero) coefficient at `degree`.
    pub fn coeff(&self, degree: i64) -> Option<&C> {
        self.coeffs.get(&degree)
    }

    /// What is known about the coefficient at `degree`.
    pub fn lookup(&self, degree: i64) -> Lookup<&C> {
        let in_window = degree >= self.low && degree <= self.high;
        let known_zero_side = match self.direction {
            Direction::AtZero => degree < self.low,
            Direction::AtInfinity => degree > self.high,
        };
        if in_window {
            match self.coeffs.get(&degree) {
                Some(c) => Lookup::Value(c),
                None => Lookup::Zero,
            }
        } else if known_zero_side {
            Lookup::Zero
        } else {
            Lookup::Unknown
        }
    }

    /// The stored terms as a Laurent polynomial (the known jet).
    pub fn known_poly(&self) -> LaurentPoly<C> {
        LaurentPoly::from_terms(self.coeffs.iter().map(|(k, c)| (*k, c.clone())))
            .expect("series coefficients share one algebra")
    }

    fn require_same_direction(&self, rhs: &Self) -> Result<()> {
        if self.direction != rhs.direction {
            return Err(Error::DirectionMismatch);
        }
        Ok(())
    }

    /// Sum on the intersection of the determined windows.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.require_same_direction(rhs)?;
        let (low, high) = match self.direction {
            Direction::AtZero => (self.low.min(rhs.low), self.high.min(rhs.high)),
            Direction::AtInfinity => (self.low.max(rhs.low), self.high.max(rhs.high)),
        };
        if low > high {
            return Err(Error::EmptyWindow { low, high });
        }
        let sum = self.known_poly().add(&rhs.known_poly());
        Ok(Self::assemble(self.direction, low, high, &sum))
    }

    /// Product on the window determined by the operands.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.require_same_direction(rhs)?;
        let (low, high) = match self.direction {
            Direction::AtZero => (
                self.low + rhs.low,
                (self.low + rhs.high).min(rhs.low + self.high),
            ),
            Direction::AtInfinity => (
                (self.low + rhs.high).max(rhs.low + self.high),
                self.high + rhs.high,
            ),
        };
        if low > high {
            return Err(Error::EmptyWindow { low, high });
        }
        let product = mul_within(&self.known_poly(), &rhs.known_poly(), low, high);
        Ok(Self::assemble(self.direction, low, high, &product))
    }

    /// Multiply every coefficient by `c` (degree-preserving).
    pub fn mul_coeff(&self, c: &C) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, a) in &self.coeffs {
            let prod = a.mul(c);
            if !prod.is_zero() {
                coeffs.insert(*k, prod);
            }
        }
        TruncatedSeries {
            direction: self.direction,
            low: self.low,
            high: self.high,
            coeffs,
        }
    }

    /// Multiply by `z^n`, shifting the window along.
    pub fn shift(&self, n: i64) -> Self {
        TruncatedSeries {
            direction: self.direction,
            low: self.low + n,
            high: self.high + n,
            coeffs: self.coeffs.iter().map(|(k, c)| (k + n, c.clone())).collect(),
        }
    }

    /// Map every coefficient through a fallible linear map (used for
    /// pushforwards down to scalars). Window bounds are preserved.
    pub fn try_map<D: Coefficient>(
        &self,
        mut f: impl FnMut(&C) -> Result<D>,
    ) -> Result<TruncatedSeries<D>> {
        let mut coeffs = BTreeMap::new();
        for (k, c) in &self.coeffs {
            let mapped = f(c)?;
            if !mapped.is_zero() {
                coeffs.insert(*k, mapped);
            }
        }
        Ok(TruncatedSeries {
            direction: self.direction,
            low: self.low,
            high: self.high,
            coeffs,
        })
    }
}

/// Product of two Laurent polynomials, keeping only degrees in `[low, high]`.
fn mul_within<C: Coefficient>(
    a: &LaurentPoly<C>,
    b: &LaurentPoly<C>,
    low: i64,
    high: i64,
) -> LaurentPoly<C> {
    let mut terms = Vec::new();
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            let d = i + j;
            if d >= low && d <= high {
                terms.push((d, x.mul(y)));
            }
        }
    }
    LaurentPoly::from_terms(terms).expect("operands share one algebra")
}

/// Invert a Laurent polynomial as a series at `z = 0`, exactly through
/// degree `bound`.
///
/// Writing `p = z^v (c_0 + higher)`, the lowest nonzero coefficient `c_0`
/// must be a unit; the result has true lowest degree `-v` with coefficient
/// `c_0^-1` and window `[-v, bound]`.
pub fn invert_at_zero<C: Coefficient>(
    p: &LaurentPoly<C>,
    bound: i64,
) -> Result<TruncatedSeries<C>> {
    let v = p
        .min_degree()
        .ok_or_else(|| Error::NotAUnit("the zero polynomial".into()))?;
    let c0 = p.coeff(v).expect("minimal degree is stored");
    let c0_inv = c0.try_invert()?;
    if bound < -v {
        return Err(Error::WindowTooSmall {
            needed: -v,
            got: bound,
        });
    }
    let rel_order = bound + v;
    let one = LaurentPoly::constant(c0.one_like());
    // t = c_0^-1 z^-v p - 1 has only positive degrees.
    let t = p
        .shift(-v)
        .mul_coeff(&c0_inv)
        .sub(&one)
        .truncate_above(rel_order);
    // Geometric series sum_l (-t)^l via partial sums s <- 1 - t s; degree n
    // is final after n steps because t has valuation >= 1.
    let mut s = one.clone();
    if !t.is_zero() {
        for _ in 0..rel_order {
            s = one.sub(&mul_within(&t, &s, 0, rel_order));
        }
    }
    let inverse = s.mul_coeff(&c0_inv).shift(-v);
    Ok(TruncatedSeries::assemble(
        Direction::AtZero,
        -v,
        bound,
        &inverse,
    ))
}

/// Invert a Laurent polynomial as a series at `z = infinity`, exactly down
/// to degree `bound`: the mirror of [`invert_at_zero`].
///
/// Writing `p = z^w (c_top + lower)` with `c_top` the highest nonzero
/// coefficient, `c_top` must be a unit; the result has true top degree `-w`
/// and window `[bound, -w]`.
pub fn invert_at_infinity<C: Coefficient>(
    p: &LaurentPoly<C>,
    bound: i64,
) -> Result<TruncatedSeries<C>> {
    let mirrored = invert_at_zero(&p.mirror(), -bound).map_err(|e| match e {
        Error::WindowTooSmall { needed, got } => Error::WindowTooSmall {
            needed: -needed,
            got: -got,
        },
        other => other,
    })?;
    let (mlow, mhigh) = mirrored.window();
    Ok(TruncatedSeries::assemble(
        Direction::AtInfinity,
        -mhigh,
        -mlow,
        &mirrored.known_poly().mirror(),
    ))
}
