//! Finite-dimensional commutative coefficient algebras.
//!
//! A coefficient algebra is presented by a multiplication table over the
//! rationals: `d` basis labels, the coordinate vector of every basis product
//! `e_i * e_j`, and the coordinates of the unit. Elements are coordinate
//! vectors relative to that basis.
//!
//! The table is data, not code. Whether it really describes a commutative,
//! associative, unital algebra is checked by [`AlgebraSpec::validate`] and
//! never assumed; downstream code requires a validated spec.
//!
//! Invariants maintained by this module:
//! - element coordinates always have length `dim()` and refer to one shared
//!   [`AlgebraSpec`];
//! - inversion is exact: it solves the `d x d` multiplication system over the
//!   rationals and reports `NotAUnit` exactly when that system is singular.
//!
//! The running structured example is the dual-number algebra on basis
//! `{1, eps}` with `eps^2 = 0`: its units are the elements with nonzero
//! scalar part, and `(1 + eps)^-1 = 1 - eps`.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_scalar, int, Scalar};

/// A multiplication table describing a commutative unital algebra over the
/// rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraSpec {
    labels: Vec<String>,
    /// `products[i][j]` holds the coordinates of `e_i * e_j`.
    products: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
}

impl AlgebraSpec {
    /// Build a spec from raw table data, checking shapes only (dimension
    /// consistency). Axioms are checked separately by [`validate`].
    ///
    /// [`validate`]: AlgebraSpec::validate
    pub fn new(
        labels: Vec<String>,
        products: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Self> {
        let d = labels.len();
        if d == 0 {
            return Err(Error::AlgebraShape("empty basis".into()));
        }
        if unit.len() != d {
            return Err(Error::AlgebraShape(format!(
                "unit vector has length {}, expected {}",
                unit.len(),
                d
            )));
        }
        if products.len() != d {
            return Err(Error::AlgebraShape(format!(
                "product table has {} rows, expected {}",
                products.len(),
                d
            )));
        }
        for (i, row) in products.iter().enumerate() {
            if row.len() != d {
                return Err(Error::AlgebraShape(format!(
                    "product table row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    d
                )));
            }
            for (j, coords) in row.iter().enumerate() {
                if coords.len() != d {
                    return Err(Error::AlgebraShape(format!(
                        "product e_{i} * e_{j} has {} coordinates, expected {}",
                        coords.len(),
                        d
                    )));
                }
            }
        }
        Ok(AlgebraSpec {
            labels,
            products,
            unit,
        })
    }

    /// Dimension of the algebra as a rational vector space.
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Basis labels, in coordinate order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Coordinates of the unit element.
    pub fn unit_coords(&self) -> &[Scalar] {
        &self.unit
    }

    /// Coordinates of the basis product `e_i * e_j`.
    pub fn product_coords(&self, i: usize, j: usize) -> &[Scalar] {
        &self.products[i][j]
    }

    /// The dual-number algebra on basis `{1, eps}` with `eps^2 = 0`.
    pub fn dual_numbers() -> Arc<Self> {
        let zero = Scalar::zero;
        let one = || int(1);
        Arc::new(
            AlgebraSpec::new(
                vec!["1".into(), "eps".into()],
                vec![
                    vec![vec![one(), zero()], vec![zero(), one()]],
                    vec![vec![zero(), one()], vec![zero(), zero()]],
                ],
                vec![one(), zero()],
            )
            .expect("dual-number table is well-shaped"),
        )
    }

    /// Check the algebra axioms and report every violation found.
    pub fn validate(&self) -> AlgebraReport {
        let d = self.dim();
        let mut violations = Vec::new();
        for i in 0..d {
            for j in (i + 1)..d {
                if self.products[i][j] != self.products[j][i] {
                    violations.push(AlgebraViolation::Commutativity { i, j });
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    // (e_i e_j) e_k versus e_i (e_j e_k), expanded through the table.
                    let left = self.combine(&self.products[i][j], |l| &self.products[l][k]);
                    let right = self.combine(&self.products[j][k], |l| &self.products[i][l]);
                    if left != right {
                        violations.push(AlgebraViolation::Associativity { i, j, k });
                    }
                }
            }
        }
        for i in 0..d {
            let mut expected = vec![Scalar::zero(); d];
            expected[i] = int(1);
            if self.combine(&self.unit, |l| &self.products[l][i]) != expected {
                violations.push(AlgebraViolation::UnitLaw { i });
            }
        }
        AlgebraReport { violations }
    }

    /// Linear combination `sum_l weights[l] * rows(l)`.
    fn combine<'a>(&self, weights: &[Scalar], rows: impl Fn(usize) -> &'a [Scalar]) -> Vec<Scalar> {
        let mut acc = vec![Scalar::zero(); self.dim()];
        for (l, w) in weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for (k, c) in rows(l).iter().enumerate() {
                if !c.is_zero() {
                    acc[k] += w * c;
                }
            }
        }
        acc
    }

    /// Wrap a coordinate vector as an element of this algebra.
    pub fn element(self: &Arc<Self>, coords: Vec<Scalar>) -> Result<AlgebraElement> {
        if coords.len() != self.dim() {
            return Err(Error::AlgebraShape(format!(
                "element has {} coordinates, expected {}",
                coords.len(),
                self.dim()
            )));
        }
        Ok(AlgebraElement {
            spec: Arc::clone(self),
            coords,
        })
    }

    /// The unit element of this algebra.
    pub fn unit_element(self: &Arc<Self>) -> AlgebraElement {
        AlgebraElement {
            spec: Arc::clone(self),
            coords: self.unit.clone(),
        }
    }

    /// The zero element of this algebra.
    pub fn zero_element(self: &Arc<Self>) -> AlgebraElement {
        AlgebraElement {
            spec: Arc::clone(self),
            coords: vec![Scalar::zero(); self.dim()],
        }
    }
}

/// Result of [`AlgebraSpec::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraReport {
    pub violations: Vec<AlgebraViolation>,
}

impl AlgebraReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A specific axiom failure, with the offending basis indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraViolation {
    Commutativity { i: usize, j: usize },
    Associativity { i: usize, j: usize, k: usize },
    UnitLaw { i: usize },
}

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AlgebraViolation::Commutativity { i, j } => {
                write!(f, "commutativity fails at basis pair ({i}, {j})")
            }
            AlgebraViolation::Associativity { i, j, k } => {
                write!(f, "associativity fails at basis triple ({i}, {j}, {k})")
            }
            AlgebraViolation::UnitLaw { i } => {
                write!(f, "unit law fails at basis element {i}")
            }
        }
    }
}

/// An element of a finite-dimensional coefficient algebra: a coordinate
/// vector tied to its [`AlgebraSpec`].
#[derive(Debug, Clone)]
pub struct AlgebraElement {
    spec: Arc<AlgebraSpec>,
    coords: Vec<Scalar>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_spec(other) && self.coords == other.coords
    }
}

impl AlgebraElement {
    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// True when both elements refer to the same algebra (pointer fast path,
    /// structural fallback).
    pub fn same_spec(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Self> {
        if !self.same_spec(other) {
            return Err(Error::SpecMismatch);
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(AlgebraElement {
            spec: Arc::clone(&self.spec),
            coords,
        })
    }

    /// Coordinatewise sum; errors when the operands belong to different
    /// algebras.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    /// Coordinatewise difference; errors on an algebra mismatch.
    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Product through the structure constants; errors on an algebra
    /// mismatch.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if !self.same_spec(other) {
            return Err(Error::SpecMismatch);
        }
        let d = self.spec.dim();
        let mut acc = vec![Scalar::zero(); d];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.spec.products[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        acc[k] += &ab * c;
                    }
                }
            }
        }
        Ok(AlgebraElement {
            spec: Arc::clone(&self.spec),
            coords: acc,
        })
    }

    pub fn negated(&self) -> Self {
        AlgebraElement {
            spec: Arc::clone(&self.spec),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    /// Multiply every coordinate by a rational scalar.
    pub fn scale(&self, s: &Scalar) -> Self {
        AlgebraElement {
            spec: Arc::clone(&self.spec),
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }

    /// Exact inverse, found by solving the `d x d` linear system
    /// `(self) * x = unit` over the rationals.
    ///
    /// Errors with `NotAUnit` exactly when multiplication by `self` is a
    /// singular linear map.
    #[allow(clippy::needless_range_loop)] // parallel row/column indexing
    pub fn try_invert(&self) -> Result<Self> {
        let d = self.spec.dim();
        // Column j of the matrix is self * e_j.
        let mut matrix = vec![vec![Scalar::zero(); d]; d];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..d {
                for (k, c) in self.spec.products[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        matrix[k][j] += a * c;
                    }
                }
            }
        }
        let rhs = self.spec.unit.clone();
        match solve_exact(matrix, rhs) {
            Some(coords) => Ok(AlgebraElement {
                spec: Arc::clone(&self.spec),
                coords,
            }),
            None => Err(Error::NotAUnit(self.to_string())),
        }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let label = &self.spec.labels[i];
            let body = if label == "1" {
                format_scalar(&c.abs())
            } else if c.abs() == int(1) {
                label.clone()
            } else {
                format!("{}*{}", format_scalar(&c.abs()), label)
            };
            if first {
                if c < &Scalar::zero() {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if c < &Scalar::zero() {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// Solve `matrix * x = rhs` exactly by Gaussian elimination; `None` when
/// singular.
#[allow(clippy::needless_range_loop)] // elimination indexes two rows at once
fn solve_exact(mut matrix: Vec<Vec<Scalar>>, mut rhs: Vec<Scalar>) -> Option<Vec<Scalar>> {
    let d = rhs.len();
    for col in 0..d {
        let pivot = (col..d).find(|&r| !matrix[r][col].is_zero())?;
        matrix.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = int(1) / matrix[col][col].clone();
        for entry in matrix[col].iter_mut() {
            *entry *= &inv;
        }
        rhs[col] *= &inv;
        for row in 0..d {
            if row == col || matrix[row][col].is_zero() {
                continue;
            }
            let factor = matrix[row][col].clone();
            for c in col..d {
                let delta = &factor * &matrix[col][c];
                matrix[row][c] -= delta;
            }
            let delta = &factor * &rhs[col];
            rhs[row] -= delta;
        }
    }
    Some(rhs)
}
