//! Exact equivariant character computation from circle fixed-point data.
//!
//! Given the fixed-point data of a Hamiltonian circle space — for each fixed
//! component an integer moment weight, the restricted line class, and the
//! weighted normal summands with their exterior powers — this crate computes
//! the character of the quantization as an honest Laurent polynomial in `z`,
//! entirely in exact rational arithmetic.
//!
//! The computation runs twice, expanding every localized term as a series at
//! `z = 0` and again at `z = infinity`, and insists that the two expansions
//! agree on a window around the expected support; in point mode it also
//! cross-checks against an independent sum of rational fractions. A dataset
//! that passes all paths yields an [`localize::EquivariantCharacter`]; one
//! that does not is rejected as inconsistent.

pub mod algebra;
pub mod coeff;
pub mod dataset;
pub mod datasets;
pub mod error;
pub mod examples;
pub mod fraction;
pub mod laurent;
pub mod localize;
pub mod manifold;
pub mod scalar;
pub mod series;
pub mod verify;

pub use algebra::{AlgebraElement, AlgebraSpec};
pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use localize::{localize, localize_series, EquivariantCharacter, Strategy, DEFAULT_MARGIN};
pub use manifold::{FixedComponent, ManifoldData, NormalSummand};
pub use scalar::Scalar;
