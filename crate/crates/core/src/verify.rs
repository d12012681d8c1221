//! Machine verification of the invariance and reduction identities.
//!
//! Three statements are checked, always as exact equalities of rationals:
//!
//! 1. When the maximum moment value is nonzero, the invariant multiplicity
//!    of the character is already determined by the positive-moment
//!    components alone — their expansion at zero carries the full constant
//!    term. Two spaces sharing their positive-moment data therefore share
//!    their invariant multiplicity.
//! 2. When the minimum moment value is zero, the invariant multiplicity
//!    equals the integral of the line class over the zero level: the count
//!    of sections of the reduced line.
//! 3. Chaining the two across a cut: the invariant multiplicity of the
//!    original space equals that of the cut space, which equals the
//!    reduced quantization. This is the commuting square the whole crate
//!    exists to test.
//!
//! Every check reports both sides; nothing is collapsed to a boolean until
//! the caller asks.

use std::fmt;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::localize::{contribution, localize_series, Strategy};
use crate::manifold::{FixedComponent, ManifoldData};
use crate::scalar::{format_scalar, int, Scalar};
use crate::series::{Direction, Lookup};

use num_traits::Zero;

/// One exact identity with both sides evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub label: String,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds() {
            write!(
                f,
                "PASS {}: {} == {}",
                self.label,
                format_scalar(&self.lhs),
                format_scalar(&self.rhs)
            )
        } else {
            write!(
                f,
                "FAIL {}: {} != {}",
                self.label,
                format_scalar(&self.lhs),
                format_scalar(&self.rhs)
            )
        }
    }
}

/// The outcome of one verification identity: a bundle of equality checks.
#[derive(Debug, Clone, PartialEq)]
pub struct PropReport {
    pub checks: Vec<IdentityCheck>,
}

impl PropReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(IdentityCheck::holds)
    }
}

impl fmt::Display for PropReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Constant term of the expansion at zero of the positive-moment
/// components' contributions, computed without the rest of the space.
fn invariant_from_positive_side<C: Coefficient>(
    m: &ManifoldData<C>,
    margin: i64,
) -> Result<Scalar> {
    let mut total = Scalar::zero();
    for c in m.components.iter().filter(|c| c.moment > 0) {
        let s = contribution(c, Direction::AtZero, margin.max(0))?;
        match s.lookup(0) {
            Lookup::Value(v) => total += v,
            Lookup::Zero => {}
            Lookup::Unknown => {
                return Err(Error::PreconditionViolated(
                    "the expansion window must reach degree zero".into(),
                ))
            }
        }
    }
    Ok(total)
}

fn content_matches<C: Coefficient>(a: &FixedComponent<C>, b: &FixedComponent<C>) -> bool {
    a.moment == b.moment
        && a.line_class == b.line_class
        && a.normal == b.normal
        && a.pushforward == b.pushforward
}

/// Multiset equality of the positive-moment components, labels ignored.
pub fn positive_sides_match<C: Coefficient>(m: &ManifoldData<C>, n: &ManifoldData<C>) -> bool {
    let mine: Vec<&FixedComponent<C>> =
        m.components.iter().filter(|c| c.moment > 0).collect();
    let mut theirs: Vec<&FixedComponent<C>> =
        n.components.iter().filter(|c| c.moment > 0).collect();
    if mine.len() != theirs.len() {
        return false;
    }
    for c in mine {
        match theirs.iter().position(|d| content_matches(c, d)) {
            Some(i) => {
                theirs.swap_remove(i);
            }
            None => return false,
        }
    }
    true
}

/// First identity, single space: the invariant multiplicity computed by the
/// full two-sided localization equals the constant term contributed by the
/// positive-moment components alone. Requires a nonzero maximum moment.
pub fn check_prop1_single<C: Coefficient>(
    m: &ManifoldData<C>,
    margin: i64,
) -> Result<PropReport> {
    let phi_max = m.moment_max().ok_or_else(|| {
        Error::PreconditionViolated("fixed-point data has no components".into())
    })?;
    if phi_max == 0 {
        return Err(Error::PreconditionViolated(
            "the maximum moment value must be nonzero for the positive-side identity".into(),
        ));
    }
    let q = localize_series(m, margin, Strategy::default())?;
    let partial = invariant_from_positive_side(m, margin)?;
    Ok(PropReport {
        checks: vec![IdentityCheck {
            label: format!(
                "invariant multiplicity of {} from its positive-moment components",
                m.name
            ),
            lhs: q.invariant_part(),
            rhs: partial,
        }],
    })
}

/// First identity, pair form: both single-space checks plus the comparison
/// of invariant multiplicities. The two spaces must share their
/// positive-moment components (labels aside); that is the hypothesis.
pub fn check_prop1<C: Coefficient>(
    m: &ManifoldData<C>,
    n: &ManifoldData<C>,
    margin: i64,
) -> Result<PropReport> {
    if !positive_sides_match(m, n) {
        return Err(Error::PreconditionViolated(
            "the two spaces do not share their positive-moment fixed components".into(),
        ));
    }
    let mut checks = check_prop1_single(m, margin)?.checks;
    checks.extend(check_prop1_single(n, margin)?.checks);
    let qm = localize_series(m, margin, Strategy::default())?;
    let qn = localize_series(n, margin, Strategy::default())?;
    checks.push(IdentityCheck {
        label: format!(
            "invariant multiplicities of {} and {} agree",
            m.name, n.name
        ),
        lhs: qm.invariant_part(),
        rhs: qn.invariant_part(),
    });
    Ok(PropReport { checks })
}

/// Second identity: when the minimum moment value is zero, the invariant
/// multiplicity is the integral of the line class over the zero level.
pub fn check_prop2<C: Coefficient>(m: &ManifoldData<C>, margin: i64) -> Result<PropReport> {
    match m.moment_min() {
        Some(0) => {}
        _ => {
            return Err(Error::PreconditionViolated(
                "the minimum moment value must be zero for the zero-level identity".into(),
            ))
        }
    }
    let q = localize_series(m, margin, Strategy::default())?;
    let mut level_integral = Scalar::zero();
    for c in m.components.iter().filter(|c| c.moment == 0) {
        level_integral += c.line_class.pushforward(&c.pushforward)?;
    }
    Ok(PropReport {
        checks: vec![IdentityCheck {
            label: format!(
                "invariant multiplicity of {} equals the line integral over its zero level",
                m.name
            ),
            lhs: q.invariant_part(),
            rhs: level_integral,
        }],
    })
}

/// A space, its cut at level zero, and the independently known reduced
/// quantization.
#[derive(Debug, Clone, PartialEq)]
pub struct CutTriple<C> {
    pub original: ManifoldData<C>,
    /// The cut space: the positive-moment components of the original,
    /// unchanged, plus new components on the zero level.
    pub plus_cut: ManifoldData<C>,
    /// Dimension of the quantization of the reduced space at level zero.
    pub reduced_quantization: i64,
    pub note: String,
}

/// Structural checks tying the three pieces of a cut together. Returns a
/// list of problems; empty means the triple is well-formed.
pub fn validate_cut<C: Coefficient>(cut: &CutTriple<C>) -> Vec<String> {
    let mut problems = Vec::new();
    let original = cut.original.validate();
    if !original.is_valid() {
        for v in &original.violations {
            problems.push(format!("original: {v}"));
        }
    }
    let plus = cut.plus_cut.validate();
    if !plus.is_valid() {
        for v in &plus.violations {
            problems.push(format!("cut space: {v}"));
        }
    }
    if cut.original.components.iter().any(|c| c.moment == 0) {
        problems.push("the cut level must not meet fixed components of the original".into());
    }
    if cut.original.moment_min().is_some_and(|m| m >= 0) {
        problems.push("the original must have components below the cut level".into());
    }
    if cut.original.moment_max().is_some_and(|m| m <= 0) {
        problems.push("the original must have components above the cut level".into());
    }
    if cut.plus_cut.moment_min() != Some(0) {
        problems.push("the cut space must have its minimum exactly on the zero level".into());
    }
    if !positive_sides_match(&cut.original, &cut.plus_cut) {
        problems.push(
            "the positive-moment components must be carried over to the cut space unchanged"
                .into(),
        );
    }
    problems
}

/// Third identity: quantization commutes with reduction across the cut.
///
/// Checks that the invariant multiplicity survives the cut and that the cut
/// space's invariant multiplicity equals the reduced quantization; the
/// composite equality is reported as its own line because it is the
/// statement everything else serves.
pub fn check_reduction<C: Coefficient>(cut: &CutTriple<C>, margin: i64) -> Result<PropReport> {
    let problems = validate_cut(cut);
    if !problems.is_empty() {
        return Err(Error::PreconditionViolated(problems.join("; ")));
    }
    let q = localize_series(&cut.original, margin, Strategy::default())?;
    let q_plus = localize_series(&cut.plus_cut, margin, Strategy::default())?;
    let reduced = int(cut.reduced_quantization);
    Ok(PropReport {
        checks: vec![
            IdentityCheck {
                label: format!("invariant multiplicity survives the cut of {}", cut.original.name),
                lhs: q.invariant_part(),
                rhs: q_plus.invariant_part(),
            },
            IdentityCheck {
                label: format!(
                    "invariant multiplicity of {} equals the reduced quantization",
                    cut.plus_cut.name
                ),
                lhs: q_plus.invariant_part(),
                rhs: reduced.clone(),
            },
            IdentityCheck {
                label: format!(
                    "quantization of {} commutes with reduction",
                    cut.original.name
                ),
                lhs: q.invariant_part(),
                rhs: reduced,
            },
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets;

    #[test]
    fn positive_side_determines_the_invariant_part() {
        for (a, b) in [(1, 1), (2, 3), (4, 1)] {
            let report = check_prop1_single(&datasets::sphere(a, b), 8).unwrap();
            assert!(report.all_hold(), "sphere({a},{b}):\n{report}");
        }
        let report = check_prop1_single(&datasets::projective_plane(3, 2), 8).unwrap();
        assert!(report.all_hold(), "{report}");
        let report = check_prop1_single(&datasets::spheres_antidiagonal(), 8).unwrap();
        assert!(report.all_hold(), "{report}");
        let report = check_prop1_single(&datasets::diagonal_plane(3), 8).unwrap();
        assert!(report.all_hold(), "{report}");
    }

    #[test]
    fn prop1_requires_a_nonzero_maximum() {
        // Maximum on the zero level: the positive side misses the top
        // component's constant contribution and the identity is not even
        // well-posed.
        let m = crate::manifold::ManifoldData::new(
            "top at zero",
            vec![
                crate::manifold::FixedComponent::point("south", -2, &[(1, 1)]),
                crate::manifold::FixedComponent::point("north", 0, &[(-1, 1)]),
            ],
        );
        assert!(matches!(
            check_prop1_single(&m, 8),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn spaces_sharing_their_positive_side_share_their_invariant_part() {
        // Spheres with different south moments but the same north data.
        let report = check_prop1(&datasets::sphere(1, 1), &datasets::sphere(3, 1), 8).unwrap();
        assert!(report.all_hold(), "{report}");
        assert_eq!(report.checks.len(), 3);

        // Different north speeds: hypothesis violated.
        assert!(matches!(
            check_prop1(&datasets::sphere(1, 1), &datasets::sphere(1, 2), 8),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn zero_level_integral_gives_the_invariant_part() {
        let report = check_prop2(&datasets::shifted_sphere(), 8).unwrap();
        assert!(report.all_hold(), "{report}");
        assert_eq!(report.checks[0].lhs, int(1));

        let report = check_prop2(&datasets::diagonal_plane(4), 8).unwrap();
        assert!(report.all_hold(), "{report}");

        let report = check_prop2(&datasets::point_space(), 8).unwrap();
        assert!(report.all_hold(), "{report}");

        assert!(matches!(
            check_prop2(&datasets::sphere(1, 1), 8),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn prop2_on_cut_spaces_with_algebra_coefficients() {
        let report = check_prop2(&datasets::spheres_antidiagonal_cut().plus_cut, 8).unwrap();
        assert!(report.all_hold(), "{report}");
        assert_eq!(report.checks[0].lhs, int(2));

        let report = check_prop2(&datasets::projective_plane_cut().plus_cut, 8).unwrap();
        assert!(report.all_hold(), "{report}");
        assert_eq!(report.checks[0].lhs, int(2));
    }

    #[test]
    fn reduction_commutes_for_the_sphere_cuts() {
        for (a, b) in [(1, 1), (2, 3), (3, 1)] {
            let cut = datasets::sphere_cut(a, b);
            let report = check_reduction(&cut, 8).unwrap();
            assert!(report.all_hold(), "sphere({a},{b}):\n{report}");
        }
    }

    #[test]
    fn reduction_commutes_for_the_algebra_cuts() {
        let report = check_reduction(&datasets::spheres_antidiagonal_cut(), 8).unwrap();
        assert!(report.all_hold(), "{report}");
        let report = check_reduction(&datasets::projective_plane_cut(), 8).unwrap();
        assert!(report.all_hold(), "{report}");
    }

    #[test]
    fn malformed_cuts_are_listed_by_problem() {
        // Cut level touching a fixed component of the original.
        let mut cut = datasets::sphere_cut(1, 1);
        cut.original.components[0].moment = 0;
        let problems = validate_cut(&cut);
        assert!(
            problems.iter().any(|p| p.contains("cut level")),
            "{problems:?}"
        );

        // Tampered positive side.
        let mut cut = datasets::sphere_cut(1, 1);
        cut.plus_cut.components[1].moment = 2;
        let problems = validate_cut(&cut);
        assert!(
            problems.iter().any(|p| p.contains("carried over")),
            "{problems:?}"
        );

        // Cut space not resting on the zero level.
        let mut cut = datasets::sphere_cut(1, 2);
        cut.plus_cut.components[0].moment = 1;
        let problems = validate_cut(&cut);
        assert!(!problems.is_empty());
        assert!(matches!(
            check_reduction(&cut, 8),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn a_wrong_reduced_count_fails_the_check_but_not_the_run() {
        let mut cut = datasets::sphere_cut(1, 1);
        cut.reduced_quantization = 7;
        let report = check_reduction(&cut, 8).unwrap();
        assert!(!report.all_hold());
        // The cut-survival line still holds; the two reduced lines fail.
        assert!(report.checks[0].holds());
        assert!(!report.checks[1].holds());
        assert!(!report.checks[2].holds());
    }
}
