//! Fixed-point data: the combinatorial input of the localization formula.
//!
//! A dataset is a finite list of fixed components. Each component carries
//! its moment value (an integer), the class of the prequantum line restricted
//! to it, the weight decomposition of its normal bundle, and the functional
//! that pushes coefficient-ring classes forward to rationals.
//!
//! The normal bundle is recorded summand by summand: a [`NormalSummand`]
//! is an isotypic piece of nonzero integer weight together with the exterior
//! powers `Λ^0 .. Λ^rank` of its dual. `Λ^0` is always the unit; for data
//! whose coefficients are plain rationals the exterior powers of a rank-`n`
//! piece are the binomial numbers.
//!
//! Validation enforces the structural laws the localization argument leans
//! on, most importantly the extremal law: a component has no negative
//! weights exactly when its moment value is minimal, and no positive weights
//! exactly when it is maximal. Everything downstream assumes a dataset that
//! passed [`ManifoldData::validate`].

use std::fmt;

use crate::coeff::Coefficient;
use crate::scalar::{binomial, Scalar};

/// One isotypic piece of a normal bundle, with the exterior powers of its
/// dual listed from `Λ^0` (the unit) to `Λ^rank`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalSummand<C> {
    pub weight: i64,
    pub rank: u32,
    pub exterior: Vec<C>,
}

impl NormalSummand<Scalar> {
    /// A trivial rank-`rank` piece over a point: exterior powers are the
    /// binomial numbers.
    pub fn trivial(weight: i64, rank: u32) -> Self {
        NormalSummand {
            weight,
            rank,
            exterior: (0..=rank).map(|j| binomial(rank, j)).collect(),
        }
    }
}

impl<C: Coefficient> NormalSummand<C> {
    /// A piece whose exterior powers are binomial multiples of the given
    /// unit — the coefficient-ring image of a trivial bundle.
    pub fn trivial_in(weight: i64, rank: u32, one: &C) -> Self {
        NormalSummand {
            weight,
            rank,
            exterior: (0..=rank).map(|j| one.scale(&binomial(rank, j))).collect(),
        }
    }
}

/// A fixed component with everything the localization formula reads off it.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedComponent<C> {
    pub label: String,
    /// Moment value, an integer after the normalization of the circle action.
    pub moment: i64,
    /// Restriction of the prequantum line to this component.
    pub line_class: C,
    pub normal: Vec<NormalSummand<C>>,
    /// Coordinates of the functional that integrates a coefficient-ring
    /// class over the component. Length 1 for rational coefficients.
    pub pushforward: Vec<Scalar>,
}

impl FixedComponent<Scalar> {
    /// An isolated fixed point with trivial line restriction: the normal
    /// data is just the multiset of weights, given as `(weight, rank)`.
    pub fn point(label: &str, moment: i64, weights: &[(i64, u32)]) -> Self {
        FixedComponent {
            label: label.to_string(),
            moment,
            line_class: crate::scalar::int(1),
            normal: weights
                .iter()
                .map(|&(w, r)| NormalSummand::trivial(w, r))
                .collect(),
            pushforward: vec![crate::scalar::int(1)],
        }
    }
}

impl<C: Coefficient> FixedComponent<C> {
    /// Sum of `weight * rank` over positive weights: the order of vanishing
    /// of this component's contribution in the expansion at zero, before the
    /// moment shift.
    pub fn positive_degree(&self) -> i64 {
        self.normal
            .iter()
            .filter(|s| s.weight > 0)
            .map(|s| s.weight * s.rank as i64)
            .sum()
    }

    /// Sum of `|weight| * rank` over negative weights: the mirror quantity
    /// for the expansion at infinity.
    pub fn negative_degree(&self) -> i64 {
        self.normal
            .iter()
            .filter(|s| s.weight < 0)
            .map(|s| -s.weight * s.rank as i64)
            .sum()
    }

    /// The multiset of normal weights with multiplicity, sorted — used to
    /// compare the positive-side data of two spaces.
    pub fn weight_multiset(&self) -> Vec<(i64, u32)> {
        let mut ws: Vec<(i64, u32)> = self.normal.iter().map(|s| (s.weight, s.rank)).collect();
        ws.sort_unstable();
        ws
    }
}

/// A complete fixed-point dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldData<C> {
    pub name: String,
    pub components: Vec<FixedComponent<C>>,
}

impl<C: Coefficient> ManifoldData<C> {
    pub fn new(name: &str, components: Vec<FixedComponent<C>>) -> Self {
        ManifoldData {
            name: name.to_string(),
            components,
        }
    }

    pub fn moment_min(&self) -> Option<i64> {
        self.components.iter().map(|c| c.moment).min()
    }

    pub fn moment_max(&self) -> Option<i64> {
        self.components.iter().map(|c| c.moment).max()
    }

    /// Check every structural law the localization computation relies on.
    pub fn validate(&self) -> DataReport {
        let mut violations = Vec::new();
        if self.components.is_empty() {
            violations.push(DataViolation::NoComponents);
            return DataReport { violations };
        }

        let phi_min = self.moment_min().unwrap();
        let phi_max = self.moment_max().unwrap();
        let witness = &self.components[0].line_class;

        for (ci, c) in self.components.iter().enumerate() {
            if !c.line_class.same_ring(witness) {
                violations.push(DataViolation::RingMismatch {
                    component: ci,
                    place: "line class".into(),
                });
            }
            for (si, s) in c.normal.iter().enumerate() {
                if s.weight == 0 {
                    violations.push(DataViolation::ZeroWeight {
                        component: ci,
                        summand: si,
                    });
                }
                if s.exterior.len() != s.rank as usize + 1 {
                    violations.push(DataViolation::ExteriorLength {
                        component: ci,
                        summand: si,
                        expected: s.rank as usize + 1,
                        got: s.exterior.len(),
                    });
                }
                if let Some(base) = s.exterior.first() {
                    if !base.is_one() {
                        violations.push(DataViolation::ExteriorBase {
                            component: ci,
                            summand: si,
                        });
                    }
                }
                for e in &s.exterior {
                    if !e.same_ring(witness) {
                        violations.push(DataViolation::RingMismatch {
                            component: ci,
                            place: format!("exterior powers of summand {si}"),
                        });
                        break;
                    }
                }
            }
            for si in 0..c.normal.len() {
                for sj in si + 1..c.normal.len() {
                    if c.normal[si].weight == c.normal[sj].weight {
                        violations.push(DataViolation::RepeatedWeight {
                            component: ci,
                            weight: c.normal[si].weight,
                        });
                    }
                }
            }
            if c.line_class.pushforward(&c.pushforward).is_err() {
                violations.push(DataViolation::PushforwardArity {
                    component: ci,
                    got: c.pushforward.len(),
                });
            }

            let has_negative = c.normal.iter().any(|s| s.weight < 0);
            let has_positive = c.normal.iter().any(|s| s.weight > 0);
            if has_negative == (c.moment == phi_min) {
                violations.push(DataViolation::MinimumLaw {
                    component: ci,
                    label: c.label.clone(),
                });
            }
            if has_positive == (c.moment == phi_max) {
                violations.push(DataViolation::MaximumLaw {
                    component: ci,
                    label: c.label.clone(),
                });
            }
        }

        for msg in witness.ring_violations() {
            violations.push(DataViolation::RingLaw(msg));
        }

        DataReport { violations }
    }
}

/// One structural defect found by validation.
#[derive(Debug, Clone, PartialEq)]
pub enum DataViolation {
    NoComponents,
    ZeroWeight {
        component: usize,
        summand: usize,
    },
    RepeatedWeight {
        component: usize,
        weight: i64,
    },
    ExteriorLength {
        component: usize,
        summand: usize,
        expected: usize,
        got: usize,
    },
    ExteriorBase {
        component: usize,
        summand: usize,
    },
    PushforwardArity {
        component: usize,
        got: usize,
    },
    RingMismatch {
        component: usize,
        place: String,
    },
    /// No negative weights must hold exactly on the minimum level.
    MinimumLaw {
        component: usize,
        label: String,
    },
    /// No positive weights must hold exactly on the maximum level.
    MaximumLaw {
        component: usize,
        label: String,
    },
    /// The coefficient ring itself breaks an axiom.
    RingLaw(String),
}

impl fmt::Display for DataViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DataViolation::NoComponents => write!(f, "the dataset has no fixed components"),
            DataViolation::ZeroWeight { component, summand } => write!(
                f,
                "component {component}, summand {summand}: normal weight is zero"
            ),
            DataViolation::RepeatedWeight { component, weight } => write!(
                f,
                "component {component}: weight {weight} appears in more than one summand"
            ),
            DataViolation::ExteriorLength {
                component,
                summand,
                expected,
                got,
            } => write!(
                f,
                "component {component}, summand {summand}: expected {expected} exterior powers, got {got}"
            ),
            DataViolation::ExteriorBase { component, summand } => write!(
                f,
                "component {component}, summand {summand}: zeroth exterior power is not the unit"
            ),
            DataViolation::PushforwardArity { component, got } => write!(
                f,
                "component {component}: pushforward functional has {got} coordinates, which does not match the coefficient ring"
            ),
            DataViolation::RingMismatch { component, place } => write!(
                f,
                "component {component}: {place} lives in a different coefficient ring than the rest of the data"
            ),
            DataViolation::MinimumLaw { component, label } => write!(
                f,
                "component {component} ({label}): negative normal weights must be absent exactly on the minimum moment level"
            ),
            DataViolation::MaximumLaw { component, label } => write!(
                f,
                "component {component} ({label}): positive normal weights must be absent exactly on the maximum moment level"
            ),
            DataViolation::RingLaw(msg) => write!(f, "coefficient ring law broken: {msg}"),
        }
    }
}

/// Outcome of [`ManifoldData::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct DataReport {
    pub violations: Vec<DataViolation>,
}

impl DataReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for DataReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "fixed-point data is valid")
        } else {
            writeln!(f, "fixed-point data has {} violation(s):", self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  - {v}")?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::scalar::int;

    fn sphere() -> ManifoldData<Scalar> {
        ManifoldData::new(
            "sphere",
            vec![
                FixedComponent::point("south", -1, &[(1, 1)]),
                FixedComponent::point("north", 1, &[(-1, 1)]),
            ],
        )
    }

    #[test]
    fn sphere_data_is_valid() {
        let report = sphere().validate();
        assert!(report.is_valid(), "{report}");
        assert_eq!(format!("{report}"), "fixed-point data is valid");
    }

    #[test]
    fn flipping_a_weight_breaks_the_extremal_laws() {
        let mut m = sphere();
        m.components[0].normal[0].weight = -1;
        let report = m.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, DataViolation::MinimumLaw { component: 0, .. })));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, DataViolation::MaximumLaw { component: 0, .. })));
    }

    #[test]
    fn interior_component_needs_weights_on_both_sides() {
        // Three levels, middle one with only a positive weight: breaks the
        // minimum law (no negative weights away from the minimum).
        let m = ManifoldData::new(
            "broken",
            vec![
                FixedComponent::point("bottom", -1, &[(1, 1)]),
                FixedComponent::point("middle", 0, &[(2, 1)]),
                FixedComponent::point("top", 1, &[(-1, 1)]),
            ],
        );
        let report = m.validate();
        assert_eq!(
            report.violations,
            vec![DataViolation::MinimumLaw {
                component: 1,
                label: "middle".into()
            }]
        );
    }

    #[test]
    fn zero_weights_and_repeats_are_rejected() {
        let m = ManifoldData::new(
            "broken",
            vec![
                FixedComponent::point("south", -1, &[(0, 1), (1, 1)]),
                FixedComponent::point("north", 1, &[(-1, 1), (-1, 2)]),
            ],
        );
        let report = m.validate();
        assert!(report.violations.contains(&DataViolation::ZeroWeight {
            component: 0,
            summand: 0
        }));
        assert!(report.violations.contains(&DataViolation::RepeatedWeight {
            component: 1,
            weight: -1
        }));
    }

    #[test]
    fn exterior_power_shape_is_checked() {
        let mut m = sphere();
        m.components[0].normal[0].exterior.pop();
        m.components[1].normal[0].exterior[0] = int(2);
        let report = m.validate();
        assert!(report.violations.contains(&DataViolation::ExteriorLength {
            component: 0,
            summand: 0,
            expected: 2,
            got: 1
        }));
        assert!(report.violations.contains(&DataViolation::ExteriorBase {
            component: 1,
            summand: 0
        }));
    }

    #[test]
    fn pushforward_arity_is_checked() {
        let mut m = sphere();
        m.components[0].pushforward = vec![int(1), int(0)];
        let report = m.validate();
        assert!(report.violations.contains(&DataViolation::PushforwardArity {
            component: 0,
            got: 2
        }));
    }

    #[test]
    fn algebra_data_validates_and_catches_mixed_rings() {
        let dual = AlgebraSpec::dual_numbers();
        let one = dual.unit_element();
        let m = ManifoldData::new(
            "free cut",
            vec![FixedComponent {
                label: "level".into(),
                moment: 0,
                line_class: dual.element(vec![int(1), int(1)]).unwrap(),
                normal: vec![NormalSummand::trivial_in(1, 1, &one)],
                pushforward: vec![int(1), int(0)],
            }],
        );
        // Single component at the minimum with only positive weights, but it
        // is also the maximum level — the positive weights break the maximum
        // law, as they should for a lone component that is not a closed
        // fixed locus of both extremes.
        let report = m.validate();
        assert_eq!(
            report.violations,
            vec![DataViolation::MaximumLaw {
                component: 0,
                label: "level".into()
            }]
        );

        // Mixing in a second component over a different algebra is caught.
        let other = AlgebraSpec::dual_numbers();
        let mut tweaked_products = Vec::new();
        for i in 0..2 {
            let mut row = Vec::new();
            for j in 0..2 {
                row.push(other.product_coords(i, j).to_vec());
            }
            tweaked_products.push(row);
        }
        tweaked_products[1][1] = vec![int(1), int(0)]; // eps^2 = 1 now
        let changed = std::sync::Arc::new(
            AlgebraSpec::new(
                vec!["1".into(), "e".into()],
                tweaked_products,
                vec![int(1), int(0)],
            )
            .unwrap(),
        );
        let mut m2 = ManifoldData::new(
            "mixed",
            vec![
                FixedComponent {
                    label: "a".into(),
                    moment: 0,
                    line_class: dual.unit_element(),
                    normal: vec![NormalSummand::trivial_in(1, 1, &one)],
                    pushforward: vec![int(1), int(0)],
                },
                FixedComponent {
                    label: "b".into(),
                    moment: 1,
                    line_class: changed.unit_element(),
                    normal: vec![NormalSummand::trivial_in(-1, 1, &changed.unit_element())],
                    pushforward: vec![int(1), int(0)],
                },
            ],
        );
        let report = m2.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, DataViolation::RingMismatch { component: 1, .. })));
        // Fix the mismatch and the data is clean.
        m2.components[1].line_class = dual.unit_element();
        m2.components[1].normal = vec![NormalSummand::trivial_in(-1, 1, &one)];
        assert!(m2.validate().is_valid());
    }

    #[test]
    fn empty_dataset_is_flagged() {
        let m: ManifoldData<Scalar> = ManifoldData::new("empty", vec![]);
        assert_eq!(m.validate().violations, vec![DataViolation::NoComponents]);
    }

    #[test]
    fn weight_multisets_sort_for_comparison() {
        let c = FixedComponent::point("p", 0, &[(3, 1), (-2, 2), (1, 1)]);
        assert_eq!(c.weight_multiset(), vec![(-2, 2), (1, 1), (3, 1)]);
        assert_eq!(c.positive_degree(), 4);
        assert_eq!(c.negative_degree(), 4);
    }
}
