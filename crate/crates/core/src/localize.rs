//! The localization computation: from fixed-point data to the character.
//!
//! Each fixed component contributes `l z^-phi / lambda(N)` where `lambda(N)`
//! is the alternating sum of exterior powers of the dual normal bundle,
//! a Laurent polynomial over the coefficient ring with unit extreme terms.
//! The sum of contributions is computed twice, as a truncated expansion at
//! `z = 0` and at `z = infinity`. Individually the contributions have poles
//! on both sides; in the sum everything outside the moment window must
//! cancel exactly, and the two expansions must agree coefficient by
//! coefficient on a window that is wider than the final support by a
//! configurable margin. For rational coefficients the result is additionally
//! compared against an independent exact-fraction summation
//! ([`crate::fraction`]); the two routes share no code beyond the data
//! structures, which is the point.
//!
//! Component contributions are independent, so the fan-out over components
//! and directions is data-parallel; the `parallel` feature routes it through
//! a work-stealing thread pool, with a sequential fallback that computes the
//! same sums in the same order.

use std::fmt;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::fraction::{fraction_sum_to_poly, RationalFraction};
use crate::laurent::LaurentPoly;
use crate::manifold::{FixedComponent, ManifoldData, NormalSummand};
use crate::scalar::{pow, Scalar};
use crate::series::{invert_at_infinity, invert_at_zero, Direction, Lookup, TruncatedSeries};

use num_traits::Zero;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Extra coefficients computed beyond the moment window on both sides, to
/// give cancellation room to fail loudly.
pub const DEFAULT_MARGIN: i64 = 16;

/// How to fan out the per-component work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

// Not derivable: the default variant depends on the feature set.
#[allow(clippy::derivable_impls)]
impl Default for Strategy {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Strategy::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Strategy::Sequential
        }
    }
}

/// The alternating-sum factor of a single normal summand:
/// `sum_j (-1)^j Λ^j z^(-j * weight)`.
pub fn lambda_factor<C: Coefficient>(s: &NormalSummand<C>) -> LaurentPoly<C> {
    LaurentPoly::from_terms(s.exterior.iter().enumerate().map(|(j, e)| {
        let c = if j % 2 == 0 { e.clone() } else { e.neg() };
        (-(j as i64) * s.weight, c)
    }))
    .expect("exterior powers share one ring")
}

/// The full alternating sum for a component: the product of its summand
/// factors. Constant term is the unit; the extreme terms are units whenever
/// the top exterior powers are.
pub fn lambda_total<C: Coefficient>(c: &FixedComponent<C>) -> LaurentPoly<C> {
    let mut total = LaurentPoly::constant(c.line_class.one_like());
    for s in &c.normal {
        total = total.mul(&lambda_factor(s));
    }
    total
}

/// Split the alternating sum into the part from negative weights (only
/// nonnegative degrees of `z`) times the part from positive weights (only
/// nonpositive degrees), checking that the two halves multiply back to the
/// whole.
pub fn split_pq<C: Coefficient>(
    c: &FixedComponent<C>,
) -> Result<(LaurentPoly<C>, LaurentPoly<C>)> {
    let one = LaurentPoly::constant(c.line_class.one_like());
    let mut p = one.clone();
    let mut q = one;
    for s in &c.normal {
        let f = lambda_factor(s);
        if s.weight < 0 {
            p = p.mul(&f);
        } else {
            q = q.mul(&f);
        }
    }
    if p.mul(&q) != lambda_total(c) {
        return Err(Error::FactorizationMismatch);
    }
    Ok((p, q))
}

/// One component's contribution to the character, expanded in the given
/// direction, with rational coefficients after pushing forward.
///
/// The window bound is for the final series: coefficients are exact up to
/// degree `bound` (at zero) or down to it (at infinity).
pub fn contribution<C: Coefficient>(
    c: &FixedComponent<C>,
    direction: Direction,
    bound: i64,
) -> Result<TruncatedSeries<Scalar>> {
    let lt = lambda_total(c);
    let inverse = match direction {
        Direction::AtZero => invert_at_zero(&lt, bound + c.moment)?,
        Direction::AtInfinity => invert_at_infinity(&lt, bound + c.moment)?,
    };
    let local = inverse.mul_coeff(&c.line_class).shift(-c.moment);
    let series = local.try_map(|x| x.pushforward(&c.pushforward))?;

    // Order-of-vanishing bookkeeping: at zero the contribution starts at
    // degree (sum of positive weight * rank) - moment; at infinity it ends at
    // -(sum over negative weights of |weight| * rank) - moment. If the window
    // disagrees, some extreme exterior power was degenerate and the series
    // does not mean what the formula needs it to mean.
    match direction {
        Direction::AtZero => {
            let expected = c.positive_degree() - c.moment;
            if series.low() != expected {
                return Err(Error::InconsistentData(format!(
                    "contribution of {} starts at degree {} instead of {}",
                    c.label,
                    series.low(),
                    expected
                )));
            }
        }
        Direction::AtInfinity => {
            let expected = -c.negative_degree() - c.moment;
            if series.high() != expected {
                return Err(Error::InconsistentData(format!(
                    "contribution of {} ends at degree {} instead of {}",
                    c.label,
                    series.high(),
                    expected
                )));
            }
        }
    }
    Ok(series)
}

fn total_series<C: Coefficient>(
    m: &ManifoldData<C>,
    direction: Direction,
    bound: i64,
    strategy: Strategy,
) -> Result<TruncatedSeries<Scalar>> {
    let parts: Vec<TruncatedSeries<Scalar>> = match strategy {
        Strategy::Sequential => m
            .components
            .iter()
            .map(|c| contribution(c, direction, bound))
            .collect::<Result<_>>()?,
        #[cfg(feature = "parallel")]
        Strategy::Parallel => m
            .components
            .par_iter()
            .map(|c| contribution(c, direction, bound))
            .collect::<Result<_>>()?,
    };
    let mut parts = parts.into_iter();
    let first = parts
        .next()
        .ok_or_else(|| Error::PreconditionViolated("no components to sum".into()))?;
    parts.try_fold(first, |acc, s| acc.add(&s))
}

/// How the character was computed and which checks it survived.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub margin: i64,
    pub at_zero_window: (i64, i64),
    pub at_infinity_window: (i64, i64),
    /// Degrees on which the two expansions were compared coefficientwise.
    pub overlap: (i64, i64),
    /// Whether the exact-fraction route was run and agreed.
    pub fraction_oracle: Option<bool>,
}

/// The character: a Laurent polynomial in `z` with rational multiplicities,
/// together with a record of the cross-checks that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivariantCharacter {
    pub poly: LaurentPoly<Scalar>,
    pub provenance: Provenance,
}

impl EquivariantCharacter {
    /// Multiplicity of the weight-`g` isotypic part.
    pub fn multiplicity(&self, g: i64) -> Scalar {
        self.poly.coeff(g).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Multiplicity of the invariant part (the constant term).
    pub fn invariant_part(&self) -> Scalar {
        self.multiplicity(0)
    }

    /// Total dimension: the value at `z = 1`.
    pub fn dimension(&self) -> Scalar {
        self.poly.eval(&crate::scalar::int(1)).expect("1 is nonzero")
    }

    /// Degree window of the support, if nonempty.
    pub fn support(&self) -> Option<(i64, i64)> {
        Some((self.poly.min_degree()?, self.poly.max_degree()?))
    }

    pub fn is_integral(&self) -> bool {
        self.poly.is_integral()
    }

    /// Evaluate the character at a nonzero rational point.
    pub fn eval(&self, z0: &Scalar) -> Result<Scalar> {
        if Zero::is_zero(z0) {
            return Err(Error::PreconditionViolated(
                "characters are evaluated at nonzero points".into(),
            ));
        }
        self.poly.eval(z0)
    }
}

impl fmt::Display for EquivariantCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Sum the contributions in both expansion directions, check cancellation
/// and overlap agreement, and cut out the character.
///
/// The expansion at zero is computed through degree `-phi_min + margin`, the
/// expansion at infinity down to `-phi_max - margin`. Three checks must
/// pass, each failure reported as [`Error::InconsistentData`]:
/// coefficients above `-phi_min` vanish at zero, coefficients below
/// `-phi_max` vanish at infinity, and the two expansions agree on the whole
/// combined window.
pub fn localize_series<C: Coefficient>(
    m: &ManifoldData<C>,
    margin: i64,
    strategy: Strategy,
) -> Result<EquivariantCharacter> {
    if m.components.is_empty() {
        return Err(Error::PreconditionViolated(
            "fixed-point data has no components".into(),
        ));
    }
    if margin < 0 {
        return Err(Error::PreconditionViolated(
            "the order margin must be nonnegative".into(),
        ));
    }
    let phi_min = m.moment_min().unwrap();
    let phi_max = m.moment_max().unwrap();
    let upto = -phi_min + margin;
    let downto = -phi_max - margin;

    let at_zero = total_series(m, Direction::AtZero, upto, strategy)?;
    let at_infinity = total_series(m, Direction::AtInfinity, downto, strategy)?;

    for (d, c) in at_zero.known_poly().iter() {
        if d > -phi_min {
            return Err(Error::InconsistentData(format!(
                "expansion at zero keeps {c} * z^{d} above the moment window top {}",
                -phi_min
            )));
        }
    }
    for (d, c) in at_infinity.known_poly().iter() {
        if d < -phi_max {
            return Err(Error::InconsistentData(format!(
                "expansion at infinity keeps {c} * z^{d} below the moment window bottom {}",
                -phi_max
            )));
        }
    }
    for d in downto..=upto {
        let left = at_zero.lookup(d);
        let right = at_infinity.lookup(d);
        match (&left, &right) {
            (Lookup::Unknown, _) | (_, Lookup::Unknown) => {
                return Err(Error::InconsistentData(format!(
                    "degree {d} is not determined by both expansions"
                )));
            }
            _ => {
                if left != right {
                    return Err(Error::InconsistentData(format!(
                        "the two expansions disagree at degree {d}"
                    )));
                }
            }
        }
    }

    let poly = at_zero
        .known_poly()
        .truncate_above(-phi_min)
        .truncate_below(-phi_max);
    Ok(EquivariantCharacter {
        poly,
        provenance: Provenance {
            margin,
            at_zero_window: at_zero.window(),
            at_infinity_window: at_infinity.window(),
            overlap: (downto, upto),
            fraction_oracle: None,
        },
    })
}

/// A single component's term as an exact fraction (rational coefficients).
pub fn component_fraction(c: &FixedComponent<Scalar>) -> Result<RationalFraction> {
    let weight = c.line_class.pushforward(&c.pushforward)?;
    RationalFraction::new(LaurentPoly::term(-c.moment, weight), lambda_total(c))
}

/// Full localization for rational coefficients: the series route plus the
/// independent exact-fraction summation, which must agree term for term.
pub fn localize(m: &ManifoldData<Scalar>, margin: i64) -> Result<EquivariantCharacter> {
    let mut character = localize_series(m, margin, Strategy::default())?;
    let fractions = m
        .components
        .iter()
        .map(component_fraction)
        .collect::<Result<Vec<_>>>()?;
    let oracle = fraction_sum_to_poly(&fractions)?;
    if oracle != character.poly {
        return Err(Error::InconsistentData(format!(
            "series localization found {} but the exact fraction sum is {}",
            character.poly, oracle
        )));
    }
    character.provenance.fraction_oracle = Some(true);
    Ok(character)
}

/// Evaluate the sum of exact component fractions at a nonzero rational
/// point, staying inside the coefficient ring until the final pushforward.
///
/// This is the evaluation route that works for any coefficient ring: the
/// alternating sum is evaluated pointwise, inverted in the ring, multiplied
/// by the line class and pushed forward. A non-invertible value means the
/// point is a pole: [`Error::DenominatorVanishes`].
pub fn eval_fraction_sum<C: Coefficient>(m: &ManifoldData<C>, z0: &Scalar) -> Result<Scalar> {
    if Zero::is_zero(z0) {
        return Err(Error::PreconditionViolated(
            "evaluation points must be nonzero".into(),
        ));
    }
    let mut total = Scalar::zero();
    for c in &m.components {
        let lt = lambda_total(c);
        let den = lt.eval_coeffwise(z0)?;
        let den_inv = den.try_invert().map_err(|e| match e {
            Error::NotAUnit(_) => Error::DenominatorVanishes,
            other => other,
        })?;
        let value = c.line_class.mul(&den_inv).pushforward(&c.pushforward)?;
        total += value * pow(z0, -c.moment);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::manifold::FixedComponent;
    use crate::scalar::{int, ratio};

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly<Scalar> {
        LaurentPoly::from_terms(terms.iter().map(|&(k, c)| (k, int(c)))).unwrap()
    }

    fn sphere(a: i64, b: i64) -> ManifoldData<Scalar> {
        ManifoldData::new(
            "sphere",
            vec![
                FixedComponent::point("south", -a, &[(1, 1)]),
                FixedComponent::point("north", b, &[(-1, 1)]),
            ],
        )
    }

    #[test]
    fn lambda_factors_match_hand_computation() {
        let s = NormalSummand::trivial(1, 1);
        assert_eq!(lambda_factor(&s), poly(&[(0, 1), (-1, -1)])); // 1 - z^-1
        let s = NormalSummand::trivial(-2, 1);
        assert_eq!(lambda_factor(&s), poly(&[(0, 1), (2, -1)])); // 1 - z^2
        let s = NormalSummand::trivial(1, 2);
        // 1 - 2 z^-1 + z^-2
        assert_eq!(lambda_factor(&s), poly(&[(0, 1), (-1, -2), (-2, 1)]));
    }

    #[test]
    fn lambda_total_and_split_agree() {
        let c = FixedComponent::point("saddle", 0, &[(1, 1), (-1, 1)]);
        let total = lambda_total(&c);
        // (1 - z^-1)(1 - z) = -z^-1 + 2 - z
        assert_eq!(total, poly(&[(-1, -1), (0, 2), (1, -1)]));
        let (p, q) = split_pq(&c).unwrap();
        assert_eq!(p, poly(&[(0, 1), (1, -1)]));
        assert_eq!(q, poly(&[(0, 1), (-1, -1)]));
        assert_eq!(p.mul(&q), total);
    }

    #[test]
    fn dual_number_lambda_factor() {
        let dual = AlgebraSpec::dual_numbers();
        let one_eps = dual.element(vec![int(1), int(1)]).unwrap();
        let s = NormalSummand {
            weight: 1,
            rank: 1,
            exterior: vec![dual.unit_element(), one_eps.clone()],
        };
        let f = lambda_factor(&s);
        assert_eq!(f.coeff(0), Some(&dual.unit_element()));
        assert_eq!(f.coeff(-1), Some(&one_eps.negated()));
    }

    #[test]
    fn contribution_of_a_minimum_point() {
        // Moment -1, weight +1: l z / (1 - z^-1) expands at zero as
        // -z^2 - z^3 - ... and at infinity as z + 1 + z^-1 + ...
        let c = FixedComponent::point("south", -1, &[(1, 1)]);
        let s = contribution(&c, Direction::AtZero, 4).unwrap();
        assert_eq!(s.window(), (2, 4));
        assert_eq!(s.known_poly(), poly(&[(2, -1), (3, -1), (4, -1)]));

        let t = contribution(&c, Direction::AtInfinity, -2).unwrap();
        assert_eq!(t.window(), (-2, 1));
        assert_eq!(t.known_poly(), poly(&[(1, 1), (0, 1), (-1, 1), (-2, 1)]));
    }

    #[test]
    fn sphere_character_is_a_window_of_ones() {
        let q = localize(&sphere(1, 1), 8).unwrap();
        assert_eq!(q.poly, poly(&[(-1, 1), (0, 1), (1, 1)]));
        assert_eq!(q.invariant_part(), int(1));
        assert_eq!(q.dimension(), int(3));
        assert_eq!(q.support(), Some((-1, 1)));
        assert!(q.is_integral());
        assert_eq!(q.provenance.fraction_oracle, Some(true));

        let q = localize(&sphere(2, 3), 8).unwrap();
        assert_eq!(
            q.poly,
            poly(&[(-3, 1), (-2, 1), (-1, 1), (0, 1), (1, 1), (2, 1)])
        );
    }

    #[test]
    fn sequential_and_default_strategies_agree() {
        let m = sphere(2, 2);
        let a = localize_series(&m, 6, Strategy::Sequential).unwrap();
        let b = localize_series(&m, 6, Strategy::default()).unwrap();
        assert_eq!(a.poly, b.poly);
    }

    #[test]
    fn projective_plane_with_doubled_weights() {
        // Isolated points with weights (1,2), (-1,1), (-2,-1) scaled to a
        // cubic curve class: moments -2, 1, 4 after shifting.
        let m = ManifoldData::new(
            "projective plane",
            vec![
                FixedComponent::point("p0", -2, &[(1, 1), (2, 1)]),
                FixedComponent::point("p1", 1, &[(-1, 1), (1, 1)]),
                FixedComponent::point("p2", 4, &[(-1, 1), (-2, 1)]),
            ],
        );
        assert!(m.validate().is_valid());
        let q = localize(&m, 8).unwrap();
        // Sections of the degree-3 line with the shifted grading: count
        // lattice points (a, b) >= 0 with a + b <= 3 at degree 2 - (a + 2b).
        let expected = poly(&[(2, 1), (1, 1), (0, 2), (-1, 2), (-2, 2), (-3, 1), (-4, 1)]);
        assert_eq!(q.poly, expected);
        assert_eq!(q.dimension(), int(10));
        assert_eq!(q.invariant_part(), int(2));
    }

    #[test]
    fn single_point_with_no_normal_directions() {
        let m = ManifoldData::new("point", vec![FixedComponent::point("pt", 0, &[])]);
        assert!(m.validate().is_valid());
        let q = localize(&m, 4).unwrap();
        assert_eq!(q.poly, poly(&[(0, 1)]));
    }

    #[test]
    fn fractional_line_classes_flow_through() {
        // Scale both line restrictions by 1/2: the routes still agree and
        // the result is simply not integral.
        let mut m = sphere(1, 1);
        m.components[0].line_class = ratio(1, 2);
        m.components[1].line_class = ratio(1, 2);
        let q = localize(&m, 6).unwrap();
        assert_eq!(q.multiplicity(1), ratio(1, 2));
        assert_eq!(q.dimension(), ratio(3, 2));
        assert!(!q.is_integral());
    }

    #[test]
    fn inconsistent_data_is_refused_by_the_cancellation_check() {
        // A doubled weight at the minimum with an unmatched maximum: each
        // component is lawful on its own, but the tails cannot cancel and
        // the sum of fractions is not a Laurent polynomial.
        let m = ManifoldData::new(
            "mismatched",
            vec![
                FixedComponent::point("south", -1, &[(2, 1)]),
                FixedComponent::point("north", 1, &[(-1, 1)]),
            ],
        );
        assert!(m.validate().is_valid());
        let err = localize_series(&m, 6, Strategy::Sequential).unwrap_err();
        assert!(matches!(err, Error::InconsistentData(_)), "{err}");
    }

    #[test]
    fn margin_must_be_nonnegative() {
        assert!(matches!(
            localize_series(&sphere(1, 1), -1, Strategy::Sequential),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn algebra_coefficients_localize() {
        // The projective plane under the diagonal subcircle of its torus:
        // the apex is an isolated point with a doubled weight, and the
        // opposite axis is a fixed sphere whose classes live in the dual
        // numbers (eps = the hyperplane class on the sphere, eps^2 = 0).
        // Exactly the degree-9 polynomial's honest character comes out.
        let dual = AlgebraSpec::dual_numbers();
        let one = dual.unit_element();
        let m = ManifoldData::new(
            "plane under the diagonal circle",
            vec![
                FixedComponent {
                    label: "apex".into(),
                    moment: 0,
                    line_class: one.clone(),
                    normal: vec![NormalSummand::trivial_in(1, 2, &one)],
                    pushforward: vec![int(1), int(0)],
                },
                FixedComponent {
                    label: "axis".into(),
                    moment: 3,
                    line_class: dual.element(vec![int(1), int(3)]).unwrap(),
                    normal: vec![NormalSummand {
                        weight: -1,
                        rank: 1,
                        exterior: vec![one.clone(), dual.element(vec![int(1), int(-1)]).unwrap()],
                    }],
                    pushforward: vec![int(1), int(1)],
                },
            ],
        );
        assert!(m.validate().is_valid());
        let q = localize_series(&m, 8, Strategy::Sequential).unwrap();
        assert_eq!(q.poly, poly(&[(0, 1), (-1, 2), (-2, 3), (-3, 4)]));
        assert_eq!(q.dimension(), int(10));
        assert_eq!(q.invariant_part(), int(1));
        // Fraction route at sample points agrees with the polynomial.
        for z0 in [int(2), int(3), ratio(3, 2), int(-2)] {
            assert_eq!(
                q.eval(&z0).unwrap(),
                eval_fraction_sum(&m, &z0).unwrap(),
                "at {z0}"
            );
        }
    }

    #[test]
    fn evaluation_refuses_poles_and_zero() {
        let m = sphere(1, 1);
        assert_eq!(
            eval_fraction_sum(&m, &int(1)).unwrap_err(),
            Error::DenominatorVanishes
        );
        assert!(matches!(
            eval_fraction_sum(&m, &Scalar::zero()),
            Err(Error::PreconditionViolated(_))
        ));
        // Away from poles both routes agree.
        let q = localize(&m, 6).unwrap();
        for z0 in [int(2), int(-1), ratio(1, 3)] {
            assert_eq!(q.eval(&z0).unwrap(), eval_fraction_sum(&m, &z0).unwrap());
        }
    }

    #[test]
    fn split_pq_postconditions_on_valid_data() {
        let m = sphere(2, 5);
        for c in &m.components {
            let (p, q) = split_pq(c).unwrap();
            assert!(p.min_degree().is_none_or(|d| d >= 0));
            assert!(q.max_degree().is_none_or(|d| d <= 0));
            assert_eq!(p.coeff(0), Some(&int(1)));
            assert_eq!(q.coeff(0), Some(&int(1)));
        }
    }
}
