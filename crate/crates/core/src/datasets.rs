//! Ready-made fixed-point datasets.
//!
//! Small spaces with characters that can be checked against closed forms:
//! spheres at various speeds, the projective plane under two different
//! subcircles of its torus, products of spheres, and the cut spaces used by
//! the reduction checks. Constructors panic on out-of-range parameters —
//! they build trusted fixtures, not user input.
//!
//! Two of the cut datasets carry dual-number coefficients. When a cut level
//! is a fixed surface rather than a point, its line and normal classes live
//! in the K-ring of that surface, which for a sphere is the dual numbers
//! (`eps` = the point class, `eps^2 = 0`); the pushforward functional
//! integrates over the surface. The projective-plane cut is sharper still:
//! at odd levels every subcircle of the torus pins some line pointwise, so
//! a free cut does not exist and the quotient is an orbifold. Its dataset
//! carries the correction as a second, half-weighted component on the cut
//! level — the two sectors of the orbifold circle — and the reduction
//! identity then holds exactly.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::manifold::{FixedComponent, ManifoldData, NormalSummand};
use crate::scalar::{int, ratio, Scalar};
use crate::verify::CutTriple;

/// A sphere rotated with unit speed, poles at moments `-a` and `b`.
pub fn sphere(a: i64, b: i64) -> ManifoldData<Scalar> {
    assert!(a >= 1 && b >= 1, "pole moments must straddle zero");
    ManifoldData::new(
        &format!("sphere(-{a}, {b})"),
        vec![
            FixedComponent::point("south", -a, &[(1, 1)]),
            FixedComponent::point("north", b, &[(-1, 1)]),
        ],
    )
}

/// The sphere cut at level zero: the original, the cut space (south pole
/// replaced by a point on the zero level), and the reduced quantization —
/// the zero level is a free circle, so reduction is a single point.
pub fn sphere_cut(a: i64, b: i64) -> CutTriple<Scalar> {
    let plus = ManifoldData::new(
        &format!("sphere(-{a}, {b}) cut at zero"),
        vec![
            FixedComponent::point("cut level", 0, &[(1, 1)]),
            FixedComponent::point("north", b, &[(-1, 1)]),
        ],
    );
    CutTriple {
        original: sphere(a, b),
        plus_cut: plus,
        reduced_quantization: 1,
        note: "the zero level is one free orbit; the reduced space is a point".into(),
    }
}

/// A sphere whose minimum sits exactly on the zero level (moments 0 and 2).
pub fn shifted_sphere() -> ManifoldData<Scalar> {
    ManifoldData::new(
        "shifted sphere",
        vec![
            FixedComponent::point("south", 0, &[(1, 1)]),
            FixedComponent::point("north", 2, &[(-1, 1)]),
        ],
    )
}

/// The one-component space: a single fixed point with no normal directions.
pub fn point_space() -> ManifoldData<Scalar> {
    ManifoldData::new("point", vec![FixedComponent::point("pt", 0, &[])])
}

/// The projective plane under the `(1, 2)` subcircle of its torus, with the
/// degree-`d` line and the moment shifted by `c`.
///
/// The three fixed points carry tangent weights `(1, 2)`, `(-1, 1)` and
/// `(-1, -2)` and moments `-c`, `d - c`, `2d - c`. The multiplicity of
/// `z^g` in the character counts lattice points `(m, n) >= 0` with
/// `m + n <= d` and `c - m - 2n = g`.
pub fn projective_plane(d: i64, c: i64) -> ManifoldData<Scalar> {
    assert!(d >= 1, "the line degree must be positive");
    ManifoldData::new(
        &format!("projective plane, degree {d}, shift {c}"),
        vec![
            FixedComponent::point("p0", -c, &[(1, 1), (2, 1)]),
            FixedComponent::point("p1", d - c, &[(-1, 1), (1, 1)]),
            FixedComponent::point("p2", 2 * d - c, &[(-1, 1), (-2, 1)]),
        ],
    )
}

/// Dual numbers shared by the algebra-mode datasets below.
pub fn dual_coefficients() -> Arc<AlgebraSpec> {
    AlgebraSpec::dual_numbers()
}

/// Re-express rational fixed-point data inside a coefficient algebra:
/// classes become multiples of the unit and the pushforward reads off the
/// unit coordinate.
pub fn embed_in(m: &ManifoldData<Scalar>, spec: &Arc<AlgebraSpec>) -> ManifoldData<AlgebraElement> {
    let one = spec.unit_element();
    let mut functional = vec![Scalar::from_integer(0.into()); spec.dim()];
    let components = m
        .components
        .iter()
        .map(|c| {
            functional[0] = c.pushforward[0].clone();
            FixedComponent {
                label: c.label.clone(),
                moment: c.moment,
                line_class: one.scale(&c.line_class),
                normal: c
                    .normal
                    .iter()
                    .map(|s| NormalSummand {
                        weight: s.weight,
                        rank: s.rank,
                        exterior: s.exterior.iter().map(|e| one.scale(e)).collect(),
                    })
                    .collect(),
                pushforward: functional.clone(),
            }
        })
        .collect();
    ManifoldData::new(&m.name, components)
}

/// The projective plane of degree 3, shift 2, cut at level zero.
///
/// Level zero is not free — the orbifold circle there has two sectors — so
/// the cut space carries two components on the level: the untwisted sector
/// (a sphere with dual-number classes) and a half-weighted twisted sector
/// seen by the even part of the action.
pub fn projective_plane_cut() -> CutTriple<AlgebraElement> {
    let dual = dual_coefficients();
    let one = dual.unit_element();
    let one_eps = dual.element(vec![int(1), int(1)]).unwrap();
    let original = embed_in(&projective_plane(3, 2), &dual);
    let plus = ManifoldData::new(
        "projective plane cut at zero",
        vec![
            FixedComponent {
                label: "cut level, untwisted".into(),
                moment: 0,
                line_class: one_eps.clone(),
                normal: vec![NormalSummand {
                    weight: 1,
                    rank: 1,
                    exterior: vec![one.clone(), one_eps],
                }],
                pushforward: vec![int(1), ratio(1, 2)],
            },
            FixedComponent {
                label: "cut level, twisted".into(),
                moment: 0,
                line_class: one.scale(&ratio(1, 2)),
                normal: vec![NormalSummand::trivial_in(2, 1, &one)],
                pushforward: vec![int(1), int(0)],
            },
            FixedComponent {
                label: "p1".into(),
                moment: 1,
                line_class: one.clone(),
                normal: vec![
                    NormalSummand::trivial_in(-1, 1, &one),
                    NormalSummand::trivial_in(1, 1, &one),
                ],
                pushforward: vec![int(1), int(0)],
            },
            FixedComponent {
                label: "p2".into(),
                moment: 4,
                line_class: one.clone(),
                normal: vec![
                    NormalSummand::trivial_in(-1, 1, &one),
                    NormalSummand::trivial_in(-2, 1, &one),
                ],
                pushforward: vec![int(1), int(0)],
            },
        ],
    );
    CutTriple {
        original,
        plus_cut: plus,
        reduced_quantization: 2,
        note: "level zero is an orbifold circle; its untwisted and twisted sectors enter as separate components".into(),
    }
}

/// The projective plane under the diagonal subcircle: an isolated apex with
/// a doubled weight and a fixed sphere on the far axis, classes in the dual
/// numbers. The character of the degree-`d` polynomial space comes out with
/// multiplicities `1, 2, ..., d + 1`.
pub fn diagonal_plane(d: i64) -> ManifoldData<AlgebraElement> {
    assert!(d >= 1, "the line degree must be positive");
    let dual = dual_coefficients();
    let one = dual.unit_element();
    ManifoldData::new(
        &format!("plane under the diagonal circle, degree {d}"),
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
                moment: d,
                line_class: dual.element(vec![int(1), int(d)]).unwrap(),
                normal: vec![NormalSummand {
                    weight: -1,
                    rank: 1,
                    exterior: vec![one.clone(), dual.element(vec![int(1), int(-1)]).unwrap()],
                }],
                pushforward: vec![int(1), int(1)],
            },
        ],
    )
}

/// Two spheres under the antidiagonal circle of their product torus, with
/// the bidegree-`(1, 2)` line and a twist placing the levels at
/// `-1, 1, 1, 3`.
pub fn spheres_antidiagonal() -> ManifoldData<Scalar> {
    ManifoldData::new(
        "two spheres, antidiagonal circle",
        vec![
            FixedComponent::point("ns", -1, &[(1, 2)]),
            FixedComponent::point("nn", 1, &[(1, 1), (-1, 1)]),
            FixedComponent::point("ss", 1, &[(1, 1), (-1, 1)]),
            FixedComponent::point("sn", 3, &[(-1, 2)]),
        ],
    )
}

/// The antidiagonal product cut at level zero. The zero level is free — a
/// lens-free circle bundle over a sphere — so the cut space has a single
/// fixed sphere on the level, with dual-number classes, and the reduced
/// quantization is the sphere's own count of two sections.
pub fn spheres_antidiagonal_cut() -> CutTriple<AlgebraElement> {
    let dual = dual_coefficients();
    let one = dual.unit_element();
    let one_eps = dual.element(vec![int(1), int(1)]).unwrap();
    let original = embed_in(&spheres_antidiagonal(), &dual);
    let plus = ManifoldData::new(
        "two spheres, antidiagonal circle, cut at zero",
        vec![
            FixedComponent {
                label: "cut level".into(),
                moment: 0,
                line_class: one_eps.clone(),
                normal: vec![NormalSummand {
                    weight: 1,
                    rank: 1,
                    exterior: vec![one.clone(), one_eps],
                }],
                pushforward: vec![int(1), int(1)],
            },
            FixedComponent {
                label: "nn".into(),
                moment: 1,
                line_class: one.clone(),
                normal: vec![
                    NormalSummand::trivial_in(1, 1, &one),
                    NormalSummand::trivial_in(-1, 1, &one),
                ],
                pushforward: vec![int(1), int(0)],
            },
            FixedComponent {
                label: "ss".into(),
                moment: 1,
                line_class: one.clone(),
                normal: vec![
                    NormalSummand::trivial_in(1, 1, &one),
                    NormalSummand::trivial_in(-1, 1, &one),
                ],
                pushforward: vec![int(1), int(0)],
            },
            FixedComponent {
                label: "sn".into(),
                moment: 3,
                line_class: one.clone(),
                normal: vec![NormalSummand::trivial_in(-1, 2, &one)],
                pushforward: vec![int(1), int(0)],
            },
        ],
    );
    CutTriple {
        original,
        plus_cut: plus,
        reduced_quantization: 2,
        note: "the zero level is a free circle bundle over a sphere".into(),
    }
}

/// A product of spheres: factor `i` has `a_i + 1` states and rotates with
/// speed `w_i`, so the character is the product of geometric windows
/// `1 + z^-w_i + ... + z^(-a_i w_i)`. Fixed components are the `2^n` pole
/// combinations; coinciding weights merge into higher-rank summands.
pub fn product_of_spheres(factors: &[(i64, i64)]) -> ManifoldData<Scalar> {
    assert!(!factors.is_empty(), "at least one factor");
    for &(a, w) in factors {
        assert!(a >= 1 && w >= 1, "sizes and speeds must be positive");
    }
    let n = factors.len();
    let mut components = Vec::with_capacity(1usize << n);
    for mask in 0u32..1 << n {
        let mut moment = 0i64;
        let mut weights: BTreeMap<i64, u32> = BTreeMap::new();
        let mut label = String::with_capacity(n);
        for (i, &(a, w)) in factors.iter().enumerate() {
            if mask >> i & 1 == 1 {
                moment += a * w;
                *weights.entry(-w).or_insert(0) += 1;
                label.push('n');
            } else {
                *weights.entry(w).or_insert(0) += 1;
                label.push('s');
            }
        }
        let weights: Vec<(i64, u32)> = weights.into_iter().collect();
        components.push(FixedComponent::point(&label, moment, &weights));
    }
    ManifoldData::new(&format!("product of {n} spheres"), components)
}
