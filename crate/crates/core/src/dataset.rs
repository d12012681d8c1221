//! The on-disk dataset format: JSON in, checked structures out.
//!
//! A dataset file carries a schema version, a mode (`point` for rational
//! coefficients, `algebra` for structure-constant coefficients), metadata,
//! the fixed components, and optionally a cut: the components of the space
//! cut at level zero together with the independently known reduced
//! quantization.
//!
//! Every rational in a file is a string, `"p"` or `"p/q"`, so that files
//! stay exact and diff cleanly; weights, moments and ranks are plain JSON
//! integers. Parsing never guesses: any shape problem is reported with the
//! path of the offending field, and everything semantic is left to
//! [`ManifoldData::validate`] so that parse errors and data violations stay
//! distinguishable.

use std::sync::Arc;

use serde::Deserialize;

use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::localize::{
    eval_fraction_sum, localize, localize_series, EquivariantCharacter, Strategy,
};
use crate::manifold::{DataReport, FixedComponent, ManifoldData, NormalSummand};
use crate::scalar::{binomial, int, parse_scalar, Scalar};
use crate::verify::{
    check_prop1_single, check_prop2, check_reduction, CutTriple, PropReport,
};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDataset {
    schema_version: u32,
    mode: String,
    metadata: RawMetadata,
    #[serde(default)]
    algebra: Option<RawAlgebra>,
    components: Vec<RawComponent>,
    #[serde(default)]
    cut: Option<RawCut>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMetadata {
    name: String,
    #[serde(default)]
    #[allow(dead_code)]
    description: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    basis: Vec<String>,
    unit: Vec<String>,
    products: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    label: String,
    phi: i64,
    line_class: RawClass,
    #[serde(default)]
    summands: Vec<RawSummand>,
    #[serde(default)]
    pushforward: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawClass {
    Scalar(String),
    Coords(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSummand {
    weight: i64,
    rank: u32,
    #[serde(default)]
    exterior_powers: Option<RawExterior>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawExterior {
    Scalars(Vec<String>),
    Coords(Vec<Vec<String>>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCut {
    plus_components: Vec<RawComponent>,
    reduced_quantization: i64,
    #[serde(default)]
    note: Option<String>,
}

fn scalar_at(text: &str, path: &str) -> Result<Scalar> {
    parse_scalar(text).map_err(|_| {
        Error::Dataset(format!("{path}: cannot parse `{text}` as an exact rational"))
    })
}

fn scalars_at(raw: &[String], path: &str) -> Result<Vec<Scalar>> {
    raw.iter()
        .enumerate()
        .map(|(i, s)| scalar_at(s, &format!("{path}[{i}]")))
        .collect()
}

fn element_at(raw: &[String], spec: &Arc<AlgebraSpec>, path: &str) -> Result<AlgebraElement> {
    if raw.len() != spec.dim() {
        return Err(Error::Dataset(format!(
            "{path}: expected {} coordinates, found {}",
            spec.dim(),
            raw.len()
        )));
    }
    let coords = scalars_at(raw, path)?;
    spec.element(coords)
        .map_err(|e| Error::Dataset(format!("{path}: {e}")))
}

fn build_algebra(raw: &RawAlgebra) -> Result<Arc<AlgebraSpec>> {
    let mut products = Vec::with_capacity(raw.products.len());
    for (i, row) in raw.products.iter().enumerate() {
        let mut out_row = Vec::with_capacity(row.len());
        for (j, cell) in row.iter().enumerate() {
            out_row.push(scalars_at(cell, &format!("algebra.products[{i}][{j}]"))?);
        }
        products.push(out_row);
    }
    let unit = scalars_at(&raw.unit, "algebra.unit")?;
    AlgebraSpec::new(raw.basis.clone(), products, unit)
        .map(Arc::new)
        .map_err(|e| Error::Dataset(format!("algebra: {e}")))
}

fn point_component(raw: &RawComponent, path: &str) -> Result<FixedComponent<Scalar>> {
    let line_class = match &raw.line_class {
        RawClass::Scalar(s) => scalar_at(s, &format!("{path}.line_class"))?,
        RawClass::Coords(_) => {
            return Err(Error::Dataset(format!(
                "{path}.line_class: point mode takes a single rational, not coordinates"
            )))
        }
    };
    let mut normal = Vec::with_capacity(raw.summands.len());
    for (i, s) in raw.summands.iter().enumerate() {
        let spath = format!("{path}.summands[{i}]");
        let exterior = match &s.exterior_powers {
            None => (0..=s.rank).map(|j| binomial(s.rank, j)).collect(),
            Some(RawExterior::Scalars(v)) => {
                scalars_at(v, &format!("{spath}.exterior_powers"))?
            }
            Some(RawExterior::Coords(_)) => {
                return Err(Error::Dataset(format!(
                    "{spath}.exterior_powers: point mode takes rationals, not coordinate vectors"
                )))
            }
        };
        normal.push(NormalSummand {
            weight: s.weight,
            rank: s.rank,
            exterior,
        });
    }
    let pushforward = match &raw.pushforward {
        None => vec![int(1)],
        Some(v) => scalars_at(v, &format!("{path}.pushforward"))?,
    };
    Ok(FixedComponent {
        label: raw.label.clone(),
        moment: raw.phi,
        line_class,
        normal,
        pushforward,
    })
}

fn algebra_component(
    raw: &RawComponent,
    spec: &Arc<AlgebraSpec>,
    path: &str,
) -> Result<FixedComponent<AlgebraElement>> {
    let line_class = match &raw.line_class {
        RawClass::Coords(v) => element_at(v, spec, &format!("{path}.line_class"))?,
        RawClass::Scalar(_) => {
            return Err(Error::Dataset(format!(
                "{path}.line_class: algebra mode takes a coordinate vector"
            )))
        }
    };
    let one = spec.unit_element();
    let mut normal = Vec::with_capacity(raw.summands.len());
    for (i, s) in raw.summands.iter().enumerate() {
        let spath = format!("{path}.summands[{i}]");
        let exterior = match &s.exterior_powers {
            None => (0..=s.rank).map(|j| one.scale(&binomial(s.rank, j))).collect(),
            Some(RawExterior::Coords(rows)) => {
                let mut out = Vec::with_capacity(rows.len());
                for (j, row) in rows.iter().enumerate() {
                    out.push(element_at(
                        row,
                        spec,
                        &format!("{spath}.exterior_powers[{j}]"),
                    )?);
                }
                out
            }
            Some(RawExterior::Scalars(_)) => {
                return Err(Error::Dataset(format!(
                    "{spath}.exterior_powers: algebra mode takes coordinate vectors"
                )))
            }
        };
        normal.push(NormalSummand {
            weight: s.weight,
            rank: s.rank,
            exterior,
        });
    }
    let pushforward = match &raw.pushforward {
        None => {
            return Err(Error::Dataset(format!(
                "{path}.pushforward: required in algebra mode"
            )))
        }
        Some(v) => scalars_at(v, &format!("{path}.pushforward"))?,
    };
    Ok(FixedComponent {
        label: raw.label.clone(),
        moment: raw.phi,
        line_class,
        normal,
        pushforward,
    })
}

/// One parsed dataset with everything attached.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetBody<C> {
    pub manifold: ManifoldData<C>,
    pub cut: Option<CutTriple<C>>,
}

/// A dataset in either coefficient mode.
#[derive(Debug, Clone, PartialEq)]
pub enum Dataset {
    Point(DatasetBody<Scalar>),
    Algebra(DatasetBody<AlgebraElement>),
}

fn build_body<C: Coefficient>(
    name: &str,
    components: Vec<FixedComponent<C>>,
    cut: Option<(Vec<FixedComponent<C>>, i64, String)>,
) -> DatasetBody<C> {
    let manifold = ManifoldData::new(name, components);
    let cut = cut.map(|(plus, reduced, note)| CutTriple {
        original: manifold.clone(),
        plus_cut: ManifoldData::new(&format!("{name} cut at zero"), plus),
        reduced_quantization: reduced,
        note,
    });
    DatasetBody { manifold, cut }
}

impl Dataset {
    /// Parse a dataset file. Shape problems come back as
    /// [`Error::Dataset`] with the path of the offending field; semantic
    /// problems are left for [`Dataset::validate`].
    pub fn parse(text: &str) -> Result<Dataset> {
        let raw: RawDataset = serde_json::from_str(text)
            .map_err(|e| Error::Dataset(format!("invalid dataset JSON: {e}")))?;
        if raw.schema_version != 1 {
            return Err(Error::Dataset(format!(
                "unsupported schema version {}",
                raw.schema_version
            )));
        }
        match raw.mode.as_str() {
            "point" => {
                if raw.algebra.is_some() {
                    return Err(Error::Dataset(
                        "point mode does not take an algebra table".into(),
                    ));
                }
                let components = raw
                    .components
                    .iter()
                    .enumerate()
                    .map(|(i, c)| point_component(c, &format!("components[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                let cut = match &raw.cut {
                    None => None,
                    Some(c) => Some((
                        c.plus_components
                            .iter()
                            .enumerate()
                            .map(|(i, rc)| {
                                point_component(rc, &format!("cut.plus_components[{i}]"))
                            })
                            .collect::<Result<Vec<_>>>()?,
                        c.reduced_quantization,
                        c.note.clone().unwrap_or_default(),
                    )),
                };
                Ok(Dataset::Point(build_body(
                    &raw.metadata.name,
                    components,
                    cut,
                )))
            }
            "algebra" => {
                let spec = match &raw.algebra {
                    Some(a) => build_algebra(a)?,
                    None => {
                        return Err(Error::Dataset(
                            "algebra mode requires an algebra table".into(),
                        ))
                    }
                };
                let components = raw
                    .components
                    .iter()
                    .enumerate()
                    .map(|(i, c)| algebra_component(c, &spec, &format!("components[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                let cut = match &raw.cut {
                    None => None,
                    Some(c) => Some((
                        c.plus_components
                            .iter()
                            .enumerate()
                            .map(|(i, rc)| {
                                algebra_component(
                                    rc,
                                    &spec,
                                    &format!("cut.plus_components[{i}]"),
                                )
                            })
                            .collect::<Result<Vec<_>>>()?,
                        c.reduced_quantization,
                        c.note.clone().unwrap_or_default(),
                    )),
                };
                Ok(Dataset::Algebra(build_body(
                    &raw.metadata.name,
                    components,
                    cut,
                )))
            }
            other => Err(Error::Dataset(format!(
                "unknown mode `{other}` (expected `point` or `algebra`)"
            ))),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Dataset::Point(b) => &b.manifold.name,
            Dataset::Algebra(b) => &b.manifold.name,
        }
    }

    pub fn mode(&self) -> &'static str {
        match self {
            Dataset::Point(_) => "point",
            Dataset::Algebra(_) => "algebra",
        }
    }

    pub fn component_count(&self) -> usize {
        match self {
            Dataset::Point(b) => b.manifold.components.len(),
            Dataset::Algebra(b) => b.manifold.components.len(),
        }
    }

    pub fn moment_min(&self) -> Option<i64> {
        match self {
            Dataset::Point(b) => b.manifold.moment_min(),
            Dataset::Algebra(b) => b.manifold.moment_min(),
        }
    }

    pub fn moment_max(&self) -> Option<i64> {
        match self {
            Dataset::Point(b) => b.manifold.moment_max(),
            Dataset::Algebra(b) => b.manifold.moment_max(),
        }
    }

    pub fn has_cut(&self) -> bool {
        match self {
            Dataset::Point(b) => b.cut.is_some(),
            Dataset::Algebra(b) => b.cut.is_some(),
        }
    }

    pub fn cut_note(&self) -> Option<&str> {
        match self {
            Dataset::Point(b) => b.cut.as_ref().map(|c| c.note.as_str()),
            Dataset::Algebra(b) => b.cut.as_ref().map(|c| c.note.as_str()),
        }
    }

    pub fn validate(&self) -> DataReport {
        match self {
            Dataset::Point(b) => b.manifold.validate(),
            Dataset::Algebra(b) => b.manifold.validate(),
        }
    }

    /// Compute the character. Point mode runs the series route plus the
    /// exact-fraction oracle; algebra mode runs the two-sided series route.
    pub fn localize(&self, margin: i64) -> Result<EquivariantCharacter> {
        match self {
            Dataset::Point(b) => localize(&b.manifold, margin),
            Dataset::Algebra(b) => localize_series(&b.manifold, margin, Strategy::default()),
        }
    }

    pub fn check_prop1_single(&self, margin: i64) -> Result<PropReport> {
        match self {
            Dataset::Point(b) => check_prop1_single(&b.manifold, margin),
            Dataset::Algebra(b) => check_prop1_single(&b.manifold, margin),
        }
    }

    pub fn check_prop2(&self, margin: i64) -> Result<PropReport> {
        match self {
            Dataset::Point(b) => check_prop2(&b.manifold, margin),
            Dataset::Algebra(b) => check_prop2(&b.manifold, margin),
        }
    }

    /// The reduction identity across the dataset's own cut.
    pub fn check_reduction(&self, margin: i64) -> Result<PropReport> {
        let no_cut = || {
            Error::PreconditionViolated(
                "this dataset does not carry cut data".into(),
            )
        };
        match self {
            Dataset::Point(b) => {
                check_reduction(b.cut.as_ref().ok_or_else(no_cut)?, margin)
            }
            Dataset::Algebra(b) => {
                check_reduction(b.cut.as_ref().ok_or_else(no_cut)?, margin)
            }
        }
    }

    /// Evaluate the character at `z0` by both routes: the localized
    /// polynomial and the sum of exact component fractions.
    pub fn eval_both(&self, margin: i64, z0: &Scalar) -> Result<(Scalar, Scalar)> {
        let q = self.localize(margin)?;
        let by_fractions = match self {
            Dataset::Point(b) => eval_fraction_sum(&b.manifold, z0)?,
            Dataset::Algebra(b) => eval_fraction_sum(&b.manifold, z0)?,
        };
        Ok((q.eval(z0)?, by_fractions))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPHERE: &str = r#"{
        "schema_version": 1,
        "mode": "point",
        "metadata": { "name": "sphere(-1, 1)" },
        "components": [
            { "label": "south", "phi": -1, "line_class": "1",
              "summands": [ { "weight": 1, "rank": 1 } ] },
            { "label": "north", "phi": 1, "line_class": "1",
              "summands": [ { "weight": -1, "rank": 1 } ] }
        ]
    }"#;

    #[test]
    fn point_dataset_parses_and_localizes() {
        let d = Dataset::parse(SPHERE).unwrap();
        assert_eq!(d.name(), "sphere(-1, 1)");
        assert_eq!(d.mode(), "point");
        assert!(!d.has_cut());
        assert!(d.validate().is_valid());
        let q = d.localize(8).unwrap();
        assert_eq!(q.invariant_part(), int(1));
        assert_eq!(q.dimension(), int(3));
    }

    #[test]
    fn defaults_fill_in_binomials_and_unit_pushforward() {
        let d = Dataset::parse(SPHERE).unwrap();
        let Dataset::Point(body) = d else { panic!() };
        assert_eq!(body.manifold.components[0].pushforward, vec![int(1)]);
        assert_eq!(
            body.manifold.components[0].normal[0].exterior,
            vec![int(1), int(1)]
        );
    }

    #[test]
    fn shape_errors_carry_field_paths() {
        let bad = SPHERE.replace("\"1\"", "\"one\"");
        let err = Dataset::parse(&bad).unwrap_err();
        let Error::Dataset(msg) = err else { panic!() };
        assert!(msg.contains("components[0].line_class"), "{msg}");

        let err = Dataset::parse("{").unwrap_err();
        assert!(matches!(err, Error::Dataset(m) if m.contains("invalid dataset JSON")));

        let wrong_version = SPHERE.replace("\"schema_version\": 1", "\"schema_version\": 3");
        let err = Dataset::parse(&wrong_version).unwrap_err();
        assert!(matches!(err, Error::Dataset(m) if m.contains("schema version")));

        let wrong_mode = SPHERE.replace("\"point\"", "\"matrix\"");
        let err = Dataset::parse(&wrong_mode).unwrap_err();
        assert!(matches!(err, Error::Dataset(m) if m.contains("unknown mode")));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let with_extra = SPHERE.replace(
            "\"schema_version\": 1,",
            "\"schema_version\": 1, \"tolerance\": 0.1,",
        );
        assert!(Dataset::parse(&with_extra).is_err());
    }

    const DUAL: &str = r#"{
        "schema_version": 1,
        "mode": "algebra",
        "metadata": { "name": "plane under the diagonal circle, degree 3" },
        "algebra": {
            "basis": ["1", "eps"],
            "unit": ["1", "0"],
            "products": [
                [ ["1", "0"], ["0", "1"] ],
                [ ["0", "1"], ["0", "0"] ]
            ]
        },
        "components": [
            { "label": "apex", "phi": 0, "line_class": ["1", "0"],
              "summands": [ { "weight": 1, "rank": 2 } ],
              "pushforward": ["1", "0"] },
            { "label": "axis", "phi": 3, "line_class": ["1", "3"],
              "summands": [ { "weight": -1, "rank": 1,
                              "exterior_powers": [ ["1", "0"], ["1", "-1"] ] } ],
              "pushforward": ["1", "1"] }
        ]
    }"#;

    #[test]
    fn algebra_dataset_parses_and_matches_the_constructor() {
        let d = Dataset::parse(DUAL).unwrap();
        assert_eq!(d.mode(), "algebra");
        assert!(d.validate().is_valid(), "{}", d.validate());
        let Dataset::Algebra(body) = &d else { panic!() };
        assert_eq!(
            body.manifold.components,
            crate::datasets::diagonal_plane(3).components
        );
        let q = d.localize(8).unwrap();
        assert_eq!(q.dimension(), int(10));
    }

    #[test]
    fn algebra_mode_requires_its_pieces() {
        let missing_table = DUAL.replace("\"algebra\": {", "\"omitted\": {");
        assert!(Dataset::parse(&missing_table).is_err());

        let missing_push = DUAL.replace(",\n              \"pushforward\": [\"1\", \"0\"]", "");
        let err = Dataset::parse(&missing_push).unwrap_err();
        assert!(
            matches!(&err, Error::Dataset(m) if m.contains("pushforward") && m.contains("required")),
            "{err:?}"
        );

        let short_coords = DUAL.replace("[\"1\", \"3\"]", "[\"1\"]");
        let err = Dataset::parse(&short_coords).unwrap_err();
        assert!(matches!(&err, Error::Dataset(m) if m.contains("expected 2 coordinates")));
    }

    #[test]
    fn cut_data_round_trips_into_a_triple() {
        let with_cut = SPHERE.replace(
            "]\n    }",
            r#"],
        "cut": {
            "note": "one free orbit",
            "reduced_quantization": 1,
            "plus_components": [
                { "label": "cut level", "phi": 0, "line_class": "1",
                  "summands": [ { "weight": 1, "rank": 1 } ] },
                { "label": "north", "phi": 1, "line_class": "1",
                  "summands": [ { "weight": -1, "rank": 1 } ] }
            ]
        }
    }"#,
        );
        let d = Dataset::parse(&with_cut).unwrap();
        assert!(d.has_cut());
        assert_eq!(d.cut_note(), Some("one free orbit"));
        let report = d.check_reduction(8).unwrap();
        assert!(report.all_hold(), "{report}");
    }
}
