//! Report types for the `character` subcommand.
//!
//! The JSON form keeps every rational as a `p/q` string so that reports
//! survive a serialize/deserialize round trip exactly; the text form is a
//! fixed sequence of `key: value` lines.

use loclaurent_core::scalar::format_scalar;
use loclaurent_core::{EquivariantCharacter, Scalar};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterReport {
    pub dataset: String,
    pub mode: String,
    pub order_margin: i64,
    /// Nonzero terms in ascending degree order.
    pub character: Vec<CharacterTerm>,
    pub dimension: String,
    pub invariant_multiplicity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<(i64, i64)>,
    pub integral: bool,
    /// `Some(true)` when the exact-fraction route was run and agreed;
    /// absent for coefficient rings where that route does not apply.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fraction_oracle: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evaluation: Option<Evaluation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterTerm {
    pub degree: i64,
    pub multiplicity: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Evaluation {
    pub at: String,
    pub value: String,
}

impl CharacterReport {
    pub fn new(
        dataset: &str,
        mode: &str,
        q: &EquivariantCharacter,
        evaluation: Option<&(Scalar, Scalar)>,
    ) -> Self {
        CharacterReport {
            dataset: dataset.to_string(),
            mode: mode.to_string(),
            order_margin: q.provenance.margin,
            character: q
                .poly
                .iter()
                .map(|(degree, c)| CharacterTerm {
                    degree,
                    multiplicity: format_scalar(c),
                })
                .collect(),
            dimension: format_scalar(&q.dimension()),
            invariant_multiplicity: format_scalar(&q.invariant_part()),
            support: q.support(),
            integral: q.is_integral(),
            fraction_oracle: q.provenance.fraction_oracle,
            evaluation: evaluation.map(|(at, value)| Evaluation {
                at: format_scalar(at),
                value: format_scalar(value),
            }),
        }
    }
}

/// Fixed-order text rendering of the same facts.
pub fn text_report(
    dataset: &str,
    mode: &str,
    q: &EquivariantCharacter,
    evaluation: Option<&(Scalar, Scalar)>,
) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("dataset: {dataset}"));
    line(format!("mode: {mode}"));
    line(format!("order margin: {}", q.provenance.margin));
    line(format!("character: {}", q.poly));
    line(format!("dimension: {}", format_scalar(&q.dimension())));
    line(format!(
        "invariant multiplicity: {}",
        format_scalar(&q.invariant_part())
    ));
    line(format!(
        "integral: {}",
        if q.is_integral() { "yes" } else { "no" }
    ));
    if let Some(agreed) = q.provenance.fraction_oracle {
        line(format!(
            "fraction oracle: {}",
            if agreed { "agrees" } else { "DISAGREES" }
        ));
    }
    if let Some((at, value)) = evaluation {
        line(format!(
            "value at {}: {}",
            format_scalar(at),
            format_scalar(value)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use loclaurent_core::datasets;
    use loclaurent_core::localize;
    use loclaurent_core::scalar::ratio;

    fn sample() -> CharacterReport {
        let m = datasets::sphere(1, 1);
        let q = localize(&m, 8).unwrap();
        let at = ratio(3, 2);
        let value = q.eval(&at).unwrap();
        CharacterReport::new(m.name.as_str(), "point", &q, Some(&(at, value)))
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let report = sample();
        let text = serde_json::to_string_pretty(&report).unwrap();
        let back: CharacterReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn rationals_are_strings_in_the_json() {
        let report = sample();
        let text = serde_json::to_string(&report).unwrap();
        assert!(text.contains(r#""value":"19/6""#), "{text}");
        assert!(text.contains(r#""dimension":"3""#), "{text}");
    }

    #[test]
    fn text_form_is_stable() {
        let m = datasets::sphere(1, 1);
        let q = localize(&m, 8).unwrap();
        let text = text_report(m.name.as_str(), "point", &q, None);
        let expected = "dataset: sphere(-1, 1)\n\
                        mode: point\n\
                        order margin: 8\n\
                        character: z^-1 + 1 + z\n\
                        dimension: 3\n\
                        invariant multiplicity: 1\n\
                        integral: yes\n\
                        fraction oracle: agrees\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn half_multiplicities_survive_the_round_trip() {
        let mut m = datasets::sphere(1, 1);
        for c in &mut m.components {
            c.line_class = ratio(1, 2);
        }
        let q = localize(&m, 8).unwrap();
        assert_eq!(q.invariant_part(), ratio(1, 2));
        let report = CharacterReport::new("halved", "point", &q, None);
        assert!(!report.integral);
        assert_eq!(report.character[1].multiplicity, "1/2");
        let back: CharacterReport =
            serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.invariant_multiplicity, "1/2");
    }
}
