//! Bundled example datasets with independently recorded answers.
//!
//! Each entry embeds a dataset file verbatim, together with the character
//! and invariant multiplicity worked out by hand (lattice-point counts,
//! geometric windows, partial-fraction sums) rather than by this crate. The
//! verification suite replays every entry; the files are also what
//! `examples emit` writes out for use as templates.

use std::fmt;

use crate::dataset::Dataset;
use crate::error::Result;
use crate::localize::Strategy;
use crate::scalar::{int, Scalar};

/// One embedded dataset and what its answers must be.
#[derive(Debug, Clone, Copy)]
pub struct BundledExample {
    /// Registry key, also the file stem.
    pub name: &'static str,
    /// The dataset file, byte for byte.
    pub json: &'static str,
    /// Expected character as `(degree, multiplicity)` pairs, when it has
    /// been worked out independently.
    pub expected_character: Option<&'static [(i64, i64)]>,
    /// Expected invariant multiplicity.
    pub expected_invariant: Option<i64>,
    /// Where the recorded answers come from.
    pub answer_note: &'static str,
}

impl BundledExample {
    pub fn dataset(&self) -> Result<Dataset> {
        Dataset::parse(self.json)
    }
}

/// Every bundled example, sorted by name.
pub const BUNDLED: &[BundledExample] = &[
    BundledExample {
        name: "diagonal-plane",
        json: include_str!("../data/diagonal-plane.json"),
        expected_character: Some(&[(-3, 4), (-2, 3), (-1, 2), (0, 1)]),
        expected_invariant: Some(1),
        answer_note: "cubic monomials in three variables graded by total degree",
    },
    BundledExample {
        name: "plane-cut",
        json: include_str!("../data/plane-cut.json"),
        expected_character: Some(&[(-4, 1), (-3, 1), (-2, 2), (-1, 2), (0, 2), (1, 1), (2, 1)]),
        expected_invariant: Some(2),
        answer_note: "lattice points of the thrice-dilated triangle, shifted by 2",
    },
    BundledExample {
        name: "plane-triangle",
        json: include_str!("../data/plane-triangle.json"),
        expected_character: Some(&[(-4, 1), (-3, 1), (-2, 2), (-1, 2), (0, 2), (1, 1), (2, 1)]),
        expected_invariant: Some(2),
        answer_note: "lattice points of the thrice-dilated triangle, shifted by 2",
    },
    BundledExample {
        name: "point",
        json: include_str!("../data/point.json"),
        expected_character: Some(&[(0, 1)]),
        expected_invariant: Some(1),
        answer_note: "the trivial space quantizes to one invariant state",
    },
    BundledExample {
        name: "shifted-sphere",
        json: include_str!("../data/shifted-sphere.json"),
        expected_character: Some(&[(-2, 1), (-1, 1), (0, 1)]),
        expected_invariant: Some(1),
        answer_note: "three sections at weights 0, -1, -2",
    },
    BundledExample {
        name: "sphere-1-1",
        json: include_str!("../data/sphere-1-1.json"),
        expected_character: Some(&[(-1, 1), (0, 1), (1, 1)]),
        expected_invariant: Some(1),
        answer_note: "geometric window of three weights",
    },
    BundledExample {
        name: "sphere-2-2",
        json: include_str!("../data/sphere-2-2.json"),
        expected_character: Some(&[(-2, 1), (-1, 1), (0, 1), (1, 1), (2, 1)]),
        expected_invariant: Some(1),
        answer_note: "geometric window of five weights",
    },
    BundledExample {
        name: "spheres-antidiagonal",
        json: include_str!("../data/spheres-antidiagonal.json"),
        expected_character: Some(&[(-3, 1), (-2, 2), (-1, 3), (0, 2), (1, 1)]),
        expected_invariant: Some(2),
        answer_note: "product of the windows 1 + z^-1 and 1 + z^-2 + z^2, twisted by one level",
    },
];

/// Look an example up by registry key.
pub fn find(name: &str) -> Option<&'static BundledExample> {
    BUNDLED.iter().find(|e| e.name == name)
}

/// Outcome of replaying one bundled example.
#[derive(Debug, Clone)]
pub struct SuiteEntry {
    pub name: &'static str,
    /// One `PASS`/`FAIL`/`SKIP` line per step.
    pub lines: Vec<String>,
    pub passed: bool,
}

/// Outcome of replaying every bundled example.
#[derive(Debug, Clone)]
pub struct SuiteSummary {
    pub entries: Vec<SuiteEntry>,
}

impl SuiteSummary {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

impl fmt::Display for SuiteSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for entry in &self.entries {
            writeln!(f, "== {} ==", entry.name)?;
            for line in &entry.lines {
                writeln!(f, "  {line}")?;
            }
        }
        let failing = self.entries.iter().filter(|e| !e.passed).count();
        if failing == 0 {
            write!(f, "all {} examples pass", self.entries.len())
        } else {
            write!(f, "{failing} of {} examples failing", self.entries.len())
        }
    }
}

/// Replay every bundled example: parse, validate, localize, compare against
/// the recorded answers, and run whichever verification identities apply.
///
/// The fan-out over examples follows `strategy`; each identity that does not
/// apply to a dataset (wrong moment range, no cut data) produces a `SKIP`
/// line rather than a failure.
pub fn run_example_suite(margin: i64, strategy: Strategy) -> SuiteSummary {
    let entries = match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            BUNDLED.par_iter().map(|ex| replay(ex, margin)).collect()
        }
        Strategy::Sequential => BUNDLED.iter().map(|ex| replay(ex, margin)).collect(),
    };
    SuiteSummary { entries }
}

fn replay(ex: &BundledExample, margin: i64) -> SuiteEntry {
    let mut lines = Vec::new();
    let mut passed = true;

    let dataset = match ex.dataset() {
        Ok(d) => {
            lines.push("PASS parse".to_string());
            d
        }
        Err(e) => {
            lines.push(format!("FAIL parse: {e}"));
            return SuiteEntry { name: ex.name, lines, passed: false };
        }
    };

    let report = dataset.validate();
    if report.is_valid() {
        lines.push("PASS validate".to_string());
    } else {
        passed = false;
        lines.push(format!("FAIL validate: {report}"));
    }

    let character = match dataset.localize(margin) {
        Ok(q) => {
            lines.push("PASS localize".to_string());
            q
        }
        Err(e) => {
            lines.push(format!("FAIL localize: {e}"));
            return SuiteEntry { name: ex.name, lines, passed: false };
        }
    };

    if let Some(expected) = ex.expected_character {
        let got: Vec<(i64, Scalar)> =
            character.poly.iter().map(|(g, c)| (g, c.clone())).collect();
        let want: Vec<(i64, Scalar)> =
            expected.iter().map(|&(g, m)| (g, int(m))).collect();
        if got == want {
            lines.push("PASS recorded character".to_string());
        } else {
            passed = false;
            lines.push(format!("FAIL recorded character: got {}", character.poly));
        }
    }
    if let Some(inv) = ex.expected_invariant {
        if character.invariant_part() == int(inv) {
            lines.push("PASS recorded invariant multiplicity".to_string());
        } else {
            passed = false;
            lines.push(format!(
                "FAIL recorded invariant multiplicity: got {}",
                character.invariant_part()
            ));
        }
    }

    let mut identity = |label: &str, outcome: Option<Result<crate::verify::PropReport>>| {
        match outcome {
            None => lines.push(format!("SKIP {label} (not applicable)")),
            Some(Ok(report)) if report.all_hold() => lines.push(format!("PASS {label}")),
            Some(Ok(report)) => {
                passed = false;
                lines.push(format!("FAIL {label}: {report}"));
            }
            Some(Err(e)) => {
                passed = false;
                lines.push(format!("FAIL {label}: {e}"));
            }
        }
    };

    let prop1 = (dataset.moment_max() != Some(0))
        .then(|| dataset.check_prop1_single(margin));
    identity("positive-side identity", prop1);

    let prop2 = (dataset.moment_min() == Some(0)).then(|| dataset.check_prop2(margin));
    identity("zero-level identity", prop2);

    let reduction = dataset.has_cut().then(|| dataset.check_reduction(margin));
    identity("reduction identity", reduction);

    SuiteEntry { name: ex.name, lines, passed }
}
