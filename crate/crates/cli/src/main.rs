//! `loclaurent` — compute and verify equivariant characters from circle
//! fixed-point data files.
//!
//! Exit codes: 0 on success, 1 when a verification or identity fails, 2 for
//! unusable input (bad flags, unreadable or unparsable files). `character`
//! additionally distinguishes why no character exists: 3 when the data is
//! inconsistent, 4 when a coefficient that must be invertible is not, 5 when
//! an evaluation point hits a pole.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use loclaurent_core::dataset::Dataset;
use loclaurent_core::examples;
use loclaurent_core::scalar::parse_scalar;
use loclaurent_core::{Error, DEFAULT_MARGIN};

use report::{text_report, CharacterReport};

const USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "loclaurent",
    version,
    about = "exact equivariant characters from circle fixed-point data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a dataset against the structural and extremal-weight rules.
    Validate { path: PathBuf },
    /// Compute the character of a dataset.
    Character {
        path: PathBuf,
        /// Extra orders of series agreement demanded beyond the moment
        /// window (default: LOCLAURENT_ORDER_MARGIN or 16).
        #[arg(long, value_name = "N")]
        order_margin: Option<i64>,
        /// Also evaluate the character at this rational number.
        #[arg(long, value_name = "RATIONAL")]
        eval: Option<String>,
        /// Print the report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Run verification identities against a dataset.
    Verify {
        path: PathBuf,
        /// Extra orders of series agreement demanded beyond the moment
        /// window (default: LOCLAURENT_ORDER_MARGIN or 16).
        #[arg(long, value_name = "N")]
        order_margin: Option<i64>,
        #[command(flatten)]
        which: WhichChecks,
    },
    /// List or export the bundled example datasets.
    Examples {
        #[command(subcommand)]
        what: ExamplesCommand,
    },
}

#[derive(Args)]
#[group(required = true, multiple = true)]
struct WhichChecks {
    /// Check the invariant part against the positive-moment side.
    #[arg(long)]
    prop1: bool,
    /// Check the invariant part against the zero-moment level.
    #[arg(long)]
    prop2: bool,
    /// Check the cut space's invariant part against the reduced count.
    #[arg(long)]
    reduction: bool,
    /// Run every applicable check and skip the rest.
    #[arg(long)]
    all: bool,
}

#[derive(Subcommand)]
enum ExamplesCommand {
    /// Print the bundled dataset names.
    List,
    /// Write a bundled dataset to a file.
    Emit { name: String, dest: PathBuf },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Validate { path } => cmd_validate(&path),
        Command::Character {
            path,
            order_margin,
            eval,
            json,
        } => cmd_character(&path, order_margin, eval.as_deref(), json),
        Command::Verify {
            path,
            order_margin,
            which,
        } => cmd_verify(&path, order_margin, &which),
        Command::Examples { what } => match what {
            ExamplesCommand::List => cmd_examples_list(),
            ExamplesCommand::Emit { name, dest } => cmd_examples_emit(&name, &dest),
        },
    }
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn load(path: &Path) -> Result<Dataset, ExitCode> {
    let text = fs::read_to_string(path)
        .map_err(|e| fail(USAGE, format!("{}: {e}", path.display())))?;
    Dataset::parse(&text).map_err(|e| fail(USAGE, format!("{}: {e}", path.display())))
}

/// Flag, then `LOCLAURENT_ORDER_MARGIN`, then the library default.
fn resolve_margin(flag: Option<i64>) -> Result<i64, ExitCode> {
    if let Some(m) = flag {
        return Ok(m);
    }
    match std::env::var("LOCLAURENT_ORDER_MARGIN") {
        Ok(s) => s.trim().parse().map_err(|_| {
            fail(
                USAGE,
                format!("LOCLAURENT_ORDER_MARGIN must be an integer, got {s:?}"),
            )
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MARGIN),
        Err(e) => Err(fail(USAGE, format!("LOCLAURENT_ORDER_MARGIN: {e}"))),
    }
}

fn character_code(e: &Error) -> u8 {
    match e {
        Error::InconsistentData(_) => 3,
        Error::NotAUnit(_) => 4,
        Error::DenominatorVanishes => 5,
        Error::PreconditionViolated(_) => USAGE,
        _ => 1,
    }
}

fn cmd_validate(path: &Path) -> ExitCode {
    let d = match load(path) {
        Ok(d) => d,
        Err(code) => return code,
    };
    println!("dataset: {}", d.name());
    println!("mode: {}", d.mode());
    println!("components: {}", d.component_count());
    if let (Some(lo), Some(hi)) = (d.moment_min(), d.moment_max()) {
        println!("moment range: {lo}..{hi}");
    }
    if d.has_cut() {
        println!("cut: present");
    }
    let report = d.validate();
    println!("{}", report.to_string().trim_end());
    if report.is_valid() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_character(
    path: &Path,
    margin_flag: Option<i64>,
    eval: Option<&str>,
    json: bool,
) -> ExitCode {
    let d = match load(path) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let margin = match resolve_margin(margin_flag) {
        Ok(m) => m,
        Err(code) => return code,
    };
    let q = match d.localize(margin) {
        Ok(q) => q,
        Err(e) => return fail(character_code(&e), e),
    };
    let evaluation = match eval {
        None => None,
        Some(text) => {
            let z0 = match parse_scalar(text) {
                Ok(z) => z,
                Err(e) => return fail(USAGE, e),
            };
            match d.eval_both(margin, &z0) {
                Ok((a, b)) if a == b => Some((z0, a)),
                Ok((a, b)) => {
                    return fail(3, format!("evaluation routes disagree: {a} != {b}"))
                }
                Err(e) => return fail(character_code(&e), e),
            }
        }
    };
    if json {
        let report = CharacterReport::new(d.name(), d.mode(), &q, evaluation.as_ref());
        match serde_json::to_string_pretty(&report) {
            Ok(s) => println!("{s}"),
            Err(e) => return fail(1, e),
        }
    } else {
        print!("{}", text_report(d.name(), d.mode(), &q, evaluation.as_ref()));
    }
    ExitCode::SUCCESS
}

fn cmd_verify(path: &Path, margin_flag: Option<i64>, which: &WhichChecks) -> ExitCode {
    let d = match load(path) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let margin = match resolve_margin(margin_flag) {
        Ok(m) => m,
        Err(code) => return code,
    };

    let plans = [
        (
            "positive-side",
            which.prop1,
            d.moment_max() != Some(0),
            "maximum moment is zero",
        ),
        (
            "zero-level",
            which.prop2,
            d.moment_min() == Some(0),
            "minimum moment is nonzero",
        ),
        ("reduction", which.reduction, d.has_cut(), "no cut data"),
    ];

    let mut overall = true;
    for (name, asked, applicable, reason) in plans {
        if !asked && !which.all {
            continue;
        }
        if !asked && !applicable {
            println!("RESULT {name} SKIP ({reason})");
            continue;
        }
        let outcome = match name {
            "positive-side" => d.check_prop1_single(margin),
            "zero-level" => d.check_prop2(margin),
            _ => d.check_reduction(margin),
        };
        match outcome {
            Ok(r) if r.all_hold() => {
                println!("RESULT {name} PASS");
                for line in r.to_string().lines() {
                    println!("  {line}");
                }
            }
            Ok(r) => {
                overall = false;
                println!("RESULT {name} FAIL");
                for line in r.to_string().lines() {
                    println!("  {line}");
                }
            }
            Err(e) => {
                overall = false;
                println!("RESULT {name} FAIL: {e}");
            }
        }
    }
    println!("OVERALL {}", if overall { "PASS" } else { "FAIL" });
    if overall {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_examples_list() -> ExitCode {
    for ex in examples::BUNDLED {
        match ex.dataset() {
            Ok(d) => println!(
                "{:<22} {:<8} {:<4} {}",
                ex.name,
                d.mode(),
                if d.has_cut() { "cut" } else { "-" },
                ex.answer_note
            ),
            Err(e) => return fail(1, format!("{}: {e}", ex.name)),
        }
    }
    ExitCode::SUCCESS
}

fn cmd_examples_emit(name: &str, dest: &Path) -> ExitCode {
    let Some(ex) = examples::find(name) else {
        let names: Vec<&str> = examples::BUNDLED.iter().map(|e| e.name).collect();
        return fail(
            USAGE,
            format!(
                "no bundled example named {name:?}; available: {}",
                names.join(", ")
            ),
        );
    };
    match fs::write(dest, ex.json) {
        Ok(()) => {
            println!("wrote {} to {}", ex.name, dest.display());
            ExitCode::SUCCESS
        }
        Err(e) => fail(1, format!("{}: {e}", dest.display())),
    }
}
