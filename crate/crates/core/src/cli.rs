//! Command-line front end. Exit codes: 0 success / covered, 1 not covered or
//! I/O failure, 2 usage, parse or admissibility error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::constructions::{generate, ConstructionParams, Variant};
use crate::document::CoveringDocument;
use crate::error::Error;
use crate::projection::{bound_decision, projection_check, BoundVerdict};
use crate::rat::Rat;
use crate::svg;
use crate::verify::{sample_falsify, verify};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_COVERED: i32 = 1;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Exact verification of equilateral triangle coverings.
#[derive(Debug, Parser)]
#[command(name = "tricover", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a covering document for one of the constructions.
    Generate {
        #[arg(long)]
        construction: Variant,
        #[arg(long)]
        n: u32,
        /// Exact rational `p/q`; defaults to 0 for `grid`.
        #[arg(long)]
        eps: Option<Rat>,
        /// Emit the layout even when eps exceeds the admissible bound.
        #[arg(long)]
        force: bool,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide exactly whether the pieces cover the target.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Print the uncovered segment when the check fails.
        #[arg(long)]
        witness: bool,
        /// Cross-check with a lattice falsifier of denominator `d`.
        #[arg(long, value_name = "D")]
        sample: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Decide coverability of the side `n + eps` triangle by `n^2 + extra` unit triangles.
    Bound {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        extra: u32,
        #[arg(long)]
        eps: Rat,
        #[arg(long)]
        json: bool,
    },
    /// Print the projection function report as JSON.
    Project {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Draw a covering document as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
}

/// Caps the global rayon pool from `TRICOVER_THREADS` when set.
pub fn configure_threads() {
    let Some(n) = std::env::var("TRICOVER_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) else {
        return;
    };
    if n > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Parses `args` and runs the command, writing to the given streams.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Io(_) => EXIT_IO,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn read_doc(path: &PathBuf) -> Result<CoveringDocument, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    CoveringDocument::parse(&text)
}

/// Disagreement is a lattice hole inside an instance verified as covered.
fn agrees(covered: bool, hole_found: bool) -> bool {
    !(covered && hole_found)
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    match command {
        Command::Generate { construction, n, eps, force, out: path } => {
            let eps = match (eps, construction) {
                (Some(e), _) => e,
                (None, Variant::Grid) => Rat::zero(),
                (None, v) => {
                    let bound = v.eps_bound(n).map(|b| format!(" (admissible up to {b})")).unwrap_or_default();
                    return Err(Error::InvalidInput(format!("--eps is required for {v}{bound}")));
                }
            };
            let params = ConstructionParams::new(construction, n, eps);
            let built = generate(&params, force)?;
            if force && params.check_admissible().is_err() {
                let _ = writeln!(err, "warning: eps beyond the admissible bound; the layout leaves holes");
            }
            let json = CoveringDocument::from_construction(&built).to_json();
            match path {
                Some(p) => std::fs::write(&p, json + "\n")?,
                None => writeln!(out, "{json}")?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify { input, witness, sample, json } => {
            let doc = read_doc(&input)?;
            let covering = doc.to_covering()?;
            let report = verify(&covering);
            let sampled = match sample {
                Some(d) => Some(sample_falsify(covering.target.parts(), covering.pieces(), d)?),
                None => None,
            };
            if json {
                #[derive(Serialize)]
                struct Out<'a> {
                    covered: bool,
                    slab_count: usize,
                    witness: Option<&'a crate::verify::Witness>,
                    sample_denominator: Option<u32>,
                    sample_hole: Option<[&'a Rat; 2]>,
                    sample_agrees: Option<bool>,
                }
                let hole = sampled.as_ref().and_then(|s| s.as_ref()).map(|p| [&p.x, &p.y]);
                let body = Out {
                    covered: report.covered,
                    slab_count: report.slab_count,
                    witness: report.witness.as_ref(),
                    sample_denominator: sample,
                    sample_hole: hole,
                    sample_agrees: sampled.as_ref().map(|s| agrees(report.covered, s.is_some())),
                };
                writeln!(out, "{}", to_json(&body))?;
            } else {
                let status = if report.covered { "covered" } else { "not covered" };
                writeln!(out, "{status} ({} pieces, {} slabs)", covering.pieces().len(), report.slab_count)?;
                if let (true, Some(w)) = (witness, &report.witness) {
                    let m = w.midpoint();
                    writeln!(out, "witness: y = {}, x in ({}, {}); point ({}, {})", w.y, w.x_lo, w.x_hi, m.x, m.y)?;
                }
                if let (Some(d), Some(s)) = (sample, &sampled) {
                    let verdict = if agrees(report.covered, s.is_some()) { "agrees" } else { "DISAGREES" };
                    match s {
                        Some(p) => writeln!(out, "sample d={d}: uncovered lattice point ({}, {}); {verdict}", p.x, p.y)?,
                        None => writeln!(out, "sample d={d}: no uncovered lattice point; {verdict}")?,
                    }
                }
            }
            Ok(if report.covered { EXIT_OK } else { EXIT_NOT_COVERED })
        }
        Command::Bound { n, extra, eps, json } => {
            let report = bound_decision(n, extra, &eps)?;
            if json {
                writeln!(out, "{}", to_json(&report))?;
            } else {
                match report.verdict {
                    BoundVerdict::Impossible => writeln!(out, "impossible (threshold {})", report.threshold)?,
                    BoundVerdict::WithinBound => {
                        let by = report.witness.map(|w| format!(", witnessed by {w}")).unwrap_or_default();
                        writeln!(out, "coverable (threshold {}{by})", report.threshold)?
                    }
                }
                for step in &report.trace {
                    writeln!(out, "  {}: {}", step.name, step.detail)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Project { input } => {
            let covering = read_doc(&input)?.to_covering()?;
            writeln!(out, "{}", to_json(&projection_check(&covering)?))?;
            Ok(EXIT_OK)
        }
        Command::Render { input, svg: path } => {
            let doc = read_doc(&input)?;
            let covering = doc.to_covering()?;
            std::fs::write(&path, svg::render(&covering, doc.metadata.roles.as_deref()))?;
            Ok(EXIT_OK)
        }
    }
}
