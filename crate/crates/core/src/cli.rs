//! The `poset-tiling` command line.
//!
//! Exit status: 0 on success or a passing verification, 1 on a proven
//! infeasibility or a failing verification, 2 on usage, input, budget or
//! capability errors. Errors go to stderr as one line, `error[<kind>]: ...`.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::chains::{uniform_chain_partition, ChainPartition};
use crate::error::{Error, Infeasibility, Result};
use crate::grid::{tile_grid, tile_rectangle, ThresholdMode};
use crate::pipeline::{
    almost_partition, grid_refinement, plan_pipeline, theoretical_bounds, verify_manifest, write_manifest,
    ManifestMode, PipelineConfig,
};
use crate::poset::{minimal_cube_dim, parse_poset_spec, parse_poset_text, Poset};
use crate::tiling::Tiling;
use crate::verify::{verify_chain_partition, verify_implicit_sampled, verify_tiling, verify_tiling_exhaustive, Report};
use crate::weights::{
    find_t_partition, lift_to_blocks, one_mod_t_partition, verify_weight_function, WeightFunction, WeightKind,
};

#[derive(Parser, Debug)]
#[command(name = "poset-tiling", version, about = "Tile Boolean lattices and grids by copies of a poset")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Strict,
    Precise,
}

impl From<Mode> for ThresholdMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Strict => ThresholdMode::Strict,
            Mode::Precise => ThresholdMode::Precise,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    T,
    OneModT,
}

#[derive(Args, Debug)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tile [ab]x[c] by copies of [a]x[b].
    TileRect {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        c: usize,
        #[arg(long, value_enum, default_value = "strict")]
        mode: Mode,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Tile a grid host by copies of a grid target.
    TileGrid {
        /// Host sides, e.g. 12x16.
        #[arg(long)]
        dims: String,
        /// Target grid, e.g. grid:2x2.
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value = "strict")]
        mode: Mode,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Partition 2^[n] into chains of size h, the first of size in [h, 2h).
    ChainPartition {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Weight functions on copies of a poset with every weight t or 1 mod t.
    WeakPartition {
        /// Poset shorthand or @file.
        #[arg(long)]
        target: String,
        #[arg(long)]
        t: u64,
        #[arg(long, value_enum, default_value = "t")]
        kind: Kind,
        /// Exponent of [2]^m for kind t; defaults to the smallest cube
        /// holding the target.
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Almost-partition 2^[n] into copies of a poset.
    AlmostPartition {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value = "precise")]
        mode: Mode,
        /// Chain size; planned when omitted.
        #[arg(long)]
        h: Option<usize>,
        /// A tiling of a grid by the target, used to refine grid tiles.
        #[arg(long)]
        refine: Option<PathBuf>,
        /// Verify by sampling instead of listing every tile.
        #[arg(long)]
        implicit: bool,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Manifest path; side files are written next to it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a tiling, chain, weights, almost-partition or poset file.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Leftover bounds and the threshold constant c(P).
    Bounds {
        #[arg(long)]
        target: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n0: usize,
    },
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidInput(_) => "invalid-input",
        Error::Precondition(_) => "precondition",
        Error::Budget { .. } => "budget",
        Error::Infeasible(Infeasibility::HeuristicFailed { .. }) => "heuristic",
        Error::Infeasible(_) => "infeasible",
        Error::Capability(_) => "capability",
        Error::Parse { .. } => "parse",
        Error::Io(_) => "io",
    }
}

/// Proven infeasibility exits 1; a failed heuristic proves nothing.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Infeasible(Infeasibility::HeuristicFailed { .. }) => 2,
        Error::Infeasible(_) => 1,
        _ => 2,
    }
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ")
                .to_string();
            let _ = writeln!(stderr, "error[usage]: {first}");
            return 2;
        }
    };
    match execute(cli.command, stdout) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(stderr, "error[{}]: {e}", error_kind(&e));
            exit_code(&e)
        }
    }
}

pub fn main() -> i32 {
    run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}

fn emit(text: &str, out: &Option<PathBuf>, stdout: &mut dyn std::io::Write) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn grid_dims_of(spec: &str) -> Result<Vec<usize>> {
    let sides = spec
        .strip_prefix("grid:")
        .ok_or_else(|| Error::invalid(format!("target must be a grid like grid:2x2, got {spec:?}")))?;
    parse_dims(sides)
}

fn parse_dims(s: &str) -> Result<Vec<usize>> {
    s.split('x')
        .map(|t| t.parse().map_err(|_| Error::invalid(format!("malformed sides {s:?}"))))
        .collect()
}

/// Prints the report and says whether it passed.
fn finish(report: &Report, stdout: &mut dyn std::io::Write) -> Result<bool> {
    stdout.write_all(report.to_text().as_bytes())?;
    for note in &report.notes {
        writeln!(stdout, "note {note}")?;
    }
    Ok(report.pass())
}

fn write_tiling(t: &Tiling, svg: &Option<PathBuf>, out: &Option<PathBuf>, stdout: &mut dyn std::io::Write) -> Result<bool> {
    let report = verify_tiling(t)?;
    if !report.pass() {
        return Err(Error::Capability(format!("construction failed verification: {report}")));
    }
    if let Some(path) = svg {
        fs::write(path, t.to_svg()?)?;
    }
    emit(&t.to_text(), out, stdout)?;
    Ok(true)
}

fn execute(command: Command, stdout: &mut dyn std::io::Write) -> Result<bool> {
    match command {
        Command::TileRect {
            a,
            b,
            c,
            mode,
            svg,
            output,
        } => write_tiling(&tile_rectangle(a, b, c, mode.into())?, &svg, &output.out, stdout),
        Command::TileGrid {
            dims,
            target,
            mode,
            svg,
            output,
        } => {
            let p_dims = grid_dims_of(&target)?;
            let t = tile_grid(&parse_dims(&dims)?, &p_dims, mode.into())?;
            write_tiling(&t, &svg, &output.out, stdout)
        }
        Command::ChainPartition { n, h, output } => {
            let cp = uniform_chain_partition(n, h)?;
            emit(&cp.to_text(), &output.out, stdout)?;
            Ok(true)
        }
        Command::WeakPartition {
            target,
            t,
            kind,
            m,
            output,
        } => {
            let p = parse_poset_spec(&target)?;
            let (w, kind) = match kind {
                Kind::T => {
                    let m = match m {
                        Some(m) => m,
                        None => minimal_cube_dim(&p)?.d.max(1),
                    };
                    (lift_to_blocks(&find_t_partition(&p, m, t)?, 0)?, WeightKind::ExactT)
                }
                Kind::OneModT => {
                    let (got, w) = one_mod_t_partition(&p, t)?;
                    if m.is_some_and(|m| m != got) {
                        return Err(Error::invalid(format!("the (1 mod t) construction fixes m={got}")));
                    }
                    (w, WeightKind::OneModT)
                }
            };
            let report = verify_weight_function(&w, t, kind)?;
            if !report.pass() {
                return Err(Error::Capability(format!("construction failed verification: {report}")));
            }
            emit(&w.to_text(t, kind), &output.out, stdout)?;
            Ok(true)
        }
        Command::AlmostPartition {
            n,
            target,
            mode,
            h,
            refine,
            implicit,
            samples,
            seed,
            out,
        } => {
            let p = parse_poset_spec(&target)?;
            let refining = match &refine {
                Some(path) => Some(Tiling::from_text(&fs::read_to_string(path)?)?),
                None => None,
            };
            let (dims, refinement) = grid_refinement(&p, refining.as_ref())?;
            let config = match h {
                Some(h) => PipelineConfig::new(n, &dims, h, mode.into())?,
                None => plan_pipeline(n, &dims, mode.into())?,
            };
            let ap = almost_partition(&config, &p, refinement)?;
            let report = if implicit {
                verify_implicit_sampled(&ap, samples, seed)
            } else {
                verify_tiling_exhaustive(&ap.to_tiling()?, &p)?
            };
            writeln!(
                stdout,
                "almost n={n} target={} h={} split={} leftover={}",
                p.name(),
                config.h,
                config.m_parts.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(","),
                ap.leftover().len()
            )?;
            if let Some(path) = out {
                let m = if implicit { ManifestMode::Implicit } else { ManifestMode::Explicit };
                write_manifest(&ap, &path, m)?;
            }
            finish(&report, stdout)
        }
        Command::Verify { file, samples, seed } => verify_file(&file, samples, seed, stdout),
        Command::Bounds { target, d, n0 } => {
            let p = parse_poset_spec(&target)?;
            write!(stdout, "{}", theoretical_bounds(&p, d, n0)?)?;
            Ok(true)
        }
    }
}

fn verify_file(path: &Path, samples: u64, seed: u64, stdout: &mut dyn std::io::Write) -> Result<bool> {
    let text = fs::read_to_string(path)?;
    let kind = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
        .unwrap_or("");
    match kind {
        "tiling" => {
            let t = Tiling::from_text(&text)?;
            let report = match t.target.strip_prefix('@') {
                // `@file` targets are relative to the tiling
                Some(rel) => {
                    let dir = path.parent().unwrap_or(Path::new(""));
                    let p = parse_poset_text(&fs::read_to_string(dir.join(rel))?)?;
                    verify_tiling_exhaustive(&t, &p)?
                }
                None => verify_tiling(&t)?,
            };
            finish(&report, stdout)
        }
        "chains" => finish(&verify_chain_partition(&ChainPartition::from_text(&text)?), stdout),
        "almost" => finish(&verify_manifest(path, samples, seed)?, stdout),
        "weights" => {
            let (w, t, kind) = WeightFunction::from_text(&text)?;
            match verify_weight_function(&w, t, kind) {
                Ok(report) => {
                    write!(stdout, "{report}")?;
                    Ok(report.pass())
                }
                Err(Error::InvalidInput(msg)) => {
                    writeln!(stdout, "verdict FAIL\nviolation not-a-copy {msg}")?;
                    Ok(false)
                }
                Err(e) => Err(e),
            }
        }
        "poset" => {
            let p: Poset = parse_poset_text(&text)?;
            match p.check_axioms() {
                Ok(()) => {
                    writeln!(stdout, "verdict PASS\nelements {}", p.len())?;
                    Ok(true)
                }
                Err(e) => {
                    writeln!(stdout, "verdict FAIL\nviolation order {e}")?;
                    Ok(false)
                }
            }
        }
        other => Err(Error::invalid(format!("unrecognised file kind {other:?} in {}", path.display()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["poset-tiling"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes() {
        let (code, _, err) = call(&["tile-grid", "--dims", "12x12", "--target", "grid:2x2", "--mode", "strict"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error[infeasible]: "), "{err}");
        let (code, _, err) = call(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error[usage]: "), "{err}");
        let (code, _, err) = call(&["bounds", "--target", "nonsense", "--d", "1", "--n0", "1"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error[invalid-input]: "), "{err}");
        let (code, out, _) = call(&["bounds", "--target", "grid:2x2", "--d", "2", "--n0", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("grid-leftover 147456"));
    }
}
