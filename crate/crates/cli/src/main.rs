//! `cubicpar`: command-line driver for the cubic surface parametrizer.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cubicpar::fforacle::line_report;
use cubicpar::io::files::parse_plane;
use cubicpar::io::{affine_text, sample_grid, ParamFile, Problem};
use cubicpar::parametrizer::{parametrize, verify};
use cubicpar::surface::{cubic_space, smoothness_screen};
use cubicpar::{Error, Result};
use serde_json::json;

#[derive(Parser)]
#[command(name = "cubicpar", version, about = "Exact rational parametrization of cubic surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parametrize the surface of a problem file through its lines l1, l2.
    Parametrize {
        file: PathBuf,
        /// Override the plane H, e.g. "x0 + x2".
        #[arg(long)]
        plane: Option<String>,
        /// Write the parametrization JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the affine formulas x1, x2, x3 to stdout.
        #[arg(long)]
        affine: bool,
    },
    /// Re-check a parametrization file against the surface of a problem file.
    Verify { param_file: PathBuf, surface_file: PathBuf },
    /// Dimension and basis of the cubics through the problem's lines.
    CubicSpace {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Count lines of the reduced surface over F_p and transversals of l1, l2.
    LinesFf {
        file: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a parametrization on an N x N grid of the affine chart.
    Sample {
        param_file: PathBuf,
        #[arg(long)]
        grid: usize,
        /// Grid spans [-range, range] in y1 and y2.
        #[arg(long, default_value_t = 2)]
        range: i64,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let code = execute(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code)
}

/// Parses `args`, runs the subcommand and returns the process exit code.
/// Errors go to `err` as a single JSON object.
fn execute<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                4
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    match run(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let report = json!({"error": {"code": e.code(), "message": e.to_string(), "position": e.position()}});
            let _ = writeln!(err, "{report}");
            e.exit_code() as u8
        }
    }
}

fn write_out(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("cannot write {}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string())),
    }
}

fn run(cmd: Command, stdout: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Parametrize { file, plane, out, affine } => {
            let problem = Problem::from_path(&file)?;
            let surface = problem.surface()?;
            if !problem.primes.is_empty() {
                let screen = smoothness_screen(surface, &problem.primes)?;
                if !screen.passed() {
                    return Err(Error::Singular(screen.summary()));
                }
            }
            let plane = plane.map(|p| parse_plane(&p, problem.field.as_ref())).transpose()?;
            let input = problem.param_input(plane)?;
            let result = parametrize(&input)?;
            let report = verify(&result, surface);
            let pf = ParamFile::new(&result, surface, problem.field.as_ref(), Some(report.clone()))?;
            if out.is_some() || !affine {
                write_out(out.as_deref(), &pf.to_json(), stdout)?;
            }
            if affine {
                write_out(None, &affine_text(&result)?, stdout)?;
            }
            report.into_result().map(|_| ())
        }
        Command::Verify { param_file, surface_file } => {
            let (result, _) = ParamFile::from_path(&param_file)?.load()?;
            let problem = Problem::from_path(&surface_file)?;
            let report = verify(&result, problem.surface()?);
            let text = serde_json::to_string_pretty(&report).map_err(|e| Error::Format(e.to_string()))?;
            write_out(None, &(text + "\n"), stdout)?;
            report.into_result().map(|_| ())
        }
        Command::CubicSpace { file, json } => {
            let problem = Problem::from_path(&file)?;
            let space = cubic_space(&problem.triple()?);
            let basis: Vec<String> = space.basis.iter().map(|b| b.to_string()).collect();
            let text = if json {
                serde_json::to_string_pretty(&json!({"dimension": space.dimension(), "basis": basis})).expect("json")
                    + "\n"
            } else {
                let mut s = format!("dim: {}\n", space.dimension());
                for (i, b) in basis.iter().enumerate() {
                    s += &format!("v{} = {b}\n", i + 1);
                }
                s
            };
            write_out(None, &text, stdout)
        }
        Command::LinesFf { file, prime, json } => {
            let problem = Problem::from_path(&file)?;
            let pair = match (problem.lines.get("l1"), problem.lines.get("l2")) {
                (Some(a), Some(b)) => Some((a, b)),
                _ => None,
            };
            let r = line_report(problem.surface()?.form(), problem.field.as_deref(), pair, prime)?;
            let text = if json {
                json!({"prime": r.prime, "lines": r.lines, "transversals": r.transversals}).to_string() + "\n"
            } else {
                match r.transversals {
                    Some(t) => format!("lines: {}, transversals(l1,l2): {t}\n", r.lines),
                    None => format!("lines: {}\n", r.lines),
                }
            };
            write_out(None, &text, stdout)
        }
        Command::Sample { param_file, grid, range, out } => {
            let (result, surface) = ParamFile::from_path(&param_file)?.load()?;
            let rows = sample_grid(&result, &surface, grid, range)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(["y1", "y2", "x1", "x2", "x3", "x1_float", "x2_float", "x3_float"]).map_err(csv_err)?;
            for r in &rows {
                let f = r.floats();
                let mut rec: Vec<String> = r.y.iter().chain(&r.x).map(|c| c.to_string()).collect();
                rec.extend(f.iter().map(|v| v.to_string()));
                w.write_record(&rec).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            write_out(out.as_deref(), &String::from_utf8(bytes).expect("utf8"), stdout)
        }
    }
}
