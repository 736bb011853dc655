//! Command-line front end: spec-file loading, subcommands and the `verify`
//! invariant suite.

pub mod spec_file;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use qstar_core::rational::{to_decimal_string, to_f64};
use qstar_core::{
    box_dimension, classify_regime, graph_sample, ifs_maps, parse_rational, preimage_regions,
    root_count_lower_bound, DigitSeq, DigitWord, Endpoint, FunctionSpec, GraphSample, Rational,
    Witness,
};
use thiserror::Error;

pub use spec_file::{parse_spec_file, to_spec_json, SpecError, SpecFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Exact digits budget when `eval` looks for a periodic expansion.
const EVAL_ENCODE_BUDGET: usize = 4096;

#[derive(Debug, Parser)]
#[command(
    name = "qstar",
    version,
    about = "Exact analysis of Q*3-parameterized continuous functions"
)]
pub struct Cli {
    /// JSON function specification
    #[arg(long, short, global = true, value_name = "FILE")]
    pub spec: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report the monotonicity regime of the epsilon schedule
    Classify,
    /// Evaluate f at a rational, decimal, or digit sequence such as "02(1)"
    Eval {
        #[arg(long)]
        x: String,
        /// Use the floating path with this accuracy
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Expand x into digits
    Encode {
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
    /// Increment of f on a cylinder
    Increment {
        #[arg(long)]
        word: String,
    },
    /// Exact image of a cylinder
    Range {
        #[arg(long)]
        word: String,
    },
    /// Regions containing the solutions of f(x) = y
    Levelset {
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Write cylinder endpoints of the graph as CSV
    Graph {
        #[arg(long)]
        rank: usize,
        /// Output file, or "-" for stdout
        #[arg(long)]
        out: PathBuf,
        /// Fractional digits in decimal output
        #[arg(long, default_value_t = 15)]
        digits: usize,
        /// Write exact rationals p/q instead of decimals
        #[arg(long)]
        exact: bool,
    },
    /// Print the three affine maps of the self-affine graph
    Ifs,
    /// Box-counting dimension estimate of the graph
    Dimension {
        #[arg(long, value_delimiter = ',', default_value = "27,81,243")]
        scales: Vec<usize>,
    },
    /// Run the invariant suite
    Verify {
        #[arg(long, default_value_t = 6)]
        rank: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("--spec <FILE> is required")]
    MissingSpec,
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Core(#[from] qstar_core::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("output: {0}")]
    Output(#[from] std::io::Error),
}

pub fn load_spec(path: &std::path::Path) -> Result<FunctionSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(parse_spec_file(&text)?)
}

fn decimal(x: &Rational) -> String {
    to_decimal_string(x, 15)
}

fn endpoint_name(e: Endpoint) -> &'static str {
    match e {
        Endpoint::Left => "left",
        Endpoint::Right => "right",
    }
}

fn witness_name(w: Witness) -> &'static str {
    match w {
        Witness::SignChange => "sign-change",
        Witness::EndpointHit => "endpoint-hit",
        Witness::RangeOnly => "range-only",
    }
}

/// Runs one command, writing its report to `out`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut impl Write) -> Result<i32, CliError> {
    let path = cli.spec.as_deref().ok_or(CliError::MissingSpec)?;
    let f = load_spec(path)?;
    match &cli.command {
        Command::Classify => {
            let regime = classify_regime(&f.eps);
            writeln!(out, "regime: {}", regime.tag)?;
            let signs: String = regime.per_index.iter().map(|s| s.symbol()).collect();
            let split = f.eps.schedule().preamble_len();
            writeln!(
                out,
                "sign of g1 (preamble | period): {} | {}",
                &signs[..split],
                &signs[split..]
            )?;
        }
        Command::Eval { x, tol } => eval(&f, x, *tol, out)?,
        Command::Encode { x, depth } => {
            let x = parse_rational(x)?;
            let e = f.x_schedule.encode(&x, *depth)?;
            writeln!(out, "word: {}", e.word)?;
            writeln!(out, "exact: {}", e.exact)?;
            if let Some(full) = e.full {
                writeln!(out, "full: {full}")?;
            }
        }
        Command::Increment { word } => {
            let w: DigitWord = word.parse()?;
            let mu = f.increment(&w);
            writeln!(out, "increment: {mu}")?;
            writeln!(out, "decimal: {}", decimal(&mu))?;
        }
        Command::Range { word } => {
            let w: DigitWord = word.parse()?;
            let (left, len) = f.x_schedule.cylinder_interval(&w);
            let r = f.range_on_cylinder(&w);
            writeln!(out, "x: [{}, {}]", left, &left + &len)?;
            writeln!(out, "lo: {} ({})", r.lo, decimal(&r.lo))?;
            writeln!(out, "hi: {} ({})", r.hi, decimal(&r.hi))?;
            writeln!(out, "argmin: {}", endpoint_name(r.argmin_at))?;
            writeln!(out, "argmax: {}", endpoint_name(r.argmax_at))?;
        }
        Command::Levelset { y, depth } => {
            let y0 = parse_rational(y)?;
            let regions = preimage_regions(&f, &y0, *depth)?;
            writeln!(
                out,
                "{:<16} {:>18} {:>18} {:>18} {:>18}  witness",
                "word", "x_left", "x_right", "f_lo", "f_hi"
            )?;
            for r in &regions {
                writeln!(
                    out,
                    "{:<16} {:>18.15} {:>18.15} {:>18.15} {:>18.15}  {}",
                    r.word.to_string(),
                    to_f64(&r.x_interval.0),
                    to_f64(&r.x_interval.1),
                    to_f64(&r.f_range.0),
                    to_f64(&r.f_range.1),
                    witness_name(r.witness)
                )?;
            }
            writeln!(out, "regions: {}", regions.len())?;
            writeln!(
                out,
                "root count lower bound: {}",
                root_count_lower_bound(&f, &y0, *depth)?
            )?;
        }
        Command::Graph {
            rank,
            out: path,
            digits,
            exact,
        } => {
            let sample = graph_sample(&f, *rank)?;
            if path.as_os_str() == "-" {
                write_graph_csv(&sample, *digits, *exact, &mut *out)?;
            } else {
                let file = std::fs::File::create(path).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                write_graph_csv(&sample, *digits, *exact, std::io::BufWriter::new(file))?;
                writeln!(out, "wrote {} points to {}", sample.len(), path.display())?;
            }
        }
        Command::Ifs => {
            for (i, m) in ifs_maps(&f)?.iter().enumerate() {
                writeln!(
                    out,
                    "phi_{i}: x' = {} x + {}, y' = {} y + {}",
                    m.qx, m.bx, m.gy, m.dy
                )?;
            }
        }
        Command::Dimension { scales } => {
            let dim = box_dimension(&f, scales)?;
            writeln!(out, "{:>8} {:>12}", "n", "boxes")?;
            for (n, count) in &dim.counts {
                writeln!(out, "{n:>8} {count:>12}")?;
            }
            writeln!(out, "estimate: {:.6}", dim.estimate)?;
        }
        Command::Verify { rank } => {
            let checks = verify::run(&f, *rank);
            for c in &checks {
                writeln!(out, "{}", c.line())?;
            }
            let ok = verify::all_passed(&checks);
            writeln!(
                out,
                "{}",
                if ok {
                    "all checks passed"
                } else {
                    "verification FAILED"
                }
            )?;
            return Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED });
        }
    }
    Ok(EXIT_OK)
}

fn eval(f: &FunctionSpec, x: &str, tol: Option<f64>, out: &mut impl Write) -> Result<(), CliError> {
    if x.contains('(') {
        let seq: DigitSeq = x.parse()?;
        let y = f.eval_exact(&seq);
        writeln!(out, "x: {}", f.x_schedule.value_of(&seq))?;
        writeln!(out, "f(x) = {y}")?;
        writeln!(out, "decimal: {}", decimal(&y))?;
        return Ok(());
    }
    let value = parse_rational(x)?;
    if let Some(tol) = tol {
        let y = f.eval_approx(to_f64(&value), tol)?;
        writeln!(out, "f(x) ~ {y:.17} (tol {tol:e})")?;
        return Ok(());
    }
    let encoding = f.x_schedule.encode(&value, EVAL_ENCODE_BUDGET)?;
    match encoding.full {
        Some(seq) => {
            let y = f.eval_exact(&seq);
            writeln!(out, "digits: {seq}")?;
            writeln!(out, "f(x) = {y}")?;
            writeln!(out, "decimal: {}", decimal(&y))?;
        }
        None => {
            let y = f.eval_approx(to_f64(&value), 1e-15)?;
            writeln!(
                out,
                "f(x) ~ {y:.17} (no periodic expansion within {EVAL_ENCODE_BUDGET} digits)"
            )?;
        }
    }
    Ok(())
}

/// CSV with header `x,y`: decimals with `digits` fractional digits, or
/// exact `p/q` rationals.
pub fn write_graph_csv(
    sample: &GraphSample,
    digits: usize,
    exact: bool,
    sink: impl Write,
) -> Result<(), CliError> {
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record(["x", "y"])?;
    match sample {
        GraphSample::Exact(points) => {
            for (x, y) in points {
                let render = |v: &Rational| {
                    if exact {
                        v.to_string()
                    } else {
                        to_decimal_string(v, digits)
                    }
                };
                writer.write_record([render(x), render(y)])?;
            }
        }
        GraphSample::Approximate { points, .. } => {
            for (x, y) in points {
                writer.write_record([format!("{x:.digits$}"), format!("{y:.digits$}")])?;
            }
        }
    }
    writer.flush()?;
    Ok(())
}
