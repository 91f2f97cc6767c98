//! Command-line front end. Every subcommand renders one CSV document.
//!
//! Exit codes: 0 on success, 1 when a computation fails (atom cap, rational
//! overflow, I/O), 2 on usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cantor;
use crate::error::Error;
use crate::format::{fixed, sig17};
use crate::products::{self, ProductSpec};
use crate::randseries::{self, CoeffSeries, SimConfig};
use crate::rational::RationalLoc;
use crate::spectra::{self, QuadratureConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "cosprod",
    version,
    about = "Cosine products, point-mass spectra and random-sign series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Write CSV to this file instead of standard output ("-" for stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Grid {
    #[arg(long, allow_hyphen_values = true)]
    xmin: f64,
    #[arg(long, allow_hyphen_values = true)]
    xmax: f64,
    #[arg(long)]
    step: f64,
}

#[derive(Debug, Args)]
struct Quadrature {
    /// Integration cutoff.
    #[arg(long, default_value_t = 15.0)]
    upper: f64,
    /// Midpoint step.
    #[arg(long, default_value_t = 0.02)]
    dx: f64,
    /// Number of cosine factors kept.
    #[arg(long, default_value_t = 1000)]
    truncate: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SeriesArg {
    /// c_k = 1/k
    Harmonic,
    /// c_k = 2/3^k
    Cantor,
    /// c_k = 1/2^k
    Geometric,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Base-p partial product against sin(x)/x on a grid.
    Identity {
        #[arg(long)]
        base: u32,
        #[arg(long)]
        depth: u32,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        output: Output,
    },
    /// Nested-radical factors of 2/pi.
    Vieta {
        #[arg(long)]
        terms: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Point-mass spectrum of a base-p partial product.
    Spectrum {
        #[arg(long)]
        base: u32,
        #[arg(long)]
        depth: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Cantor function on an evenly spaced grid of [0, 1].
    CantorCdf {
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        points: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Product of cos(2x/3^k) on a grid.
    CantorProduct {
        #[arg(long)]
        depth: u32,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        output: Output,
    },
    /// Density table of the random harmonic series.
    Phi {
        #[command(flatten)]
        quadrature: Quadrature,
        /// Comma-separated omegas, or "paper" for the 21 reference rows.
        #[arg(long, default_value = "paper", allow_hyphen_values = true)]
        omegas: String,
        #[command(flatten)]
        output: Output,
    },
    /// Truncated integrals next to pi/4 and pi/8.
    Conjectures {
        #[command(flatten)]
        quadrature: Quadrature,
        #[command(flatten)]
        output: Output,
    },
    /// Monte Carlo sums of a random-sign series.
    Simulate {
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        terms: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SeriesArg::Harmonic)]
        series: SeriesArg,
        #[arg(long, default_value_t = 40)]
        bins: usize,
        #[arg(long, default_value_t = -4.0, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
        hi: f64,
        /// Emit the raw samples instead of a histogram.
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Compute(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::AtomCapExceeded { .. } | Error::LocationOverflow(_) | Error::EmptyMeasure => {
                CliError::Compute(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Where a subcommand's CSV goes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutputTarget {
    Stdout,
    File(PathBuf),
}

impl OutputTarget {
    fn from_arg(out: Option<PathBuf>) -> Self {
        match out {
            Some(p) if p.as_os_str() != "-" => OutputTarget::File(p),
            _ => OutputTarget::Stdout,
        }
    }
}

/// Runs the CLI against the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with_io<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let (doc, out) = match render(cli.command, stderr) {
        Ok(r) => r,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(CliError::Compute(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_COMPUTE;
        }
    };
    let written = match OutputTarget::from_arg(out) {
        OutputTarget::Stdout => stdout
            .write_all(doc.as_bytes())
            .and_then(|_| stdout.flush()),
        OutputTarget::File(path) => std::fs::write(&path, doc.as_bytes())
            .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_COMPUTE
        }
    }
}

/// Grid `xmin + i·step` up to and including `xmax`.
fn grid_points(grid: &Grid) -> Result<Vec<f64>, CliError> {
    let Grid { xmin, xmax, step } = *grid;
    if !(step > 0.0) || !step.is_finite() {
        return Err(CliError::Usage(format!(
            "--step must be positive, got {step}"
        )));
    }
    if !(xmax >= xmin) || !xmin.is_finite() || !xmax.is_finite() {
        return Err(CliError::Usage(format!(
            "--xmax ({xmax}) must not be below --xmin ({xmin})"
        )));
    }
    let count = ((xmax - xmin) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| xmin + i as f64 * step).collect())
}

fn parse_omegas(spec: &str) -> Result<Vec<f64>, CliError> {
    if spec.trim() == "paper" {
        return Ok(spectra::reference_omegas());
    }
    if spec.trim().is_empty() {
        return Ok(Vec::new());
    }
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Usage(format!("--omegas: bad value {s:?}: {e}")))
        })
        .collect()
}

fn quadrature_config(q: &Quadrature) -> Result<QuadratureConfig, CliError> {
    Ok(QuadratureConfig::new(q.upper, q.dx, q.truncate)?)
}

fn render(command: Command, stderr: &mut dyn Write) -> Result<(String, Option<PathBuf>), CliError> {
    let mut doc = String::new();
    let out = match command {
        Command::Identity {
            base,
            depth,
            grid,
            output,
        } => {
            let spec = ProductSpec::new(base, depth)?;
            doc.push_str("x,partial,sinc,abs_err\n");
            for x in grid_points(&grid)? {
                let partial = products::basep_partial(spec, x);
                let sinc = products::sinc(x);
                let _ = writeln!(
                    doc,
                    "{},{},{},{}",
                    fixed(x, 12),
                    fixed(partial, 12),
                    fixed(sinc, 12),
                    fixed((partial - sinc).abs(), 12)
                );
            }
            output.out
        }
        Command::Vieta { terms, output } => {
            if terms == 0 {
                return Err(CliError::Usage("--terms must be at least 1".into()));
            }
            let v = products::vieta_partial(terms);
            let target = 2.0 / std::f64::consts::PI;
            doc.push_str("k,term,partial_product,abs_err_vs_2_over_pi\n");
            for (k, (term, prod)) in v.terms.iter().zip(v.running_products()).enumerate() {
                let _ = writeln!(
                    doc,
                    "{},{},{},{}",
                    k + 1,
                    sig17(*term),
                    sig17(prod),
                    sig17((prod - target).abs())
                );
            }
            output.out
        }
        Command::Spectrum {
            base,
            depth,
            output,
        } => {
            let m = products::basep_spectrum(ProductSpec::new(base, depth)?)?;
            doc.push_str(&m.to_csv());
            output.out
        }
        Command::CantorCdf {
            depth,
            points,
            output,
        } => {
            if points < 2 {
                return Err(CliError::Usage("--points must be at least 2".into()));
            }
            let last = i64::try_from(points - 1)
                .map_err(|_| CliError::Usage("--points too large".into()))?;
            doc.push_str("x,value\n");
            for i in 0..=last {
                let x = RationalLoc::new(i, last)?;
                let value = if depth <= 40 {
                    cantor::cantor_cdf_rational(x, depth)?
                } else {
                    cantor::cantor_cdf(x.to_f64(), depth)?
                };
                let _ = writeln!(doc, "{},{}", fixed(x.to_f64(), 12), fixed(value, 12));
            }
            output.out
        }
        Command::CantorProduct {
            depth,
            grid,
            output,
        } => {
            doc.push_str("x,value\n");
            for x in grid_points(&grid)? {
                let _ = writeln!(
                    doc,
                    "{},{}",
                    fixed(x, 12),
                    fixed(cantor::cantor_cos_product(x, depth), 12)
                );
            }
            output.out
        }
        Command::Phi {
            quadrature,
            omegas,
            output,
        } => {
            let cfg = quadrature_config(&quadrature)?;
            let table = spectra::phi_table(&parse_omegas(&omegas)?, &cfg)?;
            for c in table.compare_with_reference().iter().filter(|c| c.flagged) {
                let _ = writeln!(
                    stderr,
                    "note: omega={:.1} computed {:.6} differs from reference {:.6} by {:.2e}",
                    c.omega, c.computed, c.reference, c.abs_diff
                );
            }
            doc.push_str(&table.to_csv());
            output.out
        }
        Command::Conjectures { quadrature, output } => {
            let report = spectra::conjecture_integrals(&quadrature_config(&quadrature)?)?;
            doc.push_str(&report.to_csv());
            output.out
        }
        Command::Simulate {
            trials,
            terms,
            seed,
            series,
            bins,
            lo,
            hi,
            raw,
            output,
        } => {
            let cfg = SimConfig::new(trials, terms, seed)?;
            let series = match series {
                SeriesArg::Harmonic => CoeffSeries::harmonic(terms),
                SeriesArg::Cantor => CoeffSeries::cantor(terms),
                SeriesArg::Geometric => CoeffSeries::geometric(2, RationalLoc::ONE, terms)?,
            };
            let samples = randseries::simulate(&series, &cfg)?;
            if raw {
                doc.push_str(&randseries::samples_to_csv(&samples));
            } else {
                let h = randseries::histogram(&samples, bins, lo, hi)?;
                if h.underflow + h.overflow > 0 {
                    let _ = writeln!(
                        stderr,
                        "note: {} samples below {lo}, {} at or above {hi}",
                        h.underflow, h.overflow
                    );
                }
                doc.push_str(&h.to_csv());
            }
            output.out
        }
    };
    Ok((doc, out))
}
