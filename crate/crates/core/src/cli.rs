//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 numeric non-convergence or
//! infeasible fit, 3 parameter-domain error.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::Error;
use crate::estimate::{empirical_log_cumulants, fit_molc};
use crate::mellin::{
    analyticity_strip, classical_moment, convert, log_cumulants, log_cumulants_numeric, phi,
    phi_numeric, Convention, LogStats, StatKind,
};
use crate::models::{ClutterModel, Family};
use crate::simulate::{
    figure1_experiment, log_grid, read_samples_csv, sample, write_fig1_csv, write_fig1_json,
    write_samples_csv, Fig1Config, RngState,
};
use crate::specfun::Tolerance;

const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(
    name = "mellin-clutter",
    version,
    about = "Second-kind statistics of radar clutter models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Probability density at x.
    #[command(allow_negative_numbers = true)]
    Pdf {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        x: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Second-kind characteristic function Φ(s) = E[X^(s-1)].
    #[command(allow_negative_numbers = true)]
    Phi {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        s: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Classical moment E[X^n].
    #[command(allow_negative_numbers = true)]
    Moments {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Log-cumulants of orders 1..=n.
    #[command(allow_negative_numbers = true)]
    Cumulants {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ConventionArg::Standard)]
        convention: ConventionArg,
        /// Differentiate Ψ numerically instead of using closed forms.
        #[arg(long)]
        numeric: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Method-of-log-cumulants fit to a CSV sample file.
    Fit {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Draw samples from a model.
    #[command(allow_negative_numbers = true)]
    Simulate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Texture log-cumulant sweep over the gamma–gamma texture shape.
    #[command(allow_negative_numbers = true)]
    Figure1 {
        #[arg(long = "L", default_value_t = 4.0)]
        l: f64,
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        /// Log-spaced inclusive grid `lo:hi:points`.
        #[arg(long, default_value = "0.25:16:13")]
        m_grid: String,
        #[arg(long, default_value_t = 1_000_000)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Cross-check closed forms against quadrature and finite differences.
    Verify {
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Standard,
    PaperEq6,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Standard => Convention::Standard,
            ConventionArg::PaperEq6 => Convention::PaperEq6,
        }
    }
}

/// Model selection; flag names match the JSON field names of [`ClutterModel`].
#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long)]
    model: Family,
    #[arg(long = "L")]
    l: Option<f64>,
    #[arg(long = "M")]
    m: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    z: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
}

impl ModelArgs {
    fn build(&self) -> Result<ClutterModel, Failure> {
        let mut record = serde_json::Map::new();
        record.insert("family".into(), json!(self.model.name()));
        let flags = [
            ("L", self.l),
            ("M", self.m),
            ("mu", self.mu),
            ("sigma", self.sigma),
            ("b", self.b),
            ("c", self.c),
            ("z", self.z),
            ("alpha", self.alpha),
        ];
        for (name, value) in flags {
            if let Some(v) = value {
                if !self.model.parameter_names().contains(&name) {
                    return Err(Failure::usage(format!(
                        "--{name} does not apply to {}; expected {}",
                        self.model,
                        flag_list(self.model)
                    )));
                }
                record.insert(name.into(), json!(v));
            }
        }
        let model: ClutterModel = serde_json::from_value(record.into()).map_err(|e| {
            Failure::usage(format!(
                "{}: {e}; expected {}",
                self.model,
                flag_list(self.model)
            ))
        })?;
        model.validate().map_err(Failure::from)
    }
}

fn flag_list(family: Family) -> String {
    family
        .parameter_names()
        .iter()
        .map(|p| format!("--{p}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// A diagnostic and its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonConvergence { .. } | Error::InfeasibleCumulants(_) | Error::Overflow(_) => 2,
        Error::Domain { .. }
        | Error::Parameter { .. }
        | Error::UnsupportedOrder { .. }
        | Error::OutsideStrip { .. }
        | Error::MomentDiverges { .. }
        | Error::NotCompound(_) => 3,
        Error::EmptySample | Error::InvalidSample { .. } | Error::Invalid(_) => 1,
    }
}

/// Run the command line `argv` (including the program name), writing results
/// to `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{rendered}")
            } else {
                write!(stderr, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message);
            failure.code
        }
    }
}

fn print_scalar(out: &mut dyn Write, format: Format, key: &str, value: f64) -> Result<(), Failure> {
    match format {
        Format::Csv => writeln!(out, "{value:?}")?,
        Format::Json => writeln!(out, "{}", json!({ key: value }))?,
    }
    Ok(())
}

fn emit(bytes: &[u8], path: &Option<PathBuf>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => {
            let file = File::create(p)
                .map_err(|e| Failure::usage(format!("cannot create {}: {e}", p.display())))?;
            let mut writer = BufWriter::new(file);
            writer.write_all(bytes)?;
            writer.flush()?;
        }
        None => stdout.write_all(bytes)?,
    }
    Ok(())
}

fn parse_grid(spec: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Failure::usage(format!("--m-grid expects lo:hi:points, got `{spec}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let points: usize = parts[2].trim().parse().map_err(|_| bad())?;
    log_grid(lo, hi, points).map_err(|e| Failure::usage(e.to_string()))
}

fn dispatch(
    command: Command,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    match command {
        Command::Pdf { model, x, format } => {
            let model = model.build()?;
            print_scalar(stdout, format, "pdf", model.pdf(x)?)?;
        }
        Command::Phi { model, s, format } => {
            let model = model.build()?;
            print_scalar(stdout, format, "phi", phi(&model, s)?)?;
        }
        Command::Moments { model, n, format } => {
            let model = model.build()?;
            print_scalar(stdout, format, "moment", classical_moment(&model, n)?)?;
        }
        Command::Cumulants {
            model,
            n,
            convention,
            numeric,
            format,
        } => {
            let model = model.build()?;
            let standard = if numeric {
                log_cumulants_numeric(&model, n)?
            } else {
                log_cumulants(&model, n)?
            };
            let stats = match Convention::from(convention) {
                Convention::Standard => standard,
                other if n >= 4 => {
                    let moments = convert(&standard, StatKind::LogMoments, Convention::Standard)?;
                    convert(&moments, StatKind::LogCumulants, other)?
                }
                other => LogStats::new(StatKind::LogCumulants, other, standard.values)?,
            };
            write_stats(stdout, format, &stats)?;
        }
        Command::Fit {
            family,
            input,
            format,
        } => {
            let file = File::open(&input)
                .map_err(|e| Failure::usage(format!("cannot open {}: {e}", input.display())))?;
            let samples = read_samples_csv(BufReader::new(file))?;
            let cumulants = empirical_log_cumulants(&samples, 4)?;
            let report = fit_molc(family, &cumulants)?;
            match format {
                Format::Json => writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&report)
                        .map_err(|e| Failure::usage(e.to_string()))?
                )?,
                Format::Csv => {
                    let mut header = vec!["family".to_string()];
                    let mut row = vec![report.model.family().name().to_string()];
                    for (name, value) in report.model.parameters() {
                        header.push(name.to_string());
                        row.push(format!("{value:?}"));
                    }
                    header.extend(["iterations", "residual", "converged"].map(String::from));
                    row.push(report.iterations.to_string());
                    row.push(format!("{:?}", report.residual));
                    row.push(report.converged.to_string());
                    writeln!(stdout, "{}", header.join(","))?;
                    writeln!(stdout, "{}", row.join(","))?;
                }
            }
            if !report.converged {
                writeln!(
                    stderr,
                    "warning: fit residual {:e} exceeds tolerance",
                    report.residual
                )?;
                return Ok(2);
            }
        }
        Command::Simulate {
            model,
            n,
            seed,
            stream,
            out,
            format,
        } => {
            let model = model.build()?;
            let seed = resolve_seed(seed, stderr)?;
            let samples = sample(&model, n, RngState::with_stream(seed, stream))?;
            let mut buffer = Vec::new();
            match format {
                Format::Csv => write_samples_csv(&samples, &mut buffer)?,
                Format::Json => {
                    serde_json::to_writer(&mut buffer, samples.values())
                        .map_err(|e| Failure::usage(e.to_string()))?;
                    writeln!(buffer)?;
                }
            }
            emit(&buffer, &out, stdout)?;
        }
        Command::Figure1 {
            l,
            mu,
            m_grid,
            n,
            seed,
            out,
            format,
        } => {
            let config = Fig1Config {
                speckle_shape: l,
                mu,
                m_grid: parse_grid(&m_grid)?,
                samples_per_point: n,
                seed: resolve_seed(seed, stderr)?,
            };
            let table = figure1_experiment(&config)?;
            let mut buffer = Vec::new();
            match format {
                Format::Csv => write_fig1_csv(&table, &mut buffer)?,
                Format::Json => write_fig1_json(&table, &mut buffer)?,
            }
            emit(&buffer, &out, stdout)?;
        }
        Command::Verify { tolerance } => {
            if !(tolerance > 0.0 && tolerance.is_finite()) {
                return Err(Failure::usage(format!(
                    "--tolerance must be positive, got {tolerance}"
                )));
            }
            let checks = verify_suite(tolerance);
            let mut all_pass = true;
            writeln!(
                stdout,
                "{:<10} {:<18} {:<10} {:>12} {:>12}  result",
                "check", "family", "point", "error", "limit"
            )?;
            for check in &checks {
                all_pass &= check.pass;
                writeln!(
                    stdout,
                    "{:<10} {:<18} {:<10} {:>12.3e} {:>12.3e}  {}",
                    check.name,
                    check.family,
                    check.point,
                    check.error,
                    check.limit,
                    if check.pass { "PASS" } else { "FAIL" }
                )?;
            }
            let failed = checks.iter().filter(|c| !c.pass).count();
            writeln!(stdout, "{} checks, {} failed", checks.len(), failed)?;
            return Ok(if all_pass { 0 } else { 2 });
        }
    }
    Ok(0)
}

fn resolve_seed(seed: Option<u64>, stderr: &mut dyn Write) -> Result<u64, Failure> {
    match seed {
        Some(s) => Ok(s),
        None => {
            writeln!(stderr, "seed: {DEFAULT_SEED}")?;
            Ok(DEFAULT_SEED)
        }
    }
}

fn write_stats(out: &mut dyn Write, format: Format, stats: &LogStats) -> Result<(), Failure> {
    match format {
        Format::Csv => {
            writeln!(out, "order,value")?;
            for (i, v) in stats.values.iter().enumerate() {
                writeln!(out, "{},{v:?}", i + 1)?;
            }
        }
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(stats).map_err(|e| Failure::usage(e.to_string()))?
        )?,
    }
    Ok(())
}

struct Check {
    name: &'static str,
    family: String,
    point: String,
    error: f64,
    limit: f64,
    pass: bool,
}

impl Check {
    fn new(
        name: &'static str,
        family: &ClutterModel,
        point: String,
        error: f64,
        limit: f64,
    ) -> Self {
        Self {
            name,
            family: family.family().name().to_string(),
            point,
            error,
            limit,
            pass: error.is_finite() && error <= limit,
        }
    }
}

/// One representative model per family.
pub fn representative_models() -> Vec<ClutterModel> {
    vec![
        ClutterModel::Exponential { mean: 2.0 },
        ClutterModel::Gamma {
            shape: 3.0,
            mean: 1.5,
        },
        ClutterModel::Nakagami {
            shape: 2.0,
            scale: 1.2,
        },
        ClutterModel::Maxwell { scale: 0.8 },
        ClutterModel::Weibull {
            shape: 1.7,
            scale: 2.0,
        },
        ClutterModel::Rayleigh { scale: 1.3 },
        ClutterModel::GammaGamma {
            speckle_shape: 4.0,
            texture_shape: 2.0,
            mean: 1.0,
        },
        ClutterModel::KAmplitude {
            texture_shape: 2.0,
            texture_rate: 2.0,
            scale: 1.0,
        },
        ClutterModel::WeibullNakagami {
            weibull_shape: 1.5,
            texture_shape: 2.0,
            texture_rate: 1.0,
            mean_square: 1.0,
        },
        ClutterModel::Fisher {
            speckle_shape: 3.0,
            texture_shape: 5.0,
            mean: 1.0,
        },
        ClutterModel::InverseGamma {
            shape: 4.0,
            scale: 1.0,
        },
    ]
}

fn relative_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn verify_suite(tolerance: f64) -> Vec<Check> {
    let quad = Tolerance::new(1e-300, (tolerance * 1e-3).clamp(1e-12, 1e-6), 4000)
        .expect("valid tolerance");
    let mut checks = Vec::new();
    for model in representative_models() {
        let strip = analyticity_strip(&model);
        let lo = strip.lower.max(-2.0);
        let hi = strip.upper.min(4.0);
        let mut points = vec![1.0];
        points.extend([0.2, 0.4, 0.6, 0.8].map(|f| lo + f * (hi - lo)));
        points.sort_by(f64::total_cmp);
        points.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        for s in points {
            let error = match (phi(&model, s), phi_numeric(&model, s, &quad)) {
                (Ok(a), Ok(b)) => relative_error(b, a),
                _ => f64::INFINITY,
            };
            checks.push(Check::new(
                "phi",
                &model,
                format!("s={s:.3}"),
                error,
                tolerance,
            ));
        }
        match (log_cumulants(&model, 4), log_cumulants_numeric(&model, 4)) {
            (Ok(exact), Ok(numeric)) => {
                for n in 1..=4 {
                    let limit = if n <= 2 {
                        10.0 * tolerance
                    } else {
                        1e3 * tolerance
                    };
                    let error = (exact.values[n - 1] - numeric.values[n - 1]).abs();
                    checks.push(Check::new(
                        "cumulant",
                        &model,
                        format!("n={n}"),
                        error,
                        limit,
                    ));
                }
            }
            _ => checks.push(Check::new(
                "cumulant",
                &model,
                "n=1..4".into(),
                f64::INFINITY,
                0.0,
            )),
        }
        if let Ok(parts) = model.decompose() {
            let limit = 1e-4 * tolerance;
            for s in [0.5, 1.5, 2.0] {
                if !strip.contains(s) {
                    continue;
                }
                let error = match (
                    phi(&model, s),
                    phi(&parts.speckle, s),
                    phi(&parts.texture, s),
                ) {
                    (Ok(c), Ok(a), Ok(b)) => relative_error(a * b, c),
                    _ => f64::INFINITY,
                };
                checks.push(Check::new(
                    "product",
                    &model,
                    format!("s={s:.3}"),
                    error,
                    limit,
                ));
            }
        }
    }
    checks
}
