//! Batch front door for the tridiagonal inversion machinery: problem
//! instances come from files or flags, results leave as machine-readable
//! reports.
//!
//! Payload goes to the output stream (or `--output`), diagnostics and
//! timings to the error stream, so identical inputs always produce
//! byte-identical payloads. Exit codes: 0 success, 1 singular matrix,
//! 2 invalid input, 3 numerical failure.

mod input;
mod output;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use jacobi_core::chebyshev::{cheb_direct, cheb_recurrence, ChebSequencePair};
use jacobi_core::instances::{stream_seed, InstanceRng};
use jacobi_core::inverse::{
    determinant, invert, invert_sym_toeplitz, invert_toeplitz, regularity_scaled, solve,
    toeplitz_regularity,
};
use jacobi_core::oracle::{dense_invert, residual_inf_norm};
use jacobi_core::{
    Error, GridFunction, InverseResult, JacobiCoefficients, RegularityReport, ToeplitzSpec,
    DEFAULT_SINGULARITY_TOL,
};

use input::InstanceFile;
use output::{
    fmt_num, fmt_or_null, matrix_csv, matrix_json, nullable_vector_json, scaled_json, vector_csv,
    vector_json, JsonObject,
};

/// A failure with the exit code it maps to; the message goes to the error
/// stream verbatim.
pub(crate) struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    pub(crate) fn invalid(message: String) -> CliError {
        CliError { code: 2, message }
    }

    pub(crate) fn numeric(message: String) -> CliError {
        CliError { code: 3, message }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match e {
            Error::SingularMatrix(_) | Error::SingularProblem => 1,
            Error::Overflow
            | Error::NumericallySingular(_)
            | Error::NotGreenStructured(..)
            | Error::GreenDetMismatch { .. } => 3,
            _ => 2,
        };
        let message = match e {
            // The debug-formatted report is for library users; the command
            // line gets the short form.
            Error::SingularMatrix(_) => "singular matrix at the requested tolerance".to_string(),
            other => other.to_string(),
        };
        CliError { code, message }
    }
}

#[derive(Parser)]
#[command(
    name = "jacobi",
    version,
    about = "Explicit inverses, determinants, and solves for irreducible tridiagonal matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ToeplitzAction {
    Invert,
    Check,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ChebMode {
    Direct,
    Recurrence,
}

#[derive(Subcommand)]
enum Command {
    /// Invert the instance and emit every entry of the inverse.
    Invert {
        /// Instance file: {n, a, b, c}, {alpha, beta, gamma, size}, or
        /// {alpha, beta, size}.
        #[arg(long)]
        input: PathBuf,
        /// Relative singularity tolerance (default 1e-10).
        #[arg(long, allow_negative_numbers = true)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// Write the payload to this file instead of the output stream.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Emit the determinant of the instance.
    Det {
        #[arg(long)]
        input: PathBuf,
    },
    /// Emit the regularity report and nothing else.
    Check {
        #[arg(long)]
        input: PathBuf,
    },
    /// Solve M u = f for the right-hand side in --rhs.
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// JSON array file with the n+2 right-hand side values.
        #[arg(long)]
        rhs: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
    },
    /// Work on a constant-diagonal instance given directly by flags.
    Toeplitz {
        /// Negated superdiagonal value.
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Diagonal value.
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        /// Negated subdiagonal value; omitted means the symmetric case
        /// gamma = alpha.
        #[arg(long, allow_negative_numbers = true)]
        gamma: Option<f64>,
        /// Matrix order (at least 2).
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum, default_value_t = ToeplitzAction::Invert)]
        action: ToeplitzAction,
    },
    /// Evaluate the sequence polynomial P(k) over 1-based value lists.
    Cheb {
        /// Polynomial order, at least -1.
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Comma-separated values x(1), x(2), ...
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Comma-separated values y(1), y(2), ...
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, value_enum, default_value_t = ChebMode::Recurrence)]
        mode: ChebMode,
    },
    /// Time the explicit inverse on reproducible random instances.
    Bench {
        /// Comma-separated matrix orders.
        #[arg(long)]
        sizes: String,
        /// Trials per order.
        #[arg(long)]
        trials: usize,
        /// Base seed for the documented instance stream.
        #[arg(long)]
        seed: u64,
        /// Also time dense elimination on the same instances.
        #[arg(long)]
        compare_oracle: bool,
    },
}

/// Runs one invocation. `args` is the full argv including the program name;
/// the return value is the process exit code.
pub fn run(args: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
                return 2;
            }
            // Help and version requests are successful output.
            let _ = write!(stdout, "{rendered}");
            return 0;
        }
    };
    let outcome = match cli.command {
        Command::Invert {
            input,
            tol,
            format,
            output,
        } => cmd_invert(&input, tol, format, output.as_deref(), stdout, stderr),
        Command::Det { input } => cmd_det(&input, stdout, stderr),
        Command::Check { input } => cmd_check(&input, stdout, stderr),
        Command::Solve { input, rhs, format } => cmd_solve(&input, &rhs, format, stdout, stderr),
        Command::Toeplitz {
            alpha,
            beta,
            gamma,
            size,
            action,
        } => cmd_toeplitz(alpha, beta, gamma, size, action, stdout, stderr),
        Command::Cheb { k, x, y, mode } => cmd_cheb(k, &x, &y, mode, stdout, stderr),
        Command::Bench {
            sizes,
            trials,
            seed,
            compare_oracle,
        } => cmd_bench(&sizes, trials, seed, compare_oracle, stdout, stderr),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

/// A validated instance together with the inversion path its variant calls
/// for, so invert, check, det, and solve stay mutually consistent.
enum Instance {
    General(JacobiCoefficients),
    Toeplitz(ToeplitzSpec),
    Symmetric { alpha: f64, beta: f64, size: usize },
}

impl Instance {
    fn from_file(file: InstanceFile) -> Result<Instance, CliError> {
        match file {
            InstanceFile::General { n, a, b, c } => {
                Ok(Instance::General(JacobiCoefficients::new(n, &a, &b, &c)?))
            }
            InstanceFile::Toeplitz {
                alpha,
                beta,
                gamma,
                size,
            } => Ok(Instance::Toeplitz(ToeplitzSpec::new(
                alpha, beta, gamma, size,
            )?)),
            InstanceFile::Symmetric { alpha, beta, size } => {
                ToeplitzSpec::new(alpha, beta, alpha, size)?;
                Ok(Instance::Symmetric { alpha, beta, size })
            }
        }
    }

    fn variant(&self) -> &'static str {
        match self {
            Instance::General(_) => "general",
            Instance::Toeplitz(_) => "toeplitz",
            Instance::Symmetric { .. } => "symmetric",
        }
    }

    fn order(&self) -> usize {
        match self {
            Instance::General(j) => j.size(),
            Instance::Toeplitz(spec) => spec.size,
            Instance::Symmetric { size, .. } => *size,
        }
    }

    fn coefficients(&self) -> JacobiCoefficients {
        match self {
            Instance::General(j) => j.clone(),
            Instance::Toeplitz(spec) => spec.to_coefficients(),
            Instance::Symmetric { alpha, beta, size } => {
                JacobiCoefficients::constant(*alpha, *beta, *alpha, *size)
                    .expect("validated in from_file")
            }
        }
    }

    fn invert(&self, tol: f64) -> Result<InverseResult, Error> {
        match self {
            Instance::General(j) => invert(j, tol),
            Instance::Toeplitz(spec) => invert_toeplitz(spec, tol),
            Instance::Symmetric { alpha, beta, size } => {
                invert_sym_toeplitz(*alpha, *beta, *size, tol)
            }
        }
    }

    fn regularity(&self, tol: f64) -> RegularityReport {
        match self {
            Instance::General(j) => regularity_scaled(j, tol),
            Instance::Toeplitz(spec) => toeplitz_regularity(spec, tol),
            Instance::Symmetric { alpha, beta, size } => toeplitz_regularity(
                &ToeplitzSpec::new(*alpha, *beta, *alpha, *size).expect("validated in from_file"),
                tol,
            ),
        }
    }
}

fn validate_tol(tol: f64) -> Result<f64, CliError> {
    if !tol.is_finite() || tol < 0.0 {
        return Err(CliError::invalid(
            "--tol must be a finite nonnegative number".to_string(),
        ));
    }
    Ok(tol)
}

fn deliver(payload: &str, output: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, payload)
            .map_err(|e| CliError::invalid(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(payload.as_bytes())
            .map_err(|e| CliError::numeric(format!("cannot write payload: {e}"))),
    }
}

fn timing_line(stderr: &mut dyn Write, label: &str, phases: &[(&str, Duration)]) {
    let parts: Vec<String> = phases
        .iter()
        .map(|(name, d)| format!("{name} {:.3} ms", d.as_secs_f64() * 1e3))
        .collect();
    let _ = writeln!(stderr, "timing {label}: {}", parts.join(", "));
}

fn verdict_text(regular: bool) -> &'static str {
    if regular {
        "regular"
    } else {
        "singular"
    }
}

/// Report body shared by `check` and every singular outcome: the regularity
/// report and nothing matrix-sized, per the no-entries-when-singular rule.
fn report_json(command: &str, instance: &Instance, report: &RegularityReport) -> String {
    let mut o = JsonObject::new();
    o.text("command", command);
    o.text("variant", instance.variant());
    o.int("size", instance.order() as u64);
    o.text("verdict", verdict_text(report.regular));
    o.num("tolerance", report.tolerance_used);
    o.raw("d_abc", &fmt_or_null(report.d_abc));
    o.boolean("d_abc_overflowed", report.d_abc_overflowed);
    o.raw("denom", &fmt_or_null(report.denom));
    o.raw("scale", &fmt_or_null(report.scale));
    o.finish()
}

fn inverse_json(command: &str, instance: &Instance, result: &InverseResult) -> String {
    let mut o = JsonObject::new();
    o.text("command", command);
    o.text("variant", instance.variant());
    o.int("size", instance.order() as u64);
    o.text("verdict", "regular");
    o.num("tolerance", result.report.tolerance_used);
    o.raw("d_j", &scaled_json(result.d_j));
    o.raw("determinant", &fmt_or_null(result.det_matrix));
    o.raw("det_inverse", &fmt_or_null(result.det_inverse));
    o.raw("entries", &matrix_json(&result.entries));
    o.finish()
}

/// Shared invert flow: compute, pick the payload shape, deliver, time.
/// Singular instances emit the report form (JSON) or nothing (CSV) and map
/// to exit code 1.
#[allow(clippy::too_many_arguments)]
fn invert_flow(
    command: &str,
    instance: &Instance,
    tol: f64,
    format: OutputFormat,
    output: Option<&Path>,
    parse_time: Duration,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let t0 = Instant::now();
    let inverted = instance.invert(tol);
    let compute_time = t0.elapsed();
    let t0 = Instant::now();
    let (payload, code) = match inverted {
        Ok(result) => {
            let payload = match format {
                OutputFormat::Json => inverse_json(command, instance, &result),
                OutputFormat::Csv => matrix_csv(&result.entries),
            };
            (payload, 0)
        }
        Err(Error::SingularMatrix(report)) => {
            let _ = writeln!(
                stderr,
                "matrix is singular at tolerance {:e}",
                report.tolerance_used
            );
            let payload = match format {
                OutputFormat::Json => report_json(command, instance, &report),
                OutputFormat::Csv => String::new(),
            };
            (payload, 1)
        }
        Err(e) => return Err(CliError::from(e)),
    };
    deliver(&payload, output, stdout)?;
    let emit_time = t0.elapsed();
    timing_line(
        stderr,
        command,
        &[
            ("parse", parse_time),
            ("compute", compute_time),
            ("emit", emit_time),
        ],
    );
    Ok(code)
}

fn cmd_invert(
    input: &Path,
    tol: Option<f64>,
    format: OutputFormat,
    output: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let t0 = Instant::now();
    let instance = Instance::from_file(input::load_instance(input)?)?;
    let tol = validate_tol(tol.unwrap_or(DEFAULT_SINGULARITY_TOL))?;
    let parse_time = t0.elapsed();
    invert_flow(
        "invert", &instance, tol, format, output, parse_time, stdout, stderr,
    )
}

fn cmd_det(input: &Path, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let t0 = Instant::now();
    let instance = Instance::from_file(input::load_instance(input)?)?;
    let parse_time = t0.elapsed();
    let t0 = Instant::now();
    let report = instance.regularity(DEFAULT_SINGULARITY_TOL);
    let d_j = determinant(&instance.coefficients());
    let compute_time = t0.elapsed();
    let t0 = Instant::now();
    let mut o = JsonObject::new();
    o.text("command", "det");
    o.text("variant", instance.variant());
    o.int("size", instance.order() as u64);
    o.text("verdict", verdict_text(report.regular));
    o.num("tolerance", report.tolerance_used);
    o.raw("d_j", &scaled_json(d_j));
    o.raw(
        "determinant",
        &match d_j.to_f64() {
            Ok(v) if v.is_finite() => fmt_num(v),
            _ => "null".to_string(),
        },
    );
    deliver(&o.finish(), None, stdout)?;
    let emit_time = t0.elapsed();
    timing_line(
        stderr,
        "det",
        &[
            ("parse", parse_time),
            ("compute", compute_time),
            ("emit", emit_time),
        ],
    );
    Ok(if report.regular { 0 } else { 1 })
}

fn cmd_check(
    input: &Path,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let t0 = Instant::now();
    let instance = Instance::from_file(input::load_instance(input)?)?;
    let parse_time = t0.elapsed();
    let t0 = Instant::now();
    let report = instance.regularity(DEFAULT_SINGULARITY_TOL);
    let compute_time = t0.elapsed();
    let t0 = Instant::now();
    deliver(&report_json("check", &instance, &report), None, stdout)?;
    let emit_time = t0.elapsed();
    timing_line(
        stderr,
        "check",
        &[
            ("parse", parse_time),
            ("compute", compute_time),
            ("emit", emit_time),
        ],
    );
    Ok(if report.regular { 0 } else { 1 })
}

fn cmd_solve(
    input: &Path,
    rhs: &Path,
    format: OutputFormat,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let t0 = Instant::now();
    let instance = Instance::from_file(input::load_instance(input)?)?;
    let j = instance.coefficients();
    let data = input::load_rhs(rhs, instance.order())?;
    let f = GridFunction::new(j.n(), data)?;
    let parse_time = t0.elapsed();
    let t0 = Instant::now();
    let solved = solve(&j, &f, DEFAULT_SINGULARITY_TOL);
    let compute_time = t0.elapsed();
    let t0 = Instant::now();
    let (payload, code) = match solved {
        Ok(u) => {
            let payload = match format {
                OutputFormat::Json => {
                    let mut o = JsonObject::new();
                    o.text("command", "solve");
                    o.text("variant", instance.variant());
                    o.int("size", instance.order() as u64);
                    o.text("verdict", "regular");
                    o.num("tolerance", DEFAULT_SINGULARITY_TOL);
                    o.raw("solution", &vector_json(u.values()));
                    o.finish()
                }
                OutputFormat::Csv => vector_csv(u.values()),
            };
            (payload, 0)
        }
        Err(Error::SingularMatrix(report)) => {
            let _ = writeln!(
                stderr,
                "matrix is singular at tolerance {:e}",
                report.tolerance_used
            );
            let payload = match format {
                OutputFormat::Json => report_json("solve", &instance, &report),
                OutputFormat::Csv => String::new(),
            };
            (payload, 1)
        }
        Err(e) => return Err(CliError::from(e)),
    };
    deliver(&payload, None, stdout)?;
    let emit_time = t0.elapsed();
    timing_line(
        stderr,
        "solve",
        &[
            ("parse", parse_time),
            ("compute", compute_time),
            ("emit", emit_time),
        ],
    );
    Ok(code)
}

fn cmd_toeplitz(
    alpha: f64,
    beta: f64,
    gamma: Option<f64>,
    size: usize,
    action: ToeplitzAction,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let t0 = Instant::now();
    let instance = match gamma {
        Some(g) => Instance::Toeplitz(ToeplitzSpec::new(alpha, beta, g, size)?),
        None => {
            ToeplitzSpec::new(alpha, beta, alpha, size)?;
            Instance::Symmetric { alpha, beta, size }
        }
    };
    let parse_time = t0.elapsed();
    match action {
        ToeplitzAction::Invert => invert_flow(
            "toeplitz",
            &instance,
            DEFAULT_SINGULARITY_TOL,
            OutputFormat::Json,
            None,
            parse_time,
            stdout,
            stderr,
        ),
        ToeplitzAction::Check => {
            let t0 = Instant::now();
            let report = instance.regularity(DEFAULT_SINGULARITY_TOL);
            let compute_time = t0.elapsed();
            let t0 = Instant::now();
            deliver(&report_json("toeplitz", &instance, &report), None, stdout)?;
            let emit_time = t0.elapsed();
            timing_line(
                stderr,
                "toeplitz",
                &[
                    ("parse", parse_time),
                    ("compute", compute_time),
                    ("emit", emit_time),
                ],
            );
            Ok(if report.regular { 0 } else { 1 })
        }
    }
}

/// Order bound for the direct evaluator: the signed multi-index sum grows
/// like a Fibonacci number of terms, so past this it stops being a usable
/// cross-check and becomes a hang.
const MAX_DIRECT_ORDER: i64 = 32;

fn cmd_cheb(
    k: i64,
    x_text: &str,
    y_text: &str,
    mode: ChebMode,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    if k < -1 {
        return Err(CliError::invalid("--k must be at least -1".to_string()));
    }
    let x = input::parse_number_list("--x", x_text)?;
    let y = input::parse_number_list("--y", y_text)?;
    for (flag, list) in [("--x", &x), ("--y", &y)] {
        if list.iter().any(|v| !v.is_finite()) {
            return Err(CliError::invalid(format!("{flag}: values must be finite")));
        }
    }
    // The flag lists are 1-based: the first value is x(1).
    let pair = ChebSequencePair::with_offset(&x, &y, -1);
    let t0 = Instant::now();
    let mut o = JsonObject::new();
    o.text("command", "cheb");
    o.signed("k", k);
    match mode {
        ChebMode::Direct => {
            if k > MAX_DIRECT_ORDER {
                return Err(CliError::invalid(format!(
                    "--mode direct is exponential in k; use --mode recurrence beyond {MAX_DIRECT_ORDER}"
                )));
            }
            let value = cheb_direct(k, &pair)?;
            if !value.is_finite() {
                return Err(CliError::numeric(
                    "direct evaluation left the representable range".to_string(),
                ));
            }
            o.text("mode", "direct");
            o.num("value", value);
        }
        ChebMode::Recurrence => {
            let value = cheb_recurrence(k, &pair)?;
            o.text("mode", "recurrence");
            match value.to_f64() {
                Ok(v) if v.is_finite() => o.num("value", v),
                _ => o.raw("value", "null"),
            };
            o.signed("sign", value.signum() as i64);
            o.raw("log2", &fmt_or_null(value.log2_magnitude()));
        }
    }
    let compute_time = t0.elapsed();
    deliver(&o.finish(), None, stdout)?;
    timing_line(stderr, "cheb", &[("compute", compute_time)]);
    Ok(0)
}

struct SizeBlock {
    size: usize,
    completed: usize,
    skipped: usize,
    residuals: Vec<Option<f64>>,
}

fn duration_stats(times: &[Duration]) -> Option<(f64, f64)> {
    if times.is_empty() {
        return None;
    }
    let ms: Vec<f64> = times.iter().map(|d| d.as_secs_f64() * 1e3).collect();
    let min = ms.iter().fold(f64::INFINITY, |m, &v| m.min(v));
    let mean = ms.iter().sum::<f64>() / ms.len() as f64;
    Some((min, mean))
}

fn cmd_bench(
    sizes_text: &str,
    trials: usize,
    seed: u64,
    compare_oracle: bool,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let sizes = input::parse_size_list("--sizes", sizes_text)?;
    if trials == 0 {
        return Err(CliError::invalid("--trials must be at least 1".to_string()));
    }
    let tol = DEFAULT_SINGULARITY_TOL;
    let mut blocks = Vec::new();
    for &m in &sizes {
        let mut residuals: Vec<Option<f64>> = Vec::with_capacity(trials);
        let mut invert_times = Vec::new();
        let mut oracle_times = Vec::new();
        let mut skipped = 0usize;
        for t in 0..trials {
            // One stream per (size, trial) so any subset reproduces exactly.
            let mut rng = InstanceRng::new(stream_seed(seed, m, t));
            let j = rng.instance(m);
            let t0 = Instant::now();
            match invert(&j, tol) {
                Ok(result) => {
                    invert_times.push(t0.elapsed());
                    let dense = j.to_dense();
                    let forward = residual_inf_norm(&dense, &result.entries)?;
                    let backward = residual_inf_norm(&result.entries, &dense)?;
                    residuals.push(Some(forward.max(backward)));
                    if compare_oracle {
                        let t1 = Instant::now();
                        dense_invert(&dense)
                            .map_err(|e| CliError::numeric(format!("dense oracle failed: {e}")))?;
                        oracle_times.push(t1.elapsed());
                    }
                }
                Err(Error::SingularMatrix(_)) => {
                    skipped += 1;
                    residuals.push(None);
                }
                Err(e) => return Err(CliError::from(e)),
            }
        }
        if let Some((min, mean)) = duration_stats(&invert_times) {
            let _ = writeln!(
                stderr,
                "timing bench size {m}: invert min {min:.3} ms, mean {mean:.3} ms over {} runs",
                invert_times.len()
            );
            if let Some((omin, omean)) = duration_stats(&oracle_times) {
                let _ = writeln!(
                    stderr,
                    "timing bench size {m}: oracle min {omin:.3} ms, mean {omean:.3} ms, speedup {:.1}",
                    omin / min.max(1e-9)
                );
            }
        } else {
            let _ = writeln!(stderr, "timing bench size {m}: all trials singular");
        }
        blocks.push(SizeBlock {
            size: m,
            completed: trials - skipped,
            skipped,
            residuals,
        });
    }
    let mut body = String::from("[");
    for (i, block) in blocks.iter().enumerate() {
        body.push_str(if i == 0 { "\n    {" } else { ",\n    {" });
        let max_residual = block
            .residuals
            .iter()
            .flatten()
            .fold(None::<f64>, |acc, &v| Some(acc.map_or(v, |m| m.max(v))));
        body.push_str(&format!("\"size\": {}, ", block.size));
        body.push_str(&format!("\"completed\": {}, ", block.completed));
        body.push_str(&format!("\"singular_skipped\": {}, ", block.skipped));
        body.push_str(&format!(
            "\"max_residual\": {}, ",
            max_residual.map_or("null".to_string(), fmt_num)
        ));
        body.push_str(&format!(
            "\"residuals\": {}}}",
            nullable_vector_json(&block.residuals)
        ));
    }
    body.push_str("\n  ]");
    let mut o = JsonObject::new();
    o.text("command", "bench");
    o.int("seed", seed);
    o.int("trials", trials as u64);
    o.num("tolerance", tol);
    o.boolean("compare_oracle", compare_oracle);
    o.raw("sizes", &body);
    deliver(&o.finish(), None, stdout)?;
    Ok(0)
}
