//! The `hurwitz-lab` command line: `eval`, `verify` and `sweep`.
//!
//! Exit codes: 0 success, 1 numerical failure or failed gate, 2 usage error.

use crate::confluent::{kummer_m, tricomi_u};
use crate::numerics::gamma;
use crate::verify::{self, GridSpec, ResidualReport, SuiteConfig};
use crate::zeta::{self, Estimate};
use crate::{Error, EvalParams};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the worker threads used by `verify` and `sweep`.
pub const THREADS_ENV: &str = "HURWITZ_LAB_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "hurwitz-lab",
    version,
    about = "Hurwitz zeta, periodic zeta and confluent hypergeometric functions, with residual checks of the Hurwitz relation",
    after_help = "Complex literals: 2, -0.5, 0.5+1i, 0.5-2i, 3i.\n\
                  Exit codes: 0 success, 1 numerical or gated failure, 2 usage."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function at one point.
    Eval(EvalCmd),
    /// Run residual checks and report them.
    Verify(VerifyCmd),
    /// Evaluate a function on a rectangular (s, z) grid.
    Sweep(SweepCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    /// ζ(s, z) by Euler–Maclaurin; args: s z
    Zeta,
    /// ζ(s, z) by the direct series, Re(s) > 1; args: s z
    ZetaDirect,
    /// ζ(s, z) by the Tricomi lattice sum, Re(s) > −1; args: s z
    ZetaViaU,
    /// L(s, z) = Σ e^{2πinz} n^{−s}, Re(s) > 1; args: s z
    Polylog,
    /// ζ(s); args: s
    Riemann,
    /// Γ(s); args: s
    Gamma,
    /// M(α, γ; x); args: α γ x
    Kummer,
    /// U(α, γ; x); args: α γ x
    Tricomi,
}

impl Function {
    fn arity(self) -> usize {
        match self {
            Function::Riemann | Function::Gamma => 1,
            Function::Kummer | Function::Tricomi => 3,
            _ => 2,
        }
    }

    fn takes_z(self) -> bool {
        self.arity() == 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Human,
    Json,
    Csv,
}

/// Evaluation knobs shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Even Euler–Maclaurin order (2..=64).
    #[arg(long)]
    pub em_order: Option<usize>,
    /// Terms summed directly before the Euler–Maclaurin correction.
    #[arg(long)]
    pub em_shift: Option<usize>,
    /// Truncation of the lattice sum over l.
    #[arg(long)]
    pub l_cap: Option<usize>,
    /// Absolute accuracy target of the zeta routes.
    #[arg(long)]
    pub tol_abs: Option<f64>,
}

impl ParamArgs {
    fn params(&self) -> EvalParams {
        let mut p = EvalParams::default();
        if let Some(m) = self.em_order {
            p.em_order = m;
        }
        if let Some(k) = self.em_shift {
            p.em_shift = k;
        }
        if let Some(l) = self.l_cap {
            p.l_cap = l;
        }
        if let Some(t) = self.tol_abs {
            p.tol_abs = t;
        }
        p
    }
}

#[derive(Debug, Args)]
pub struct EvalCmd {
    #[arg(value_enum)]
    pub function: Function,
    /// Complex arguments, e.g. `0.5+1i`.
    #[arg(required = true)]
    pub args: Vec<String>,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
#[command(
    after_help = "Checks: hurwitz, riemann-fe, via-u, connection, vanishing, asymptotics, fourier, all.\n\
Default grid for hurwitz and vanishing: s in {-0.5, -1, -1.5, -2, -2.5, -0.5±2i, -2.5±2i, -1.5+0.5i}\n\
x z in {0.1, 0.25, 0.5, 0.75, 0.9}. via-u: s in {2, 0.5, 0, 0.5+i} x z in {0.25, 0.5, 0.75}."
)]
pub struct VerifyCmd {
    /// Check ids to run.
    #[arg(required = true)]
    pub checks: Vec<String>,
    /// Tolerance replacing every check's default gate.
    #[arg(long)]
    pub tol: Option<f64>,
    /// JSON file {"s_points": [[re, im], ...], "z_points": [...], "params": {...}}
    /// replacing the default grids.
    #[arg(long)]
    pub grid_file: Option<PathBuf>,
    /// Seed of the connection-formula sample.
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    pub seed: u64,
    /// Size of the connection-formula sample.
    #[arg(long, default_value_t = verify::DEFAULT_CONNECTION_SAMPLE)]
    pub sample_size: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Args)]
pub struct SweepCmd {
    #[arg(long, value_enum)]
    pub function: Function,
    /// Real parts of s as start:stop:count.
    #[arg(long, allow_hyphen_values = true)]
    pub s_re: String,
    /// Imaginary parts of s as start:stop:count.
    #[arg(long, allow_hyphen_values = true, default_value = "0:0:1")]
    pub s_im: String,
    /// z values as start:stop:count.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    /// Write the rows here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub params: ParamArgs,
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = if err.is_usage() {
            EXIT_USAGE
        } else {
            EXIT_FAILURE
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Self {
            code: EXIT_FAILURE,
            message: format!("I/O error: {err}"),
        }
    }
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` with decimal parts.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    let bad = || format!("malformed complex literal `{text}`");
    let real = |s: &str| -> Result<f64, String> {
        let v: f64 = s.parse().map_err(|_| bad())?;
        if v.is_finite() && !s.contains(|c: char| c.is_ascii_alphabetic() && c != 'e' && c != 'E') {
            Ok(v)
        } else {
            Err(bad())
        }
    };
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(real(&t)?, 0.0));
    };
    // split at the last sign that is not the leading one or part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => real(s)?,
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        real(re_part)?
    };
    Ok(Complex64::new(re, im))
}

/// `start:stop:count` with count ≥ 1, evenly spaced and inclusive.
pub fn parse_range(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || format!("malformed range `{text}` (expected start:stop:count)");
    let [a, b, n] = parts.as_slice() else {
        return Err(bad());
    };
    let a: f64 = a.parse().map_err(|_| bad())?;
    let b: f64 = b.parse().map_err(|_| bad())?;
    let n: usize = n.parse().map_err(|_| bad())?;
    if n == 0 || !a.is_finite() || !b.is_finite() {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    Ok((0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect())
}

struct Value(Complex64);

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Complex64 { re, im } = self.0;
        if im == 0.0 {
            write!(f, "{re}")
        } else if im < 0.0 {
            write!(f, "{re}-{}i", -im)
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

#[derive(Debug, Serialize)]
struct EvalOutput {
    function: String,
    args: Vec<Complex64>,
    value: Complex64,
    error_bound: Option<f64>,
    route: String,
}

fn real_arg(v: Complex64, name: &str) -> Result<f64, Failure> {
    if v.im != 0.0 {
        return Err(Failure::usage(format!(
            "{name} must be real, got {}",
            Value(v)
        )));
    }
    Ok(v.re)
}

fn evaluate(
    function: Function,
    args: &[Complex64],
    p: &EvalParams,
) -> Result<(Complex64, Option<f64>, String), Failure> {
    let from_estimate = |e: Estimate| (e.value, Some(e.error_bound), e.route.to_string());
    let out = match function {
        Function::Zeta => from_estimate(zeta::hurwitz_em(args[0], real_arg(args[1], "z")?, p)?),
        Function::ZetaDirect => {
            from_estimate(zeta::hurwitz_direct(args[0], real_arg(args[1], "z")?, p)?)
        }
        Function::ZetaViaU => {
            from_estimate(zeta::hurwitz_via_u(args[0], real_arg(args[1], "z")?, p)?)
        }
        Function::Polylog => from_estimate(zeta::polylog_l(args[0], real_arg(args[1], "z")?, p)?),
        Function::Riemann => from_estimate(zeta::riemann_zeta(args[0], p)?),
        Function::Gamma => (gamma(args[0])?, None, "Lanczos".into()),
        Function::Kummer => (
            kummer_m(args[0], args[1], args[2], &p.confluent)?,
            None,
            "Kummer series".into(),
        ),
        Function::Tricomi => {
            let route = if args[0] == Complex64::new(1.0, 0.0) {
                "incomplete gamma"
            } else {
                "Laplace integral"
            };
            (
                tricomi_u(args[0], args[1], args[2], &p.confluent)?,
                None,
                route.into(),
            )
        }
    };
    Ok(out)
}

fn cmd_eval(cmd: &EvalCmd, out: &mut dyn Write) -> Result<i32, Failure> {
    let arity = cmd.function.arity();
    if cmd.args.len() != arity {
        return Err(Failure::usage(format!(
            "{:?} takes {arity} argument(s), got {}",
            cmd.function,
            cmd.args.len()
        )));
    }
    let args = cmd
        .args
        .iter()
        .map(|a| parse_complex(a))
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::usage)?;
    let p = cmd.params.params();
    p.validate()?;
    let (value, bound, route) = evaluate(cmd.function, &args, &p)?;
    match cmd.format {
        OutputFormat::Json => {
            let record = EvalOutput {
                function: format!("{:?}", cmd.function).to_lowercase(),
                args,
                value,
                error_bound: bound,
                route,
            };
            writeln!(out, "{}", to_json(&record)?)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["value_re", "value_im", "error_bound", "route"])
                .and_then(|_| {
                    w.write_record([
                        value.re.to_string(),
                        value.im.to_string(),
                        bound.map_or(String::new(), |b| b.to_string()),
                        route,
                    ])
                })
                .map_err(csv_failure)?;
            out.write_all(&csv_bytes(w)?)?;
        }
        OutputFormat::Human => {
            writeln!(out, "value:       {}", Value(value))?;
            match bound {
                Some(b) => writeln!(out, "error bound: {b:.3e}")?,
                None => writeln!(out, "error bound: n/a")?,
            }
            writeln!(out, "route:       {route}")?;
        }
    }
    Ok(EXIT_OK)
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map_err(|e| Failure {
        code: EXIT_FAILURE,
        message: format!("JSON encoding failed: {e}"),
    })
}

fn csv_failure(err: csv::Error) -> Failure {
    Failure {
        code: EXIT_FAILURE,
        message: format!("CSV encoding failed: {err}"),
    }
}

fn csv_bytes(w: csv::Writer<Vec<u8>>) -> Result<Vec<u8>, Failure> {
    w.into_inner().map_err(|e| Failure {
        code: EXIT_FAILURE,
        message: format!("CSV encoding failed: {e}"),
    })
}

fn opt(v: Option<f64>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

fn reports_csv(reports: &[ResidualReport]) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "check_id",
        "pass",
        "tolerance",
        "s_re",
        "s_im",
        "z",
        "args",
        "lhs_re",
        "lhs_im",
        "rhs_re",
        "rhs_im",
        "abs_residual",
        "rel_residual",
        "error_bound",
        "error",
    ])
    .map_err(csv_failure)?;
    for r in reports {
        for p in &r.points {
            let args = if p.args.is_empty() {
                String::new()
            } else {
                serde_json::to_string(&p.args).unwrap_or_default()
            };
            w.write_record([
                r.check_id.clone(),
                r.pass.to_string(),
                opt(r.tolerance),
                opt(p.s.map(|s| s.re)),
                opt(p.s.map(|s| s.im)),
                opt(p.z),
                args,
                opt(p.lhs.map(|v| v.re)),
                opt(p.lhs.map(|v| v.im)),
                opt(p.rhs.map(|v| v.re)),
                opt(p.rhs.map(|v| v.im)),
                opt(p.abs_residual),
                opt(p.rel_residual),
                opt(p.error_bound),
                p.error.clone().unwrap_or_default(),
            ])
            .map_err(csv_failure)?;
        }
    }
    csv_bytes(w)
}

fn reports_human(reports: &[ResidualReport]) -> String {
    let mut text = String::new();
    for r in reports {
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        let tol = r.tolerance.map_or("-".to_string(), |t| format!("{t:.0e}"));
        text.push_str(&format!(
            "{:<12} {verdict}  max_rel {:.2e}  max_abs {:.2e}  tol {tol}  {} points",
            r.check_id,
            r.max_rel_residual,
            r.max_abs_residual,
            r.points.len()
        ));
        let failed = r.failed_points();
        if failed > 0 {
            text.push_str(&format!(", {failed} failed"));
        }
        text.push('\n');
        for p in r.points.iter().filter(|p| !p.succeeded()) {
            let at = match (p.s, p.z) {
                (Some(s), Some(z)) => format!("s = {}, z = {z}", Value(s)),
                (Some(s), None) => format!("s = {}", Value(s)),
                _ => serde_json::to_string(&p.args).unwrap_or_default(),
            };
            text.push_str(&format!("    {at}: {}\n", p.error.as_deref().unwrap_or("")));
        }
        if let Some(note) = &r.note {
            text.push_str(&format!("    {note}\n"));
        }
    }
    text
}

fn emit(bytes: &[u8], path: Option<&PathBuf>, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(path) => std::fs::write(path, bytes).map_err(|e| Failure {
            code: EXIT_FAILURE,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => Ok(out.write_all(bytes)?),
    }
}

fn cmd_verify(cmd: &VerifyCmd, out: &mut dyn Write) -> Result<i32, Failure> {
    let ids = verify::resolve_ids(&cmd.checks)?;
    if let Some(tol) = cmd.tol {
        if tol.is_nan() || tol <= 0.0 {
            return Err(Failure::usage("--tol must be positive"));
        }
    }
    let mut cfg = SuiteConfig::new(cmd.params.params());
    cfg.tol = cmd.tol;
    cfg.seed = cmd.seed;
    cfg.connection_sample = cmd.sample_size;
    if let Some(path) = &cmd.grid_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        let grid: GridSpec = serde_json::from_str(&text)
            .map_err(|e| Failure::usage(format!("bad grid file {}: {e}", path.display())))?;
        grid.validate()?;
        cfg.grid = Some(grid);
    }
    let reports = verify::run_suite(&ids, &cfg)?;
    let bytes = match cmd.format {
        OutputFormat::Json => {
            let mut s = to_json(&reports)?;
            s.push('\n');
            s.into_bytes()
        }
        OutputFormat::Csv => reports_csv(&reports)?,
        OutputFormat::Human => reports_human(&reports).into_bytes(),
    };
    emit(&bytes, cmd.out.as_ref(), out)?;
    if reports.iter().all(|r| r.pass) {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_FAILURE)
    }
}

#[derive(Debug, Serialize)]
struct SweepRow {
    s_re: f64,
    s_im: f64,
    z: Option<f64>,
    value_re: Option<f64>,
    value_im: Option<f64>,
    error_bound: Option<f64>,
    error: Option<String>,
}

fn cmd_sweep(cmd: &SweepCmd, out: &mut dyn Write) -> Result<i32, Failure> {
    let s_re = parse_range(&cmd.s_re).map_err(Failure::usage)?;
    let s_im = parse_range(&cmd.s_im).map_err(Failure::usage)?;
    let function = cmd.function;
    if function.arity() == 3 {
        return Err(Failure::usage(format!(
            "{function:?} takes (α, γ, x) and cannot be swept over (s, z)"
        )));
    }
    let z_values: Vec<Option<f64>> = match (&cmd.z, function.takes_z()) {
        (Some(z), true) => {
            let zs = parse_range(z).map_err(Failure::usage)?;
            if let Some(bad) = zs.iter().find(|z| !(**z > 0.0 && **z <= 1.0)) {
                return Err(Failure::usage(format!("z = {bad} is outside (0, 1]")));
            }
            zs.into_iter().map(Some).collect()
        }
        (None, true) => return Err(Failure::usage(format!("{function:?} needs --z"))),
        (Some(_), false) => return Err(Failure::usage(format!("{function:?} takes no z"))),
        (None, false) => vec![None],
    };
    let p = cmd.params.params();
    p.validate()?;
    let mut grid = Vec::new();
    for &re in &s_re {
        for &im in &s_im {
            for &z in &z_values {
                grid.push((Complex64::new(re, im), z));
            }
        }
    }
    let rows: Vec<SweepRow> = grid
        .par_iter()
        .map(|&(s, z)| {
            let mut args = vec![s];
            args.extend(z.map(|z| Complex64::new(z, 0.0)));
            let (value, bound, error) = match evaluate(function, &args, &p) {
                Ok((v, b, _)) => (Some(v), b, None),
                Err(f) => (None, None, Some(f.message)),
            };
            SweepRow {
                s_re: s.re,
                s_im: s.im,
                z,
                value_re: value.map(|v| v.re),
                value_im: value.map(|v| v.im),
                error_bound: bound,
                error,
            }
        })
        .collect();
    let bytes = match cmd.format {
        OutputFormat::Json => {
            let mut s = to_json(&rows)?;
            s.push('\n');
            s.into_bytes()
        }
        OutputFormat::Csv | OutputFormat::Human => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                w.serialize(row).map_err(csv_failure)?;
            }
            csv_bytes(w)?
        }
    };
    emit(&bytes, cmd.out.as_ref(), out)?;
    if rows.iter().all(|r| r.error.is_none()) {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_FAILURE)
    }
}

fn thread_pool() -> Result<Option<rayon::ThreadPool>, Failure> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let n: usize = raw.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| {
        Failure::usage(format!(
            "{THREADS_ENV} must be a positive integer, got `{raw}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map(Some)
        .map_err(|e| Failure {
            code: EXIT_FAILURE,
            message: format!("cannot start thread pool: {e}"),
        })
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let run = |out: &mut dyn Write| match &cli.command {
        Command::Eval(cmd) => cmd_eval(cmd, out),
        Command::Verify(cmd) => cmd_verify(cmd, out),
        Command::Sweep(cmd) => cmd_sweep(cmd, out),
    };
    match thread_pool()? {
        Some(pool) => {
            let mut buffer = Vec::new();
            let code = pool.install(|| run(&mut buffer));
            out.write_all(&buffer)?;
            code
        }
        None => run(out),
    }
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`; returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    // clap reads `-0.5+2i` as a cluster of short flags; a leading space keeps
    // it positional and is dropped again by the literal parser
    let args = args.into_iter().map(|a| {
        let a: OsString = a.into();
        match a.to_str() {
            Some(t) if t.len() > 1 && t.starts_with('-') && parse_complex(t).is_ok() => {
                OsString::from(format!(" {t}"))
            }
            _ => a,
        }
    });
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

/// [`run_with`] on the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
