//! Command-line front end for `chainvol`: evaluate, scan, predict, verify.
//!
//! Exit codes: 0 success or passed check, 1 failed check, 2 bad arguments,
//! 3 I/O failure, 4 unsupported parameters.

mod output;
mod plot;

use std::f64::consts::TAU;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use chainvol::asymptote::{
    predicted_jones, prediction, volume, ESign, ETerm, GaussianForm, PredictOptions,
};
use chainvol::invariant::{jones_at_root, sine_prefix};
use chainvol::lemma_lab::{
    default_delta, verify_critical_point, verify_lemma2, verify_lemma3, verify_lemma45,
    verify_main_fit, DeltaWindow, FitTolerance, LemmaReport,
};
use chainvol::special::QuadratureSpec;
use chainvol::{ChainParams, Error, Precision};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

pub use output::{fmt17, to_json};
pub use plot::line_plot;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_UNSUPPORTED: u8 = 4;

/// Environment variable overriding the default number of digits.
pub const PRECISION_ENV: &str = "CHAINVOL_PRECISION";

/// Fixed header of `scan` output.
pub const SCAN_HEADER: &str = "N,log_abs_J,phase_J,scaled,predicted_scaled";

#[derive(Parser, Debug)]
#[command(
    name = "chainvol",
    version,
    about = "Colored Jones invariants of Whitehead chains at roots of unity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate J_N at t = exp(2 pi i / N)
    Jones(JonesArgs),
    /// Evaluate a range of N and write CSV rows
    Scan(ScanArgs),
    /// Print the predicted asymptotic constants
    Predict(PredictArgs),
    /// Run one of the numerical checks and print its report
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone, Copy)]
struct Chain {
    #[arg(long, allow_negative_numbers = true)]
    a: i64,
    #[arg(long)]
    b: i64,
    #[arg(long)]
    c: i64,
    #[arg(long)]
    d: i64,
}

impl Chain {
    fn params(self) -> Result<ChainParams, Failure> {
        Ok(ChainParams::new(self.a, self.b, self.c, self.d)?)
    }
}

#[derive(Args, Debug)]
struct JonesArgs {
    #[command(flatten)]
    chain: Chain,
    #[arg(long = "N")]
    n: usize,
    /// Significant digits; defaults to $CHAINVOL_PRECISION or 16
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[command(flatten)]
    chain: Chain,
    #[arg(long = "Nmin")]
    n_min: usize,
    #[arg(long = "Nmax")]
    n_max: usize,
    #[arg(long)]
    odd_only: bool,
    /// CSV destination; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// SVG plot of the scaled column against N
    #[arg(long)]
    plot: Option<PathBuf>,
    #[arg(long)]
    precision: Option<u32>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SignArg {
    Negative,
    Positive,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FormArg {
    Signed,
    Folded,
}

#[derive(Args, Debug)]
struct PredictArgs {
    #[command(flatten)]
    chain: Chain,
    /// Absolute and relative tolerance of the Q_inf quadrature
    #[arg(long)]
    quad_tol: Option<f64>,
    /// Sign of Re E for b >= 2
    #[arg(long, value_enum, default_value_t = SignArg::Negative)]
    e_sign: SignArg,
    /// Gaussian integral used for Q_inf when b = 1
    #[arg(long, value_enum, default_value_t = FormArg::Signed)]
    form: FormArg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Lemma {
    #[value(name = "fcrit")]
    FCrit,
    #[value(name = "2a")]
    TwoA,
    #[value(name = "2b")]
    TwoB,
    #[value(name = "3")]
    Three,
    #[value(name = "45")]
    FourFive,
    #[value(name = "main")]
    Main,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    lemma: Lemma,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    a: i64,
    #[arg(long, default_value_t = 1)]
    b: i64,
    #[arg(long, default_value_t = 1)]
    c: i64,
    #[arg(long, default_value_t = 0)]
    d: i64,
    /// Comma-separated N values; each check has its own default
    #[arg(long = "N-ladder", value_delimiter = ',')]
    n_ladder: Option<Vec<usize>>,
    /// Held-out N values for the far-region bound
    #[arg(long, value_delimiter = ',')]
    held_out: Option<Vec<usize>>,
    /// Central/Far exponent; defaults to the middle of its window
    #[arg(long)]
    delta: Option<f64>,
    /// fcrit: root/value tolerance (default 1e-8); main: alpha tolerance (default 1e-3)
    #[arg(long)]
    tol: Option<f64>,
    /// main: tolerance on the log N coefficient
    #[arg(long, default_value_t = 0.3)]
    beta_tol: f64,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("{}: {e}", path.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParams(_) | Error::InvalidPrecision { .. } | Error::Domain(_) => {
                EXIT_USAGE
            }
            Error::Unsupported(_) => EXIT_UNSUPPORTED,
            _ => EXIT_FAILED,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Parse `args` (including the program name), run the command and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Jones(args) => run_jones(&args, out, err),
        Command::Scan(args) => run_scan(&args, out),
        Command::Predict(args) => run_predict(&args, out),
        Command::Verify(args) => run_verify(&args, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn precision(flag: Option<u32>) -> Result<Precision, Failure> {
    let digits = match flag {
        Some(d) => d,
        None => match std::env::var(PRECISION_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| {
                Failure::usage(format!(
                    "{PRECISION_ENV} must be an integer digit count, got {v:?}"
                ))
            })?,
            Err(_) => return Ok(Precision::default()),
        },
    };
    Ok(Precision::new(digits)?)
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure {
        code: EXIT_IO,
        message: format!("stdout: {e}"),
    })
}

fn run_jones(args: &JonesArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Failure> {
    let params = args.chain.params()?;
    if args.n == 0 {
        return Err(Failure::usage("N must be at least 1"));
    }
    let prec = precision(args.precision)?;
    let j = jones_at_root(&params, args.n, prec)?;
    let mut note = None;
    let (log_mag, phase) = if j.is_zero() {
        note = Some(if params.b() >= 2 && args.n % 2 == 0 {
            "even N, b >= 2: exact zero"
        } else {
            "exact zero"
        });
        (f64::NEG_INFINITY, 0.0)
    } else {
        (*j.log_mag(), *j.phase())
    };
    let cartesian = match j.to_cartesian() {
        Ok(c) => Some(c),
        Err(e) => {
            let _ = writeln!(err, "warning: {e}; re/im omitted");
            None
        }
    };

    if args.csv {
        let cell = |x: Option<f64>| x.map(fmt17).unwrap_or_default();
        let text = format!(
            "a,b,c,d,N,log_mag,phase,re,im\n{},{},{},{},{},{},{},{},{}\n",
            params.a(),
            params.b(),
            params.c(),
            params.d(),
            args.n,
            fmt17(log_mag),
            fmt17(phase),
            cell(cartesian.map(|c| c.0)),
            cell(cartesian.map(|c| c.1)),
        );
        write_out(out, &text)?;
        return Ok(EXIT_OK);
    }
    let mut obj = Map::new();
    obj.insert("a".into(), json!(params.a()));
    obj.insert("b".into(), json!(params.b()));
    obj.insert("c".into(), json!(params.c()));
    obj.insert("d".into(), json!(params.d()));
    obj.insert("N".into(), json!(args.n));
    obj.insert("precision".into(), json!(prec.digits()));
    // JSON has no infinities; an exact zero carries the same sentinel as the CSV output
    obj.insert(
        "log_mag".into(),
        if log_mag.is_finite() {
            json!(log_mag)
        } else {
            json!("-inf")
        },
    );
    obj.insert("phase".into(), json!(phase));
    if let Some((re, im)) = cartesian {
        obj.insert("re".into(), json!(re));
        obj.insert("im".into(), json!(im));
    }
    if let Some(note) = note {
        obj.insert("note".into(), json!(note));
    }
    write_out(out, &to_json(&Value::Object(obj)))?;
    Ok(EXIT_OK)
}

/// One line of `scan` output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub n: usize,
    pub log_abs_j: f64,
    pub phase_j: f64,
    pub scaled: f64,
    pub predicted_scaled: Option<f64>,
}

impl ScanRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n,
            fmt17(self.log_abs_j),
            fmt17(self.phase_j),
            fmt17(self.scaled),
            self.predicted_scaled.map(fmt17).unwrap_or_default()
        )
    }
}

fn scan_rows(
    params: &ChainParams,
    colors: &[usize],
    prec: Precision,
) -> Result<Vec<ScanRow>, Failure> {
    let opts = PredictOptions::default();
    // b = 1 without clasps has no leading-order formula
    let predictable = params.b() >= 2 || params.clasps() > 0;
    let mut rows = Vec::with_capacity(colors.len());
    for &n in colors {
        let j = jones_at_root(params, n, prec)?;
        let (log_abs_j, phase_j) = if j.is_zero() {
            (f64::NEG_INFINITY, 0.0)
        } else {
            (*j.log_mag(), *j.phase())
        };
        let predicted_scaled = if predictable && (params.b() == 1 || n % 2 == 1) {
            let prefix = sine_prefix(n)?;
            let pred = predicted_jones(params, n, &prefix, &opts)?;
            Some(TAU * *pred.log_mag() / n as f64)
        } else {
            None
        };
        rows.push(ScanRow {
            n,
            log_abs_j,
            phase_j,
            scaled: TAU * log_abs_j / n as f64,
            predicted_scaled,
        });
    }
    Ok(rows)
}

fn run_scan(args: &ScanArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let params = args.chain.params()?;
    if args.n_min == 0 {
        return Err(Failure::usage("Nmin must be at least 1"));
    }
    if args.n_min > args.n_max {
        return Err(Failure::usage(format!(
            "Nmin = {} exceeds Nmax = {}",
            args.n_min, args.n_max
        )));
    }
    let prec = precision(args.precision)?;
    let colors: Vec<usize> = (args.n_min..=args.n_max)
        .filter(|n| !args.odd_only || n % 2 == 1)
        .collect();
    let rows = scan_rows(&params, &colors, prec)?;
    let mut csv = String::with_capacity(64 * (rows.len() + 1));
    csv.push_str(SCAN_HEADER);
    csv.push('\n');
    for row in &rows {
        csv.push_str(&row.to_csv());
        csv.push('\n');
    }
    match &args.out {
        Some(path) => fs::write(path, &csv).map_err(|e| Failure::io(path, e))?,
        None => write_out(out, &csv)?,
    }
    if let Some(path) = &args.plot {
        let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.scaled)).collect();
        let svg = line_plot(
            &points,
            volume(&params),
            &format!("{params}: (2 pi / N) log |J_N|"),
            "N",
            "(2 pi / N) log |J_N|",
        );
        fs::write(path, svg).map_err(|e| Failure::io(path, e))?;
    }
    Ok(EXIT_OK)
}

fn run_predict(args: &PredictArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let params = args.chain.params()?;
    let quad = match args.quad_tol {
        Some(tol) => QuadratureSpec::with_tol(tol)?,
        None => QuadratureSpec::default(),
    };
    let e_sign = match args.e_sign {
        SignArg::Negative => ESign::Negative,
        SignArg::Positive => ESign::Positive,
    };
    let form = match args.form {
        FormArg::Signed => GaussianForm::Signed,
        FormArg::Folded => GaussianForm::Folded,
    };
    let pred = prediction(&params, &PredictOptions { e_sign, form, quad })?;
    let mut obj = Map::new();
    obj.insert("vol".into(), json!(pred.vol));
    obj.insert("cs".into(), json!(pred.cs));
    obj.insert("d_coeff".into(), json!(pred.d_coeff));
    if let ETerm::Value(e) = pred.e_term {
        obj.insert("e_real".into(), json!(e.re));
        obj.insert("e_imag".into(), json!(e.im));
    }
    if let Some(sign) = pred.e_sign {
        obj.insert(
            "e_sign_convention".into(),
            serde_json::to_value(sign).expect("enum serializes"),
        );
    }
    if let Some(q) = pred.q_inf {
        obj.insert("q_inf_re".into(), json!(q.re));
        obj.insert("q_inf_im".into(), json!(q.im));
        obj.insert(
            "q_inf_form".into(),
            serde_json::to_value(form).expect("enum serializes"),
        );
    }
    write_out(out, &to_json(&Value::Object(obj)))?;
    Ok(EXIT_OK)
}

fn run_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let params = ChainParams::new(args.a, args.b, args.c, args.d)?;
    let ladder = |default: Vec<usize>| args.n_ladder.clone().unwrap_or(default);
    let opts = PredictOptions::default();
    let report: LemmaReport = match args.lemma {
        Lemma::FCrit => verify_critical_point(args.tol.unwrap_or(1e-8))?,
        Lemma::TwoA | Lemma::TwoB => {
            let window = match args.delta {
                Some(delta) => DeltaWindow::new(delta, params.clasps())?,
                None => default_delta(&params),
            };
            let colors = ladder(vec![100, 200, 400, 800, 1600]);
            let held_out = args.held_out.clone().unwrap_or_else(|| vec![1200]);
            let reports = verify_lemma2(&colors, &held_out, &params, window)?;
            if args.lemma == Lemma::TwoA {
                reports.central
            } else {
                reports.far
            }
        }
        Lemma::Three => verify_lemma3(&ladder(vec![1000, 10_000, 100_000]))?,
        Lemma::FourFive => {
            let default = if params.b() == 1 {
                vec![251, 501, 1001, 2001]
            } else {
                vec![101, 401, 1601]
            };
            verify_lemma45(&params, &ladder(default), &opts)?
        }
        Lemma::Main => {
            let tol = FitTolerance {
                alpha: args.tol.unwrap_or(1e-3),
                beta: args.beta_tol,
            };
            verify_main_fit(
                &params,
                &ladder((101..=1501).step_by(2).collect()),
                tol,
                &opts,
            )?
        }
    };
    let value = serde_json::to_value(&report).expect("report serializes");
    write_out(out, &to_json(&value))?;
    Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
}
