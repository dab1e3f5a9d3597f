//! The `hzeta` command line: argument parsing, dispatch and output.
//!
//! [`run`] is the whole program minus process setup, so it can be driven
//! from tests with in-memory streams.

mod record;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rug::{Float, Integer, Rational};
use serde_json::{json, Value};

use hzeta::constants::{gkbj, kinkelin_logvarpi, varpi, ConstantRecord};
use hzeta::format::{format_err, format_value};
use hzeta::gengamma::log_gengamma;
use hzeta::hurwitz::{hurwitz_deriv, hurwitz_deriv_integer, zeta_deriv_neg};
use hzeta::validate::{all_passed, selftest, CheckReport, SelftestLevel};
use hzeta::{ConstantStrategy, Context, Error};

pub use record::OutputRecord;

/// Default trial point when only `--terms` overrides the constants.
const DEFAULT_W_TRIAL: u64 = 100;
const DEFAULT_TAIL: usize = 20;

#[derive(Debug, Parser)]
#[command(
    name = "hzeta",
    version,
    about = "Hurwitz zeta derivatives at negative integers, generalized Glaisher-Kinkelin constants and generalized log-gamma functions"
)]
struct Cli {
    /// Significant digits in the output
    #[arg(long, global = true, env = "HZETA_DIGITS", default_value_t = 20,
          value_parser = clap::value_parser!(u32).range(1..=2000))]
    digits: u32,

    /// Emit one JSON object per line
    #[arg(long, global = true)]
    json: bool,

    /// Number of asymptotic tail terms (overrides the automatic choice)
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=1000))]
    terms: Option<u64>,

    /// Trial point w for the constants (overrides the automatic choice)
    #[arg(long = "w-trial", global = true, value_parser = clap::value_parser!(u64).range(2..=10_000_000))]
    w_trial: Option<u64>,

    /// Write results to FILE instead of standard output
    #[arg(short = 'o', long = "output", global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// ζ'(-k)
    Dz {
        /// Order k >= 0
        #[arg(short)]
        k: u32,
    },
    /// ζ'(-k, w) for real w > 0 (decimal or p/q)
    Hz {
        /// Order k >= 0
        #[arg(short)]
        k: u32,
        /// Argument, e.g. 2.5 or 1/3
        #[arg(short, allow_hyphen_values = true)]
        w: String,
    },
    /// The constant L_k
    Const {
        /// Order k >= 0
        #[arg(short)]
        k: u32,
    },
    /// Jeffery's constant ϖ(k)
    Varpi {
        /// Order k >= 0
        #[arg(short)]
        k: u32,
    },
    /// Kinkelin's log ϖ = 2 L_1 - 1/6
    Kinkelin,
    /// log Γ_k(x) for real x > 0 (decimal or p/q)
    Gamma {
        /// Order k >= 0
        #[arg(short)]
        k: u32,
        /// Argument, e.g. 2.5 or 1/3
        #[arg(short, allow_hyphen_values = true)]
        x: String,
    },
    /// L_k and ζ'(-k) for k = 0..=kmax
    Table {
        /// Largest order in the table
        #[arg(long)]
        kmax: u32,
    },
    /// Run the built-in identity checks
    Selftest {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Level {
    Quick,
    Full,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) => Failure::Usage(m),
            other => Failure::Compute(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

/// Parses `p/q`, an integer or a decimal (optionally with exponent) exactly.
pub fn parse_exact(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.contains('/') {
        let r = Rational::parse(s).ok()?;
        return Some(Rational::from(r));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if frac_part.contains(['+', '-']) || (int_part.is_empty() && frac_part.is_empty()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let digits = if digits == "-" || digits == "+" || digits.is_empty() {
        return None;
    } else {
        digits
    };
    let n = Integer::parse(&digits).ok()?;
    let scale = exp - frac_part.len() as i32;
    let p = Integer::from(Integer::u_pow_u(10, scale.unsigned_abs()));
    Some(if scale >= 0 {
        Rational::from(Integer::from(n) * p)
    } else {
        Rational::from((Integer::from(n), p))
    })
}

/// Exact decimal when the denominator divides a power of ten, otherwise
/// `digits` significant digits.
fn canonical_decimal(r: &Rational, digits: u32, bits: u32) -> String {
    let mut d = r.denom().clone();
    let mut places = 0u32;
    while d.is_divisible_u(10) {
        d /= 10;
        places += 1;
    }
    let mut twos = 0u32;
    while d.is_divisible_u(2) {
        d /= 2;
        twos += 1;
    }
    let mut fives = 0u32;
    while d.is_divisible_u(5) {
        d /= 5;
        fives += 1;
    }
    if d != 1 || places + twos.max(fives) > 200 {
        return format_value(&Float::with_val(bits, r), digits);
    }
    let places = places + twos.max(fives);
    let scaled = Rational::from(r * Integer::from(Integer::u_pow_u(10, places)));
    let n = scaled.numer().clone();
    let neg = n < 0;
    let s = n.abs().to_string();
    if places == 0 {
        return format!("{}{s}", if neg { "-" } else { "" });
    }
    let s = format!("{s:0>width$}", width = places as usize + 1);
    let (a, b) = s.split_at(s.len() - places as usize);
    format!("{}{a}.{b}", if neg { "-" } else { "" })
}

/// Integers up to a million take the exact-sum route.
fn small_integer(x: &Float) -> Option<i64> {
    if x.is_integer() && *x <= 1_000_000 {
        x.to_i32_saturating().map(i64::from)
    } else {
        None
    }
}

struct Session {
    ctx: Context,
    digits: u32,
    overrides: BTreeMap<String, Value>,
}

impl Session {
    fn new(cli: &Cli) -> Result<Self, Failure> {
        let mut ctx = Context::new(cli.digits)?;
        let mut overrides = BTreeMap::new();
        if let Some(t) = cli.terms {
            ctx = ctx.with_lambda_terms(Some(t as usize));
            overrides.insert("terms".to_string(), json!(t));
        }
        if cli.terms.is_some() || cli.w_trial.is_some() {
            let w = cli.w_trial.unwrap_or(DEFAULT_W_TRIAL);
            let tail = cli.terms.map_or(DEFAULT_TAIL, |t| t as usize);
            ctx = ctx.with_strategy(ConstantStrategy::Fixed { w, tail_terms: tail });
            overrides.insert("w_trial".to_string(), json!(w));
        }
        Ok(Self {
            ctx,
            digits: cli.digits,
            overrides,
        })
    }

    fn params(&self) -> BTreeMap<String, Value> {
        let mut p = self.overrides.clone();
        p.insert("digits".to_string(), json!(self.digits));
        p
    }

    fn constant_params(&self, rec: &ConstantRecord) -> BTreeMap<String, Value> {
        let mut p = self.params();
        p.insert("w_used".to_string(), json!(rec.w_used));
        p.insert("tail_terms_used".to_string(), json!(rec.tail_terms_used));
        p
    }

    fn shift_params(&self) -> BTreeMap<String, Value> {
        let mut p = self.params();
        p.insert("lambda_terms".to_string(), json!(self.ctx.auto_lambda_terms()));
        p.insert("shift_threshold".to_string(), json!(self.ctx.asymptotic_threshold()));
        p
    }

    fn record(
        &self,
        quantity: &str,
        k: i64,
        w_or_x: Option<String>,
        value: &Float,
        err: &Float,
        method: &str,
        params: BTreeMap<String, Value>,
    ) -> OutputRecord {
        OutputRecord {
            quantity: quantity.to_string(),
            k,
            w_or_x,
            value: format_value(value, self.digits),
            err_estimate: format_err(err),
            method: method.to_string(),
            params,
        }
    }

    fn real_arg(&self, s: &str, what: &str) -> Result<(Float, String), Failure> {
        let r = parse_exact(s).ok_or_else(|| {
            Failure::Usage(format!("{what} must be a decimal or p/q rational, got {s:?}"))
        })?;
        if r <= 0 {
            return Err(Failure::Usage(format!("{what} must be positive, got {s}")));
        }
        let f = Float::with_val(self.ctx.bits(), &r);
        Ok((f, canonical_decimal(&r, self.digits, self.ctx.bits())))
    }

    fn zeta_deriv(&self, k: u32) -> Result<OutputRecord, Failure> {
        let d = zeta_deriv_neg(&self.ctx, k)?;
        let l = gkbj(&self.ctx, k)?;
        Ok(self.record("zeta_deriv", k as i64, None, &d.value, &d.err, d.method.as_str(), self.constant_params(&l)))
    }

    fn constant(&self, k: u32) -> Result<OutputRecord, Failure> {
        let l = gkbj(&self.ctx, k)?;
        Ok(self.record("L", k as i64, None, &l.value, &l.err, "trial", self.constant_params(&l)))
    }

    fn dispatch(&self, cmd: &Command) -> Result<Vec<OutputRecord>, Failure> {
        let ctx = &self.ctx;
        Ok(match cmd {
            Command::Dz { k } => vec![self.zeta_deriv(*k)?],
            Command::Hz { k, w } => {
                let (wf, wd) = self.real_arg(w, "w")?;
                let (d, params) = match small_integer(&wf) {
                    Some(n) => (hurwitz_deriv_integer(ctx, *k, n)?, self.constant_params(&gkbj(ctx, *k)?)),
                    None => (hurwitz_deriv(ctx, *k, &wf)?, self.shift_params()),
                };
                vec![self.record("hurwitz_deriv", *k as i64, Some(wd), &d.value, &d.err, d.method.as_str(), params)]
            }
            Command::Const { k } => vec![self.constant(*k)?],
            Command::Varpi { k } => {
                let v = varpi(ctx, *k)?;
                vec![self.record("varpi", *k as i64, None, &v.value, &v.err, "trial", self.constant_params(&v))]
            }
            Command::Kinkelin => {
                let v = kinkelin_logvarpi(ctx)?;
                vec![self.record("kinkelin", 1, None, &v.value, &v.err, "trial", self.constant_params(&v))]
            }
            Command::Gamma { k, x } => {
                let (xf, xd) = self.real_arg(x, "x")?;
                let g = log_gengamma(ctx, *k, &xf)?;
                let params = match g.method {
                    hzeta::gengamma::GenGammaMethod::ExactSum => self.params(),
                    _ => self.shift_params(),
                };
                vec![self.record("gengamma", *k as i64, Some(xd), &g.value, &g.err, g.method.as_str(), params)]
            }
            Command::Table { kmax } => {
                let mut out = Vec::new();
                for k in 0..=*kmax {
                    out.push(self.constant(k)?);
                    out.push(self.zeta_deriv(k)?);
                }
                out
            }
            Command::Selftest { .. } => Vec::new(),
        })
    }
}

fn report_json(r: &CheckReport) -> String {
    json!({
        "check": r.name,
        "k": r.k,
        "x_or_w": r.x_or_w.as_ref().map(|x| format_value(x, 17)),
        "residual": format_err(&r.residual),
        "tolerance": format_err(&r.tolerance),
        "passed": r.passed,
        "elapsed_ms": r.elapsed.as_millis() as u64,
        "detail": r.detail,
    })
    .to_string()
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let session = Session::new(cli)?;
    let mut file;
    let sink: &mut dyn Write = match &cli.output {
        Some(path) => {
            file = File::create(path)
                .map_err(|e| Failure::Compute(format!("cannot write {}: {e}", path.display())))?;
            &mut file
        }
        None => out,
    };

    if let Command::Selftest { level } = cli.command {
        let level = match level {
            Level::Quick => SelftestLevel::Quick,
            Level::Full => SelftestLevel::Full,
        };
        let reports = selftest(&session.ctx, level);
        for r in &reports {
            if cli.json {
                writeln!(sink, "{}", report_json(r))?;
            } else {
                writeln!(sink, "{r}")?;
            }
        }
        let passed = reports.iter().filter(|r| r.passed).count();
        if !cli.json {
            writeln!(
                sink,
                "selftest {}: {passed}/{} checks passed",
                if level == SelftestLevel::Quick { "quick" } else { "full" },
                reports.len()
            )?;
        }
        sink.flush()?;
        return Ok(if all_passed(&reports) { 0 } else { 1 });
    }

    for rec in session.dispatch(&cli.command)? {
        let line = if cli.json { rec.json_line() } else { rec.text_line() };
        writeln!(sink, "{line}")?;
    }
    sink.flush()?;
    Ok(0)
}

/// Runs the command line `args` (including the program name). Returns the
/// exit status: 0 on success, 1 on a computation error or failed self-test,
/// 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    // collapse clap's message (up to the usage block) onto one line
                    let msg = e.to_string();
                    let line = msg
                        .lines()
                        .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more"))
                        .map(str::trim)
                        .filter(|l| !l.is_empty())
                        .collect::<Vec<_>>()
                        .join(" ");
                    let _ = writeln!(err, "{line}");
                    2
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Compute(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}
