//! `vircurv`: exact-arithmetic calculator and identity verifier for the
//! centrally extended algebra of circle vector fields.
//!
//! Every quantity is an exact rational; nothing is floated. Exit codes:
//! `0` success (all identities hold), `1` at least one verified identity
//! fails, `2` usage or parameter errors (malformed input, non-positive
//! spectrum, out-of-domain indices).

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use vircurv::{
    cocycle, hs_partial_sum, inner_product, metric_defect, nabla, nabla_tilde, nijenhuis,
    parse_field, q_tensor, render_complex_field, render_field, render_ricci, render_scalar,
    render_verification, ricci_report, run_verify, torsion, torsion_tilde, u_oracle, CentralParams,
    CheckResult, ComplexField, Counterexample, Format, Scalar, SignConvention, Suite, TrigField,
};

/// Default sweep bound for `verify` when neither `--max-mode` nor
/// `VIRCURV_MAXMODE` is given.
const DEFAULT_MAX_MODE: u32 = 10;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PresetArg {
    /// c = 12, h = 1/2 (diagonal spectrum k^3).
    Cubic,
    /// c = 6, h = 0 (fundamental cocycle; no positive spectrum).
    Fundamental,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    /// Defining orientation: B(U(x,y),z) = (B([x,z],y) + B(x,[y,z]))/2.
    Paper,
    /// Classical orientation with [z,x], [z,y]; metric-compatible.
    Nomizu,
}

impl From<ConventionArg> for SignConvention {
    fn from(value: ConventionArg) -> Self {
        match value {
            ConventionArg::Paper => SignConvention::Paper,
            ConventionArg::Nomizu => SignConvention::Nomizu,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(value: FormatArg) -> Self {
        match value {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Brackets,
    Cocycle,
    Connection,
    Complex,
    Curvature,
    Ricci,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(value: SuiteArg) -> Self {
        match value {
            SuiteArg::Brackets => Suite::Brackets,
            SuiteArg::Cocycle => Suite::Cocycle,
            SuiteArg::Connection => Suite::Connection,
            SuiteArg::Complex => Suite::Complex,
            SuiteArg::Curvature => Suite::Curvature,
            SuiteArg::Ricci => Suite::Ricci,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "vircurv",
    version,
    about = "Exact connection and curvature calculus for circle vector fields",
    long_about = "Exact-arithmetic calculator and verifier for the centrally extended \
algebra of circle vector fields: brackets, the two-parameter cocycle, the diagonal \
metric, the canonical connection and its complex-structure modification, curvature, \
and the regularized Ricci trace.\n\n\
Field expressions use the grammar `q*cos(kt)` / `q*sin(kt)` joined by `+`/`-`, with \
`q` an exact rational (e.g. \"2*cos(1t) - 1/3*sin(4t)\").\n\n\
Defaults: c = 12, h = 1/2, max mode 10. Environment overrides: VIRCURV_C, VIRCURV_H, \
VIRCURV_MAXMODE (explicit flags win)."
)]
struct Cli {
    /// Central charge, an exact rational such as 12 or -7/3 (env: VIRCURV_C).
    #[arg(long, global = true, value_name = "P/Q")]
    c: Option<String>,

    /// Weight parameter, an exact rational (env: VIRCURV_H).
    #[arg(long, global = true, value_name = "P/Q", allow_hyphen_values = true)]
    h: Option<String>,

    /// Named parameter pair; mutually exclusive with --c/--h.
    #[arg(long, global = true, value_enum, conflicts_with_all = ["c", "h"])]
    preset: Option<PresetArg>,

    /// Sign orientation of the symmetric tensor inside the connection.
    /// Only meaningful for u-tensor, nabla, and the unmodified torsion
    /// and metric-defect; everything downstream is fixed to `paper`.
    #[arg(long, global = true, value_enum)]
    convention: Option<ConventionArg>,

    /// Output format for computed values and reports.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,

    /// Mode bound for verification sweeps (env: VIRCURV_MAXMODE).
    #[arg(long, global = true, value_name = "K")]
    max_mode: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lie bracket of two field expressions (mean part included).
    Bracket { x: String, y: String },
    /// Central cocycle value on two field expressions.
    Cocycle { x: String, y: String },
    /// Inner product of two mean-zero field expressions.
    Inner { x: String, y: String },
    /// Symmetric tensor of the connection, solved from its defining
    /// identity against the metric.
    #[command(name = "u-tensor")]
    UTensor { x: String, y: String },
    /// Covariant derivative of y along x.
    Nabla { x: String, y: String },
    /// Modified covariant derivative (complex-structure corrected).
    #[command(name = "nabla-tilde")]
    NablaTilde { x: String, y: String },
    /// Nijenhuis tensor of the per-mode rotation; identically zero.
    Nijenhuis { x: String, y: String },
    /// Correction tensor taking the connection to its modified form.
    #[command(name = "q-tensor")]
    QTensor { x: String, y: String },
    /// Torsion of the connection (or of the modified one with --tilde).
    Torsion {
        x: String,
        y: String,
        /// Use the modified connection.
        #[arg(long)]
        tilde: bool,
    },
    /// Metric-compatibility defect B(D_x y, z) + B(y, D_x z).
    #[command(name = "metric-defect")]
    MetricDefect {
        x: String,
        y: String,
        z: String,
        /// Use the modified connection.
        #[arg(long)]
        tilde: bool,
    },
    /// Partial Hilbert-Schmidt-type sum for mode n up to a cutoff.
    #[command(name = "hs-sum")]
    HsSum {
        /// Mode of the differentiated basis direction.
        #[arg(long)]
        n: i64,
        /// Summation cutoff (inclusive).
        #[arg(long)]
        max: i64,
    },
    /// Curvature R(x, y)z on complex basis directions (signed indices).
    Curvature {
        #[arg(long, allow_negative_numbers = true)]
        x: i64,
        #[arg(long, allow_negative_numbers = true)]
        y: i64,
        #[arg(long, allow_negative_numbers = true)]
        z: i64,
    },
    /// Regularized Ricci trace at mode n, with truncation bookkeeping.
    Ricci {
        /// Mode of the trace (n >= 1).
        #[arg(long)]
        n: i64,
        /// Comma-separated partial-sum cutoffs; default n,2n,4n.
        #[arg(long, value_delimiter = ',', value_name = "M1,M2,...")]
        cutoffs: Option<Vec<i64>>,
    },
    /// Run an identity suite and report each check.
    ///
    /// Exit code 1 if any check fails. For self-tests of the failure
    /// path, setting VIRCURV_SELFTEST_INJECT_FAIL to a non-empty value
    /// appends one synthetic failing check to the report.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let params = resolve_params(&cli)?;
    let format = Format::from(cli.format);

    match &cli.command {
        Command::Bracket { x, y } => {
            let x = field_arg("x", x)?;
            let y = field_arg("y", y)?;
            print!("{}", render_field(&x.bracket(&y), format));
        }
        Command::Cocycle { x, y } => {
            let x = field_arg("x", x)?;
            let y = field_arg("y", y)?;
            print!("{}", render_scalar(&cocycle(&params, &x, &y), format));
        }
        Command::Inner { x, y } => {
            let x = field_arg("x", x)?;
            let y = field_arg("y", y)?;
            let value = inner_product(&params, &x, &y).map_err(display)?;
            print!("{}", render_scalar(&value, format));
        }
        Command::UTensor { x, y } => {
            let x = field_arg("x", x)?;
            let y = field_arg("y", y)?;
            let value = u_oracle(&params, &x, &y, base_convention(&cli)).map_err(display)?;
            print!("{}", render_field(&value, format));
        }
        Command::Nabla { x, y } => {
            let x = field_arg("x", x)?;
            let y = field_arg("y", y)?;
            let value = nabla(&params, &x, &y, base_convention(&cli)).map_err(display)?;
            print!("{}", render_field(&value, format));
        }
        Command::NablaTilde { x, y } => {
            fixed_orientation(&cli, "nabla-tilde")?;
            let x = field_arg("x", x)?;
            let y = field_arg("y", y)?;
            let value = nabla_tilde(&params, &x, &y).map_err(display)?;
            print!("{}", render_field(&value, format));
        }
        Command::Nijenhuis { x, y } => {
            fixed_orientation(&cli, "nijenhuis")?;
            let x = field_arg("x", x)?;
            let y = field_arg("y", y)?;
            let value = nijenhuis(&x, &y).map_err(display)?;
            print!("{}", render_field(&value, format));
        }
        Command::QTensor { x, y } => {
            fixed_orientation(&cli, "q-tensor")?;
            let x = field_arg("x", x)?;
            let y = field_arg("y", y)?;
            let value = q_tensor(&params, &x, &y).map_err(display)?;
            print!("{}", render_field(&value, format));
        }
        Command::Torsion { x, y, tilde } => {
            let x = field_arg("x", x)?;
            let y = field_arg("y", y)?;
            let value = if *tilde {
                fixed_orientation(&cli, "torsion --tilde")?;
                torsion_tilde(&params, &x, &y).map_err(display)?
            } else {
                torsion(&params, &x, &y, base_convention(&cli)).map_err(display)?
            };
            print!("{}", render_field(&value, format));
        }
        Command::MetricDefect { x, y, z, tilde } => {
            let x = field_arg("x", x)?;
            let y = field_arg("y", y)?;
            let z = field_arg("z", z)?;
            let value = if *tilde {
                fixed_orientation(&cli, "metric-defect --tilde")?;
                vircurv::tilde_metric_defect(&params, &x, &y, &z).map_err(display)?
            } else {
                metric_defect(&params, &x, &y, &z, base_convention(&cli)).map_err(display)?
            };
            print!("{}", render_scalar(&value, format));
        }
        Command::HsSum { n, max } => {
            fixed_orientation(&cli, "hs-sum")?;
            let value = hs_partial_sum(&params, *n, *max).map_err(display)?;
            print!("{}", render_scalar(&value, format));
        }
        Command::Curvature { x, y, z } => {
            fixed_orientation(&cli, "curvature")?;
            let x = ComplexField::basis(*x).map_err(display)?;
            let y = ComplexField::basis(*y).map_err(display)?;
            let z = ComplexField::basis(*z).map_err(display)?;
            let value = vircurv::curvature(&params, &x, &y, &z).map_err(display)?;
            print!("{}", render_complex_field(&value, format));
        }
        Command::Ricci { n, cutoffs } => {
            fixed_orientation(&cli, "ricci")?;
            let cutoffs = match cutoffs {
                Some(list) if !list.is_empty() => list.clone(),
                _ => default_cutoffs(*n),
            };
            let report = ricci_report(&params, *n, &cutoffs).map_err(display)?;
            print!("{}", render_ricci(&report, format));
        }
        Command::Verify { suite } => {
            fixed_orientation(&cli, "verify (each suite pins its own orientations)")?;
            let max_mode = resolve_max_mode(&cli)?;
            let mut report = run_verify(Suite::from(*suite), &params, max_mode).map_err(display)?;
            if selftest_failure_requested() {
                report.checks.push(injected_failure());
            }
            print!("{}", render_verification(&report, format));
            eprintln!("elapsed: {} ms", report.elapsed_ms);
            let code = if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
            return Ok(code);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn display(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn field_arg(name: &str, text: &str) -> Result<TrigField, String> {
    parse_field(text).map_err(|e| format!("argument {name}: {e}"))
}

/// Explicit flag, then environment variable, then built-in default.
fn resolve_scalar(flag: Option<&str>, env_name: &str, default: Scalar) -> Result<Scalar, String> {
    let (source, text) = match flag {
        Some(text) => ("flag".to_string(), text.to_string()),
        None => match std::env::var(env_name) {
            Ok(text) => (env_name.to_string(), text),
            Err(std::env::VarError::NotPresent) => return Ok(default),
            Err(e) => return Err(format!("{env_name}: {e}")),
        },
    };
    text.parse::<Scalar>()
        .map_err(|e| format!("{source}: invalid rational {text:?}: {e}"))
}

fn resolve_params(cli: &Cli) -> Result<CentralParams, String> {
    if let Some(preset) = cli.preset {
        return Ok(match preset {
            PresetArg::Cubic => CentralParams::cubic(),
            PresetArg::Fundamental => CentralParams::fundamental(),
        });
    }
    let c = resolve_scalar(cli.c.as_deref(), "VIRCURV_C", Scalar::int(12))?;
    let h = resolve_scalar(cli.h.as_deref(), "VIRCURV_H", Scalar::new(1, 2))?;
    Ok(CentralParams::new(c, h))
}

fn resolve_max_mode(cli: &Cli) -> Result<u32, String> {
    if let Some(k) = cli.max_mode {
        return Ok(k);
    }
    match std::env::var("VIRCURV_MAXMODE") {
        Ok(text) => text
            .parse::<u32>()
            .map_err(|e| format!("VIRCURV_MAXMODE: invalid mode bound {text:?}: {e}")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MAX_MODE),
        Err(e) => Err(format!("VIRCURV_MAXMODE: {e}")),
    }
}

fn base_convention(cli: &Cli) -> SignConvention {
    cli.convention.map_or(SignConvention::Paper, Into::into)
}

/// Subcommands whose mathematics is pinned to the defining orientation
/// reject an explicit `--convention nomizu` instead of ignoring it.
fn fixed_orientation(cli: &Cli, what: &str) -> Result<(), String> {
    if cli.convention == Some(ConventionArg::Nomizu) {
        return Err(format!(
            "--convention nomizu does not apply to {what}; this quantity is pinned to the `paper` orientation"
        ));
    }
    Ok(())
}

fn default_cutoffs(n: i64) -> Vec<i64> {
    vec![n, 2 * n, 4 * n]
}

fn selftest_failure_requested() -> bool {
    std::env::var_os("VIRCURV_SELFTEST_INJECT_FAIL").is_some_and(|v| !v.is_empty())
}

/// Synthetic failing check appended when the self-test hook is armed,
/// so the failure path (rendering and exit code) can be exercised
/// without mutating any real oracle.
fn injected_failure() -> CheckResult {
    CheckResult {
        name: "self-test injected failure".to_string(),
        range: "harness hook".to_string(),
        pass: false,
        counterexample: Some(Counterexample {
            inputs: vec!["VIRCURV_SELFTEST_INJECT_FAIL".to_string()],
            lhs: "0".to_string(),
            rhs: "1".to_string(),
        }),
    }
}
