//! Argument handling and subcommands for the `conic-cubics` binary.
//!
//! Every command returns its output instead of printing it, so the whole
//! surface can be driven from tests through [`run`].

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use conic_cubics::descartes::solve_general_cubic;
use conic_cubics::khayyam::{chain_symbols, declared_classes, solve_khayyam};
use conic_cubics::oracle::solve_cubic_oracle;
use conic_cubics::parse::parse_coefficients;
use conic_cubics::poly::depress;
use conic_cubics::render::{descartes_figure, khayyam_figure, render_figure};
use conic_cubics::report::SolveDocument;
use conic_cubics::verify::{run_verification, VerifyConfig};
use conic_cubics::{
    classify, construction_plan, Cubic, CurvePair, Error, KhayyamType, Method, PairCode,
    RootReport, DEFAULT_TOL,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CLASSIFY: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

pub const SEED_ENV: &str = "CONIC_CUBICS_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Khayyam,
    Descartes,
    Oracle,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Khayyam => Method::Khayyam,
            MethodArg::Descartes => Method::Descartes,
            MethodArg::Oracle => Method::Oracle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureMethod {
    Khayyam,
    Descartes,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliConfig {
    pub tolerance: f64,
    pub output_format: OutputFormat,
    pub seed: u64,
    pub pair_choice: CurvePair,
}

impl Default for CliConfig {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOL,
            output_format: OutputFormat::Text,
            seed: 0,
            pair_choice: CurvePair::OneTwo,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "conic-cubics",
    version,
    about = "Solve cubics by intersecting conics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Numerical tolerance for residual checks.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Name the type of a cubic given by four coefficients.
    #[command(allow_negative_numbers = true)]
    Classify {
        /// c3 c2 c1 c0, highest degree first.
        #[arg(required = true)]
        coeffs: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Solve a cubic with one of the three methods.
    #[command(allow_negative_numbers = true)]
    Solve {
        #[arg(required = true)]
        coeffs: Vec<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::Khayyam)]
        method: MethodArg,
        /// Curves intersected by the khayyam method: 12, 13 or 23.
        #[arg(long, default_value = "12", value_parser = parse_pair)]
        pair: CurvePair,
        #[command(flatten)]
        common: Common,
    },
    /// Print the catalog of the fourteen types.
    Table {
        #[command(flatten)]
        common: Common,
    },
    /// Cross-check every solver on random instances.
    Verify {
        /// Instances per type.
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
        /// Perturb results so verification must fail.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Draw a construction as SVG.
    #[command(allow_negative_numbers = true)]
    Figure {
        #[arg(required = true)]
        coeffs: Vec<String>,
        #[arg(long, value_enum, default_value_t = FigureMethod::Khayyam)]
        method: FigureMethod,
        #[arg(long, default_value = "12", value_parser = parse_pair)]
        pair: CurvePair,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

fn parse_pair(s: &str) -> Result<CurvePair, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// What a command printed and how it wants the process to exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Self {
            stdout: String::new(),
            stderr,
            code,
        }
    }
}

/// Maps a library error onto an exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NotClassifiable(_) | Error::ZeroLeadingCoefficient => EXIT_CLASSIFY,
        _ => EXIT_USAGE,
    }
}

fn failure(err: Error) -> Outcome {
    Outcome::fail(exit_code(&err), format!("error: {err}"))
}

fn check_tol(tol: f64) -> Result<f64, Outcome> {
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(Outcome::fail(
            EXIT_USAGE,
            "error: --tol must be a positive number",
        ))
    }
}

fn coefficients(fields: &[String]) -> Result<[f64; 4], Outcome> {
    parse_coefficients(fields).map_err(|e| Outcome::fail(EXIT_USAGE, format!("error: {e}")))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::fail(EXIT_USAGE, text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) | Err(out) => out,
    }
}

fn dispatch(command: Command) -> Result<Outcome, Outcome> {
    match command {
        Command::Classify { coeffs, common } => {
            let k = coefficients(&coeffs)?;
            let config = CliConfig {
                tolerance: check_tol(common.tol)?,
                output_format: common.format,
                ..CliConfig::default()
            };
            Ok(cmd_classify(k, &config).unwrap_or_else(failure))
        }
        Command::Solve {
            coeffs,
            method,
            pair,
            common,
        } => {
            let k = coefficients(&coeffs)?;
            let config = CliConfig {
                tolerance: check_tol(common.tol)?,
                output_format: common.format,
                pair_choice: pair,
                ..CliConfig::default()
            };
            Ok(match cmd_solve(k, method.into(), &config) {
                Ok(doc) => Outcome::ok(format_solve(&doc, &config)),
                Err(e) => failure(e),
            })
        }
        Command::Table { common } => Ok(Outcome::ok(cmd_table(common.format))),
        Command::Verify {
            n,
            seed,
            common,
            inject_fault,
        } => {
            let config = CliConfig {
                tolerance: check_tol(common.tol)?,
                output_format: common.format,
                seed,
                ..CliConfig::default()
            };
            Ok(cmd_verify(n, inject_fault, &config))
        }
        Command::Figure {
            coeffs,
            method,
            pair,
            output,
            tol,
        } => {
            let k = coefficients(&coeffs)?;
            let config = CliConfig {
                tolerance: check_tol(tol)?,
                pair_choice: pair,
                ..CliConfig::default()
            };
            Ok(match cmd_figure(k, method, &config) {
                Ok(svg) => match std::fs::write(&output, svg) {
                    Ok(()) => Outcome::ok(format!("wrote {}\n", output.display())),
                    Err(e) => Outcome::fail(
                        EXIT_USAGE,
                        format!("error: cannot write {}: {e}", output.display()),
                    ),
                },
                Err(e) => failure(e),
            })
        }
    }
}

pub fn cmd_classify(k: [f64; 4], config: &CliConfig) -> Result<Outcome, Error> {
    let form = classify(k[0], k[1], k[2], k[3])?;
    let code = PairCode::catalog(form.kind());
    let text = match config.output_format {
        OutputFormat::Text => format!("{form}, pair {code}\n"),
        OutputFormat::Json => {
            let doc = json!({
                "type_id": form.type_id(),
                "equation": form.kind().equation(),
                "a": form.a(),
                "b": form.b(),
                "c": form.c(),
                "pair_code": code.as_str(),
            });
            format!("{doc}\n")
        }
    };
    Ok(Outcome::ok(text))
}

/// Solves the cubic and packages the report as the JSON document type.
pub fn cmd_solve(k: [f64; 4], method: Method, config: &CliConfig) -> Result<SolveDocument, Error> {
    let tol = config.tolerance;
    match method {
        Method::Khayyam => {
            let form = classify(k[0], k[1], k[2], k[3])?;
            let report = solve_khayyam(&form, config.pair_choice, tol);
            Ok(SolveDocument::new(&report, Some(form.type_id())))
        }
        Method::Descartes | Method::Oracle => {
            let cubic = Cubic::new(k[0], k[1], k[2], k[3])?;
            let report: RootReport = if method == Method::Descartes {
                solve_general_cubic(&cubic, tol)
            } else {
                solve_cubic_oracle(&cubic)
            };
            // The type is informative only; a cubic outside the fourteen
            // still has real roots.
            let type_id = classify(k[0], k[1], k[2], k[3]).ok().map(|f| f.type_id());
            Ok(SolveDocument::new(&report, type_id))
        }
    }
}

pub fn format_solve(doc: &SolveDocument, config: &CliConfig) -> String {
    if config.output_format == OutputFormat::Json {
        return format!("{}\n", doc.to_json());
    }
    let mut out = String::new();
    let _ = write!(out, "method {}", doc.method);
    if let Some(id) = doc.type_id {
        let _ = write!(out, ", type {id}");
    }
    out.push('\n');
    if doc.roots.is_empty() {
        out.push_str(if doc.method == Method::Khayyam {
            "no positive root (impossible)\n"
        } else {
            "no real root\n"
        });
    }
    for r in &doc.roots {
        if r.multiplicity == 1 {
            let _ = writeln!(out, "root {}", r.value);
        } else {
            let _ = writeln!(out, "root {} (multiplicity {})", r.value, r.multiplicity);
        }
    }
    let _ = writeln!(out, "residual_max {:e}", doc.residual_max);
    out
}

pub fn cmd_table(format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:>4}  {:<12}  {:<7}  {:<6}  {:<8}  {:<6}  {:<6}  {:<6}  pair",
                "type", "equation", "s", "N1", "N2", "(1)", "(2)", "(3)"
            );
            for kind in KhayyamType::ALL {
                let (s, n1, n2) = chain_symbols(kind);
                let [c1, c2, c3] = declared_classes(kind).map(|c| c.letter());
                let _ = writeln!(
                    out,
                    "{:>4}  {:<12}  {:<7}  {:<6}  {:<8}  {:<6}  {:<6}  {:<6}  {}",
                    kind.id(),
                    kind.equation(),
                    s,
                    n1,
                    n2,
                    c1,
                    c2,
                    c3,
                    PairCode::catalog(kind)
                );
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<_> = KhayyamType::ALL
                .iter()
                .map(|&kind| {
                    let (s, n1, n2) = chain_symbols(kind);
                    json!({
                        "type_id": kind.id(),
                        "equation": kind.equation(),
                        "s": s,
                        "n1": n1,
                        "n2": n2,
                        "curves": declared_classes(kind).map(|c| c.letter().to_string()),
                        "pair_code": PairCode::catalog(kind).as_str(),
                    })
                })
                .collect();
            format!("{}\n", serde_json::Value::Array(rows))
        }
    }
}

pub fn cmd_verify(n_per_type: usize, inject_fault: bool, config: &CliConfig) -> Outcome {
    let mut vc = VerifyConfig::new(n_per_type, config.seed, config.tolerance);
    vc.inject_fault = inject_fault;
    let summary = run_verification(&vc);
    let text = match config.output_format {
        OutputFormat::Text => summary.to_text(),
        OutputFormat::Json => format!("{}\n", summary.to_json()),
    };
    Outcome {
        stdout: text,
        stderr: String::new(),
        code: if summary.passed() {
            EXIT_OK
        } else {
            EXIT_VERIFY
        },
    }
}

pub fn cmd_figure(k: [f64; 4], method: FigureMethod, config: &CliConfig) -> Result<String, Error> {
    let spec = match method {
        FigureMethod::Khayyam => {
            let form = classify(k[0], k[1], k[2], k[3])?;
            let plan = construction_plan(&form, false);
            khayyam_figure(&plan, config.pair_choice, config.tolerance)
        }
        FigureMethod::Descartes => {
            let cubic = Cubic::new(k[0], k[1], k[2], k[3])?;
            descartes_figure(&depress(&cubic), config.tolerance)
        }
    };
    render_figure(&spec)
}
