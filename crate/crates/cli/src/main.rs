//! `sbo`: build, verify and solve for the covariant operators from the command line.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 parameter pole.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{error::ErrorKind, Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sbo_core::diff_op::{dual, example_pair, rc_split, theorem_a_pair};
use sbo_core::exact::Rational;
use sbo_core::moebius::solve_sbo;
use sbo_core::suite::{run_suite, Suite, SuiteConfig};
use sbo_core::verma::{kp_dimension, rc_correspondence, singular_vectors, singular_vectors_json};
use sbo_core::Error;

const THREADS_VAR: &str = "SBO_THREADS";

#[derive(Parser)]
#[command(
    name = "sbo",
    version,
    about = "Exact covariant operators for the Moebius transformation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one operator pair (D1, D2).
    Op(OpArgs),
    /// Run verification suites and print a report.
    Verify(VerifyArgs),
    /// Solve for every operator pair up to a given order.
    Solve(SolveArgs),
    /// Singular vectors in tensor products of Verma modules.
    Verma(VermaArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    TheoremA,
    Example,
    RcSplit,
}

#[derive(Args)]
struct OpArgs {
    #[arg(long, default_value = "1/3", allow_hyphen_values = true)]
    lambda: Rational,
    #[arg(long)]
    order: u32,
    #[arg(long, value_enum, default_value_t = Source::TheoremA)]
    source: Source,
    /// Replace (D1, D2) by (-D2, D1).
    #[arg(long)]
    dual: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    TheoremA,
    Identities,
    Rc,
    HoloTrick,
    Scalar,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::TheoremA => Suite::TheoremA,
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Rc => Suite::Rc,
            SuiteArg::HoloTrick => Suite::HoloTrick,
            SuiteArg::Scalar => Suite::Scalar,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    #[arg(long, default_value_t = 8)]
    max_a: u32,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
    deg_bound: u32,
    /// Comma-separated parameter list replacing the built-in samples.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambdas: Vec<Rational>,
    /// Perturb one operator coefficient; the run must then fail.
    #[arg(long)]
    mutate: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, allow_hyphen_values = true)]
    lambda: Rational,
    #[arg(long, allow_hyphen_values = true)]
    nu: Rational,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
    max_order: u32,
    /// Defaults to max-order + 2.
    #[arg(long)]
    test_degree: Option<u32>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VermaArgs {
    #[arg(long, allow_hyphen_values = true, conflicts_with = "kp")]
    l1: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "kp")]
    l2: Option<Rational>,
    #[arg(long)]
    level: Option<u32>,
    /// Report the dimension count for (lambda, nu) instead.
    #[arg(long, requires_all = ["lambda", "nu"])]
    kp: bool,
    /// Compare the level singular vector with the Rankin–Cohen symbol at lambda.
    #[arg(long, requires_all = ["lambda", "level"], conflicts_with = "kp")]
    rc_compare: bool,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<Rational>,
    #[command(flatten)]
    output: Output,
}

/// Something to print, and the exit code that goes with it.
struct Outcome {
    json: Value,
    latex: String,
    text: String,
    code: u8,
}

fn usage_error(kind: ErrorKind, msg: impl std::fmt::Display) -> ! {
    Cli::command().error(kind, msg).exit()
}

fn emit(output: &Output, o: &Outcome) -> std::io::Result<()> {
    let body = match output.format {
        Format::Json => serde_json::to_string_pretty(&o.json).expect("json") + "\n",
        Format::Latex => o.latex.clone(),
        Format::Text => o.text.clone(),
    };
    match &output.out {
        Some(path) => fs::write(path, body),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn cmd_op(args: &OpArgs) -> Outcome {
    let built = match args.source {
        Source::TheoremA => Ok(theorem_a_pair(&args.lambda, args.order)),
        Source::Example => example_pair(&args.lambda, args.order),
        Source::RcSplit => Ok(rc_split(&args.lambda, args.order)),
    };
    let mut p = match built {
        Ok(p) => p,
        Err(e) => usage_error(ErrorKind::InvalidValue, e),
    };
    if args.dual {
        p = dual(&p);
    }
    Outcome {
        json: p.to_json(),
        latex: p.to_latex() + "\n",
        text: p.to_text(),
        code: 0,
    }
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let mut cfg = SuiteConfig {
        max_a: args.max_a,
        deg_bound: args.deg_bound,
        mutate: args.mutate,
        ..SuiteConfig::default()
    };
    if !args.lambdas.is_empty() {
        cfg.lambdas = args.lambdas.clone();
        cfg.identity_lambdas = args.lambdas.clone();
    }
    let report = run_suite(args.suite.into(), &cfg);
    let mut latex = String::from("\\begin{tabular}{ll}\n");
    for c in &report.cases {
        latex.push_str(&format!("\\texttt{{{}}} & {:?} \\\\\n", c.case, c.status));
    }
    latex.push_str("\\end{tabular}\n");
    Outcome {
        json: report.to_json(),
        latex,
        text: report.to_text(),
        code: report.exit_code() as u8,
    }
}

fn cmd_solve(args: &SolveArgs) -> Outcome {
    let test_degree = args.test_degree.unwrap_or(args.max_order + 2);
    match solve_sbo(&args.lambda, &args.nu, args.max_order, test_degree) {
        Ok(s) => {
            let latex: String = s.basis.iter().map(|p| p.to_latex() + "\n").collect();
            let mut text = format!(
                "lambda = {}, nu = {}: dimension {} (stable at test degree {} and {})\n",
                s.lambda,
                s.nu,
                s.dimension(),
                test_degree,
                test_degree + 1
            );
            for p in &s.basis {
                text.push_str(&format!("D1 = {}; D2 = {}\n", p.d1, p.d2));
            }
            Outcome {
                json: s.to_json(),
                latex,
                text,
                code: 0,
            }
        }
        Err(Error::InvalidArgument(m)) => usage_error(ErrorKind::ValueValidation, m),
        Err(e @ Error::Instability { .. }) => {
            let msg = e.to_string();
            Outcome {
                json: json!({
                    "lambda": args.lambda.to_string(),
                    "nu": args.nu.to_string(),
                    "max_order": args.max_order,
                    "test_degree": test_degree,
                    "stable": false,
                    "error": msg,
                }),
                latex: format!("% {msg}\n"),
                text: format!("{msg}\n"),
                code: 1,
            }
        }
        Err(e) => usage_error(ErrorKind::InvalidValue, e),
    }
}

fn vectors_latex(l1: &Rational, l2: &Rational, a: u32) -> String {
    singular_vectors(l1, l2, a)
        .iter()
        .map(|v| {
            let terms: Vec<String> = v
                .terms()
                .map(|(i, j, c)| format!("({c})\\, f^{{{i}}} \\otimes f^{{{j}}}"))
                .collect();
            terms.join(" + ") + "\n"
        })
        .collect()
}

fn cmd_verma(args: &VermaArgs) -> Outcome {
    if args.kp {
        let (lambda, nu) = (args.lambda.clone().unwrap(), args.nu.clone().unwrap());
        let d = kp_dimension(&lambda, &nu);
        return Outcome {
            json: json!({"lambda": lambda.to_string(), "nu": nu.to_string(), "kp_dimension": d}),
            latex: format!("\\dim = {d}\n"),
            text: format!("kp dimension at lambda = {lambda}, nu = {nu}: {d}\n"),
            code: 0,
        };
    }
    let Some(a) = args.level else {
        usage_error(
            ErrorKind::MissingRequiredArgument,
            "--level is required unless --kp is given",
        )
    };
    if args.rc_compare {
        let lambda = args.lambda.clone().unwrap();
        let r = rc_correspondence(&lambda, a);
        let json = serde_json::to_value(&r).expect("json");
        return Outcome {
            latex: format!("% {json}\n"),
            text: format!("{json}\n"),
            json,
            code: 0,
        };
    }
    let (Some(l1), Some(l2)) = (&args.l1, &args.l2) else {
        usage_error(
            ErrorKind::MissingRequiredArgument,
            "--l1 and --l2 are required with --level",
        )
    };
    let json = singular_vectors_json(l1, l2, a);
    let count = json["vectors"].as_array().map_or(0, Vec::len);
    Outcome {
        latex: vectors_latex(l1, l2, a),
        text: format!(
            "level {a} in M({l1}) x M({l2}): multiplicity {count}\n{}",
            vectors_latex(l1, l2, a)
        ),
        json,
        code: 0,
    }
}

fn configure_threads() {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return;
    };
    match raw.parse::<usize>() {
        Ok(n) if n > 0 => {
            // a second call only fails if a pool already exists, which cannot happen here
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
        _ => usage_error(
            ErrorKind::InvalidValue,
            format!("{THREADS_VAR} must be a positive integer, got '{raw}'"),
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let (outcome, output) = match &cli.command {
        Command::Op(a) => (cmd_op(a), &a.output),
        Command::Verify(a) => (cmd_verify(a), &a.output),
        Command::Solve(a) => (cmd_solve(a), &a.output),
        Command::Verma(a) => (cmd_verma(a), &a.output),
    };
    if let Err(e) = emit(output, &outcome) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.code)
}
