use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use qfock::arith::{ArithError, RootOrder};
use qfock::json::{
    module_diagnostics, qbinom_payload, recipe_diagnostics, selftest_payload, verify_diagnostics, CommandEcho,
    Diagnostics, Payload, ReportDocument,
};
use qfock::rep::{classify, default_window, infinite_module, weyl_module, RepError};
use qfock::selftest::{run_battery, verify_suite};
use qfock::uq::{BosonImage, Realization};

mod render;

const EXIT_USAGE: u8 = 1;
const EXIT_FAILED: u8 = 2;

#[derive(Parser)]
#[command(name = "qfock", version, about = "Restricted q-Fock representations of U_eps^res(sl2) at odd roots of unity")]
struct Cli {
    /// Output rendering.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn root_order(s: &str) -> Result<RootOrder, String> {
    let p: i64 = s.parse().map_err(|_| format!("'{s}' is not an integer"))?;
    RootOrder::new(p).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Gaussian binomial [n over m], generically or at eps.
    Qbinom {
        #[arg(long, value_parser = root_order)]
        p: RootOrder,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        /// Evaluate at a primitive p-th root of unity.
        #[arg(long)]
        at_root: bool,
    },
    /// Weyl module V_m inside F1.
    Weyl {
        #[arg(long, value_parser = root_order)]
        p: RootOrder,
        #[arg(long)]
        m: u32,
    },
    /// Sector V^s of F2, truncated to a window.
    Infmod {
        #[arg(long, value_parser = root_order)]
        p: RootOrder,
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
        /// Labels kept per sector; defaults to 6p, at least 4p.
        #[arg(long)]
        window: Option<u32>,
    },
    /// Which constructed module realizes the simple module V(lambda).
    Classify {
        #[arg(long, value_parser = root_order)]
        p: RootOrder,
        #[arg(long, allow_hyphen_values = true)]
        lambda: i64,
        #[arg(long)]
        window: Option<u32>,
    },
    /// Relation, oracle and random-word suites for one realization.
    Verify {
        #[arg(long, value_parser = root_order)]
        p: RootOrder,
        /// Largest r1, r2 checked.
        #[arg(long, default_value_t = 8)]
        bound: u32,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check the sign-flipped realization instead; it must fail.
        #[arg(long, hide = true)]
        negate_f: bool,
    },
    /// The full acceptance battery.
    Selftest {
        #[arg(long, default_value_t = 20240531)]
        seed: u64,
    },
}

enum CliError {
    Usage(String),
    Failed(String),
}

impl From<RepError> for CliError {
    fn from(e: RepError) -> Self {
        match e {
            RepError::WindowTooSmall { .. } => CliError::Usage(format!("invalid value for '--window': {e}")),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<ArithError> for CliError {
    fn from(e: ArithError) -> Self {
        CliError::Usage(e.to_string())
    }
}

struct Output {
    doc: ReportDocument,
    text: String,
}

fn run(command: Command) -> Result<Output, CliError> {
    Ok(match command {
        Command::Qbinom { p, n, m, at_root } => {
            let echo = CommandEcho::new("qbinom").arg("p", p).arg("n", n).arg("m", m).arg("at_root", at_root);
            let payload = qbinom_payload(p, n, m, at_root)?;
            let text = render::qbinom(&payload);
            Output { doc: ReportDocument::new(echo, Payload::Qbinom(payload), Diagnostics::default()), text }
        }
        Command::Weyl { p, m } => {
            let r = weyl_module(p, m)?;
            let echo = CommandEcho::new("weyl").arg("p", p).arg("m", m);
            Output {
                text: render::module(&r),
                doc: ReportDocument::new(echo, Payload::Module(Box::new((&r).into())), module_diagnostics(&r)),
            }
        }
        Command::Infmod { p, s, window } => {
            let window = window.unwrap_or_else(|| default_window(p));
            let r = infinite_module(p, s, window)?;
            let echo = CommandEcho::new("infmod").arg("p", p).arg("s", s).arg("window", window);
            Output {
                text: render::module(&r),
                doc: ReportDocument::new(echo, Payload::Module(Box::new((&r).into())), module_diagnostics(&r)),
            }
        }
        Command::Classify { p, lambda, window } => {
            let window = window.unwrap_or_else(|| default_window(p));
            let r = classify(p, lambda, window)?;
            let echo = CommandEcho::new("classify").arg("p", p).arg("lambda", lambda).arg("window", window);
            Output {
                text: render::recipe(&r),
                doc: ReportDocument::new(echo, Payload::Classify((&r).into()), recipe_diagnostics(&r)),
            }
        }
        Command::Verify { p, bound, which, seed, negate_f } => {
            let which = Realization::from_index(which as i64).map_err(|e| CliError::Usage(e.to_string()))?;
            let image = if negate_f { BosonImage::new(which).with_negated_f() } else { BosonImage::new(which) };
            let v = verify_suite(p, bound, &image, seed).map_err(|e| CliError::Failed(e.to_string()))?;
            let echo = CommandEcho::new("verify").arg("p", p).arg("bound", bound).arg("which", which).arg("seed", seed);
            let echo = if negate_f { echo.arg("negate_f", true) } else { echo };
            let diagnostics = verify_diagnostics(&v);
            Output {
                text: render::verify(&v, &diagnostics),
                doc: ReportDocument::new(echo, Payload::Verify((&v).into()), diagnostics),
            }
        }
        Command::Selftest { seed } => {
            let timed = run_battery(seed)?;
            let text = render::selftest(&timed);
            let (payload, diagnostics) = selftest_payload(seed, timed.into_iter().map(|t| t.result).collect());
            let echo = CommandEcho::new("selftest").arg("seed", seed);
            Output { doc: ReportDocument::new(echo, Payload::Selftest(payload), diagnostics), text }
        }
    })
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("QFOCK_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| format!("QFOCK_THREADS must be a positive integer, got '{value}'"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    let output = match run(cli.command) {
        Ok(o) => o,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("verification failed: {msg}");
            return ExitCode::from(EXIT_FAILED);
        }
    };
    let mut out = std::io::stdout().lock();
    let rendered = match cli.format {
        Format::Text => output.text,
        Format::Json => output.doc.to_json(),
    };
    if writeln!(out, "{rendered}").is_err() {
        return ExitCode::from(EXIT_FAILED);
    }
    if output.doc.passed() {
        ExitCode::SUCCESS
    } else {
        for c in output.doc.diagnostics.checks.iter().filter(|c| !c.passed) {
            eprintln!("verification failed: {}: {}", c.name, c.counterexample.as_deref().unwrap_or("check failed"));
        }
        ExitCode::from(EXIT_FAILED)
    }
}
