//! The `puiseux` command-line tool as a library.
//!
//! [`run`] takes an argument vector and returns the exit code together with
//! everything the process would write, so tests can drive the tool without
//! spawning it.
//!
//! ```
//! let out = puiseux_cli::run(["puiseux", "lengths", "--monoid", "2,3", "--element", "6"]);
//! assert_eq!(out.code, 0);
//! assert_eq!(out.stdout, "{2, 3}\n");
//! ```

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use puiseux::ErrorKind;
use serde::Serialize;

mod commands;
mod config;

pub use config::{parse_caps, RunConfig};

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    /// Audit failure or internal invariant violation.
    pub const FAILURE: u8 = 1;
    pub const USAGE: u8 = 2;
    /// Input outside an operation's domain, or a query on unbuilt state.
    pub const DOMAIN: u8 = 3;
    /// A cap was hit, or a bounded search came back empty.
    pub const RESOURCE: u8 = 4;
}

/// What a single invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "puiseux",
    version,
    about = "Sets of lengths in numerical and Puiseux monoids",
    propagate_version = true
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
    /// Largest number of atoms tried by the realization search.
    #[arg(long, global = true)]
    max_atoms: Option<usize>,
    /// Largest atom tried by the realization search.
    #[arg(long, global = true)]
    max_atom_value: Option<u64>,
    /// Largest element tried by the realization search.
    #[arg(long, global = true)]
    max_element: Option<u64>,
    /// Most factorizations one query may return (overrides PUISEUX_CAPS).
    #[arg(long, global = true)]
    factorization_cap: Option<usize>,
    /// Most primes one prime search may examine (overrides PUISEUX_CAPS).
    #[arg(long, global = true)]
    prime_search_cap: Option<u64>,
    /// Most bits in one dynamic-programming table (overrides PUISEUX_CAPS).
    #[arg(long, global = true)]
    table_cap: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Construction {
    FullSsl,
    NonTwo,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Set of lengths of an element.
    Lengths {
        /// Comma-separated generators, integers or fractions like 2/3.
        #[arg(long)]
        monoid: String,
        #[arg(long)]
        element: String,
    },
    /// All factorizations of an element, as exponent vectors over the atoms.
    Factorize {
        #[arg(long)]
        monoid: String,
        #[arg(long)]
        element: String,
    },
    /// Minimal generating set of a submonoid of the nonnegative integers.
    Atoms {
        #[arg(long)]
        gens: String,
    },
    /// Atoms of q·M.
    Scale {
        #[arg(long)]
        monoid: String,
        #[arg(long)]
        by: String,
    },
    /// A rational q with M1 = q·M2, or "none".
    Iso {
        #[arg(long)]
        m1: String,
        #[arg(long)]
        m2: String,
    },
    /// Build a staged monoid and print one JSON line per stage.
    Construct {
        #[arg(value_enum)]
        kind: Construction,
        #[arg(long)]
        stages: usize,
        /// Primes allowed as new denominators: all, RmodM, or a list.
        #[arg(long, default_value = "all")]
        prime_pool: String,
        /// Also write the stage lines to this file.
        #[arg(long)]
        dump: Option<std::path::PathBuf>,
    },
    /// An element whose only factorization length is 2.
    WitnessTwo {
        #[arg(long)]
        monoid: String,
    },
    /// Find (N, x) with L_N(x) equal to the given set.
    Realize {
        /// Comma-separated lengths, each at least 2.
        #[arg(long)]
        set: String,
    },
    /// Compare lengths of 2 in ⟨1/p⟩ with the Goldbach numbers.
    Goldbach {
        #[arg(long)]
        bound: u64,
        /// Also report lengths of 3 against Z≥7.
        #[arg(long)]
        check_l3: bool,
        /// Also check that odd numbers in [7, bound] are sums of three primes.
        #[arg(long)]
        weak: bool,
    },
    /// Build a staged monoid and audit every stage; exits 1 on a violation.
    Verify {
        #[arg(value_enum)]
        kind: Construction,
        #[arg(long)]
        stages: usize,
        #[arg(long, default_value = "all")]
        prime_pool: String,
    },
    /// Set of lengths of an element in a truncation of a staged monoid.
    TruncatedLengths {
        #[arg(value_enum)]
        kind: Construction,
        #[arg(long)]
        stages: usize,
        #[arg(long)]
        element: String,
        #[arg(long, default_value = "all")]
        prime_pool: String,
    },
    /// Formula versus enumeration for L(n) in ⟨1/p : p ≤ p_t⟩.
    CrossCheck {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        stage: usize,
    },
    /// The p-adic valuation of a rational.
    Valuation {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        value: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Lengths { .. } => "lengths",
            Command::Factorize { .. } => "factorize",
            Command::Atoms { .. } => "atoms",
            Command::Scale { .. } => "scale",
            Command::Iso { .. } => "iso",
            Command::Construct { .. } => "construct",
            Command::WitnessTwo { .. } => "witness-two",
            Command::Realize { .. } => "realize",
            Command::Goldbach { .. } => "goldbach",
            Command::Verify { .. } => "verify",
            Command::TruncatedLengths { .. } => "truncated-lengths",
            Command::CrossCheck { .. } => "cross-check",
            Command::Valuation { .. } => "valuation",
        }
    }
}

/// A failure on its way to becoming an exit code.
#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Lib(puiseux::Error),
    Io(String),
}

impl From<puiseux::Error> for CliError {
    fn from(e: puiseux::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Io(_) => exit::RESOURCE,
            CliError::Lib(e) => match e.kind() {
                ErrorKind::Domain | ErrorKind::State => exit::DOMAIN,
                ErrorKind::Resource => exit::RESOURCE,
                ErrorKind::Internal => exit::FAILURE,
            },
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Lib(puiseux::Error::NotFound { .. }) => "not-found",
            CliError::Lib(e) => match e.kind() {
                ErrorKind::Domain => "domain",
                ErrorKind::State => "state",
                ErrorKind::Resource => "resource",
                ErrorKind::Internal => "internal",
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
            CliError::Lib(e) => e.to_string(),
        }
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
    exit_code: u8,
}

#[derive(Serialize)]
struct ErrorEnvelope<'a> {
    command: Option<&'a str>,
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    config: &'a RunConfig,
    result: &'a serde_json::Value,
}

/// The result of one subcommand, in both output formats.
pub(crate) struct Report {
    pub text: String,
    pub json: serde_json::Value,
    /// False when an audit ran to completion and found a violation.
    pub ok: bool,
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => return clap_outcome(e, wants_json(&args)),
    };
    let format = cli.global.output;
    let command = cli.command.name();
    let env_caps = std::env::var("PUISEUX_CAPS").ok();
    let config = match RunConfig::resolve(&cli.global, env_caps.as_deref()) {
        Ok(c) => c,
        Err(e) => return error_outcome(format, Some(command), &e),
    };
    match commands::execute(&cli.command, &config) {
        Ok(report) => {
            let stdout = match format {
                OutputFormat::Text => report.text,
                OutputFormat::Json => {
                    let env = Envelope {
                        command,
                        config: &config,
                        result: &report.json,
                    };
                    serde_json::to_string_pretty(&env).expect("serializable") + "\n"
                }
            };
            Outcome {
                code: if report.ok { exit::OK } else { exit::FAILURE },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => error_outcome(format, Some(command), &e),
    }
}

fn wants_json(args: &[OsString]) -> bool {
    args.windows(2)
        .any(|w| w[0] == "--output" && w[1] == "json")
        || args.iter().any(|a| a == "--output=json")
}

fn clap_outcome(e: clap::Error, json: bool) -> Outcome {
    use clap::error::ErrorKind as K;
    if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion) {
        return Outcome {
            code: exit::OK,
            stdout: e.to_string(),
            stderr: String::new(),
        };
    }
    if json {
        let err = CliError::Usage(e.kind().to_string());
        return error_outcome(OutputFormat::Json, None, &err);
    }
    Outcome {
        code: exit::USAGE,
        stdout: String::new(),
        stderr: e.render().to_string(),
    }
}

fn error_outcome(format: OutputFormat, command: Option<&str>, e: &CliError) -> Outcome {
    let code = e.code();
    let stderr = match format {
        OutputFormat::Text => format!("error: {}\n", e.message()),
        OutputFormat::Json => {
            let env = ErrorEnvelope {
                command,
                error: ErrorBody {
                    kind: e.kind(),
                    message: e.message(),
                    exit_code: code,
                },
            };
            serde_json::to_string_pretty(&env).expect("serializable") + "\n"
        }
    };
    Outcome {
        code,
        stdout: String::new(),
        stderr,
    }
}
