//! Command-line front end: reads a problem file or a bundled fixture, runs one
//! verification and prints a report.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 for unreadable or malformed input.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod expr;
pub mod fixtures;
pub mod report;
pub mod schema;

pub use commands::Settings;
pub use fixtures::Fixture;
pub use report::Report;
pub use schema::{parse_rational, ProblemFile};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    /// A mathematical precondition or check failed.
    #[error("{0}")]
    Math(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Algebra(#[from] bvinf::superalg::AlgebraError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Math(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Parser)]
#[command(
    name = "bvinf",
    version,
    about = "Exact checks for homotopy BV algebras and their L∞ structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Largest bracket arity examined.
    #[arg(long, global = true)]
    arity_cap: Option<usize>,
    /// Largest polynomial degree of test forms.
    #[arg(long, global = true)]
    degree_cap: Option<u32>,
    /// Largest truncation order h^N.
    #[arg(long, global = true)]
    n_max: Option<usize>,
    /// Seed for randomly generated elements.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,
}

#[derive(Debug, Args)]
struct Source {
    /// Problem file (JSON).
    file: Option<PathBuf>,
    /// Use a bundled example instead of a file.
    #[arg(long, value_enum, conflicts_with = "file")]
    fixture: Option<Fixture>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate the input: algebra axioms, BV∞ axioms, L∞ relations or [P, P] = 0.
    Check(Source),
    /// Derived (or Koszul) bracket on the given inputs.
    Brackets {
        #[command(flatten)]
        source: Source,
        /// Basis label or index; forms such as `x1*dx2` for geometries. Repeat per argument.
        #[arg(long = "input", required = true)]
        inputs: Vec<String>,
    },
    /// Maurer–Cartan equation against the cycle condition on e^ξ − 1.
    Mc {
        #[command(flatten)]
        source: Source,
        /// Test cdga by name or index in the bundled collection.
        #[arg(long, default_value = "0")]
        cdga: String,
        /// Entries `c:a:p/q` of ξ ∈ C ⊗ A, comma separated; random when omitted.
        #[arg(long)]
        element: Option<String>,
    },
    /// Freeness of the truncated homology over k[h]/(h^N), N ≤ n-max.
    Degeneration(Source),
    /// Minimal model by homotopy transfer.
    Transfer(Source),
    /// Degeneration against homotopy abelianness of the fiber.
    MainTheorem(Source),
    /// Print a bundled example as a problem file.
    Fixture {
        #[arg(value_enum)]
        name: Fixture,
    },
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

fn load(source: &Source) -> Result<ProblemFile, CliError> {
    match (&source.file, source.fixture) {
        (_, Some(f)) => Ok(f.problem()),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
                path: path.clone(),
                source: e,
            })?;
            ProblemFile::parse(&text)
        }
        (None, None) => Err(CliError::Input("give a problem file or --fixture".into())),
    }
}

fn settings(common: &Common, file: &ProblemFile) -> Settings {
    let d = Settings::default();
    let o = &file.options;
    Settings {
        arity_cap: common.arity_cap.or(o.arity_cap).unwrap_or(d.arity_cap),
        degree_cap: common.degree_cap.or(o.degree_cap).unwrap_or(d.degree_cap),
        n_max: common.n_max.or(o.n_max).unwrap_or(d.n_max),
        seed: common.seed.or(o.seed).unwrap_or(d.seed),
    }
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let source = match &cli.command {
        Command::Check(s)
        | Command::Degeneration(s)
        | Command::Transfer(s)
        | Command::MainTheorem(s) => s,
        Command::Brackets { source, .. } | Command::Mc { source, .. } => source,
        Command::Fixture { .. } => unreachable!("handled before loading"),
    };
    let file = load(source)?;
    let settings = settings(&cli.common, &file);
    if settings.arity_cap == 0 || settings.n_max == 0 {
        return Err(CliError::Input(
            "--arity-cap and --n-max must be positive".into(),
        ));
    }
    let problem = file.problem.build()?;
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Check(_) => commands::check(&problem, &settings),
        Command::Brackets { inputs, .. } => commands::brackets(&problem, inputs),
        Command::Mc { cdga, element, .. } => {
            commands::mc(&problem, &settings, cdga, element.as_deref())
        }
        Command::Degeneration(_) => commands::degeneration(&problem, &settings),
        Command::Transfer(_) => commands::transfer_cmd(&problem, &settings),
        Command::MainTheorem(_) => commands::main_theorem(&problem, &settings),
        Command::Fixture { .. } => unreachable!(),
    }?;
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    if let Command::Fixture { name } = &cli.command {
        return Outcome {
            code: 0,
            stdout: name.problem().to_json(),
            stderr: String::new(),
        };
    }
    match execute(&cli) {
        Ok(report) => {
            let stdout = match cli.common.format {
                Format::Human => report.human(),
                Format::Machine => report.machine(),
            };
            Outcome {
                code: if report.passed { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
