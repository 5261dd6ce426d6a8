use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lefschetz_cli::commands::{self, CommandOutput, Method};
use lefschetz_cli::document::parse_problem;
use lefschetz_cli::CliError;

/// Exact Lefschetz numbers of simplicial self-maps, computed four
/// independent ways and cross-checked, with Euler characteristics,
/// homology, fixed-point certificates and verification suites.
///
/// Input documents are JSON with exact "p/q" fractions; see the README for
/// the format. Exit codes: 0 success, 1 property violation, 2 malformed
/// input.
#[derive(Parser)]
#[command(name = "lefschetz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Euler characteristic of the selected subcomplex
    Euler {
        /// Input document path, or - for standard input
        input: Option<PathBuf>,
    },
    /// Print Betti numbers and, with a map, the induced homology traces
    Homology { input: Option<PathBuf> },
    /// Evaluate the Lefschetz number of the map/subcomplex pair
    Lefschetz {
        /// Evaluation route, or all four with the agreement verdict
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
        input: Option<PathBuf>,
    },
    /// Classify the map's fixed points and the Hopf property
    HopfCheck { input: Option<PathBuf> },
    /// Apply rounds of barycentric subdivision and emit the document
    Subdivide {
        #[arg(long, default_value_t = 1)]
        rounds: u32,
        input: Option<PathBuf>,
    },
    /// Run the verification suites; non-zero exit on any violation
    Verify {
        /// Sampled subcomplex pairs per valuation-law suite
        #[arg(long, default_value_t = 200)]
        pairs: usize,
        input: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Axiomatic,
    OpenSum,
    Chain,
    Homological,
    All,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Axiomatic => Method::Axiomatic,
            MethodArg::OpenSum => Method::OpenSum,
            MethodArg::Chain => Method::Chain,
            MethodArg::Homological => Method::Homological,
            MethodArg::All => Method::All,
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| CliError::Malformed(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| CliError::Malformed(format!("cannot read standard input: {e}")))?;
            Ok(text)
        }
    }
}

fn run(cli: Cli) -> Result<CommandOutput, CliError> {
    match cli.command {
        Command::Euler { input } => {
            let problem = parse_problem(&read_input(&input)?)?;
            commands::euler(&problem)
        }
        Command::Homology { input } => {
            let problem = parse_problem(&read_input(&input)?)?;
            commands::homology(&problem)
        }
        Command::Lefschetz { method, input } => {
            let problem = parse_problem(&read_input(&input)?)?;
            commands::lefschetz(&problem, method.into())
        }
        Command::HopfCheck { input } => {
            let problem = parse_problem(&read_input(&input)?)?;
            commands::hopf_check(&problem)
        }
        Command::Subdivide { rounds, input } => {
            let problem = parse_problem(&read_input(&input)?)?;
            commands::subdivide(&problem, rounds)
        }
        Command::Verify { pairs, input } => {
            let problem = parse_problem(&read_input(&input)?)?;
            commands::verify(&problem, pairs)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{}", output.stdout);
            if output.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
