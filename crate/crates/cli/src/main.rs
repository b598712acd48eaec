mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Common;
use report::{CliError, Report, EXIT_OK, EXIT_PARSE, EXIT_VERDICT};

/// Degree functions, tame derivations and wild constructions.
#[derive(Parser, Debug)]
#[command(name = "degwild", version)]
struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Number of random samples for oracle and axiom checks.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Laurent precision: cap of the adaptive policy, or the series window for wild-b.
    #[arg(long, global = true)]
    precision: Option<i64>,
    /// Print only the JSON report.
    #[arg(long, global = true)]
    json_only: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// deg(D) on a graded ring from generators of the degree-0 part and homogeneous generators.
    TameEval(commands::TameArgs),
    /// deg(D) for the degree function of a locally nilpotent derivation.
    LndEval(commands::LndArgs),
    /// deg(D) for a weighted degree sandwiched in a Laurent polynomial ring.
    SandwichEval(commands::SandwichArgs),
    /// Unbounded delta on Q[x, y] embedded by x = 1/t, y = f(t).
    WildA(commands::WildAArgs),
    /// Degree function on Q(s)[x, y] with a derivation of unbounded jump.
    WildB(commands::WildBArgs),
    /// Expansion of a polynomial in Y along the sequence y_p.
    Expand(commands::ExpandArgs),
    /// Randomized check of the degree-function axioms.
    Axioms(commands::AxiomArgs),
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let common = Common { seed: cli.seed, samples: cli.samples, precision: cli.precision };
    if let Some(p) = cli.precision {
        if p <= 0 {
            return Err(CliError::parse("--precision", "must be positive"));
        }
    }
    match &cli.command {
        Command::TameEval(a) => commands::tame_eval(a, &common),
        Command::LndEval(a) => commands::lnd_eval(a, &common),
        Command::SandwichEval(a) => commands::sandwich_eval(a, &common),
        Command::WildA(a) => commands::wild_a(a, &common),
        Command::WildB(a) => commands::wild_b(a, &common),
        Command::Expand(a) => commands::expand_cmd(a, &common),
        Command::Axioms(a) => commands::axioms(a, &common),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return ExitCode::from(e.code);
        }
    };
    // Output errors (e.g. a closed pipe) are ignored; the exit code still reports the verdict.
    let mut stdout = std::io::stdout().lock();
    if !cli.json_only {
        let _ = stdout.write_all(report.to_text().as_bytes());
    }
    let json = report.to_json();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(report::EXIT_PRECONDITION);
            }
        }
        None => {
            let _ = stdout.write_all(json.as_bytes());
        }
    }
    ExitCode::from(if report.passed() { EXIT_OK } else { EXIT_VERDICT })
}
