use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::parser::ValueSource;
use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};

use randteam::config::ExperimentConfig;
use randteam::report::{emit, Format, Report};
use randteam::reproduce::{self, Settings};
use randteam::run::{self, Explicit};
use randteam::{Mode, RunError};
use randteam_core::Scalar;

/// Team decision problems and team-vs-team games with external randomness.
///
/// Exit codes: 0 success, 1 invalid input, 2 numerical failure, 3 a
/// comparison mismatch under --check.
#[derive(Parser, Debug)]
#[command(name = "randteam", version)]
struct Cli {
    /// Seed for Monte-Carlo and random deviation checks.
    #[arg(long, global = true, env = "RANDTEAM_SEED", default_value_t = 0)]
    seed: u64,
    /// Monte-Carlo sample count.
    #[arg(long, global = true, default_value_t = 100_000)]
    samples: u64,
    /// Absolute tolerance for comparisons against published values.
    #[arg(long, global = true, default_value_t = 5e-3)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    format: Format,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Corrected)]
    mode: Mode,
    /// Exit with 3 when any record is an unledgered mismatch.
    #[arg(long, global = true)]
    check: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Table1,
    Table3,
    Table4,
    Security,
    Zs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recompute a published table and compare it cell by cell.
    Reproduce {
        #[arg(value_enum)]
        target: Target,
        #[arg(long, default_value = "1/4")]
        p1: String,
        #[arg(long, default_value = "1/3")]
        p: String,
        #[arg(long, default_value = "2/3")]
        q: String,
        /// Zero-sum coupling case (1 or 2); both when omitted.
        #[arg(long)]
        case: Option<u8>,
        /// Zero-sum signal; all three when omitted.
        #[arg(long = "rand", value_parser = ["none", "mole", "consultant"])]
        randomness: Option<String>,
    },
    /// Solve the problem described by a config file.
    Solve {
        #[arg(long)]
        config: PathBuf,
    },
    /// Compare sampled costs with analytic values for a config file.
    McCheck {
        #[arg(long)]
        config: PathBuf,
    },
}

fn from_command_line(m: &ArgMatches, id: &str) -> bool {
    let (_, sub) = m.subcommand().expect("subcommand is required");
    [m, sub]
        .iter()
        .any(|a| a.value_source(id) == Some(ValueSource::CommandLine))
}

fn read_config(path: &PathBuf) -> Result<ExperimentConfig, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Config(format!("{}: {e}", path.display())))?;
    ExperimentConfig::from_json(&text)
}

fn scalar(name: &str, s: &str) -> Result<Scalar, RunError> {
    Scalar::parse(s).map_err(|e| RunError::Config(format!("--{name}: {e}")))
}

fn execute(cli: &Cli, explicit: Explicit) -> Result<Report, RunError> {
    let base = Settings {
        seed: cli.seed,
        samples: cli.samples,
        tol: cli.tol,
        mode: cli.mode,
        ..Settings::default()
    };
    if base.tol.is_nan() || base.tol < 0.0 {
        return Err(RunError::Config("--tol must be non-negative".into()));
    }
    if base.samples == 0 {
        return Err(RunError::Config("--samples must be positive".into()));
    }
    match &cli.command {
        Command::Reproduce {
            target,
            p1,
            p,
            q,
            case,
            randomness,
        } => {
            let params = [scalar("p1", p1)?, scalar("p", p)?, scalar("q", q)?];
            match target {
                Target::Table1 => reproduce::table1(&base),
                Target::Table3 => reproduce::table3(&params, &base),
                Target::Table4 => reproduce::table4(&base),
                Target::Security => reproduce::security(&params, &base),
                Target::Zs => reproduce::zs(*case, randomness.as_deref(), &base),
            }
        }
        Command::Solve { config } => {
            let c = read_config(config)?;
            run::solve(&c, &run::effective(&base, &c, &explicit))
        }
        Command::McCheck { config } => {
            let c = read_config(config)?;
            run::mc_check(&c, &run::effective(&base, &c, &explicit))
        }
    }
}

fn main() -> ExitCode {
    let matches = match Cli::command().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let explicit = Explicit {
        seed: from_command_line(&matches, "seed"),
        samples: from_command_line(&matches, "samples"),
        tol: from_command_line(&matches, "tol"),
        mode: from_command_line(&matches, "mode"),
    };
    match execute(&cli, explicit) {
        Ok(report) => {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            if let Err(e) = emit(&report, cli.format, &mut out)
                .and_then(|_| out.flush().map_err(RunError::from))
            {
                eprintln!("randteam: {e}");
                return ExitCode::from(2);
            }
            if cli.check && report.has_mismatch() {
                eprintln!("randteam: at least one record is a mismatch not listed in the discrepancy ledger");
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("randteam: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
