use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cmacr::selftest::SelftestOptions;
use cmacr::table::CsvTable;
use cmacr::SearchConfig;
use cmacr_cli::commands::parse_db_range;
use cmacr_cli::{
    cmd_figure, cmd_rate, cmd_region, cmd_selftest, cmd_sim, CliError, RateScheme, RegionKind, ScenarioFile,
    EXIT_SELFTEST,
};

/// Rate regions and linear-code relaying simulation for the compound MAC
/// with a relay.
#[derive(Parser)]
#[command(name = "cmacr", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Boundary of a rate region as CSV (constraint list for binary kinds).
    Region {
        #[arg(value_enum)]
        kind: RegionKind,
        /// Scenario JSON file.
        #[arg(long)]
        scenario: PathBuf,
        /// Output file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Equal rate of one scheme over a power sweep (P1 = P2 = P3 = P).
    Rate {
        #[arg(value_enum)]
        scheme: RateScheme,
        /// Powers in dB: START:STOP:STEP or a single value.
        #[arg(long, allow_hyphen_values = true)]
        p_db: String,
        #[arg(long)]
        gamma2: f64,
        #[arg(long)]
        eta2: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Data of one figure, one CSV file per curve.
    Figure {
        id: u32,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Monte Carlo simulation of linear-code relaying over binary links.
    Sim {
        /// Scenario JSON file with a binary scenario and a "sim" section.
        #[arg(long)]
        config: PathBuf,
        /// JSON report file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the reports as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Built-in consistency checks.
    Selftest {
        /// Print per-check timing.
        #[arg(long)]
        verbose: bool,
        /// Fault injection: offset added to Hb in the closed-form binary bounds.
        #[arg(long, hide = true, default_value_t = 0.0)]
        hb_perturbation: f64,
    },
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::input(format!("cannot write to standard output: {e}"))),
    }
}

fn write_table(path: Option<&Path>, t: &CsvTable) -> Result<(), CliError> {
    write_out(path, &t.to_csv_string())
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Region { kind, scenario, out } => {
            let file = ScenarioFile::load(&scenario)?;
            write_table(out.as_deref(), &cmd_region(kind, &file)?)?;
        }
        Command::Rate { scheme, p_db, gamma2, eta2, out } => {
            let sweep = parse_db_range(&p_db)?;
            write_table(out.as_deref(), &cmd_rate(scheme, &sweep, gamma2, eta2, &SearchConfig::default())?)?;
        }
        Command::Figure { id, out_dir } => {
            let (_, paths) = cmd_figure(id, Some(&out_dir))?;
            for p in paths {
                println!("{}", p.display());
            }
        }
        Command::Sim { config, out, csv } => {
            let file = ScenarioFile::load(&config)?;
            let result = cmd_sim(&file)?;
            write_out(out.as_deref(), &result.json)?;
            if let Some(p) = csv.as_deref() {
                write_out(Some(p), &result.csv)?;
            }
            // keep standard output pure JSON when the report goes there
            for line in result.summary() {
                if out.is_some() {
                    println!("{line}");
                } else {
                    eprintln!("{line}");
                }
            }
        }
        Command::Selftest { verbose, hb_perturbation } => {
            let (ok, results) = cmd_selftest(SelftestOptions { hb_perturbation });
            for c in &results {
                println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
                if verbose {
                    println!("  time {:.3} s", c.elapsed.as_secs_f64());
                }
            }
            if !ok {
                return Ok(EXIT_SELFTEST);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { cmacr_cli::EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
