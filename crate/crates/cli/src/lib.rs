//! Library half of the `cmacr` command: every subcommand is a function that
//! returns its tables/reports, so tests can call them without a process.
//!
//! Exit codes: 0 success, 1 selftest failure, 2 input error, 3 infeasible or
//! empty region, 4 resource cap exceeded.

pub mod commands;
pub mod scenario;

pub use commands::{cmd_figure, cmd_rate, cmd_region, cmd_selftest, cmd_sim, RateScheme, RegionKind};
pub use scenario::ScenarioFile;

pub const EXIT_SELFTEST: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INFEASIBLE: u8 = 3;
pub const EXIT_CAP: u8 = 4;

/// An error with the process exit code it maps to.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Self::new(EXIT_INPUT, message)
    }

    pub fn io(path: &std::path::Path, e: std::io::Error) -> Self {
        Self::input(format!("cannot write {}: {e}", path.display()))
    }
}

impl From<cmacr::Error> for CliError {
    fn from(e: cmacr::Error) -> Self {
        let code = match e {
            cmacr::Error::Infeasible(_) => EXIT_INFEASIBLE,
            cmacr::Error::CapExceeded { .. } => EXIT_CAP,
            _ => EXIT_INPUT,
        };
        Self::new(code, e.to_string())
    }
}
