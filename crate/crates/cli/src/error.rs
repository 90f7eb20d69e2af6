use std::fmt;
use std::process::ExitCode;

use seqtrans::Error;

/// Failure of a command, carrying the exit status class.
#[derive(Debug)]
pub enum CliError {
    /// Invalid flags or flag combinations (exit 1).
    Config(String),
    /// Unreadable, unparsable or too short input (exit 2).
    Input(String),
    /// The computation itself failed (exit 3).
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Config(_) => 1,
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::InsufficientData { .. } | Error::Parse(_) => CliError::Input(msg),
            Error::InvalidParameter(_)
            | Error::UnknownProblem(_)
            | Error::SingularSchedule { .. }
            | Error::OrderTooLarge(_)
            | Error::InvalidPoints(_)
            | Error::CoincidentPoints(..) => CliError::Config(msg),
            _ => CliError::Numerical(msg),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
