//! Range scans, the result cache and report plumbing behind `gaussgenus`.

pub mod cache;
pub mod config;
pub mod scan;

use genus_core::Error;

/// Process exit codes. Stable contract.
pub mod exit {
    pub const OK: u8 = 0;
    pub const ANOMALY: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const RESOURCE: u8 = 3;
}

/// Failure of a command, already mapped to its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: exit::USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceBound(_) | Error::Overflow => exit::RESOURCE,
            _ => exit::USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(e.to_string())
    }
}
