//! Library half of the `lefschetz` command-line tool: the problem document
//! format, the report structures, and the command implementations. The
//! binary in `main.rs` only parses arguments and maps errors to exit codes.

pub mod commands;
pub mod document;
pub mod output;

/// Exit-code classification: malformed input is a usage error (exit 2),
/// a failed verification is a property violation (exit 1).
#[derive(Debug)]
pub enum CliError {
    Malformed(String),
    Violation(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Malformed(_) => 2,
            CliError::Violation(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Malformed(m) | CliError::Violation(m) => m,
        }
    }
}

impl From<lefschetz_core::Error> for CliError {
    fn from(err: lefschetz_core::Error) -> Self {
        use lefschetz_core::Error::*;
        match err {
            MalformedInput(_)
            | InvalidSubdivision(_)
            | NotASubcomplex(_)
            | NotSimplicial { .. }
            | EnumerationTooLarge { .. } => CliError::Malformed(err.to_string()),
            HopfPrecondition { .. } | InternalConsistency(_) => {
                CliError::Violation(err.to_string())
            }
        }
    }
}
