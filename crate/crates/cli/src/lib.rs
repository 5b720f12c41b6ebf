//! Command implementations behind the `dualhash` binary.

mod amplify;
pub mod args;
mod bench;
pub mod header;
mod tables;

pub use amplify::{amplify, parse_seed, AmplifyOutcome};
pub use args::{Cli, Command, FamilyArgs, FamilyName, NaCommand};
pub use bench::bench;
pub use header::KeyFileHeader;
pub use tables::{bounds, compare, na, verify};

use dualhash::families::FamilyError;
use dualhash::security::SecurityError;
use dualhash::verify::VerifyError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("verification failed: {failures} check(s) violated their bounds")]
    VerificationFailed { report: String, failures: usize },
    #[error("seed has {found} bits, family needs {needed}")]
    ShortSeed { needed: usize, found: usize },
    #[error("malformed key file: {0}")]
    BadKeyFile(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Security(#[from] SecurityError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

impl CliError {
    /// 1 usage or input problem, 2 infeasible parameters, 3 verification failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Infeasible(_) => 2,
            Self::Family(FamilyError::Infeasible(_)) => 2,
            Self::Security(SecurityError::InvalidParameters(_)) => 2,
            Self::VerificationFailed { .. } => 3,
            _ => 1,
        }
    }
}

/// Run one parsed command, returning what it prints.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Amplify(a) => amplify(&a).map(|o| o.report),
        Command::Bench(b) => bench(&b),
        Command::Na { command } => na(&command),
        Command::Verify(v) => verify(&v),
        Command::Bounds(b) => bounds(&b),
        Command::Compare(c) => compare(&c),
    }
}
