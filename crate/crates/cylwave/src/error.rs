use std::fmt;
use std::io;

use cylwave_core::Error;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    /// Unreadable or malformed input files and flags.
    Input(String),
    Io(io::Error),
    /// A run finished but breached one of its own tolerances.
    Tolerance(String),
}

impl CliError {
    /// 2 for bad input, 3 for numerical failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Core(Error::Numerical(_)) | Self::Tolerance(_) => 3,
            Self::Core(_) | Self::Input(_) | Self::Io(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Core(e) => write!(f, "{e}"),
            Self::Input(msg) => write!(f, "{msg}"),
            Self::Io(e) => write!(f, "io: {e}"),
            Self::Tolerance(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        Self::Io(e)
    }
}
