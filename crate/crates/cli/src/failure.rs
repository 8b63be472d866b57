use std::fmt;
use std::io;
use std::path::Path;

use cycleweave_core::{EdgeListError, ExtractError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CERTIFICATE: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_IO: i32 = 74;

/// A fatal error together with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn data(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DATA,
            message: message.into(),
        }
    }

    pub fn write(path: &Path, err: io::Error) -> Self {
        Failure {
            code: EXIT_IO,
            message: format!("cannot write {}: {err}", path.display()),
        }
    }

    pub fn read(path: &Path, err: EdgeListError) -> Self {
        match err {
            EdgeListError::Io(e) => Failure {
                code: EXIT_NO_INPUT,
                message: format!("cannot read {}: {e}", path.display()),
            },
            other => Failure::data(format!("{}: {other}", path.display())),
        }
    }
}

impl From<ExtractError> for Failure {
    fn from(err: ExtractError) -> Self {
        match err {
            ExtractError::InvalidThresholds(_) => Failure::usage(err.to_string()),
            ExtractError::Replay(_) | ExtractError::IntermediatesNotRecorded => {
                Failure::data(err.to_string())
            }
            _ => Failure {
                code: EXIT_PRECONDITION,
                message: err.to_string(),
            },
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}
