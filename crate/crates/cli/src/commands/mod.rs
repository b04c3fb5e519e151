pub mod inspect;
pub mod table;
pub mod verify;

use std::fmt;

use fusion_core::{Error, RootDatum};
use serde_json::{json, Value};

use crate::args::UsageError;
use crate::output::Output;

pub struct Outcome {
    pub output: Output,
    pub code: u8,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => core_code(e),
        }
    }
}

pub fn core_code(e: &Error) -> u8 {
    match e {
        Error::IdentityViolated(_) => 1,
        Error::ResidualTooLarge { .. } => 3,
        Error::DegenerateConfiguration(_) | Error::OnBoundary(_) => 4,
        _ => 2,
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<UsageError> for CliError {
    fn from(e: UsageError) -> Self {
        CliError::Usage(e.0)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

pub fn algebra_json(d: &RootDatum) -> Value {
    let ty = d.simple_type();
    json!({"series": ty.series.letter().to_string(), "rank": ty.rank})
}
