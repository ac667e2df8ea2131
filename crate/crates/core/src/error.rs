use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong between reading an operation log and
/// producing its completion analysis.
#[derive(Debug, Error)]
pub enum Error {
    #[error("event{} references undeclared channel `{channel}`", at_line(*.line))]
    UnknownChannel { channel: String, line: Option<u64> },

    #[error("event{} on channel `{channel}` at t={time} has non-positive quantity {quantity}", at_line(*.line))]
    NonPositiveQuantity {
        channel: String,
        time: f64,
        quantity: f64,
        line: Option<u64>,
    },

    #[error("non-finite value in {what}")]
    NonFiniteValue { what: String },

    #[error("operation has no registration events")]
    EmptyOperation,

    #[error("operation is not effective: PE = {pe} does not exceed |RE| = {re}")]
    NonEffectiveOperation { re: f64, pe: f64 },

    #[error("not a reduced operation: {inputs} input and {outputs} output impulses (expected one each)")]
    NotReducedOperation { inputs: usize, outputs: usize },

    #[error("parse error{}: {message}", at_line(*.line))]
    Parse { line: Option<u64>, message: String },

    #[error("invalid channel `{channel}`: {message}")]
    Validation { channel: String, message: String },

    #[error("time grid is not uniform at line {line}: step {found}, expected {expected}")]
    NonUniformGrid { line: u64, expected: f64, found: f64 },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn at_line(line: Option<u64>) -> String {
    line.map(|l| format!(" at line {l}")).unwrap_or_default()
}

impl Error {
    /// Stable variant name, printed by the CLI on failure.
    pub fn name(&self) -> &'static str {
        match self {
            Error::UnknownChannel { .. } => "UnknownChannel",
            Error::NonPositiveQuantity { .. } => "NonPositiveQuantity",
            Error::NonFiniteValue { .. } => "NonFiniteValue",
            Error::EmptyOperation => "EmptyOperation",
            Error::NonEffectiveOperation { .. } => "NonEffectiveOperation",
            Error::NotReducedOperation { .. } => "NotReducedOperation",
            Error::Parse { .. } => "ParseError",
            Error::Validation { .. } => "ValidationError",
            Error::NonUniformGrid { .. } => "NonUniformGrid",
            Error::Io { .. } => "IoError",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn with_line(self, at: u64) -> Self {
        match self {
            Error::UnknownChannel { channel, .. } => Error::UnknownChannel {
                channel,
                line: Some(at),
            },
            Error::NonPositiveQuantity {
                channel,
                time,
                quantity,
                ..
            } => Error::NonPositiveQuantity {
                channel,
                time,
                quantity,
                line: Some(at),
            },
            Error::Parse { message, .. } => Error::Parse {
                line: Some(at),
                message,
            },
            other => other,
        }
    }
}
