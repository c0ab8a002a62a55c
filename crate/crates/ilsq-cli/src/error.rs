use std::fmt;

/// CLI failure classes, each with a stable exit code: 2 for unusable
/// input, 3 for rank/definiteness failures, 4 for oversized search boxes.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Rank(String),
    BoxTooLarge(String),
    Io(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Rank(_) => 3,
            CliError::BoxTooLarge(_) => 4,
            CliError::Io(_) | CliError::Internal(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(msg)
            | CliError::Rank(msg)
            | CliError::BoxTooLarge(msg)
            | CliError::Io(msg)
            | CliError::Internal(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<ilsq::Error> for CliError {
    fn from(err: ilsq::Error) -> Self {
        let msg = err.to_string();
        match err {
            ilsq::Error::RankDeficient { .. } | ilsq::Error::NotSpd { .. } => CliError::Rank(msg),
            ilsq::Error::BoxTooLarge { .. } => CliError::BoxTooLarge(msg),
            ilsq::Error::DimensionMismatch { .. } => CliError::Parse(msg),
            _ => CliError::Internal(msg),
        }
    }
}
