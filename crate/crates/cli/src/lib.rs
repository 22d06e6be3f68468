//! Driver layer: problem files and presets, and the commands behind the
//! `tpr` binary.

pub mod commands;
pub mod presets;
pub mod problem;

pub use problem::{Construction, Problem, DESK_CELLS};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("problem definition: {0}")]
    Problem(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("exact solution: {0}")]
    Exact(#[from] tpr_core::exact::ExactError),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("numerics: {0}")]
    Numerics(tpr_fv::FvError),
    #[error("configuration: {0}")]
    Config(String),
}

impl CliError {
    /// Process exit code: 2 for anything that fails validation, 3 for
    /// numerical failures, 1 for the rest.
    #[must_use]
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Exact(_) | CliError::Validation(_) => 2,
            CliError::Numerics(_) => 3,
            CliError::Problem(_) | CliError::Io(_) | CliError::Config(_) => 1,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Bad grids and solver settings are configuration errors; only failures
/// during a run count as numerical.
impl From<tpr_fv::FvError> for CliError {
    fn from(e: tpr_fv::FvError) -> Self {
        match e {
            tpr_fv::FvError::Grid(_) | tpr_fv::FvError::Config(_) => CliError::Config(e.to_string()),
            e => CliError::Numerics(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tpr_fv::FvError;

    #[test]
    fn exit_codes_by_kind() {
        assert_eq!(CliError::from(FvError::Config("cfl".into())).exit_code(), 1);
        assert_eq!(CliError::from(FvError::Grid("cells".into())).exit_code(), 1);
        assert_eq!(CliError::from(FvError::TimeStep { time: 0.0, speed: 0.0 }).exit_code(), 3);
        assert_eq!(CliError::from(FvError::Cfl { time: 0.0, courant: 1.2 }).exit_code(), 3);
        assert_eq!(CliError::Validation("shock".into()).exit_code(), 2);
        assert_eq!(CliError::Problem("key".into()).exit_code(), 1);
    }
}
