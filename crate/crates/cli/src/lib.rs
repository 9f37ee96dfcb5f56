//! Front end for the `landau-cs` toolkit: subcommand implementations, figure datasets and the
//! verification suite.

pub mod commands;
pub mod config;
pub mod figures;
pub mod table;
pub mod verify;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Compute(#[from] landau_cs::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{failed} verification criteria failed")]
    Verification { failed: usize },
}

impl CliError {
    /// Message without the category prefix.
    pub fn detail(&self) -> String {
        match self {
            CliError::Config(s) => s.clone(),
            other => other.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification { .. } => 1,
            CliError::Config(_) => 2,
            CliError::Compute(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}
