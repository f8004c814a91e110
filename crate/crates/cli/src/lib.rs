//! Library side of the `sgap` command-line tool: argument types, the
//! experiment config schema, run manifests and the three subcommands.

pub mod bounds;
pub mod config;
pub mod dict;
pub mod experiment;
pub mod manifest;
pub mod output;

/// Every invariant held.
pub const EXIT_OK: u8 = 0;
/// A soundness violation, an inconclusive verdict or a failed replay.
pub const EXIT_VIOLATION: u8 = 1;
/// Bad arguments or configuration, or a run that could not be carried out.
pub const EXIT_USAGE: u8 = 2;

/// Error reported to the user with exit status [`EXIT_USAGE`].
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<String> for UsageError {
    fn from(s: String) -> Self {
        Self(s)
    }
}

impl From<&str> for UsageError {
    fn from(s: &str) -> Self {
        Self(s.to_string())
    }
}

impl From<sparsity_gap::Error> for UsageError {
    fn from(e: sparsity_gap::Error) -> Self {
        Self(e.to_string())
    }
}

impl From<std::io::Error> for UsageError {
    fn from(e: std::io::Error) -> Self {
        Self(e.to_string())
    }
}

impl From<serde_json::Error> for UsageError {
    fn from(e: serde_json::Error) -> Self {
        Self(e.to_string())
    }
}

pub type CliResult<T> = Result<T, UsageError>;
