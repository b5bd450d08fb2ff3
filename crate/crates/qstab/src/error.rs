use std::fmt;

/// Top-level failure classes, one per nonzero exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or invalid config, inputs violating a module
    /// invariant. Exit code 2.
    Config(String),
    /// A computation or output write failed after the configuration was
    /// accepted. Exit code 3.
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn runtime(msg: impl Into<String>) -> Self {
        CliError::Runtime(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Runtime(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Wrap a module error raised while checking user-supplied values.
pub fn as_config<E: fmt::Display>(e: E) -> CliError {
    CliError::Config(e.to_string())
}

/// Wrap a module error raised during computation on valid inputs.
pub fn as_runtime<E: fmt::Display>(e: E) -> CliError {
    CliError::Runtime(e.to_string())
}
