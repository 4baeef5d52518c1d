use std::fmt;

/// Failure of one command, classified by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flag combination or configuration (exit 2).
    Usage(String),
    /// Unreadable, malformed or out-of-range input data, or an output file
    /// that cannot be written (exit 3).
    Input(String),
    /// Numerical failure, including a replay that does not reproduce (exit 4).
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<unidesign::Error> for CliError {
    fn from(e: unidesign::Error) -> Self {
        use unidesign::Error as E;
        match e {
            E::InvalidConfig(_) | E::NotDivisible { .. } => CliError::Usage(e.to_string()),
            E::Numerical(_) => CliError::Numerical(e.to_string()),
            E::Domain { .. } | E::Shape(_) | E::IndexOutOfRange { .. } | E::DuplicateRows { .. } | E::Underdetermined { .. } => {
                CliError::Input(e.to_string())
            }
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
