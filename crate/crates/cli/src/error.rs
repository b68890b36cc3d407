use cohsys::moduli::ModuliError;
use cohsys::poincare::PoincareError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Critical(String),
    #[error("{0}")]
    Parity(String),
    #[error("{0}")]
    Unwritable(String),
    /// A computation produced something it should never produce.
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Critical(_) => 3,
            CliError::Parity(_) => 4,
            CliError::Unwritable(_) => 5,
        }
    }
}

impl From<ModuliError> for CliError {
    fn from(e: ModuliError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<PoincareError> for CliError {
    fn from(e: PoincareError) -> Self {
        match e {
            PoincareError::CriticalAlpha(_) => CliError::Critical(e.to_string()),
            PoincareError::ParityError(_) => CliError::Parity(e.to_string()),
            PoincareError::InvalidParams(_)
            | PoincareError::OutOfRange(_)
            | PoincareError::Moduli(_) => CliError::Invalid(e.to_string()),
            PoincareError::NegativeCoefficient { .. } | PoincareError::Exact(_) => {
                CliError::Internal(e.to_string())
            }
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}
