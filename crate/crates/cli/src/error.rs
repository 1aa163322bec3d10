use cnoidal::elliptic::EllipticError;
use cnoidal::hill::HillError;
use cnoidal::stability::StabilityError;
use cnoidal::waves::WaveError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Domain(String),
    #[error("residual check failed: {0}")]
    Residual(String),
    #[error("{0} Theta value(s) disagree in sign with the reference table")]
    ThetaSign(usize),
    #[error("spectrum: {0}")]
    Spectrum(String),
    #[error("stability: {0}")]
    Stability(String),
    #[error("b*: {0}")]
    Bstar(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 2,
            CliError::Residual(_) => 3,
            CliError::ThetaSign(_) => 4,
            CliError::Spectrum(_) => 5,
            CliError::Stability(_) => 6,
            CliError::Bstar(_) => 7,
            CliError::Io(_) => 1,
        }
    }
}

impl From<EllipticError> for CliError {
    fn from(e: EllipticError) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Domain errors keep exit code 2; a failed residual check maps to 3.
impl From<WaveError> for CliError {
    fn from(e: WaveError) -> Self {
        match e {
            WaveError::Residual { .. } => CliError::Residual(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<HillError> for CliError {
    fn from(e: HillError) -> Self {
        match e {
            HillError::Wave(w) => w.into(),
            e => CliError::Spectrum(e.to_string()),
        }
    }
}

impl From<StabilityError> for CliError {
    fn from(e: StabilityError) -> Self {
        match e {
            StabilityError::Wave(w) => w.into(),
            StabilityError::Guard { .. } | StabilityError::OmegaMargin { .. } => CliError::Domain(e.to_string()),
            e => CliError::Stability(e.to_string()),
        }
    }
}
