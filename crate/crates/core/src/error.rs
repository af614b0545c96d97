use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntegrationError {
    #[error("invalid integrator options: {0}")]
    InvalidOptions(String),
    #[error("state has dimension {state} but the Hamiltonian has dimension {hamiltonian}")]
    DimensionMismatch { state: usize, hamiltonian: usize },
    #[error(
        "step-halving did not converge after {refinements} refinements \
         (achieved {achieved:.3e}, required {required:.3e})"
    )]
    NotConverged { refinements: u32, achieved: f64, required: f64 },
    #[error("state became non-finite at t = {t:e} s")]
    NonFinite { t: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("dark state undefined: all of G1*Omega2, Omega1*Omega2, G2*Omega1 vanish")]
    UndefinedDarkState,
    #[error("concurrence undefined: two-qubit weight {weight:e} below {threshold:e}")]
    UndefinedConcurrence { weight: f64, threshold: f64 },
    #[error("symmetric eigen-solve did not converge at t = {t:e} s")]
    EigenNonConvergence { t: f64 },
    #[error("state lives in the {found} basis, expected {expected}")]
    WrongBasis { expected: &'static str, found: &'static str },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("missing required key `{0}`")]
    MissingKey(String),
    #[error("invalid value for `{key}`: {constraint}")]
    Invalid { key: String, constraint: String },
}

impl ConfigError {
    pub(crate) fn invalid(key: impl Into<String>, constraint: impl Into<String>) -> Self {
        ConfigError::Invalid { key: key.into(), constraint: constraint.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("invalid sweep input: {0}")]
    InvalidInput(String),
    #[error("no viable operating point: every grid cell is invalid")]
    NoViablePoint,
}

/// Top-level error used by the scenario driver.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Integration(#[from] IntegrationError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status for this failure class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Integration(_) => 3,
            Error::Sweep(SweepError::NoViablePoint) => 4,
            Error::Sweep(SweepError::InvalidInput(_)) => 2,
            Error::Analysis(_) => 6,
            Error::Io(_) => 1,
        }
    }
}
