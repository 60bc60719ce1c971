use thiserror::Error;

/// Errors produced by the numerical kernels, conversions and procedures.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("QR iteration failed to deflate within {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("input contains NaN or infinite entries")]
    NonFinite,

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Choi matrix has eigenvalue {min_eig:e} below -{tol:e}; map is not completely positive")]
    NotCP { min_eig: f64, tol: f64 },

    #[error("operation requires a qubit map (n = 2), got n = {n}")]
    NotQubit { n: usize },

    #[error("parameter {name} = {value} outside of {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("Pauli transfer matrix violates the complete-positivity constraints: {0}")]
    InfeasiblePTM(String),

    #[error("Pauli transfer matrix is not of unital trace-preserving form")]
    NotUnitalForm,

    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("generator fails the GKSL certificate: {0}")]
    NotGKSL(String),

    #[error("input map is not of the requested class: {0}")]
    ClassMismatch(String),

    #[error("budget {eps:e} too tight relative to distance {distance:e}")]
    BudgetTooTight { eps: f64, distance: f64 },

    #[error("all {trials} schedule trials produced a non-simple spectrum")]
    ScheduleExhausted { trials: usize },

    #[error("all {points} scan points produced a non-simple spectrum")]
    ScanExhausted { points: usize },

    #[error("generator is zero")]
    ZeroGenerator,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable identifier, used by the command-line front end.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonConvergence { .. } => "NonConvergence",
            Error::NonFinite => "NonFinite",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotCP { .. } => "NotCP",
            Error::NotQubit { .. } => "NotQubit",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::InfeasiblePTM(_) => "InfeasiblePTM",
            Error::NotUnitalForm => "NotUnitalForm",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NotGKSL(_) => "NotGKSL",
            Error::ClassMismatch(_) => "ClassMismatch",
            Error::BudgetTooTight { .. } => "BudgetTooTight",
            Error::ScheduleExhausted { .. } => "ScheduleExhausted",
            Error::ScanExhausted { .. } => "ScanExhausted",
            Error::ZeroGenerator => "ZeroGenerator",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
