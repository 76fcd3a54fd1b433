use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("trace is {0:.12} instead of 1")]
    NotUnitTrace(f64),
    #[error("matrix is not positive semidefinite (most negative eigenvalue {0:.3e})")]
    NotPositive(f64),
    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("channel has no Kraus operators")]
    EmptyChannel,
    #[error("parameter {name} = {value} outside of [0, 1]")]
    ParamOutOfRange { name: &'static str, value: f64 },
    #[error("local map annihilated the state (output trace {0:.3e})")]
    Annihilated(f64),
    #[error("optimizer budget exceeded: last refinement changed the objective by {0:.3e}")]
    OptimizerBudgetExceeded(f64),
    #[error("invalid settings: {0}")]
    InvalidSettings(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Errors caused by a state that fails validation rather than by the
    /// input being unreadable.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NotHermitian(_) | Error::NotUnitTrace(_) | Error::NotPositive(_)
        )
    }
}
