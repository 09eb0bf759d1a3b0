use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate probe: quantum Fisher information {fq:e} carries no phase information")]
    DegenerateProbe { fq: f64 },

    #[error("invalid vector: {0}")]
    InvalidVector(String),

    #[error("two-outcome Fisher information is 0/0 at F_Q = 1 and |theta - g| = pi/2")]
    SingularFisher,

    #[error("invalid covariant direction: {0}")]
    InvalidDirection(String),

    #[error("adaptive quadrature did not reach tolerance {tol:e} (estimated error {err:e})")]
    QuadratureFailure { tol: f64, err: f64 },

    #[error("empty maximization domain (half-width {half_width})")]
    EmptyDomain { half_width: f64 },

    #[error("probe budget {n} is smaller than the covariant stage size {n1}")]
    InsufficientBudget { n: usize, n1: usize },

    #[error("entangled benchmark requires a pure probe, got |a| = {norm}")]
    MixedProbe { norm: f64 },

    #[error("first moment {mu:e} underflows")]
    DegenerateMoment { mu: f64 },

    #[error("empty sample")]
    EmptySample,

    #[error("Holevo variance undefined: mu = {mu:e}")]
    UndefinedVariance { mu: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("repetition {rep} at N = {n} (master seed {seed}) failed: {source}")]
    Repetition {
        n: usize,
        rep: usize,
        seed: u64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::InvalidConfig(msg.into())
    }

    /// True for errors caused by bad user input rather than a failed run.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::InvalidConfig(_)
                | Error::InvalidVector(_)
                | Error::DegenerateProbe { .. }
                | Error::InvalidDirection(_)
                | Error::MixedProbe { .. }
                | Error::EmptyDomain { .. }
                | Error::InsufficientBudget { .. }
        )
    }

    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}
