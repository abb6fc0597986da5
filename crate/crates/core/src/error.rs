use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension n = {n} is below the minimum {min}")]
    Dimension { n: usize, min: usize },

    #[error("gaussian-symmetrized construction requires standard normal entries, got {0}")]
    ConstructionLaw(String),

    #[error("degenerate truncation: sigma_1 = {sigma:e} is not above 1e-6")]
    DegenerateTruncation { sigma: f64 },

    #[error("unit vector law {law} produced an all-zero draw {attempts} times in a row")]
    ZeroVector { law: String, attempts: usize },

    #[error("eigensolver did not converge (master seed {seed}, replicate {replicate})")]
    EigenSolver { seed: u64, replicate: u64 },

    #[error("linear solve failed: {0}")]
    Solve(String),

    #[error("spectral parameter must satisfy Im z > 0, got Im z = {0}")]
    NotUpperHalfPlane(f64),

    #[error("invalid weights: {0}")]
    Weights(String),

    #[error("rate fit: {0}")]
    Fit(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors caused by user input rather than by a computation going wrong.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config(_)
                | Error::InvalidParameter(_)
                | Error::Dimension { .. }
                | Error::ConstructionLaw(_)
        )
    }
}
