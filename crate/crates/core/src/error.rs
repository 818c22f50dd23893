//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// Leading series coefficient is zero; the triangular Toeplitz system has
    /// no solution.
    #[error("singular series: leading coefficient a0 = 0")]
    SingularSeries,

    #[error("shape error: {0}")]
    Shape(String),

    /// The pencil's M0 matrix is numerically singular.
    #[error("degenerate pencil: condition estimate {cond:.3e}")]
    DegeneratePencil { cond: f64 },

    /// Vandermonde nodes coalesce.
    #[error("degenerate nodes: minimum pairwise distance {min_dist:.3e}")]
    DegenerateNodes { min_dist: f64 },

    #[error("statistic unavailable: {0}")]
    UnavailableStatistic(String),

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("degenerate sample: {0}")]
    Degeneracy(String),

    #[error("sample size {got} below minimum {need}")]
    SampleSize { got: usize, need: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Probability-zero numerical degeneracies; simulations discard the
    /// replicate and re-draw on these.
    pub fn is_degenerate(&self) -> bool {
        matches!(
            self,
            Error::SingularSeries
                | Error::DegeneratePencil { .. }
                | Error::DegenerateNodes { .. }
                | Error::Degeneracy(_)
                | Error::NonConvergence(_)
        )
    }
}
