use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A column of the design matrix is numerically dependent on the ones before it.
    /// The index is 1-based, matching the basis numbering.
    #[error("rank deficiency at column {column}: |R_jj| = {diagonal:e} relative to column norm {norm:e}")]
    RankDeficient {
        column: usize,
        diagonal: f64,
        norm: f64,
    },

    #[error("singular triangular system: zero diagonal at row {row}")]
    Singular { row: usize },

    #[error("iteration limit reached after {sweeps} sweeps")]
    IterationLimit { sweeps: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Statistic cannot be formed from the sample (zero variance, zero spectral power).
    #[error("degenerate sample: {0}")]
    Degenerate(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
