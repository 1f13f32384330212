//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A constructor argument violates its domain (non-positive constant,
    /// basis too small, missing coefficient, ...).
    #[error("parameter domain: {0}")]
    ParameterDomain(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// An operator required to be hermitian is not, within tolerance.
    #[error("operator is not hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    /// Spectral superoperator functions require an exactly diagonal
    /// Hamiltonian with real eigenvalues.
    #[error("matrix is not real-diagonal: {0}")]
    NotDiagonal(String),

    /// Vectorized length is not a perfect square.
    #[error("length {0} is not a perfect square")]
    NotSquareLength(usize),

    /// Input has (numerically) zero trace where a normalizable state is
    /// required.
    #[error("state has zero trace")]
    ZeroTrace,

    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },

    /// An eigen/SVD/LU routine failed; carries the generator id when the
    /// failure happened while analysing a built generator.
    #[error("numerical breakdown in {context}: {source}")]
    NumericalBreakdown {
        context: String,
        #[source]
        source: ndarray_linalg::error::LinalgError,
    },
}

impl Error {
    pub(crate) fn breakdown(context: impl Into<String>) -> impl FnOnce(ndarray_linalg::error::LinalgError) -> Error {
        let context = context.into();
        move |source| Error::NumericalBreakdown { context, source }
    }
}
