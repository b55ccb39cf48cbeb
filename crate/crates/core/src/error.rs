use thiserror::Error;

/// Errors raised by the algebra, the function layer and the differentiation front-end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QsdError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The multivector has a component outside span{1, i, q, iq} for the requested direction.
    #[error("multivector is not in the bicomplex subalgebra of the direction (residual {residual:e} > tol {tol:e})")]
    NotInSubalgebra { residual: f64, tol: f64 },

    #[error("non-invertible element in {0}")]
    NonInvertible(&'static str),

    /// A NaN or infinity surfaced during evaluation, usually from a pole or branch point.
    #[error("evaluation failure: {0}")]
    EvaluationFailure(String),

    #[error("relative error is undefined for a zero reference")]
    UndefinedReference,
}

pub type Result<T, E = QsdError> = std::result::Result<T, E>;

impl QsdError {
    /// Short status label used in experiment output.
    pub fn status(&self) -> &'static str {
        match self {
            QsdError::NonInvertible(_) => "non-invertible",
            QsdError::EvaluationFailure(_) => "nan-inf",
            QsdError::NotInSubalgebra { .. } => "not-in-subalgebra",
            QsdError::UndefinedReference => "zero-reference",
            QsdError::InvalidArgument(_) => "invalid-argument",
        }
    }
}
