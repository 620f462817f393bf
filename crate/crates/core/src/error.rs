use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("invalid rational number `{0}`")]
    Number(String),
    #[error("invalid unit factor `{0}`")]
    Units(String),
    #[error("invalid operator `{0}`")]
    Operator(String),
    #[error("invalid term `{0}`")]
    Term(String),
    #[error("golden table: {0}")]
    Golden(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FoldyError {
    #[error("order {got} is below the minimum {min}")]
    OrderTooLow { got: usize, min: usize },
    #[error("mass must be positive")]
    MasslessUndefined,
    #[error("parameter out of range: {0}")]
    InvalidParams(String),
    #[error("matrix is not Hermitian (residual {0:.3e})")]
    NotHermitian(f64),
    #[error("massless case needs an invertible M (smallest |eigenvalue| {0:.3e})")]
    SingularMassless(f64),
    #[error("Omega = c s.p + i mu' s.E is singular (|det| = {det:.3e}, scale {scale:.3e})")]
    SingularOmega { det: f64, scale: f64 },
    #[error("1 + A is not positive definite")]
    NotPositiveDefinite,
    #[error("classical spin must have length hbar/2 (got {0})")]
    SpinLength(f64),
}
