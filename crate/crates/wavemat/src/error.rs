use thiserror::Error;

/// Errors raised by the wavelet matrix algebra.
#[derive(Debug, Error)]
pub enum Error {
    #[error("constant term is zero; formal series reciprocal undefined")]
    ZeroConstantTerm,
    #[error("evaluation at z = 0 with negative-exponent support")]
    EvalAtZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("shifted orthogonality fails: max residual {residual:.3e}")]
    NotParaunitary { residual: f64 },
    #[error("determinant is not a monomial (paraunitarity or tolerance failure)")]
    DetNotMonomial,
    #[error("matrix is not in WM1: {0}")]
    NotInWM1(String),
    #[error("matrix is not in PU1: {0}")]
    NotInPU1(String),
    #[error("V(1) is singular; tolerance corruption in forward construction")]
    SingularV1,
    #[error("no last-row polynomial has a nonzero constant term; input not in PU1")]
    NoNonzeroConstant,
    #[error("rank(A_0) < m-1; input is outside the nonsingular class")]
    RankDefect,
    #[error("quotient failed to drop the order by exactly 1 (tolerance corruption)")]
    OrderMismatch,
    #[error("consecutive projection directions {0} and {1} are orthogonal")]
    ConsecutiveOrthogonal(usize, usize),
    #[error("Gram matrix is not positive definite (tolerance corruption)")]
    NotPositiveDefinite,
    #[error("row is not paraunitary: sum of |a_1j(z)|^2 differs from 1")]
    NotUnitRow,
    #[error("no coordinate carries a nonzero z^N coefficient; declared order is slack")]
    OrderSlack,
    #[error("row value at z = 1 does not match the first row of the unitary matrix")]
    ValueMismatch,
    #[error("singular matrix in linear solve")]
    SingularMatrix,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
