use crate::sturm_liouville::RegularityReport;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An off-diagonal coefficient is exactly zero, so the matrix splits into
    /// independent blocks and none of the closed-form machinery applies.
    #[error("off-diagonal coefficient at index {0} is zero")]
    ZeroOffDiagonal(usize),

    /// A sequence does not have the length the problem size requires.
    #[error("expected {expected} values for {what}, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    /// An input value is NaN or infinite.
    #[error("non-finite input in {0}")]
    NonFiniteInput(&'static str),

    /// An index lies outside the valid range for the object it addresses.
    #[error("index {index} out of range for {what} (limit {limit})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    /// Two objects that must share a size do not.
    #[error("size mismatch: {0}")]
    SizeMismatch(&'static str),

    /// A combinatorial parameter is outside its admissible range.
    #[error("invalid arity: weight {m} exceeds limit for order {p}")]
    InvalidArity { p: usize, m: usize },

    /// The boundary value problem is singular: no resolvent exists.
    #[error("singular boundary value problem")]
    SingularProblem,

    /// The matrix is singular (or numerically indistinguishable from
    /// singular at the requested tolerance); carries the regularity report.
    #[error("singular matrix: {0:?}")]
    SingularMatrix(RegularityReport),

    /// A result left the representable range of binary64.
    #[error("overflow converting a scaled value to a plain float")]
    Overflow,

    /// The dense elimination hit a pivot below its hard floor.
    #[error("dense elimination found no usable pivot at column {0}")]
    NumericallySingular(usize),

    /// A matrix fails the rank-structure factorization test at the given
    /// (row, column) position.
    #[error("matrix is not inverse-tridiagonal structured at ({0}, {1})")]
    NotGreenStructured(usize, usize),

    /// The factorization reproduced the entries but not the determinant.
    #[error("factorized determinant {product:e} disagrees with dense determinant {dense:e}")]
    GreenDetMismatch { product: f64, dense: f64 },
}
