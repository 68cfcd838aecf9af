use thiserror::Error;

/// Failures of construction, composition and exact solving.
///
/// The `Display` form always starts with the variant name so that callers
/// (and the command line front end) can report it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ZeroPolynomial: all coefficients are zero, degree is undefined")]
    ZeroPolynomial,
    #[error("ZeroDilation: the dilation factor must be nonzero")]
    ZeroDilation,
    #[error("DuplicateShifts: shift {0} appears more than once")]
    DuplicateShifts(i64),
    #[error("DuplicateNodes: Vandermonde nodes must be pairwise distinct")]
    DuplicateNodes,
    #[error("ShiftCountMismatch: expected {expected} entries (degree + 1), got {actual}")]
    ShiftCountMismatch { expected: usize, actual: usize },
    #[error("DimensionMismatch: expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("SingularMatrix: no nonzero pivot in column {0}")]
    SingularMatrix(usize),
    #[error("NotTriangular: nonzero entry below the diagonal at ({0}, {1})")]
    NotTriangular(usize, usize),
}

impl Error {
    /// Variant name without payload, e.g. `"DuplicateShifts"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::ZeroDilation => "ZeroDilation",
            Error::DuplicateShifts(_) => "DuplicateShifts",
            Error::DuplicateNodes => "DuplicateNodes",
            Error::ShiftCountMismatch { .. } => "ShiftCountMismatch",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::SingularMatrix(_) => "SingularMatrix",
            Error::NotTriangular(..) => "NotTriangular",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
