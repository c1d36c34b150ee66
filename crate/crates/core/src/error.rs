use thiserror::Error;

/// Why an element of the symbol algebra (or of the gl case) has no inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonInvertibleReason {
    /// The scalar function part is identically zero.
    ZeroScalar,
    /// The function part is a non-constant polynomial; it may be nonvanishing,
    /// but no inverse exists inside the polynomial coefficient ring.
    NonConstantFunction,
    /// The principal scalar symbol depends on the fiber variables.
    FiberDependent,
}

impl std::fmt::Display for NonInvertibleReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NonInvertibleReason::ZeroScalar => write!(f, "scalar part is zero"),
            NonInvertibleReason::NonConstantFunction => {
                write!(f, "scalar part is a non-constant polynomial")
            }
            NonInvertibleReason::FiberDependent => {
                write!(f, "scalar principal symbol is not constant along the fibers")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {what} ({left} vs {right})")]
    DimensionMismatch {
        what: &'static str,
        left: usize,
        right: usize,
    },

    #[error("symbol of degree {degree} requested below the order {order} of the operator")]
    BelowOrder { degree: i64, order: i64 },

    #[error("the zero operator has no principal symbol")]
    ZeroOperator,

    #[error("element is not homogeneous of degree {expected}")]
    NonHomogeneous { expected: i64 },

    #[error("not invertible: {0}")]
    NotInvertible(NonInvertibleReason),

    #[error("sl-part has nonzero trace")]
    NonzeroTrace,

    #[error("singular matrix: {0}")]
    Singular(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid value at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(what: &'static str, left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { what, left, right })
    }
}
