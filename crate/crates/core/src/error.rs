use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    ZeroDivisor,
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown symbol `{name}` at line {line}, column {column}")]
    UnknownSymbol {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("presentation has not been validated")]
    NotValidated,
    #[error("operation is undefined on the zero element")]
    ZeroArgument,
    #[error("element is not in the augmentation ideal (counit is {0})")]
    NotInAugmentationIdeal(String),
    #[error("coalgebra is not cocomplete within degree {bound}")]
    NotCocomplete { bound: usize },
    #[error("coefficient is not a polynomial: {0}")]
    NonPolynomial(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
