use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("{k} is not a unit modulo {modulus}")]
    NotAUnit { k: i64, modulus: u64 },
    #[error("invalid fraction {0:?}")]
    BadFraction(String),
    #[error("empty multiset")]
    EmptyMultiset,
    #[error("degenerate pair: {0}")]
    DegeneratePair(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has infinite order")]
    InfiniteOrder,
    #[error("characteristic polynomial is not a product of cyclotomic polynomials")]
    NotCyclotomic,
    #[error("group too large or infinite: more than {cap} elements")]
    CapExceeded { cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("basis is not orthonormal (defect {0:.3e})")]
    NotOrthonormal(f64),
    #[error("matrix is not unitary (defect {0:.3e})")]
    NotUnitary(f64),
    #[error("character average {0} is not an integer")]
    InconsistentAverage(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
