use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("Cartan matrix is not of finite type: principal minor on indices {indices:?} equals {value}")]
    NotFiniteType { indices: Vec<usize>, value: String },

    #[error("unknown root system preset {0:?}")]
    UnknownPreset(String),

    #[error("weight {0} is not dominant integral")]
    NotDominant(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("Jacobi identity fails on roots {0:?}")]
    JacobiFailure([usize; 3]),

    #[error("action matrices incompatible with bracket on roots ({0}, {1})")]
    BracketIncompatible(usize, usize),

    #[error("differential does not square to zero at degree {0}")]
    NotAComplex(i64),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
