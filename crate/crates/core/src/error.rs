use alloc::string::String;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    Parse(String),
    InvalidField(String),
    DivisionByZero,
    /// Inversion hit a non-unit; carries the gcd with the modulus.
    ZeroDivisor { factor: String },
    InvalidComposition(String),
    InvalidPermutation(String),
    InvalidRepresentation(String),
    DimensionMismatch(String),
    FieldMismatch,
    NotInSubspace(String),
    /// The named relation fails; `row`, `col` locate the first nonzero entry of the defect.
    NotHeckeSymmetry { relation: &'static str, row: usize, col: usize },
    ParameterZero(String),
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(m) => write!(f, "parse error: {m}"),
            Error::InvalidField(m) => write!(f, "invalid field: {m}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ZeroDivisor { factor } => {
                write!(f, "zero divisor: shares the factor {factor} with the modulus")
            }
            Error::InvalidComposition(m) => write!(f, "invalid composition: {m}"),
            Error::InvalidPermutation(m) => write!(f, "invalid permutation: {m}"),
            Error::InvalidRepresentation(m) => write!(f, "invalid representation: {m}"),
            Error::DimensionMismatch(m) => write!(f, "dimension mismatch: {m}"),
            Error::FieldMismatch => write!(f, "operands live over different fields"),
            Error::NotInSubspace(m) => write!(f, "vector not in subspace: {m}"),
            Error::NotHeckeSymmetry { relation, row, col } => {
                write!(f, "not a Hecke symmetry: {relation} relation fails at ({row}, {col})")
            }
            Error::ParameterZero(m) => write!(f, "q = 0 not allowed: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
