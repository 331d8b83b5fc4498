//! Error types shared by every module of the crate.

use std::fmt;

/// Domain errors raised by field, matrix and matroid operations.
///
/// Every variant has a stable machine-readable code (see [`Error::code`])
/// used by the CLI's `ERROR <code>: <message>` output contract.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two operands belong to different fields.
    FieldMismatch,
    /// Division or inversion by the zero element.
    DivisionByZero,
    /// The zero element has no multiplicative order.
    ZeroElement,
    /// A finite-field-only operation was invoked on the rationals.
    InfiniteField,
    /// No element of the requested order exists in the multiplicative group.
    NoSuchElement,
    /// The claimed characteristic is not a prime number.
    NotPrime(u64),
    /// A field modulus is not monic, has the wrong degree, or is reducible.
    InvalidModulus(String),
    /// A polynomial exceeds the degree bound of its context.
    DegreeTooLarge { degree: usize, bound: usize },
    /// Substitution `X -> aX` requires a nonzero scale.
    ZeroScale,
    /// The classical Wronskian criterion needs characteristic 0 or > n.
    CharacteristicTooSmall { characteristic: u64, needed: u64 },
    /// The field has too few elements for the required evaluation points.
    FieldTooSmall { available: u64, needed: u64 },
    /// The supplied element's multiplicative order is below the bound
    /// required by the folded independence criterion.
    OrderTooSmall { order: u64, needed: u64 },
    /// A truncation parameter k exceeds the available rank or row count.
    KExceedsN { k: usize, n: usize },
    /// A row or column index is outside the matrix.
    IndexOutOfRange { index: usize, len: usize },
    /// A determinant was requested of a non-square matrix.
    NotSquare { rows: usize, cols: usize },
    /// Matrix or family dimensions are inconsistent.
    DimensionMismatch(String),
    /// A ground-set element does not belong to the matroid.
    UnknownElement { index: usize, ground: usize },
    /// An input set of a representative-family computation is dependent.
    DependentInputSet { set_index: usize },
    /// p + q exceeds the rank of the representing matrix.
    PQExceedsRank { p: usize, q: usize, rank: usize },
    /// The candidate subfamily is not contained in the family.
    NotSubfamily { set_index: usize },
    /// The requested operation needs a plain field representation.
    UnsupportedRepresentation(String),
    /// Seeded random generation failed to produce a full-rank matrix.
    GenerationFailed(String),
}

impl Error {
    /// Stable machine-readable code for this error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::FieldMismatch => "FieldMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::ZeroElement => "ZeroElement",
            Error::InfiniteField => "InfiniteField",
            Error::NoSuchElement => "NoSuchElement",
            Error::NotPrime(_) => "NotPrime",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::DegreeTooLarge { .. } => "DegreeTooLarge",
            Error::ZeroScale => "ZeroScale",
            Error::CharacteristicTooSmall { .. } => "CharacteristicTooSmall",
            Error::FieldTooSmall { .. } => "FieldTooSmall",
            Error::OrderTooSmall { .. } => "OrderTooSmall",
            Error::KExceedsN { .. } => "KExceedsN",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotSquare { .. } => "NotSquare",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::UnknownElement { .. } => "UnknownElement",
            Error::DependentInputSet { .. } => "DependentInputSet",
            Error::PQExceedsRank { .. } => "PQExceedsRank",
            Error::NotSubfamily { .. } => "NotSubfamily",
            Error::UnsupportedRepresentation(_) => "UnsupportedRepresentation",
            Error::GenerationFailed(_) => "GenerationFailed",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FieldMismatch => write!(f, "operands belong to different fields"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ZeroElement => write!(f, "the zero element has no order"),
            Error::InfiniteField => write!(f, "operation requires a finite field"),
            Error::NoSuchElement => write!(f, "no element of the requested order exists"),
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::InvalidModulus(msg) => write!(f, "invalid modulus: {msg}"),
            Error::DegreeTooLarge { degree, bound } => {
                write!(f, "polynomial degree {degree} exceeds bound {bound}")
            }
            Error::ZeroScale => write!(f, "substitution scale must be nonzero"),
            Error::CharacteristicTooSmall {
                characteristic,
                needed,
            } => write!(
                f,
                "characteristic {characteristic} must be 0 or greater than {needed}"
            ),
            Error::FieldTooSmall { available, needed } => write!(
                f,
                "field provides {available} evaluation points but {needed} are required"
            ),
            Error::OrderTooSmall { order, needed } => {
                write!(f, "element order {order} is below the required {needed}")
            }
            Error::KExceedsN { k, n } => write!(f, "truncation parameter {k} exceeds {n}"),
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for length {len}")
            }
            Error::NotSquare { rows, cols } => {
                write!(f, "matrix is {rows}x{cols}, expected square")
            }
            Error::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::UnknownElement { index, ground } => {
                write!(f, "element {index} not in ground set of size {ground}")
            }
            Error::DependentInputSet { set_index } => {
                write!(f, "input set {set_index} is dependent in the matroid")
            }
            Error::PQExceedsRank { p, q, rank } => {
                write!(f, "p + q = {} exceeds matroid rank {rank}", p + q)
            }
            Error::NotSubfamily { set_index } => {
                write!(f, "candidate set {set_index} does not appear in the family")
            }
            Error::UnsupportedRepresentation(msg) => {
                write!(f, "unsupported representation: {msg}")
            }
            Error::GenerationFailed(msg) => write!(f, "generation failed: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
