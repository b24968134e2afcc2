use thiserror::Error;

use crate::ring::IndexSet;

/// Malformed operation tables.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table `{table}` is empty")]
    Empty { table: &'static str },
    #[error("table `{table}` has {rows} rows, expected {expected_rows}")]
    Shape { table: &'static str, expected_rows: usize, rows: usize },
    #[error("table `{table}` row {row} has {found} entries, expected {expected}")]
    RowLength { table: &'static str, row: usize, expected: usize, found: usize },
    #[error("table `{table}` entry ({row},{col}) = {value} is outside 0..{bound}")]
    OutOfRange { table: &'static str, row: usize, col: usize, value: usize, bound: usize },
    #[error("`{what}` = {value} is outside 0..{bound}")]
    ElementOutOfRange { what: &'static str, value: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("expected an {expected:?} element, got {found:?}")]
    Parity { expected: Parity, found: Parity },
    #[error("element ({even},{odd}) does not belong to a triring with parts of size {even_size} and {odd_size}")]
    ForeignElement { even: usize, odd: usize, even_size: usize, odd_size: usize },
    #[error("index sets do not fit a triring with parts of size {even_size} and {odd_size}")]
    ForeignIdeal { even_size: usize, odd_size: usize },
    #[error("not a triideal: {reason}")]
    NotTriideal { reason: String },
    #[error("operation requires finite backend")]
    RequiresFiniteBackend,
    #[error("map sizes do not match the carriers: {0}")]
    CarrierMismatch(String),
    #[error("homomorphism is not surjective: {0}")]
    NotSurjective(String),
    #[error("triideal does not contain the kernel")]
    KernelNotContained,
    #[error("{0} is not a prime ideal of the local product ring")]
    NotSharpPrime(IndexSet),
    #[error("the odd part is zero")]
    ZeroOddPart,
    #[error("ideal maximum assertion failed: {0}")]
    NoMaximum(String),
    #[error("not a multiplicative subset: clause `{clause}` fails at {witness:?}")]
    NotMultiplicative { clause: String, witness: Vec<usize> },
    #[error("localization at a triideal requires P1 != R1")]
    EvenPrimeLocalization,
    #[error("D(f0) for f0 = {f0} meets no odd prime")]
    EmptyOddIntersection { f0: usize },
    #[error("odd element {f1} is trinilpotent")]
    Trinilpotent { f1: usize },
    #[error("fraction arithmetic `{operation}` is not well defined at {witness:?}")]
    IllDefined { operation: String, witness: Vec<usize> },
    #[error("{part} element {element} of the multiplicative subset is not sent to an invertible element")]
    NotInverted { part: &'static str, element: usize },
    #[error("basic open of {g} is not contained in basic open of {f}")]
    ContainmentViolation { f: String, g: String },
    #[error("family does not cover the target; point {point} is uncovered")]
    NotACover { point: usize },
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("invalid builtin parameters: {0}")]
    InvalidBuiltin(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("axiom `{id}` fails at {witness:?}")]
    AxiomFailure { id: String, witness: Option<Vec<usize>> },
    #[error("triring fails validation: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
