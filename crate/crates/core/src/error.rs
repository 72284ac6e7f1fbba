use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field order {p}^{degree} is too large (q^2 - 1 must fit in 64 bits)")]
    OrderOverflow { p: u64, degree: u32 },
    #[error("value {value} is not an element of GF({order})")]
    NotAnElement { value: u64, order: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("discrete logarithm of zero")]
    LogOfZero,
    #[error("{0} is not a primitive element")]
    NotPrimitive(u64),
    #[error("GF({sub}) is not a subfield of GF({field})")]
    NotASubfield { sub: u64, field: u64 },
    #[error("GF({0}) is not a quadratic extension (odd extension degree)")]
    NotQuadraticExtension(u64),
    #[error("alpha = {0} lies in the base field")]
    AlphaInBaseField(u64),
    #[error("leading coefficient {a} is not invertible mod {p}")]
    ANotInvertible { a: i64, p: u64 },
    #[error("q = {0} is too small (q > 2 required)")]
    QTooSmall(u64),
    #[error("modulus must be at least 1")]
    InvalidModulus,
    #[error("set modulus {actual} does not equal m*b = {m}*{b}")]
    ModulusMismatch { actual: u64, m: u64, b: u64 },
    #[error("residues mod {b} do not cover [1, {n}] exactly once")]
    CoverageFailure { b: u64, n: usize },
    #[error("set is not a Sidon set: {a}+{b} = {c}+{d} (mod {modulus})")]
    NotSidon {
        a: u64,
        b: u64,
        c: u64,
        d: u64,
        modulus: u64,
    },
    #[error("element {value} out of range for Z_{modulus}")]
    ElementOutOfRange { value: u64, modulus: u64 },
    #[error("duplicate element {0}")]
    DuplicateElement(u64),
    #[error("sequence value {value} outside codomain of a {m}-row sequence")]
    ValueOutOfRange { value: u64, m: u64 },
    #[error("length field n = {declared} does not match {actual} values")]
    LengthMismatch { declared: usize, actual: usize },
    #[error("empty sequence")]
    EmptySequence,
    #[error("parameter bound {0} is too small (at least 3 required)")]
    InvalidBound(u64),
    #[error("search budget must be positive")]
    EmptyBudget,
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("{construction} produced a sequence failing verification: {detail}")]
    VerificationFailed {
        construction: String,
        detail: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
