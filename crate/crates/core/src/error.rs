use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different variable contexts")]
    ContextMismatch,
    #[error("operands are built over different quivers")]
    QuiverMismatch,
    #[error("dimension vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("exponential requires a series with zero constant term")]
    NonzeroConstantTerm,
    #[error("square root requires constant term 1")]
    ConstantTermNotOne,
    #[error("power series cannot carry negative exponents")]
    NegativeExponent,
    #[error("Todd factor of the zero linear form")]
    ZeroForm,
    #[error("permutation moves variable {from} of vertex {vertex} off its vertex")]
    CrossVertexPermutation { vertex: usize, from: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("input is not invariant under the Weyl group of its dimension vector")]
    NotInvariant,
    #[error("exact division left a nonzero remainder with {terms} terms")]
    NonzeroRemainder { terms: usize },
    #[error("twist factor: square-root and half-exponent routes disagree")]
    TwistMismatch,
    #[error("inputs known only through degree {available}, product needs degree {needed}")]
    InsufficientPrecision { available: i64, needed: i64 },
    #[error("arrow matrix is not symmetric at ({i},{j}): a[{i}][{j}] = {aij} but a[{j}][{i}] = {aji}")]
    NotSymmetric { i: usize, j: usize, aij: u32, aji: u32 },
    #[error("quiver file, line {line}: {message}")]
    QuiverSyntax { line: usize, message: String },
    #[error("syntax error at line {line}, column {column}: {message}")]
    ExprSyntax { line: usize, column: usize, message: String },
    #[error("variable {name}[{vertex},{slot}] is outside the alphabet of this context")]
    IndexOutOfRange { name: char, vertex: usize, slot: usize },
    #[error("negative exponent on cohomological variable x[{vertex},{slot}]")]
    NegativeXExponent { vertex: usize, slot: usize },
    #[error("expression mixes x and z variables")]
    MixedAlphabet,
}
