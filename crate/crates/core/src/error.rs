use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error: {msg}")]
pub struct ParseError {
    pub msg: String,
}

impl ParseError {
    pub fn new(msg: impl Into<String>) -> Self {
        ParseError { msg: msg.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix has rank {found}, expected full rank {expected}")]
    RankDeficient { expected: usize, found: usize },
    #[error("intermediate degree {degree} exceeds the cap of {cap}")]
    DegreeCap { cap: usize, degree: usize },
    #[error("Gram matrix is singular over the rational-function field")]
    SingularGram,
    #[error("matrix entries must be polynomials")]
    NotPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilizerError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("generator {index} has length {found}, expected n(m+1) = {expected}")]
    WrongLength { index: usize, expected: usize, found: usize },
    #[error("invalid Pauli symbol {symbol:?} in generator {index}")]
    InvalidSymbol { index: usize, symbol: char },
    #[error("expected n-k = {expected} generators, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("invalid code parameters: {0}")]
    Parameters(String),
    #[error("generators are not independent (rank {rank} of {count})")]
    Dependent { rank: usize, count: usize },
    #[error("no GF(4) equivalent: the generator row space is not closed under scaling by ω; use the binary path")]
    NotF4Linear,
    #[error("frame length {found} is not a whole number of {unit}-symbol blocks")]
    FrameLength { found: usize, unit: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("stream length {found} is not a multiple of the input arity {arity}")]
    StreamLength { found: usize, arity: usize },
    #[error("entry has no causal realization: {0}")]
    NonCausal(String),
    #[error("derived system failed verification: {0}")]
    Verification(String),
    #[error("generator is catastrophic: gcd of maximal minors is {0}")]
    Catastrophic(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("trellis would need {states} states, above the cap of {cap}")]
    StateCap { states: u128, cap: usize },
    #[error("received frame length {found} is not a whole number of {section}-symbol sections")]
    FrameLength { found: usize, section: usize },
    #[error("syndrome length {found} does not match the expected {expected}")]
    SyndromeLength { found: usize, expected: usize },
    #[error("no trellis path satisfies the decoding constraints")]
    NoPath,
    #[error("unsupported metric: {0}")]
    Metric(String),
    #[error("coset-leader search space exceeds the cap: {0}")]
    SearchCap(String),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
}

impl From<AlgebraError> for DecodeError {
    fn from(e: AlgebraError) -> Self {
        DecodeError::System(SystemError::Algebra(e))
    }
}

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
