use num_bigint::BigInt;
use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // arithmetic
    #[error("denominator has a prime factor outside S")]
    DenominatorNotSOnly,
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("operands are defined over different prime sets")]
    PrimeSetMismatch,
    #[error("moduli {0} and {1} are not coprime")]
    ModuliNotCoprime(BigInt, BigInt),
    #[error("modulus {0} is below 1")]
    InvalidModulus(BigInt),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("primes must be listed in strictly ascending order")]
    PrimesNotAscending,
    #[error("parse error: {0}")]
    Parse(String),

    // graphs
    #[error("invalid order {0} for this generator")]
    InvalidOrder(usize),
    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),
    #[error("vertex map is not a bijection onto the target")]
    InvalidVertexMap,

    // unit graphs
    #[error("point set contains duplicates")]
    DuplicatePoints,
    #[error("point set is empty")]
    EmptySet,

    // synthesis
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),
    #[error("graph is not a forest")]
    NotAForest,
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph has no cycle")]
    NoCycle,
    #[error("prime {p} is too small for a graph with {edges} edges")]
    PTooSmall { p: u64, edges: usize },
    #[error("edge label {0} is not a signed power of p")]
    LabelNotPowerOfP(String),
    #[error("coordinate {coefficient} does not satisfy |a| < p = {p}")]
    CoefficientOverflow { coefficient: i64, p: u64 },
    #[error("points must be integers")]
    NotIntegral,
    #[error("anchor {0} is out of range")]
    InvalidAnchor(usize),
    #[error("dimension {0} exceeds the supported maximum of 16")]
    DimensionTooLarge(usize),
    #[error("invalid cube embedding: {0}")]
    InvalidEmbedding(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("expected a single-prime set, got {0}")]
    NotSinglePrime(String),

    // unit equations and bounds
    #[error("exhaustive search supports 2 or 3 unknowns, got {0}")]
    ArityUnsupported(usize),
    #[error("equation coefficients must be nonzero")]
    ZeroCoefficient,
    #[error("cycle labels do not sum to zero")]
    LabelsDoNotSumToZero,
    #[error("{0} labels exceed the subset-scan limit of 24")]
    TooLong(usize),
    #[error("unknown bound {0:?}")]
    UnknownBound(String),
    #[error("bad bound parameters: {0}")]
    BadParameters(String),
}

pub type Result<T> = std::result::Result<T, Error>;
