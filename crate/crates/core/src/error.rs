use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableCountMismatch(usize, usize),
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("polynomial is not exactly divisible")]
    NotDivisible,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("Möbius map is not invertible")]
    SingularMobius,
    #[error("polynomial is not a Darboux polynomial of the derivation")]
    NotDarboux,
    #[error("no good specialization found among {0} candidates")]
    NoGoodSpecialization(usize),
    #[error("{found} modular factors exceed the recombination limit of {limit}")]
    TooManyModularFactors { found: usize, limit: usize },
    #[error("supplied factors are not a factorization: {0}")]
    UnverifiedFactors(String),
    #[error("no built-in factorization for {0} variables; supply factors explicitly")]
    MissingOracle(usize),
    #[error("fewer than two good homography candidates")]
    InsufficientCandidates,
    #[error("hypothesis (H) could not be established after {0} shift retries")]
    HypothesisFailure(usize),
    #[error("recombination basis is not a set of orthogonal 0/1 vectors")]
    BasisNotBoolean,
    #[error("no outer function u with u(h) = f")]
    NoSolution,
    #[error("outer function not unique: kernel dimension {0}")]
    AmbiguousSolution(usize),
    #[error("decomposition failed verification: u(h) != f")]
    VerificationFailed,
    #[error("expected {expected} variables, found {found}")]
    WrongVariableCount { expected: usize, found: usize },
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(i64),
    #[error("empty support")]
    EmptySupport,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("invalid exponent at position {pos}: exponents must be non-negative integers")]
    BadExponent { pos: usize },
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
