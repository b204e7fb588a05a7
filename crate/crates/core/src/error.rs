use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentArity { expected: usize, got: usize },
    #[error("series has negative exponents where a polynomial is required")]
    NegativeExponent,
    #[error("exponential of a series with nonzero constant term is not exact; split the constant off first")]
    NonzeroConstantTerm,
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error(
        "insufficient truncation: coefficient of {var}^{requested} needs truncation order >= {requested}, series is known only to order {available}"
    )]
    InsufficientTruncation { var: String, requested: i64, available: i64 },
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum AtlasError {
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("invalid atlas: {0}")]
    Invariant(String),
    #[error("fixed point {point}: field `{field}`: {message}")]
    FixedPoint { point: String, field: String, message: String },
    #[error("e(y) is a zero divisor at {point}: tangent weight {index} is zero")]
    ZeroDivisor { point: String, index: usize },
    #[error("0 is not a regular value: fixed point {point} has {what} = 0")]
    NotRegular { point: String, what: String },
    #[error("unknown builtin atlas `{0}`")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum EngineError {
    #[error(transparent)]
    Atlas(#[from] AtlasError),
    #[error("fixed point {point}: {source}")]
    AtFixedPoint { point: String, source: AlgebraError },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("engine `{engine}` does not accept this atlas: {reason}")]
    Unsupported { engine: String, reason: String },
    #[error("unknown engine `{0}`")]
    UnknownEngine(String),
    #[error("unknown convention profile `{0}`")]
    UnknownProfile(String),
    #[error("atlas has no fixed points on either side of the zero level")]
    NoFixedPoints,
    #[error("root covector {index} has length {got}, torus rank is {rank}")]
    RootRank { index: usize, got: usize, rank: usize },
    #[error("extraction order {0:?} is not a permutation of the atlas variables")]
    BadOrder(Vec<String>),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum OracleError {
    #[error("quadrature did not converge: panel budget of {budget} exhausted on [{a}, {b}]")]
    QuadratureBudget { budget: usize, a: f64, b: f64 },
    #[error("integrand evaluation failed at y = {at:?}: {reason}")]
    Evaluation { at: Vec<f64>, reason: String },
    #[error("summed integrand has a non-cancelled principal part; the mollified limit does not exist")]
    PrincipalPart,
    #[error("invalid oracle configuration: {0}")]
    Config(String),
    #[error("unsupported oracle input: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Umbrella error for callers that drive the whole pipeline.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Atlas(#[from] AtlasError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::Engine(EngineError::Internal(_)) | Error::Oracle(OracleError::Engine(EngineError::Internal(_)))
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Atlas(AtlasError::Schema(_)) => "schema",
            Error::Atlas(_) => "atlas",
            Error::Engine(EngineError::Internal(_)) => "internal",
            Error::Engine(_) => "engine",
            Error::Oracle(_) => "oracle",
            Error::Algebra(_) => "algebra",
        }
    }
}
