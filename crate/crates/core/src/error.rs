use thiserror::Error;

/// Errors raised by the algebra kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("coefficient domains do not match")]
    DomainMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("invalid Drinfeld module: {0}")]
    InvalidModule(String),
    #[error("ρ_a is inseparable")]
    Inseparable,
    #[error("torsion search is incomplete")]
    IncompleteTorsion,
    #[error("torsion module is not free of the expected rank")]
    NonFreeStructure,
    #[error("mutation direction {0} out of range 1..={1}")]
    DirectionOutOfRange(usize, usize),
    #[error("cluster variable is not a Laurent polynomial")]
    NotLaurent,
    #[error("invalid exchange matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("denominator CΘ + D is singular")]
    SingularDenominator,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("scale factor must be positive")]
    NonPositiveScale,
    #[error("precision {got} digits is below the floor of {need}")]
    InsufficientPrecision { got: u32, need: u32 },
    #[error("lift is degenerate: {0}")]
    DegenerateLift(String),
    #[error("no real Perron root greater than 1")]
    NoPerronRoot,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
