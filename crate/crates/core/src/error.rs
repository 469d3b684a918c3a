use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rational function is not a product of cyclotomic factors: {0}")]
    NotAFrameProduct(String),
    #[error("frame key {key} does not divide degree {degree}")]
    KeyNotDividing { key: u64, degree: u64 },
    #[error("characteristic polynomial has a non-integer coefficient: {0}")]
    NonIntegerCharPoly(String),
    #[error("matrix is not square or exceeds the size limit ({0})")]
    BadMatrix(String),
    #[error("denominator vanishes at t = 0")]
    DenominatorVanishesAtZero,
    #[error("power series coefficient is not an integer at index {0}")]
    NonIntegralSeries(usize),
    #[error("reflection coefficient 2<e_{i},e_{j}>/<e_{i},e_{i}> is not an integer")]
    NonIntegralCartan { i: usize, j: usize },
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("invalid diagram spec: {0}")]
    InvalidSpec(String),
    #[error("involution is not an involution: {0}")]
    NotAnInvolution(String),
    #[error("involution does not preserve the Gram matrix at ({0}, {1})")]
    InvolutionNotIsometry(usize, usize),
    #[error("block structure violated: {0}")]
    BlockStructureViolated(String),
    #[error("Milnor-Orlik divisor has a non-integral coefficient at {0}")]
    NonIntegralDivisor(u64),
    #[error("no reflection order realizes the target frame")]
    OrderNotFound,
    #[error("prime {p} unusable: {reason}")]
    BadPrime { p: u64, reason: String },
    #[error("group closure has order {got}, expected {expected}")]
    OrderMismatch { got: usize, expected: usize },
    #[error("class sum matrices could not be split over F_p")]
    SplittingFailure,
    #[error("lifted integer out of range: {0}")]
    LiftOutOfRange(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element of the subgroup is missing from the supergroup")]
    NotASubgroup,
    #[error("restricted characters are linearly dependent")]
    RestrictionsDependent,
    #[error("tensor product does not decompose over the restricted characters")]
    NonIntegralDecomposition,
    #[error("no catalog record named {0:?}")]
    UnknownRecord(String),
    #[error("parse error: {0}")]
    Parse(String),
}
