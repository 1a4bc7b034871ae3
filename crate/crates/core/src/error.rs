use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("index {index} out of range for length {len}")]
    OutOfRange { index: usize, len: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("invalid modulus n = {0} (supported range is 1..=64)")]
    InvalidModulus(usize),

    #[error("polynomial degree {degree} does not fit length {len}")]
    DegreeTooLarge { degree: u32, len: usize },

    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("{0} does not divide x^n - 1")]
    NotAGenerator(String),

    #[error("invalid cyclic code pair: {0}")]
    InvalidPair(String),

    #[error("dimension {dim} exceeds the exhaustive enumeration bound {bound}")]
    DimensionTooLarge { dim: usize, bound: usize },

    #[error("degenerate pairing input: {0}")]
    DegeneratePairing(String),

    #[error("pairing property violated: {0}")]
    PairingProperty(String),

    #[error("code spec rejected: {0}")]
    InvalidSpec(String),

    #[error("operator is not a gauge operator of this code: {0}")]
    OperatorNotGauge(String),

    #[error("shift {alpha} outside the admissible range [{min}, {max}]")]
    ShiftOutOfRange { alpha: i32, min: i32, max: i32 },

    #[error("CSS construction rejected: {0}")]
    InvalidCss(String),

    #[error("lookup table is not injective: {0}")]
    TableCollision(String),

    #[error("code invariant violated: {0}")]
    Invariant(String),
}
