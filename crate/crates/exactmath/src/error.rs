use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MathError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported extension degree {0} (only 2 and 4 are wired up)")]
    UnsupportedDegree(u32),
    #[error("no modulus table entry for p={p}, m={m}")]
    NoModulus { p: u64, m: u32 },
    #[error("modulus is reducible over F_{p}: {reason}")]
    ReducibleModulus { p: u64, reason: String },
    #[error("precision p^{s} exceeds the 63-bit coefficient budget for p={p}")]
    PrecisionBudget { p: u64, s: u32 },
    #[error("window radius r={r} must be smaller than precision s={s}")]
    WindowRadius { r: u32, s: u32 },
    #[error("inverse of a non-unit (valuation {0} > 0)")]
    NonUnit(u32),
    #[error("exact division by p^{0} fails")]
    InexactDivision(u32),
    #[error("lattice operation mixes incompatible ambients (ring, rank, or window differ)")]
    IncompatibleAmbient,
    #[error("containment required: left operand is not a sublattice of the right")]
    NotContained,
    #[error("result leaves the precision window (r={r}, s={s}): {what}")]
    WindowOverflow { r: u32, s: u32, what: String },
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, MathError>;
