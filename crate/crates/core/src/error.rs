use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("set must be non-empty")]
    EmptySet,
    #[error("set must contain 0 (smallest element is {0})")]
    MissingZero(u64),
    #[error("set elements must be strictly increasing and distinct (offending element {0})")]
    NotStrictlyIncreasing(u64),
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("divisor is not monic")]
    NonMonicDivisor,
    #[error("cyclic modulus must be at least 1")]
    ZeroModulus,
    #[error("cyclotomic index must be at least 1")]
    ZeroCyclotomicIndex,
    #[error("invalid fraction {num}/{den}")]
    InvalidFraction { num: u64, den: u64 },
    #[error("could not parse fraction from {0:?}")]
    FractionParse(String),
    #[error("spectrum must contain 0")]
    SpectrumMissingZero,
    #[error("spectrum values must be distinct (duplicate {0})")]
    DuplicateTheta(String),
    #[error("e^(2 pi i q) = 1 is never a root of a mask polynomial")]
    TrivialRoot,
    #[error("period {period} is not a multiple of the set size {size}")]
    PeriodNotMultiple { period: u64, size: usize },
    #[error("period bound {bound} is smaller than the set size {size}")]
    PeriodBoundTooSmall { bound: u64, size: usize },
    #[error("set does not satisfy both Coven-Meyerowitz conditions (t1={t1}, t2={t2})")]
    ConditionsFail { t1: bool, t2: bool },
    #[error("unit fraction term {k}/{s} violates the preconditions: {why}")]
    UnitFraction { k: i64, s: u64, why: &'static str },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("denominator {lcm} exceeds the cap {cap}")]
    DenominatorCap { lcm: u64, cap: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
