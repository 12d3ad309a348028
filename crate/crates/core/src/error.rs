use thiserror::Error;

/// Errors produced by the semigroup library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator list is empty")]
    NoGenerators,
    #[error("generators must be positive")]
    ZeroGenerator,
    #[error("generators have gcd {gcd}; the generated monoid has an infinite complement")]
    GcdNotOne { gcd: u32 },
    #[error("{0} is not a minimal generator")]
    NotAGenerator(u32),
    #[error("0 can never be a gap")]
    ZeroGap,
    #[error("not a numerical semigroup: {a} + {b} = {} is missing", a + b)]
    NotASemigroup { a: u32, b: u32 },
    #[error("set contains the negative integer {value}")]
    NegativeElement { value: i64 },
    #[error("translation amount {0} is odd")]
    OddTranslation(i64),
    #[error("genus {genus} is too small for {gamma} even gaps (need {required})")]
    GenusTooSmall { genus: u32, gamma: u32, required: u32 },
    #[error("genus {genus} exceeds the supported maximum {max}")]
    GenusTooLarge { genus: u32, max: u32 },
    #[error("node budget of {budget} exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("{route} route is capped at gamma = {cap}, requested {gamma}")]
    RouteCapExceeded { route: &'static str, gamma: u32, cap: u32 },
    #[error("semigroup is not in the fiber over the given half")]
    NotInFiber,
    #[error("set {elements:?} is not closed: {element} + {step} = {} is missing", element + step)]
    NotClosed { elements: Vec<u32>, element: u32, step: u32 },
    #[error("set must contain 0")]
    MissingZero,
    #[error("search range {0} exceeds the 128-bit search window")]
    RangeTooLarge(u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("count overflowed 64 bits")]
    CountOverflow,
}

pub type Result<T> = std::result::Result<T, Error>;
