use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{what} = {value} exceeds the cap {cap}")]
    TooLarge {
        what: &'static str,
        value: u128,
        cap: u128,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero triple is not a projective point")]
    ZeroTriple,
    #[error("invalid weights (a, b) = ({a}, {b}): need 1 <= a <= b and gcd(a, b) = 1")]
    InvalidWeights { a: u64, b: u64 },
    #[error("degree {0} is outside the supported range")]
    DegreeOutOfRange(u64),
    #[error("degree {0} is not in the regularity set")]
    DegreeNotRegular(u64),
    #[error("degree {0} lies in the regularity set")]
    DegreeRegular(u64),
    #[error("degree {d} is smaller than the required minimum {min}")]
    DegreeTooSmall { d: u64, min: u64 },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u64, found: u64 },
    #[error("lattice point ({0}, {1}) is not in the reduction")]
    NotInReduction(u64, u64),
    #[error("a2 = {a2} is outside 0..={max}")]
    OutOfRange { a2: u64, max: u64 },
    #[error("no extremal polynomial construction applies: {0}")]
    NoBranchApplies(String),
    #[error("closed form unsupported for (a, b) = (1, 1)")]
    Unsupported,
    #[error("the code has no nonzero codeword")]
    EmptyCode,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
