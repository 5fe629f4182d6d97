use thiserror::Error;

/// Domain errors raised by the library. Every variant is a contract
/// violation by the caller or a construction that provably cannot finish.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("height {0} lies outside [0, 1]")]
    HeightOutOfRange(String),
    #[error("spine {spine} is not valid in universe {universe}")]
    SpineOutOfUniverse { spine: u64, universe: String },
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("axis vector has more than one nonzero entry")]
    NotAnAxis,
    #[error("operation needs a nonempty input")]
    EmptyInput,
    #[error("points on spines {0} and {1} have no common upper bound")]
    NotDirected(u64, u64),
    #[error("radius must be strictly positive")]
    NonPositiveRadius,
    #[error("a hedgehog with infinitely many spines is not totally bounded")]
    NotTotallyBounded,
    #[error("sets live in different universes")]
    UniverseMismatch,
    #[error("point is not in the closure of the set")]
    NotInClosure,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("stream element {index} is not open in the compact topology")]
    NotCompactOpen { index: usize },
    #[error("no finite subcover found within the first {bound} stream elements")]
    NoSubcoverWithinBound { bound: usize },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("metric at level {level} is not bounded by 1")]
    UnboundedMetric { level: usize },
    #[error("invalid metric space: {0}")]
    InvalidSpace(String),
    #[error("extension domain is empty")]
    EmptyDomain,
    #[error("pair is not in the image of the real line")]
    NotInImage,
    #[error("the given sets do not cover the space")]
    NotACover,
    #[error("refinement did not cover the space by level {max_level}; uncovered: {residue:?}")]
    CoverageNotReachedWithinMaxLevel {
        max_level: u32,
        residue: Vec<String>,
    },
    #[error("family {family} is not discrete: members {first} and {second} are too close")]
    NotDiscreteFamily {
        family: usize,
        first: usize,
        second: usize,
    },
    #[error("separation premise fails at index {0}: U and V intersect")]
    PremiseViolated(usize),
    #[error("family members {0} and {1} intersect")]
    NotDisjoint(usize, usize),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
