use thiserror::Error;

/// Errors raised by the constructions in this crate.
///
/// Element references inside errors always use display names so that they
/// can be reported back to a user verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("poset must have at least one element")]
    EmptyPoset,
    #[error("duplicate element name `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("cover relation contains a cycle through `{0}`")]
    CycleDetected(String),
    #[error("cover ({0}, {1}) is implied by a longer chain")]
    NonHasseCover(String, String),
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("`{0}` is not below `{1}`")]
    NotComparable(String, String),
    #[error("interval [{0}, {0}] is trivial")]
    TrivialInterval(String),
    #[error("poset has no {0}")]
    NotBounded(&'static str),
    #[error("pair ({x}, {y}) has minimal upper bounds {bounds:?}")]
    NotALattice { x: String, y: String, bounds: Vec<String> },
    #[error("set is not a face of the complex")]
    NotAFace,
    #[error("ground sets overlap at vertex `{0}`")]
    GroundSetOverlap(String),
    #[error("{what} has {size} items, limit is {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },
    #[error("labelling is missing cover ({0}, {1})")]
    IncompleteLabelling(String, String),
    #[error("search exceeded the node limit of {0}")]
    SearchBudgetExceeded(u64),
    #[error("blocks do not partition the lattice: {0}")]
    NotAPartition(String),
    #[error("subset is not order-convex: {0} and {1} are in it but {2} is not")]
    NotOrderConvex(String, String, String),
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid arrangement: {0}")]
    InvalidArrangement(String),
    #[error("sign vector `{0}` is not a chamber")]
    NotAChamber(String),
    #[error("hyperplane {0} is not in the parent arrangement")]
    NotSubarrangement(usize),
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("parameter {param} out of range for `{name}` (allowed {allowed})")]
    ParamOutOfRange { name: String, param: usize, allowed: String },
    #[error("malformed input: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyPoset => "empty-poset",
            Error::DuplicateElement(_) => "duplicate-element",
            Error::UnknownElement(_) => "unknown-element",
            Error::CycleDetected(_) => "cycle-detected",
            Error::NonHasseCover(..) => "non-hasse-cover",
            Error::NotAPartialOrder(_) => "not-a-partial-order",
            Error::NotComparable(..) => "not-comparable",
            Error::TrivialInterval(_) => "trivial-interval",
            Error::NotBounded(_) => "not-bounded",
            Error::NotALattice { .. } => "not-a-lattice",
            Error::NotAFace => "not-a-face",
            Error::GroundSetOverlap(_) => "ground-set-overlap",
            Error::TooLarge { .. } => "too-large",
            Error::IncompleteLabelling(..) => "incomplete-labelling",
            Error::SearchBudgetExceeded(_) => "search-budget-exceeded",
            Error::NotAPartition(_) => "not-a-partition",
            Error::NotOrderConvex(..) => "not-order-convex",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::InvalidArrangement(_) => "invalid-arrangement",
            Error::NotAChamber(_) => "not-a-chamber",
            Error::NotSubarrangement(_) => "not-subarrangement",
            Error::UnknownName(_) => "unknown-name",
            Error::ParamOutOfRange { .. } => "param-out-of-range",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
