use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every structured rejection produced by the library.
///
/// Labels are carried as strings so that an error can be printed without the
/// poset that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown element label `{0}`")]
    UnknownLabel(String),

    #[error("cover relation contains a cycle: {}", .cycle.join(" -> "))]
    CycleDetected { cycle: Vec<String> },

    #[error("cover pair ({lower}, {upper}) is implied by transitivity")]
    TransitiveCover { lower: String, upper: String },

    #[error("the empty poset has no rank")]
    EmptyPoset,

    #[error(
        "poset is not pure: maximal chains of lengths {} and {} ({} / {})",
        .short.len() - 1, .long.len() - 1, .short.join("<"), .long.join("<")
    )]
    NotPure { short: Vec<String>, long: Vec<String> },

    #[error("label `{0}` occurs in both summands of the ordinal sum")]
    LabelCollision(String),

    #[error("level index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("level sums differ: f(P_{i}) = {sum_i} but f(P_{j}) = {sum_j}")]
    LevelSumMismatch { i: usize, j: usize, sum_i: u64, sum_j: u64 },

    #[error("weight function has {got} entries, poset has {expected} elements")]
    WeightLength { expected: usize, got: usize },

    #[error("no weight given for element `{0}`")]
    MissingWeight(String),

    #[error("level {level} has {width} elements; exhaustive subset scan is limited to {limit}")]
    WidthTooLarge { level: usize, width: usize, limit: usize },

    #[error("enumeration budget of {budget} nodes exhausted ({found} results so far)")]
    BudgetExceeded { budget: u64, found: usize },

    #[error("subset is empty or not contained in a single level below the top")]
    NotPureSubset,

    #[error("weight function is not in the chain semigroup")]
    NotInSemigroup,

    #[error("rank-0 posets have no level graphs")]
    RankZero,

    #[error("poset has width {width}, at most 2 is supported")]
    WidthExceeded { width: usize },

    #[error("level graph {level} is disconnected; reduce the poset first")]
    NotReduced { level: usize },

    #[error("block is not basic: {0}")]
    NotBasic(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("no canonical element found up to degree {cap}")]
    AInvariantUnknown { cap: u64 },

    #[error("generator test inconclusive up to n = {n_cap}")]
    Inconclusive { n_cap: u64 },

    #[error("malformed document: {0}")]
    Format(String),
}
