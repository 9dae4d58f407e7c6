use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("concept class has no hypotheses")]
    EmptyClass,
    #[error("point {point} outside universe of size {universe}")]
    InvalidPoint { point: usize, universe: usize },
    #[error("dataset labels point {0} both 0 and 1")]
    InconsistentDataset(usize),
    #[error("resource limit: {what} needs {requested}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        requested: u128,
        cap: u128,
    },
    #[error("vertex index {index} out of range ({len} vertices)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("vertex set is not independent: datasets disagree on point {0}")]
    NotIndependent(usize),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAClique(usize, usize),
    #[error("balanced point needs a clique with at least two members")]
    DegenerateClique,
    #[error("elimination removed every edge of the clique")]
    NoSurvivingEdge,
    #[error("tree branch {0} is not realizable")]
    NotShattered(String),
    #[error("mistake tree is not complete at depth {0}")]
    NotComplete(usize),
    #[error("linear program is infeasible")]
    InfeasibleModel,
    #[error("linear program is unbounded")]
    UnboundedModel,
    #[error("fractional coloring has zero total weight")]
    ZeroColoring,
    #[error("fractional clique has zero size")]
    ZeroClique,
    #[error("no separation at m0 = {0}: fractional clique number equals 2^m0")]
    NoSeparation(usize),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("majority vote needs an odd number of patterns, got {0}")]
    EvenLength(usize),
    #[error("distribution is not realizable by the class")]
    NotRealizableDistribution,
    #[error("certificate check failed: {0}")]
    Certificate(String),
}
