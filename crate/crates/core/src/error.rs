use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("empty graph")]
    EmptyGraph,
    #[error("unknown node {0}")]
    UnknownNode(u32),
    #[error("edge ({u}, {v}) references a node outside the node set")]
    DanglingEdge { u: u32, v: u32 },
    #[error("edge ({u}, {v}) has weight 0; weights must be >= 1")]
    ZeroWeight { u: u32, v: u32 },
    #[error("damping must lie in (0, 1), got {0}")]
    InvalidDamping(f64),
    #[error("no edges")]
    NoEdges,
    #[error("no such edge ({0}, {1})")]
    NoSuchEdge(u32, u32),
    #[error("k must be in 1..={max}, got {k}")]
    InvalidK { k: usize, max: usize },
    #[error("no neighbor-of-neighbor candidate for node {0}")]
    NoCandidate(u32),
    #[error("matrix format requires simple graph")]
    NotSimple,
    #[error("regions exceed sequence")]
    RegionsExceedSequence,
    #[error("percentage out of range: {0}")]
    InvalidPercentage(f64),
    #[error("unsupported support mismatch at position {0}")]
    SupportMismatch(usize),
    #[error("profile and positional curve lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("incomparable answer types")]
    IncomparableAnswers,
    #[error("degenerate sample")]
    DegenerateSample,
    #[error("empty input")]
    EmptyInput,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("malformed description: {0}")]
    Parse(String),
}
