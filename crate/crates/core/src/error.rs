use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a braid group needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: i64, strands: usize },
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("handle reduction exceeded its step budget of {0}")]
    StepBudgetExceeded(usize),

    #[error("graph file, line {line}: {message}")]
    GraphSyntax { line: usize, message: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("invalid bond {label} between `{s}` and `{t}`")]
    InvalidBond { s: String, t: String, label: String },
    #[error("the relation word is undefined for m = infinity")]
    InfiniteRelation,
    #[error("the full root system is infinite for a group of {0} type")]
    InfiniteRootSystem(&'static str),
    #[error("root does not have unit canonical norm")]
    NotUnitRoot,
    #[error("scalar mode `{mode}` cannot represent bond {bond}")]
    ScalarMode { mode: String, bond: u32 },
    #[error("unknown scalar mode `{0}`")]
    UnknownScalarMode(String),
    #[error("type classification disagrees with the catalog: {0}")]
    CatalogMismatch(String),
    #[error("essentiality certification needs an irreducible indefinite graph: {0}")]
    NotIrreducibleIndefinite(String),

    #[error("graph is not of small type: bond {bond} between `{s}` and `{t}`")]
    NotSmallType { s: String, t: String, bond: String },
    #[error("vertex order must list every vertex exactly once")]
    InvalidOrder,
    #[error("the empty graph has no surface")]
    EmptyGraph,
}
