use thiserror::Error;

use crate::tree::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("tree has no nodes")]
    EmptyTree,

    #[error("tree has no root")]
    NoRoot,

    #[error("multiple roots: {0} and {1}")]
    MultipleRoots(NodeId, NodeId),

    #[error("cycle detected at node {0}")]
    Cycle(NodeId),

    #[error("node {0} defined more than once")]
    DuplicateNode(NodeId),

    #[error("node id {id} out of range for {n} nodes (ids must be dense)")]
    NodeIdOutOfRange { id: usize, n: usize },

    #[error("node {node} has unknown parent {parent}")]
    UnknownParent { node: NodeId, parent: usize },

    #[error("internal node {0} carries a color")]
    ColoredInternal(NodeId),

    #[error("leaf {0} has no color")]
    UncoloredLeaf(NodeId),

    #[error("node {0} has no color")]
    UncoloredNode(NodeId),

    #[error("color {color} out of range for {delta} colors")]
    ColorOutOfRange { color: usize, delta: usize },

    #[error("node {descendant} is not a strict descendant of {ancestor}")]
    NotStrictDescendant {
        ancestor: NodeId,
        descendant: NodeId,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("query range [{lo}, {hi}] out of bounds for length {len}")]
    RangeOutOfBounds { lo: usize, hi: usize, len: usize },

    #[error("memory guard: {required} cells required, budget is {budget}")]
    MemoryGuard { required: u64, budget: u64 },

    #[error("document {doc} contains reserved symbol {symbol} (alphabet size {sigma})")]
    ReservedSymbol { doc: usize, symbol: u32, sigma: u32 },

    #[error("document collection is empty")]
    NoDocuments,

    #[error("invalid dag: {0}")]
    InvalidDag(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
