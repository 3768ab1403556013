use thiserror::Error;

/// Errors produced while building or analysing a graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: malformed edge line {text:?}")]
    MalformedLine { line: usize, text: String },

    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: u64 },

    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: u64, v: u64 },

    #[error("graph is disconnected: vertex {unreached} is not reachable from vertex {root}")]
    Disconnected { root: u64, unreached: u64 },

    #[error("graph has no vertices")]
    Empty,

    #[error("not a cactus: block {{{}}}", join_ids(.block))]
    NotACactus { block: Vec<u64> },

    #[error("set is not a biactive branch-resolving set")]
    NotBiactiveBranchResolving,

    #[error("infeasible parameters: {0}")]
    InfeasibleParams(String),

    #[error("instance too large for exhaustive search: n={n} exceeds limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

fn join_ids(ids: &[u64]) -> String {
    ids.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

pub type Result<T> = std::result::Result<T, Error>;
