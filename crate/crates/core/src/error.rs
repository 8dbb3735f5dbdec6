use crate::graph::{EdgeId, Pair};
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("edge {0} is not live")]
    UnknownEdge(EdgeId),
    #[error("edge {0} already exists")]
    DuplicateEdge(EdgeId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("pair {0} has no live edges")]
    EmptyGroup(Pair),
    #[error("instance has {n} vertices, above the cap of {cap} for {what}")]
    TooLarge { what: &'static str, n: usize, cap: usize },
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("capacity precondition violated on {} group(s), first {}", .0.len(), .0[0])]
    GroupCapacity(Vec<Pair>),
    #[error("pair {0} is not tracked by the sparsifier")]
    UnknownPair(Pair),
    #[error("value increase rejected for {pair}: {old} -> {new}")]
    Increase { pair: Pair, old: f64, new: f64 },
    #[error("engine has terminated")]
    Terminated,
    #[error("deletion {position} names edge {edge}, which is not live")]
    BadDeletion { position: usize, edge: EdgeId },
    #[error("invalid parameter: {0}")]
    Param(String),
}

pub type Result<T> = core::result::Result<T, Error>;
