use thiserror::Error;

use crate::forest::ForestClass;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("forest spec syntax error at `{term}`: {reason}")]
    Syntax { term: String, reason: String },

    #[error("invalid component `{term}`: {reason}")]
    ComponentSize { term: String, reason: String },

    #[error("forest spec is empty")]
    EmptyForest,

    #[error("graph capacity exceeded: {requested} vertices requested, at most {max} supported")]
    Capacity { requested: usize, max: usize },

    #[error("malformed graph6 input: {0}")]
    Graph6(String),

    #[error("malformed graph input: {0}")]
    GraphFormat(String),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexRange { vertex: usize, n: usize },

    #[error("out of regime: {0}")]
    Regime(String),

    #[error("forest class {class:?} is not handled here: {hint}")]
    Class { class: ForestClass, hint: String },

    #[error("no closed form for this forest: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
