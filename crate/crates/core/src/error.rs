use thiserror::Error;

use crate::graph::Element;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid signature: {0}")]
    Signature(String),

    #[error("graphs are over different sort signatures")]
    SignatureMismatch,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("cannot compose: {0}")]
    Composition(String),

    #[error("invalid term: {0}")]
    Term(String),

    #[error("variable `{0}` has no assigned value")]
    UnassignedVariable(String),

    #[error("operation `{op}` is not interpreted in the {algebra} algebra")]
    UninterpretedOp { op: String, algebra: String },

    #[error("natural number overflow while evaluating `{0}`")]
    Overflow(String),

    #[error("value `{value}` is not in the carrier of the {algebra} algebra")]
    NotInCarrier { value: String, algebra: String },

    #[error("algebras differ: {0}")]
    AlgebraMismatch(String),

    #[error("morphism `{0}` must be neutral")]
    NotNeutral(String),

    #[error("morphism `{0}` must be injective")]
    NotMono(String),

    #[error("expected at least one leg")]
    EmptyLegs,

    #[error("gluing condition violated: edge `{edge}` would dangle from deleted node `{node}`")]
    Dangling { edge: String, node: String },

    #[error(
        "gluing condition violated: {first} and {second} are identified but not both preserved"
    )]
    Identification { first: Element, second: Element },

    #[error("gluing condition violated: deleted {element} carries {{{values}}}, which the rule does not read")]
    UnreadLabels { element: Element, values: String },

    #[error("universal-property oracle limited to {limit} elements per graph, got {actual}")]
    SizeBound { limit: usize, actual: usize },

    #[error("invalid rule `{rule}`: {reason}")]
    InvalidRule { rule: String, reason: String },

    #[error("direct transformations {a} and {b} are not parallel coherent: {detail}")]
    Incoherent { a: usize, b: usize, detail: String },

    #[error("transformation {index} cannot be applied after the preceding ones: {detail}")]
    NotSequential { index: usize, detail: String },

    #[error("direct transformations do not share the same host")]
    HostMismatch,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Io(String),

    #[error("grid radius {radius} too small for {generations} generations (need radius >= generations + 1)")]
    Margin { radius: u32, generations: u32 },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
