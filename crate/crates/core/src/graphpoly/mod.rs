//! Coprimality graphs and their edge-subset polynomials Q_G, Q_G+, Q_{G,r},
//! Q_{G,r}+ and Q_{r,s}.

mod graph;
mod polynomial;

pub use graph::{CoprimalityGraph, MAX_VERTICES};
pub use polynomial::{
    compute_polynomial, q_g, q_g_plus, q_g_r, q_g_r_plus, q_rs, GraphPolynomial, PolyKind, PolyOptions, SubsetMethod,
    DEFAULT_SUBSET_BUDGET,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("{0} vertices exceed the supported maximum of 64")]
    TooManyVertices(usize),
    #[error("vertex {vertex} is outside 1..={v}")]
    VertexOutOfRange { vertex: usize, v: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge index {index} is outside 1..={e}")]
    EdgeIndexOutOfRange { index: usize, e: usize },
    #[error("pair ({0}, {0}) needs two distinct vertices")]
    PairNotDistinct(usize),
    #[error("pair ({0}, {1}) is an edge of the graph")]
    PairIsEdge(usize, usize),
    #[error("2^{e} edge subsets exceed the subset budget {budget}")]
    SubsetBudget { e: usize, budget: u64 },
    #[error("graph parse error: {0}")]
    Parse(String),
}
