//! Graph reconstruction from connected-component-count queries.
//!
//! A hidden undirected graph is learned through an oracle that, given a
//! vertex subset `S`, reports the number of connected components of the
//! induced subgraph `G[S]`. The crate provides the oracle simulator with
//! query and round accounting ([`oracle`]), reusable query subroutines
//! ([`primitives`]), a fully adaptive reconstructor ([`adaptive`]), a
//! two-round reconstructor ([`two_round`]), and an experiment harness with
//! lower-bound instance checks ([`lab`]).

pub mod adaptive;
pub mod graph;
pub mod lab;
pub mod oracle;
pub mod primitives;
pub mod rng;
pub mod two_round;

use thiserror::Error;

pub use graph::{Edge, Graph, GraphError, Vertex, VertexSet};
pub use oracle::{CcOracle, CcQuery, OracleError, OracleMode};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
