//! Generalized Turán numbers `ex(n, H, F)`: the maximum number of copies of
//! `H` in an `n`-vertex graph containing no copy of `F`.

pub mod berge;
pub mod canon;
pub mod classifier;
pub mod cli;
pub mod constructions;
pub mod counting;
pub mod embed;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod field;
pub mod format;
pub mod graph;
pub mod hypergraph;

pub use error::{Error, Result};
pub use graph::Graph;
pub use hypergraph::Hypergraph;
