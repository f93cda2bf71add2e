//! Large-deviation rates for upper tails of subgraph counts in sparse
//! Erdős–Rényi graphs, together with the combinatorial machinery behind
//! them and finite-n checks by exact enumeration and Monte Carlo.

pub mod counting;
pub mod error;
pub mod graph;
pub mod io;
pub mod meanfield;
pub mod montecarlo;
pub mod pattern;
pub mod rates;
pub mod rng;
pub mod structures;

pub use counting::CopyCount;
pub use error::{Error, Result};
pub use graph::{HostGraph, PatternGraph, VertexSet};
