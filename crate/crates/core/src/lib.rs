//! Exact computations around weak odd domination in small graphs.
//!
//! A vertex set `B` is weakly odd dominated (WOD) when some `C ⊆ V∖B` has
//! an odd number of neighbours at every vertex of `B`. The crate decides
//! this over GF(2), produces checkable certificates either way, and
//! computes the extremal quantities
//!
//! * `κ(G)`: the largest WOD set,
//! * `κ'(G)`: the smallest non-WOD set,
//! * `κ_Q(G) = max(κ(G), n - κ'(G))`.

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod gf2;
pub mod graph;
pub mod perfect_code;
pub mod search;
pub mod solvers;
pub mod wod;

pub use error::{Error, Result};
pub use graph::{parse_graph6, write_graph6, Graph, VertexSet};
