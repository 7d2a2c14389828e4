//! Graph representations, Ferrers graphs, matrix builders and file I/O.

mod bipartite;
mod ferrers;
mod general;
pub mod io;

pub use bipartite::{BVertex, BipartiteGraph, GraphStats, Side};
pub use ferrers::{
    bridge_join, ferrers_from_partition, ferrers_invariant, ferrers_partition, is_ferrers, pendant_add,
    staircase_order,
};
pub use general::{Graph, MAX_VERTICES};
