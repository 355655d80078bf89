//! Combinatorics of the odd symplectic flag manifold `IF(1,2;C^(2n+1))`:
//! Schubert labels and Bruhat order, the moment graph, curve neighborhoods,
//! their lattices, and the quantum Bruhat graph.

pub mod digraph;
pub mod error;
pub mod golden;
pub mod lattice;
pub mod moment_graph;
pub mod nbhd;
pub mod qbg;
pub mod space;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use moment_graph::{build_moment_graph, Degree, MomentEdge, MomentGraph};
pub use nbhd::{cross_check, gamma, gamma_bfs, gamma_closed_form, NeighborhoodSource, SchubertUnion};
pub use space::FlagSpace;
pub use weyl::{BarValue, FlagLabel, SchubertPoset};
