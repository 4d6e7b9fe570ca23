//! Binary level-1 phylogenetic networks and their binets and trinets.

pub mod binet;
pub mod error;
pub mod graph;
pub mod hardness;
pub mod io;
pub mod network;
pub mod oracle;
pub mod smallnet;
pub mod solver;
pub mod taxa;

pub use error::{NetworkError, ParseError, SmallNetError, SolveError, TaxonError};
pub use graph::AuxGraph;
pub use network::Network;
pub use smallnet::{Shape, SmallNet, SmallNetSet};
pub use binet::solve_binets;
pub use solver::{solve, solve_supernetwork, solve_tiny, Outcome, SolverConfig};
pub use taxa::{TaxaSet, Taxon};
