//! Text formats: small-net files, extended Newick and DOT.

mod dot;
mod newick;
mod smallnets;

pub use dot::to_dot;
pub use newick::{parse_network, parse_networks, serialize_network};
pub use smallnets::{parse_smallnets, serialize_smallnets, SmallNetFile};

pub(crate) use smallnets::parse_smallnet_item;
