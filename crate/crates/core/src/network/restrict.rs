use std::cell::RefCell;
use std::collections::HashMap;

use super::builder::NetworkBuilder;
use super::Network;
use crate::error::NetworkError;
use crate::taxa::{TaxaSet, Taxon};

/// Precomputed lowest-stable-ancestor data for repeated restrictions of one
/// valid network.
///
/// The stable ancestors of a vertex are exactly its dominators with respect
/// to the root, so the LSA of a leaf set is the lowest common ancestor of the
/// leaves in the dominator tree.
pub struct Restrictor<'a> {
    net: &'a Network,
    idom: Vec<usize>,
    depth: Vec<u32>,
    leaf_of: HashMap<Taxon, usize>,
    /// Per-vertex scratch for [`Restrictor::restrict_vertices`]; entries
    /// are reset to `UNSEEN` after each call.
    local: RefCell<Vec<usize>>,
}

const UNSEEN: usize = usize::MAX;
const PENDING: usize = usize::MAX - 1;

impl<'a> Restrictor<'a> {
    pub fn new(net: &'a Network) -> Self {
        let n = net.vertex_count();
        let mut idom = vec![usize::MAX; n];
        let mut depth = vec![0u32; n];
        for v in net.topological_order() {
            let ps = net.parents(v);
            if ps.is_empty() {
                idom[v] = v;
                continue;
            }
            let mut d = ps[0];
            for &p in &ps[1..] {
                d = lca(&idom, &depth, d, p);
            }
            idom[v] = d;
            depth[v] = depth[d] + 1;
        }
        Restrictor {
            net,
            idom,
            depth,
            leaf_of: net.leaf_index(),
            local: RefCell::new(vec![UNSEEN; n]),
        }
    }

    pub fn network(&self) -> &'a Network {
        self.net
    }

    pub fn leaf(&self, t: &Taxon) -> Result<usize, NetworkError> {
        self.leaf_of
            .get(t)
            .copied()
            .ok_or_else(|| NetworkError::UnknownTaxon(t.clone()))
    }

    pub fn lsa_of_vertices(&self, vs: &[usize]) -> usize {
        let mut it = vs.iter().copied();
        let first = it.next().expect("at least one vertex");
        it.fold(first, |a, b| lca(&self.idom, &self.depth, a, b))
    }

    pub fn lsa<'t, I>(&self, taxa: I) -> Result<usize, NetworkError>
    where
        I: IntoIterator<Item = &'t Taxon>,
    {
        let vs = taxa
            .into_iter()
            .map(|t| self.leaf(t))
            .collect::<Result<Vec<_>, _>>()?;
        if vs.is_empty() {
            return Err(NetworkError::EmptyTaxa);
        }
        Ok(self.lsa_of_vertices(&vs))
    }

    /// Restriction to the given leaf vertices: the subgraph of ancestors of
    /// the leaves below their LSA, with indegree-1 outdegree-1 vertices and
    /// parallel arcs removed.
    pub fn restrict_vertices(&self, leaves: &[usize]) -> Network {
        let net = self.net;
        let top = self.lsa_of_vertices(leaves);

        let mut local = self.local.borrow_mut();
        let mut ancestors = Vec::new();
        let mut stack: Vec<usize> = leaves.to_vec();
        while let Some(v) = stack.pop() {
            if local[v] != UNSEEN {
                continue;
            }
            local[v] = PENDING;
            ancestors.push(v);
            if v != top {
                stack.extend(net.parents(v).iter().copied());
            }
        }

        // Only the LSA, the leaves and vertices where kept paths branch or
        // merge become vertices; chains between them collapse to one arc.
        let marked = |v: usize, local: &[usize]| local[v] != UNSEEN;
        let mut b = NetworkBuilder::new();
        let mut keep = Vec::new();
        for &v in &ancestors {
            let kc = net.children(v).iter().filter(|&&c| marked(c, &local)).count();
            let kp = net.parents(v).iter().filter(|&&p| marked(p, &local)).count();
            if v == top || kc != 1 || kp != 1 {
                keep.push(v);
            }
        }
        for &v in &keep {
            local[v] = match net.label(v) {
                Some(t) if leaves.contains(&v) => b.add_leaf(t.clone()),
                _ => b.add_vertex(),
            };
        }
        for &v in &keep {
            for &c in net.children(v) {
                let mut c = c;
                if !marked(c, &local) {
                    continue;
                }
                while local[c] == PENDING {
                    c = *net.children(c).iter().find(|&&d| marked(d, &local)).unwrap();
                }
                b.add_arc(local[v], local[c]);
            }
        }
        for v in ancestors {
            local[v] = UNSEEN;
        }
        b.suppress();
        b.build()
    }

    pub fn restrict(&self, taxa: &TaxaSet) -> Result<Network, NetworkError> {
        if taxa.is_empty() {
            return Err(NetworkError::EmptyTaxa);
        }
        let vs = taxa
            .iter()
            .map(|t| self.leaf(t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.restrict_vertices(&vs))
    }
}

fn lca(idom: &[usize], depth: &[u32], mut a: usize, mut b: usize) -> usize {
    while depth[a] > depth[b] {
        a = idom[a];
    }
    while depth[b] > depth[a] {
        b = idom[b];
    }
    while a != b {
        a = idom[a];
        b = idom[b];
    }
    a
}

/// Lowest stable ancestor of `taxa` in a valid network.
pub fn lsa(net: &Network, taxa: &TaxaSet) -> Result<usize, NetworkError> {
    Restrictor::new(net).lsa(taxa)
}

/// The restriction `N|taxa` of a valid network.
pub fn restrict(net: &Network, taxa: &TaxaSet) -> Result<Network, NetworkError> {
    Restrictor::new(net).restrict(taxa)
}

/// Whether `host` displays `guest`, i.e. `host|X(guest)` is isomorphic to
/// `guest`. Both networks must be valid.
pub fn displays(host: &Network, guest: &Network) -> Result<bool, NetworkError> {
    let sub = restrict(host, &guest.taxa())?;
    Ok(super::canonical_code(&sub) == super::canonical_code(guest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::fixtures::*;
    use crate::network::{canonical_code, validate};
    use crate::taxa::{taxa, taxon};

    /// N3(x;y;z) style network: root with children N(x;y) and z.
    fn sample() -> Network {
        Network::new(
            7,
            &[(0, 1), (0, 6), (1, 2), (1, 3), (2, 3), (2, 5), (3, 4)],
            [(4, taxon("x")), (5, taxon("y")), (6, taxon("z"))],
        )
        .unwrap()
    }

    #[test]
    fn lsa_of_cycle_leaves_is_cycle_source() {
        let n = sample();
        assert_eq!(lsa(&n, &taxa(["x", "y"])).unwrap(), 1);
        assert_eq!(lsa(&n, &taxa(["x", "z"])).unwrap(), 0);
        assert_eq!(lsa(&n, &taxa(["x"])).unwrap(), 4);
    }

    #[test]
    fn restrictions() {
        let n = sample();
        let xy = restrict(&n, &taxa(["x", "y"])).unwrap();
        assert!(validate(&xy).is_valid());
        assert_eq!(canonical_code(&xy), canonical_code(&tiny_binet("x", "y")));
        let xz = restrict(&n, &taxa(["x", "z"])).unwrap();
        assert_eq!(canonical_code(&xz), "(x,z)");
        let x = restrict(&n, &taxa(["x"])).unwrap();
        assert_eq!(x.vertex_count(), 1);
        assert!(displays(&n, &cherry("y", "z")).unwrap());
        assert!(!displays(&n, &tiny_binet("y", "x")).unwrap());
        assert!(restrict(&n, &taxa(["w"])).is_err());
        assert!(restrict(&n, &TaxaSet::new()).is_err());
    }

    #[test]
    fn restricting_to_everything_is_identity() {
        let n = sample();
        let all = restrict(&n, &n.taxa()).unwrap();
        assert_eq!(canonical_code(&all), canonical_code(&n));
    }
}
