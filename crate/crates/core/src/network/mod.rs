//! Rooted binary level-1 phylogenetic networks.
//!
//! A [`Network`] is an immutable directed graph whose vertices are opaque
//! integers. Identity of two networks is never decided by vertex ids; use
//! [`is_equivalent`] or [`canonical_code`].

mod builder;
mod canon;
mod restrict;
mod structure;
mod tinyfy;
mod validate;

use std::collections::HashMap;

pub use builder::NetworkBuilder;
pub use canon::{canonical_code, is_equivalent, is_isomorphic_brute};
pub use restrict::{displays, lsa, restrict, Restrictor};
pub use structure::{root_kind, side_decomposition, RootKind, SideDecomposition};
pub use tinyfy::tinyfy;
pub use validate::{validate, ValidationReport, Violation};

pub(crate) use canon::{code_with, CodeTable};
pub(crate) use structure::cycles;

use crate::error::NetworkError;
use crate::taxa::{TaxaSet, Taxon};

/// A rooted directed graph with labelled sinks.
///
/// Construction only checks that arcs and labels refer to existing vertices;
/// [`validate`] reports whether the graph is a binary level-1 network. All
/// other operations in this module assume a valid network.
#[derive(Clone, Debug)]
pub struct Network {
    children: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
    labels: Vec<Option<Taxon>>,
    root: usize,
}

impl Network {
    /// The one-vertex network whose root is also its only leaf.
    pub fn leaf(taxon: Taxon) -> Self {
        Network {
            children: vec![Vec::new()],
            parents: vec![Vec::new()],
            labels: vec![Some(taxon)],
            root: 0,
        }
    }

    /// Builds a graph on vertices `0..vertex_count` without checking any
    /// network invariant.
    pub fn from_arcs<L>(
        vertex_count: usize,
        arcs: &[(usize, usize)],
        labels: L,
    ) -> Result<Self, NetworkError>
    where
        L: IntoIterator<Item = (usize, Taxon)>,
    {
        let mut children = vec![Vec::new(); vertex_count];
        let mut parents = vec![Vec::new(); vertex_count];
        for &(u, v) in arcs {
            if u >= vertex_count || v >= vertex_count {
                return Err(NetworkError::UnknownVertex(u, v));
            }
            children[u].push(v);
            parents[v].push(u);
        }
        let mut label_vec = vec![None; vertex_count];
        for (v, t) in labels {
            if v >= vertex_count {
                return Err(NetworkError::UnknownLabelledVertex(v));
            }
            label_vec[v] = Some(t);
        }
        Ok(Self::from_parts(children, parents, label_vec))
    }

    /// Like [`Network::from_arcs`] but rejects graphs that fail [`validate`].
    pub fn new<L>(vertex_count: usize, arcs: &[(usize, usize)], labels: L) -> Result<Self, NetworkError>
    where
        L: IntoIterator<Item = (usize, Taxon)>,
    {
        let net = Self::from_arcs(vertex_count, arcs, labels)?;
        let report = validate(&net);
        if report.is_valid() {
            Ok(net)
        } else {
            Err(NetworkError::Invalid(report))
        }
    }

    pub(crate) fn from_parts(
        children: Vec<Vec<usize>>,
        parents: Vec<Vec<usize>>,
        labels: Vec<Option<Taxon>>,
    ) -> Self {
        let root = parents.iter().position(Vec::is_empty).unwrap_or(0);
        Network {
            children,
            parents,
            labels,
            root,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.children.len()
    }

    pub fn arc_count(&self) -> usize {
        self.children.iter().map(Vec::len).sum()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn parents(&self, v: usize) -> &[usize] {
        &self.parents[v]
    }

    pub fn label(&self, v: usize) -> Option<&Taxon> {
        self.labels[v].as_ref()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.children
            .iter()
            .enumerate()
            .flat_map(|(u, cs)| cs.iter().map(move |&v| (u, v)))
    }

    pub fn is_reticulation(&self, v: usize) -> bool {
        self.parents[v].len() == 2
    }

    pub fn reticulation_count(&self) -> usize {
        (0..self.vertex_count())
            .filter(|&v| self.is_reticulation(v))
            .count()
    }

    /// Leaf vertices with their labels, in vertex order.
    pub fn leaves(&self) -> impl Iterator<Item = (usize, &Taxon)> + '_ {
        self.labels
            .iter()
            .enumerate()
            .filter_map(|(v, l)| l.as_ref().map(|t| (v, t)))
    }

    pub fn taxa(&self) -> TaxaSet {
        self.leaves().map(|(_, t)| t.clone()).collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().count()
    }

    pub fn leaf_vertex(&self, taxon: &Taxon) -> Option<usize> {
        self.leaves().find(|(_, t)| *t == taxon).map(|(v, _)| v)
    }

    pub(crate) fn leaf_index(&self) -> HashMap<Taxon, usize> {
        self.leaves().map(|(v, t)| (t.clone(), v)).collect()
    }

    /// Vertices in topological order starting at the root. Only meaningful
    /// for acyclic graphs; vertices on directed cycles are omitted.
    pub(crate) fn topological_order(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut indeg: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).rev().collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = stack.pop() {
            order.push(v);
            for &c in self.children[v].iter().rev() {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    stack.push(c);
                }
            }
        }
        order
    }

    /// Renames leaves through `f`. Vertex ids and arcs are unchanged.
    pub fn relabel<F>(&self, mut f: F) -> Network
    where
        F: FnMut(&Taxon) -> Taxon,
    {
        let labels = self.labels.iter().map(|l| l.as_ref().map(&mut f)).collect();
        Network {
            children: self.children.clone(),
            parents: self.parents.clone(),
            labels,
            root: self.root,
        }
    }

    /// Whether every cycle has exactly three vertices.
    pub fn is_tiny_cycle_network(&self) -> bool {
        cycles(self).iter().all(|c| c.size() == 3)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::taxa::taxon;

    pub fn cherry(x: &str, y: &str) -> Network {
        Network::new(3, &[(0, 1), (0, 2)], [(1, taxon(x)), (2, taxon(y))]).unwrap()
    }

    /// N(x;y): tiny cycle at the root, `x` below the reticulation.
    pub fn tiny_binet(x: &str, y: &str) -> Network {
        // 0 root, 1 side vertex, 2 reticulation
        Network::new(
            5,
            &[(0, 1), (0, 2), (1, 2), (1, 4), (2, 3)],
            [(3, taxon(x)), (4, taxon(y))],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::taxa::taxon;

    #[test]
    fn basic_accessors() {
        let n = tiny_binet("x", "y");
        assert_eq!(n.root(), 0);
        assert_eq!(n.vertex_count(), 5);
        assert_eq!(n.arc_count(), 5);
        assert_eq!(n.reticulation_count(), 1);
        assert_eq!(n.leaf_vertex(&taxon("x")), Some(3));
        assert_eq!(n.taxa().len(), 2);
        assert_eq!(n.topological_order()[0], 0);
    }

    #[test]
    fn from_arcs_rejects_out_of_range() {
        assert!(Network::from_arcs(2, &[(0, 2)], []).is_err());
        assert!(Network::from_arcs(2, &[(0, 1)], [(5, taxon("a"))]).is_err());
    }

    #[test]
    fn relabel_keeps_structure() {
        let n = cherry("a", "b").relabel(|t| taxon(&format!("{t}{t}")));
        assert_eq!(n.taxa(), crate::taxa::taxa(["aa", "bb"]));
    }
}
