//! Small labelled graphs used to inspect the solver's auxiliary structures.

use std::collections::BTreeSet;

use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;

/// A graph on labelled nodes `0..n` carrying both undirected edges and
/// directed arcs. Both may be loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxGraph<N> {
    nodes: Vec<N>,
    edges: BTreeSet<(usize, usize)>,
    arcs: BTreeSet<(usize, usize)>,
}

impl<N> AuxGraph<N> {
    pub fn new(nodes: Vec<N>) -> Self {
        AuxGraph {
            nodes,
            edges: BTreeSet::new(),
            arcs: BTreeSet::new(),
        }
    }

    pub fn nodes(&self) -> &[N] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a < self.nodes.len() && b < self.nodes.len());
        self.edges.insert((a.min(b), a.max(b)));
    }

    pub fn add_arc(&mut self, a: usize, b: usize) {
        assert!(a < self.nodes.len() && b < self.nodes.len());
        self.arcs.insert((a, b));
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        self.arcs.contains(&(a, b))
    }

    /// Connected components of the undirected edges, each sorted, ordered by
    /// their smallest node.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut uf = UnionFind::new(n);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        let mut index = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            let r = uf.find(v);
            if index[r] == usize::MAX {
                index[r] = out.len();
                out.push(Vec::new());
            }
            out[index[r]].push(v);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Nodes with no incoming arc. Loops count as incoming arcs only when
    /// `count_loops` is set.
    pub fn sources(&self, count_loops: bool) -> Vec<usize> {
        let mut has_in = vec![false; self.nodes.len()];
        for &(a, b) in &self.arcs {
            if a != b || count_loops {
                has_in[b] = true;
            }
        }
        (0..self.nodes.len()).filter(|&v| !has_in[v]).collect()
    }

    /// Strongly connected components of the arcs, listed so that every arc
    /// between different components points forward.
    pub fn strong_components(&self) -> Vec<Vec<usize>> {
        let mut g: DiGraph<(), ()> = DiGraph::with_capacity(self.nodes.len(), self.arcs.len());
        let ids: Vec<_> = (0..self.nodes.len()).map(|_| g.add_node(())).collect();
        for &(a, b) in &self.arcs {
            if a != b {
                g.add_edge(ids[a], ids[b], ());
            }
        }
        let mut sccs = petgraph::algo::tarjan_scc(&g);
        sccs.reverse();
        sccs.into_iter()
            .map(|c| {
                let mut v: Vec<usize> = c.into_iter().map(|i| i.index()).collect();
                v.sort_unstable();
                v
            })
            .collect()
    }

    /// Graph with the same edges and arcs and relabelled nodes.
    pub fn map_nodes<M>(&self, f: impl FnMut(&N) -> M) -> AuxGraph<M> {
        AuxGraph {
            nodes: self.nodes.iter().map(f).collect(),
            edges: self.edges.clone(),
            arcs: self.arcs.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_and_sources() {
        let mut g = AuxGraph::new(vec!['a', 'b', 'c', 'd']);
        g.add_edge(2, 0);
        g.add_edge(1, 1);
        g.add_arc(0, 1);
        g.add_arc(3, 3);
        assert_eq!(g.components(), vec![vec![0, 2], vec![1], vec![3]]);
        assert!(g.has_edge(0, 2) && g.has_edge(1, 1));
        assert_eq!(g.sources(false), vec![0, 2, 3]);
        assert_eq!(g.sources(true), vec![0, 2]);
        assert!(!g.is_connected());
    }

    #[test]
    fn strong_components_in_topological_order() {
        let mut g = AuxGraph::new(vec![(); 4]);
        g.add_arc(2, 1);
        g.add_arc(1, 2);
        g.add_arc(1, 0);
        g.add_arc(3, 2);
        let s = g.strong_components();
        let pos = |v: usize| s.iter().position(|c| c.contains(&v)).unwrap();
        assert_eq!(s.len(), 3);
        assert!(pos(3) < pos(1) && pos(1) < pos(0));
        assert_eq!(pos(1), pos(2));
    }
}
