use super::Network;
use crate::taxa::Taxon;

/// Incremental construction of a [`Network`].
///
/// Vertices may be removed or suppressed before [`NetworkBuilder::build`],
/// which renumbers the surviving vertices densely.
#[derive(Clone, Debug, Default)]
pub struct NetworkBuilder {
    children: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
    labels: Vec<Option<Taxon>>,
    alive: Vec<bool>,
}

impl NetworkBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.children.push(Vec::new());
        self.parents.push(Vec::new());
        self.labels.push(None);
        self.alive.push(true);
        self.children.len() - 1
    }

    pub fn add_leaf(&mut self, taxon: Taxon) -> usize {
        let v = self.add_vertex();
        self.labels[v] = Some(taxon);
        v
    }

    pub fn add_arc(&mut self, u: usize, v: usize) {
        self.children[u].push(v);
        self.parents[v].push(u);
    }

    /// Copies `net` into the builder and returns the id of its root.
    pub fn graft(&mut self, net: &Network) -> usize {
        let offset = self.children.len();
        for v in 0..net.vertex_count() {
            self.children
                .push(net.children(v).iter().map(|c| c + offset).collect());
            self.parents
                .push(net.parents(v).iter().map(|p| p + offset).collect());
            self.labels.push(net.label(v).cloned());
            self.alive.push(true);
        }
        net.root() + offset
    }

    pub(crate) fn from_network(net: &Network) -> Self {
        let mut b = Self::new();
        b.graft(net);
        b
    }

    pub(crate) fn parents(&self, v: usize) -> &[usize] {
        &self.parents[v]
    }

    /// Removes one copy of the arc `u -> v`, if present.
    pub(crate) fn remove_arc(&mut self, u: usize, v: usize) {
        if let Some(i) = self.children[u].iter().position(|&c| c == v) {
            self.children[u].swap_remove(i);
        }
        if let Some(i) = self.parents[v].iter().position(|&p| p == u) {
            self.parents[v].swap_remove(i);
        }
    }

    /// Replaces the arc `u -> old` by `u -> new`.
    pub(crate) fn redirect(&mut self, u: usize, old: usize, new: usize) {
        self.remove_arc(u, old);
        self.add_arc(u, new);
    }

    pub(crate) fn remove_vertex(&mut self, v: usize) {
        for c in std::mem::take(&mut self.children[v]) {
            if let Some(i) = self.parents[c].iter().position(|&p| p == v) {
                self.parents[c].swap_remove(i);
            }
        }
        for p in std::mem::take(&mut self.parents[v]) {
            if let Some(i) = self.children[p].iter().position(|&c| c == v) {
                self.children[p].swap_remove(i);
            }
        }
        self.alive[v] = false;
    }

    /// Repeatedly collapses parallel arcs and splices out unlabelled vertices
    /// of indegree 1 and outdegree 1 until neither applies.
    pub(crate) fn suppress(&mut self) {
        let mut queue: Vec<usize> = (0..self.children.len())
            .filter(|&v| self.alive[v])
            .collect();
        while let Some(v) = queue.pop() {
            if !self.alive[v] {
                continue;
            }
            let mut i = 0;
            while i < self.children[v].len() {
                let c = self.children[v][i];
                if self.children[v][..i].contains(&c) {
                    self.children[v].remove(i);
                    let j = self.parents[c].iter().position(|&p| p == v).unwrap();
                    self.parents[c].remove(j);
                    queue.push(c);
                    queue.push(v);
                } else {
                    i += 1;
                }
            }
            if self.parents[v].len() == 1
                && self.children[v].len() == 1
                && self.labels[v].is_none()
            {
                let p = self.parents[v][0];
                let c = self.children[v][0];
                self.remove_vertex(v);
                self.add_arc(p, c);
                queue.push(p);
                queue.push(c);
            }
        }
    }

    /// Finishes construction without validating. The root is the first
    /// surviving vertex of indegree 0.
    pub fn build(self) -> Network {
        let mut new_id = vec![usize::MAX; self.children.len()];
        let mut next = 0;
        for (v, id) in new_id.iter_mut().enumerate() {
            if self.alive[v] {
                *id = next;
                next += 1;
            }
        }
        let mut children = Vec::with_capacity(next);
        let mut parents = Vec::with_capacity(next);
        let mut labels = Vec::with_capacity(next);
        for v in 0..self.children.len() {
            if !self.alive[v] {
                continue;
            }
            children.push(self.children[v].iter().map(|&c| new_id[c]).collect());
            parents.push(self.parents[v].iter().map(|&p| new_id[p]).collect());
            labels.push(self.labels[v].clone());
        }
        Network::from_parts(children, parents, labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::validate;
    use crate::taxa::taxon;

    #[test]
    fn graft_and_join() {
        let mut b = NetworkBuilder::new();
        let a = b.graft(&Network::leaf(taxon("a")));
        let c = b.graft(&Network::leaf(taxon("c")));
        let r = b.add_vertex();
        b.add_arc(r, a);
        b.add_arc(r, c);
        let n = b.build();
        assert!(validate(&n).is_valid());
        assert_eq!(n.root(), 2);
    }

    #[test]
    fn suppress_chain_and_parallel_arcs() {
        // 0 -> 1 -> 2 -> {3, 3}; 3 -> 4 (leaf a); 0 -> 5 (leaf b)
        let mut b = NetworkBuilder::new();
        for _ in 0..4 {
            b.add_vertex();
        }
        let a = b.add_leaf(taxon("a"));
        let l = b.add_leaf(taxon("b"));
        b.add_arc(0, 1);
        b.add_arc(1, 2);
        b.add_arc(2, 3);
        b.add_arc(2, 3);
        b.add_arc(3, a);
        b.add_arc(0, l);
        b.suppress();
        let n = b.build();
        assert!(validate(&n).is_valid(), "{}", validate(&n));
        assert_eq!(n.vertex_count(), 3);
    }
}
