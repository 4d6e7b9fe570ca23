use super::Network;
use crate::taxa::TaxaSet;

/// A cycle of a valid network: source, reticulation and the two internal
/// paths, each listed from the source side downwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Cycle {
    pub source: usize,
    pub reticulation: usize,
    pub sides: [Vec<usize>; 2],
}

impl Cycle {
    pub fn size(&self) -> usize {
        2 + self.sides[0].len() + self.sides[1].len()
    }

    /// The child of side vertex `v` that is not on the cycle.
    pub fn pendant(&self, net: &Network, side: usize, index: usize) -> usize {
        let path = &self.sides[side];
        let next = path.get(index + 1).copied().unwrap_or(self.reticulation);
        let v = path[index];
        net.children(v)
            .iter()
            .copied()
            .find(|&c| c != next)
            .expect("side vertex has a pendant child")
    }
}

/// All cycles of a valid network, ordered by reticulation id.
pub(crate) fn cycles(net: &Network) -> Vec<Cycle> {
    let n = net.vertex_count();
    let mut mark = vec![usize::MAX; n];
    let mut out = Vec::new();
    for r in 0..n {
        if net.parents(r).len() != 2 {
            continue;
        }
        let (p1, p2) = (net.parents(r)[0], net.parents(r)[1]);
        // In a level-1 network the path above each parent of r is unique
        // until it meets the source.
        let mut chain1 = vec![p1];
        mark[p1] = r;
        let mut v = p1;
        while net.parents(v).len() == 1 {
            v = net.parents(v)[0];
            mark[v] = r;
            chain1.push(v);
        }
        let mut chain2 = Vec::new();
        let mut w = p2;
        while mark[w] != r {
            chain2.push(w);
            w = net.parents(w)[0];
        }
        let source = w;
        let cut = chain1.iter().position(|&u| u == source).unwrap();
        chain1.truncate(cut);
        chain1.reverse();
        chain2.reverse();
        out.push(Cycle {
            source,
            reticulation: r,
            sides: [chain1, chain2],
        });
    }
    out
}

/// Taxa below vertex `v`.
pub(crate) fn leaves_below(net: &Network, v: usize) -> TaxaSet {
    let mut seen = vec![false; net.vertex_count()];
    let mut stack = vec![v];
    let mut out = TaxaSet::new();
    seen[v] = true;
    while let Some(u) = stack.pop() {
        if let Some(t) = net.label(u) {
            out.insert(t.clone());
        }
        for &c in net.children(u) {
            if !seen[c] {
                seen[c] = true;
                stack.push(c);
            }
        }
    }
    out
}

/// How the root of a network sits relative to the cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootKind {
    NotCycleRooted,
    TinyCycleRooted,
    LargishCycleRooted,
}

pub fn root_kind(net: &Network) -> RootKind {
    match cycles(net).into_iter().find(|c| c.source == net.root()) {
        None => RootKind::NotCycleRooted,
        Some(c) if c.size() == 3 => RootKind::TinyCycleRooted,
        Some(_) => RootKind::LargishCycleRooted,
    }
}

/// Leaf sets of the parts of a network around its root cycle.
///
/// `low` holds the taxa below the root cycle's reticulation and the blocks
/// are the leaf sets of the pendant subnetworks along each side, nearest to
/// the root first. The left side is the one holding the smallest high taxon.
/// A network that is not cycle-rooted has every taxon high, gathered in a
/// single left block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideDecomposition {
    pub high: TaxaSet,
    pub low: TaxaSet,
    pub left_blocks: Vec<TaxaSet>,
    pub right_blocks: Vec<TaxaSet>,
}

pub fn side_decomposition(net: &Network) -> SideDecomposition {
    let Some(cycle) = cycles(net).into_iter().find(|c| c.source == net.root()) else {
        let high = net.taxa();
        return SideDecomposition {
            left_blocks: vec![high.clone()],
            high,
            low: TaxaSet::new(),
            right_blocks: Vec::new(),
        };
    };
    let low = leaves_below(net, cycle.reticulation);
    let mut parts: Vec<Vec<TaxaSet>> = (0..2)
        .map(|s| {
            (0..cycle.sides[s].len())
                .map(|i| leaves_below(net, cycle.pendant(net, s, i)))
                .collect()
        })
        .collect();
    let high: TaxaSet = parts.iter().flatten().flatten().cloned().collect();
    let first = high.iter().next();
    let holds_first = |side: &[TaxaSet]| first.is_some_and(|t| side.iter().any(|b| b.contains(t)));
    if !holds_first(&parts[0]) {
        parts.swap(0, 1);
    }
    let right_blocks = parts.pop().unwrap();
    let left_blocks = parts.pop().unwrap();
    SideDecomposition {
        high,
        low,
        left_blocks,
        right_blocks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::fixtures::*;
    use crate::taxa::{taxa, taxon};

    #[test]
    fn finds_tiny_cycle() {
        let n = tiny_binet("x", "y");
        let cs = cycles(&n);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].source, 0);
        assert_eq!(cs[0].reticulation, 2);
        assert_eq!(cs[0].size(), 3);
        assert_eq!(root_kind(&n), RootKind::TinyCycleRooted);
        let d = side_decomposition(&n);
        assert_eq!(d.low, taxa(["x"]));
        assert_eq!(d.left_blocks, vec![taxa(["y"])]);
        assert!(d.right_blocks.is_empty());
    }

    #[test]
    fn four_cycle_sides() {
        // S1(x,y;z): root 0, sides 1 (pendant x) and 2 (pendant y), reticulation 3.
        let n = Network::new(
            7,
            &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 5), (3, 6)],
            [(4, taxon("y")), (5, taxon("x")), (6, taxon("z"))],
        )
        .unwrap();
        assert_eq!(root_kind(&n), RootKind::LargishCycleRooted);
        let d = side_decomposition(&n);
        assert_eq!(d.left_blocks, vec![taxa(["x"])]);
        assert_eq!(d.right_blocks, vec![taxa(["y"])]);
        assert_eq!(d.high, taxa(["x", "y"]));
        assert!(!n.is_tiny_cycle_network());
    }

    #[test]
    fn tree_and_leaf() {
        assert_eq!(root_kind(&cherry("a", "b")), RootKind::NotCycleRooted);
        assert_eq!(root_kind(&Network::leaf(taxon("a"))), RootKind::NotCycleRooted);
        let d = side_decomposition(&cherry("a", "b"));
        assert_eq!(d.high, taxa(["a", "b"]));
        assert!(d.low.is_empty() && d.right_blocks.is_empty());
    }
}
