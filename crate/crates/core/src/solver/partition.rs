use petgraph::unionfind::UnionFind;

use super::instance::Item;
use super::rules::{d_arcs, o_edges};
use crate::graph::AuxGraph;

pub(crate) const ABSENT: u32 = u32::MAX;

/// Union-find over a subset `x` of the taxon ids `0..n`.
pub(crate) struct Groups<'a> {
    x: &'a [u32],
    pos: Vec<u32>,
    uf: UnionFind<usize>,
}

/// Components of a [`Groups`], ordered by smallest member, with the
/// component index of every id (or [`ABSENT`]).
#[derive(Clone, Debug)]
pub(crate) struct Partition {
    pub comps: Vec<Vec<u32>>,
    pub comp_of: Vec<u32>,
}

impl<'a> Groups<'a> {
    /// `x` must be sorted.
    pub fn new(x: &'a [u32], n: usize) -> Self {
        let mut pos = vec![ABSENT; n];
        for (i, &t) in x.iter().enumerate() {
            pos[t as usize] = i as u32;
        }
        Groups {
            x,
            pos,
            uf: UnionFind::new(x.len()),
        }
    }

    /// Joins `a` and `b`; ids outside the subset are ignored.
    pub fn union(&mut self, a: u32, b: u32) {
        let (pa, pb) = (self.pos[a as usize], self.pos[b as usize]);
        if pa != ABSENT && pb != ABSENT {
            self.uf.union(pa as usize, pb as usize);
        }
    }

    pub fn finish(self) -> Partition {
        let mut index = vec![ABSENT; self.x.len()];
        let mut comps: Vec<Vec<u32>> = Vec::new();
        let mut comp_of = vec![ABSENT; self.pos.len()];
        for (i, &t) in self.x.iter().enumerate() {
            let r = self.uf.find(i);
            if index[r] == ABSENT {
                index[r] = comps.len() as u32;
                comps.push(Vec::new());
            }
            comps[index[r] as usize].push(t);
            comp_of[t as usize] = index[r];
        }
        Partition { comps, comp_of }
    }
}

impl Partition {
    /// Arcs between components for each id pair reported by `rule`,
    /// sorted and deduplicated. Loops are kept.
    pub fn arcs(&self, items: &[Item], rule: impl Fn(&Item, &mut dyn FnMut(u32, u32))) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for it in items {
            rule(it, &mut |a, b| {
                let (ca, cb) = (self.comp_of[a as usize], self.comp_of[b as usize]);
                if ca != ABSENT && cb != ABSENT {
                    out.push((ca as usize, cb as usize));
                }
            });
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn union_of(&self, comps: &[usize]) -> Vec<u32> {
        let mut v: Vec<u32> = comps.iter().flat_map(|&c| self.comps[c].iter().copied()).collect();
        v.sort_unstable();
        v
    }
}

/// Nodes with no incoming arc; a loop counts as incoming when `count_loops`.
pub(crate) fn sources(n: usize, arcs: &[(usize, usize)], count_loops: bool) -> Vec<usize> {
    let mut has_in = vec![false; n];
    for &(a, b) in arcs {
        if a != b || count_loops {
            has_in[b] = true;
        }
    }
    (0..n).filter(|&v| !has_in[v]).collect()
}

/// Nonempty strict node sets with no arc entering from outside, in
/// include-first depth-first order over the strong components.
pub(crate) struct ClosedSets {
    sccs: Vec<Vec<usize>>,
    preds: Vec<Vec<usize>>,
    stack: Vec<(usize, Vec<bool>)>,
}

impl ClosedSets {
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Self {
        let mut g = AuxGraph::new(vec![(); n]);
        for &(a, b) in arcs {
            g.add_arc(a, b);
        }
        let sccs = g.strong_components();
        let mut scc_of = vec![0; n];
        for (i, c) in sccs.iter().enumerate() {
            for &v in c {
                scc_of[v] = i;
            }
        }
        let mut preds = vec![Vec::new(); sccs.len()];
        for &(a, b) in arcs {
            let (sa, sb) = (scc_of[a], scc_of[b]);
            if sa != sb && !preds[sb].contains(&sa) {
                preds[sb].push(sa);
            }
        }
        ClosedSets {
            sccs,
            preds,
            stack: vec![(0, Vec::new())],
        }
    }

    /// Strong components with no arc from another component.
    pub fn source_components(&self) -> Vec<&[usize]> {
        (0..self.sccs.len())
            .filter(|&i| self.preds[i].is_empty())
            .map(|i| self.sccs[i].as_slice())
            .collect()
    }
}

impl Iterator for ClosedSets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let k = self.sccs.len();
        while let Some((i, chosen)) = self.stack.pop() {
            if i == k {
                let count = chosen.iter().filter(|&&c| c).count();
                if count == 0 || count == k {
                    continue;
                }
                let mut set: Vec<usize> = (0..k)
                    .filter(|&s| chosen[s])
                    .flat_map(|s| self.sccs[s].iter().copied())
                    .collect();
                set.sort_unstable();
                return Some(set);
            }
            let mut excluded = chosen.clone();
            excluded.push(false);
            self.stack.push((i + 1, excluded));
            if self.preds[i].iter().all(|&p| chosen[p]) {
                let mut included = chosen;
                included.push(true);
                self.stack.push((i + 1, included));
            }
        }
        None
    }
}

/// Closed sets ordered by decreasing `weight`. Only the first `limit` sets
/// are sorted; any further sets follow in enumeration order.
pub(crate) fn closed_sets_by_weight(
    n: usize,
    arcs: &[(usize, usize)],
    weight: impl Fn(&[usize]) -> usize,
    limit: usize,
) -> impl Iterator<Item = Vec<usize>> {
    let mut it = ClosedSets::new(n, arcs);
    let mut head: Vec<Vec<usize>> = it.by_ref().take(limit).collect();
    head.sort_by_key(|s| std::cmp::Reverse(weight(s)));
    head.into_iter().chain(it)
}

/// Proper 2-colourings of a graph up to swapping the colours; the first
/// node is always coloured `false`.
pub(crate) struct Colourings {
    base: Vec<bool>,
    comp_of: Vec<usize>,
    flip: Vec<bool>,
    key: Vec<bool>,
    done: bool,
}

impl Colourings {
    /// `key` permutes the order: bit `i` flips component `i + 1` relative to
    /// the natural order.
    pub fn new(n: usize, edges: &[(usize, usize)], mut key: impl FnMut(usize) -> bool) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut base = vec![false; n];
        let mut comp_of = vec![usize::MAX; n];
        let mut ncomp = 0;
        let mut ok = true;
        for s in 0..n {
            if comp_of[s] != usize::MAX {
                continue;
            }
            comp_of[s] = ncomp;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if comp_of[w] == usize::MAX {
                        comp_of[w] = ncomp;
                        base[w] = !base[v];
                        stack.push(w);
                    } else if base[w] == base[v] {
                        ok = false;
                    }
                }
            }
            ncomp += 1;
        }
        let mut flipkey = vec![false; ncomp];
        for (i, k) in flipkey.iter_mut().enumerate().skip(1) {
            *k = key(i - 1);
        }
        Colourings {
            base,
            comp_of,
            flip: vec![false; ncomp],
            key: flipkey,
            done: !ok,
        }
    }
}

impl Iterator for Colourings {
    type Item = Vec<bool>;

    fn next(&mut self) -> Option<Vec<bool>> {
        if self.done {
            return None;
        }
        let colour = (0..self.base.len())
            .map(|v| {
                let c = self.comp_of[v];
                self.base[v] ^ self.flip[c] ^ self.key[c]
            })
            .collect();
        let mut i = 1;
        loop {
            if i >= self.flip.len() {
                self.done = true;
                break;
            }
            self.flip[i] = !self.flip[i];
            if self.flip[i] {
                break;
            }
            i += 1;
        }
        Some(colour)
    }
}

/// Splits `side` into the leaf sets of its pendant sidenetworks, from the
/// root down, by repeatedly taking the source of `D` with the smallest
/// taxon. `None` if some `D` has no source.
pub(crate) fn partition_side_ids(
    n: usize,
    items: &[Item],
    side: &[u32],
    in_high: &[bool],
) -> Option<Vec<Vec<u32>>> {
    let mut rest = side.to_vec();
    let mut in_side = vec![false; n];
    for &t in side {
        in_side[t as usize] = true;
    }
    let high = |t: u32| in_high[t as usize];
    let mut blocks = Vec::new();
    while !rest.is_empty() {
        let mut g = Groups::new(&rest, n);
        for it in items {
            o_edges(it, |t| in_side[t as usize], high, |a, b| g.union(a, b));
        }
        let part = g.finish();
        let arcs = part.arcs(items, |it, f| d_arcs(it, |t| in_side[t as usize], high, f));
        let first = *sources(part.comps.len(), &arcs, true).first()?;
        let block = part.comps[first].clone();
        for &t in &block {
            in_side[t as usize] = false;
        }
        rest.retain(|&t| in_side[t as usize]);
        blocks.push(block);
    }
    Some(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_sets_respect_arcs() {
        let arcs = [(0, 1), (1, 2), (2, 1), (3, 3)];
        let mut sets: Vec<Vec<usize>> = ClosedSets::new(4, &arcs).collect();
        sets.sort();
        assert_eq!(sets, vec![vec![0], vec![0, 1, 2], vec![0, 3], vec![3]]);
        let cs = ClosedSets::new(4, &arcs);
        let mut srcs = cs.source_components();
        srcs.sort();
        assert_eq!(srcs, vec![&[0][..], &[3][..]]);
    }

    #[test]
    fn closed_sets_sorted_by_weight() {
        let sets: Vec<Vec<usize>> = closed_sets_by_weight(3, &[], |s| s.len(), 100).collect();
        assert_eq!(sets.len(), 6);
        assert!(sets.windows(2).all(|w| w[0].len() >= w[1].len()));
    }

    #[test]
    fn colourings() {
        let all: Vec<Vec<bool>> = Colourings::new(3, &[(0, 1)], |_| false).collect();
        assert_eq!(
            all,
            vec![vec![false, true, false], vec![false, true, true]]
        );
        assert_eq!(Colourings::new(3, &[(0, 1), (1, 2), (0, 2)], |_| false).count(), 0);
        assert_eq!(Colourings::new(4, &[], |_| true).count(), 8);
        assert_eq!(Colourings::new(0, &[], |_| false).count(), 1);
    }
}
