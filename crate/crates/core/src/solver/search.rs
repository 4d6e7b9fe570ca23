use std::collections::HashMap;
use std::rc::Rc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::instance::{restrict_items, Instance, Item};
use super::partition::{closed_sets_by_weight, partition_side_ids, sources, ClosedSets, Colourings, Groups, ABSENT};
use super::rules::{height_arcs, k_edges, kdagger_edges, m_edges, r_edges, w_edges};
use super::SolverConfig;
use crate::network::{Network, Restrictor};
use crate::smallnet::{classify_valid, hang_cycle, join, realize};

/// Closed sets sorted by size before the remainder is streamed.
const SORTED_CANDIDATES: usize = 1 << 16;

#[derive(Clone, Debug)]
pub(crate) enum Res {
    Solved(Rc<Network>),
    No,
    Unknown,
}

/// Outcome of one way of building a cycle-rooted network.
enum Attempt {
    Found(Rc<Network>),
    /// Some subset of the taxa has no solution, so neither has the node.
    Refuted,
    /// This route cannot produce a solution.
    Failed,
    Unknown,
}

pub(crate) struct Search<'a> {
    inst: &'a Instance,
    cfg: &'a SolverConfig,
    tiny_only: bool,
    memo: HashMap<Vec<u32>, Res>,
    rng: Option<ChaCha8Rng>,
}

impl<'a> Search<'a> {
    pub fn new(inst: &'a Instance, cfg: &'a SolverConfig, tiny_only: bool) -> Self {
        let rng = (cfg.deterministic_seed != 0).then(|| ChaCha8Rng::seed_from_u64(cfg.deterministic_seed));
        Search {
            inst,
            cfg,
            tiny_only,
            memo: HashMap::new(),
            rng,
        }
    }

    pub fn run(&mut self) -> Res {
        let all: Vec<u32> = (0..self.inst.len() as u32).collect();
        let items = self.inst.items.clone();
        self.node(&all, items)
    }

    fn node(&mut self, x: &[u32], items: Vec<Item>) -> Res {
        if let Some(r) = self.memo.get(x) {
            return r.clone();
        }
        let r = self.compute(x, items);
        self.memo.insert(x.to_vec(), r.clone());
        r
    }

    /// Solves the sub-instance on `block`, a sorted subset of the node's taxa.
    fn child(&mut self, block: &[u32], items: &[Item]) -> Res {
        if let Some(r) = self.memo.get(block) {
            return r.clone();
        }
        let keep = self.inst.membership(block);
        let sub = restrict_items(items, &keep);
        self.node(block, sub)
    }

    fn leaf(&self, t: u32) -> Rc<Network> {
        Rc::new(Network::leaf(self.inst.taxon(t).clone()))
    }

    fn compute(&mut self, x: &[u32], items: Vec<Item>) -> Res {
        let n = self.inst.len();
        match x.len() {
            0 => unreachable!("empty node"),
            1 => return Res::Solved(self.leaf(x[0])),
            2 => {
                return match items.as_slice() {
                    [] => Res::Solved(Rc::new(join(&self.leaf(x[0]), &self.leaf(x[1])))),
                    [it] => Res::Solved(Rc::new(realize(&self.inst.smallnet(it)))),
                    _ => Res::No,
                }
            }
            _ => {}
        }
        if has_conflict(&items) {
            return Res::No;
        }

        let mut g = Groups::new(x, n);
        for it in &items {
            r_edges(it, |a, b| g.union(a, b));
        }
        let r = g.finish();
        if r.comps.len() > 1 {
            return self.disconnected(&r.comps, &items, &r.comp_of);
        }

        let mut unknown = false;
        let tiny_first = self.cfg.explore_tiny_first || self.tiny_only;
        if tiny_first {
            match self.tiny_attempt(x, &items) {
                Attempt::Found(net) => return Res::Solved(net),
                Attempt::Refuted => return Res::No,
                Attempt::Unknown => unknown = true,
                Attempt::Failed => {}
            }
        }
        if !self.tiny_only {
            match self.largish_attempt(x, &items) {
                Attempt::Found(net) => return Res::Solved(net),
                Attempt::Refuted => return Res::No,
                Attempt::Unknown => unknown = true,
                Attempt::Failed => {}
            }
        }
        if !tiny_first {
            match self.tiny_attempt(x, &items) {
                Attempt::Found(net) => return Res::Solved(net),
                Attempt::Refuted => return Res::No,
                Attempt::Unknown => unknown = true,
                Attempt::Failed => {}
            }
        }
        if unknown {
            Res::Unknown
        } else {
            Res::No
        }
    }

    fn disconnected(&mut self, comps: &[Vec<u32>], items: &[Item], comp_of: &[u32]) -> Res {
        let mut nets = Vec::with_capacity(comps.len());
        let mut unknown = false;
        for c in comps {
            match self.child(c, items) {
                Res::Solved(net) => nets.push(net),
                Res::No => return Res::No,
                Res::Unknown => unknown = true,
            }
        }
        if unknown {
            return Res::Unknown;
        }
        let mut acc = (*nets[0]).clone();
        for net in &nets[1..] {
            acc = join(&acc, net);
        }
        if self.verify(&acc, items, comp_of) {
            Res::Solved(Rc::new(acc))
        } else {
            debug_assert!(false, "join of component solutions failed verification");
            Res::No
        }
    }

    /// A root cycle with one pendant network above and one below, the high
    /// part being any closed set of the same-height components.
    fn tiny_attempt(&mut self, x: &[u32], items: &[Item]) -> Attempt {
        let n = self.inst.len();
        let mut g = Groups::new(x, n);
        for it in items {
            kdagger_edges(it, |a, b| g.union(a, b));
        }
        let k = g.finish();
        if k.comps.len() < 2 {
            return Attempt::Failed;
        }
        let arcs = k.arcs(items, |it, f| height_arcs(it, f));
        let closed = ClosedSets::new(k.comps.len(), &arcs);
        let srcs = closed.source_components();
        let mut chosen: Vec<usize> = srcs.iter().flat_map(|c| c.iter().copied()).collect();
        if chosen.len() == k.comps.len() {
            if srcs.len() < 2 {
                return Attempt::Failed;
            }
            let largest = k.comp_of[*x.last().unwrap() as usize] as usize;
            let drop = srcs.iter().position(|c| c.contains(&largest)).unwrap();
            chosen = srcs
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != drop)
                .flat_map(|(_, c)| c.iter().copied())
                .collect();
        }
        let high = k.union_of(&chosen);
        let in_high = self.inst.membership(&high);
        let low: Vec<u32> = x.iter().copied().filter(|&t| !in_high[t as usize]).collect();

        let (nh, nl) = match (self.child(&high, items), self.child(&low, items)) {
            (Res::No, _) | (_, Res::No) => return Attempt::Refuted,
            (Res::Solved(a), Res::Solved(b)) => (a, b),
            _ => return Attempt::Unknown,
        };
        let net = hang_cycle(&[&nh], &[], &nl);
        let block_of: Vec<u32> = in_high.iter().map(|&h| h as u32).collect();
        if self.verify(&net, items, &block_of) {
            Attempt::Found(Rc::new(net))
        } else {
            Attempt::Failed
        }
    }

    fn largish_attempt(&mut self, x: &[u32], items: &[Item]) -> Attempt {
        let n = self.inst.len();
        let mut g = Groups::new(x, n);
        for it in items {
            k_edges(it, |a, b| g.union(a, b));
        }
        let k = g.finish();
        let c = k.comps.len();
        if c < 2 {
            return Attempt::Failed;
        }
        let arcs = k.arcs(items, |it, f| height_arcs(it, f));

        let shortcut = if semi_dense(x, items, n) {
            match sources(c, &arcs, false).as_slice() {
                &[s] => Some(vec![s]),
                _ => None,
            }
        } else {
            None
        };
        let sizes: Vec<usize> = k.comps.iter().map(Vec::len).collect();
        let weight = |s: &[usize]| s.iter().map(|&i| sizes[i]).sum::<usize>();
        let mut ordered = closed_sets_by_weight(c, &arcs, weight, SORTED_CANDIDATES);
        let mut head: Vec<Vec<usize>> = ordered.by_ref().take(SORTED_CANDIDATES).collect();
        if let Some(rng) = self.rng.as_mut() {
            shuffle_runs(&mut head, |s| weight(s), rng);
        }
        let first = shortcut.clone();
        let candidates = first
            .into_iter()
            .chain(head.into_iter().chain(ordered).filter(|s| Some(s) != shortcut.as_ref()));

        let mut guesses = 0usize;
        let mut unknown = false;
        for cand in candidates {
            if guesses >= self.cfg.guess_budget {
                return Attempt::Unknown;
            }
            let high = k.union_of(&cand);
            match self.try_high_set(x, items, &high, &mut guesses) {
                Attempt::Failed => {}
                Attempt::Unknown => unknown = true,
                done => return done,
            }
        }
        if unknown {
            Attempt::Unknown
        } else {
            Attempt::Failed
        }
    }

    fn try_high_set(&mut self, x: &[u32], items: &[Item], high: &[u32], guesses: &mut usize) -> Attempt {
        let n = self.inst.len();
        let in_high = self.inst.membership(high);
        let is_high = |t: u32| in_high[t as usize];
        let low: Vec<u32> = x.iter().copied().filter(|&t| !is_high(t)).collect();

        let mut g = Groups::new(high, n);
        for it in items {
            m_edges(it, is_high, |a, b| g.union(a, b));
        }
        let m = g.finish();
        let w = m.arcs(items, |it, f| w_edges(it, is_high, f));
        let rng = &mut self.rng;
        let colourings = Colourings::new(m.comps.len(), &w, |_| rng.as_mut().is_some_and(|r| r.gen()));

        let mut any = false;
        let mut unknown = false;
        for colour in colourings {
            if *guesses >= self.cfg.guess_budget {
                return Attempt::Unknown;
            }
            *guesses += 1;
            any = true;
            let pick = |side: bool| m.union_of(&(0..colour.len()).filter(|&i| colour[i] == side).collect::<Vec<_>>());
            let (left, right) = (pick(false), pick(true));
            let Some(lb) = partition_side_ids(n, items, &left, &in_high) else {
                continue;
            };
            let Some(rb) = partition_side_ids(n, items, &right, &in_high) else {
                continue;
            };
            match self.build_cycle(items, &lb, &rb, &low) {
                Attempt::Failed => {}
                Attempt::Unknown => unknown = true,
                done => return done,
            }
        }
        if !any {
            *guesses += 1;
        }
        if unknown {
            Attempt::Unknown
        } else {
            Attempt::Failed
        }
    }

    fn build_cycle(&mut self, items: &[Item], lb: &[Vec<u32>], rb: &[Vec<u32>], low: &[u32]) -> Attempt {
        let mut nets: Vec<Rc<Network>> = Vec::with_capacity(lb.len() + rb.len() + 1);
        let mut unknown = false;
        for block in lb.iter().chain(rb).map(Vec::as_slice).chain([low]) {
            match self.child(block, items) {
                Res::Solved(net) => nets.push(net),
                Res::No => return Attempt::Refuted,
                Res::Unknown => unknown = true,
            }
        }
        if unknown {
            return Attempt::Unknown;
        }
        let refs: Vec<&Network> = nets.iter().map(|r| r.as_ref()).collect();
        let net = hang_cycle(&refs[..lb.len()], &refs[lb.len()..lb.len() + rb.len()], refs[refs.len() - 1]);
        let mut block_of = vec![ABSENT; self.inst.len()];
        for (i, block) in lb.iter().chain(rb).map(Vec::as_slice).chain([low]).enumerate() {
            for &t in block {
                block_of[t as usize] = i as u32;
            }
        }
        if self.verify(&net, items, &block_of) {
            Attempt::Found(Rc::new(net))
        } else {
            Attempt::Failed
        }
    }

    /// Checks the items that span more than one block against `net`.
    fn verify(&self, net: &Network, items: &[Item], block_of: &[u32]) -> bool {
        let spanning: Vec<&Item> = items
            .iter()
            .filter(|it| {
                let b = block_of[it.leaves[0] as usize];
                it.leaves()[1..].iter().any(|&l| block_of[l as usize] != b)
            })
            .collect();
        if spanning.is_empty() {
            return true;
        }
        let mut vertex = vec![usize::MAX; self.inst.len()];
        for (v, t) in net.leaves() {
            vertex[self.inst.id(t) as usize] = v;
        }
        let r = Restrictor::new(net);
        spanning.into_iter().all(|it| {
            let vs: Vec<usize> = it.leaves().iter().map(|&l| vertex[l as usize]).collect();
            classify_valid(&r.restrict_vertices(&vs)).is_some_and(|sn| sn == self.inst.smallnet(it))
        })
    }
}

/// Two different items on the same leaf set.
fn has_conflict(items: &[Item]) -> bool {
    let mut keys: Vec<[u32; 3]> = items
        .iter()
        .map(|it| {
            let mut k = it.leaves;
            k.sort_unstable();
            k
        })
        .collect();
    keys.sort_unstable();
    keys.windows(2).any(|w| w[0] == w[1])
}

/// Every pair of taxa in `x` occurs together in some item.
fn semi_dense(x: &[u32], items: &[Item], n: usize) -> bool {
    let k = x.len();
    let mut pos = vec![ABSENT; n];
    for (i, &t) in x.iter().enumerate() {
        pos[t as usize] = i as u32;
    }
    let mut seen = vec![false; k * k];
    let mut count = 0;
    for it in items {
        let ls = it.leaves();
        for i in 0..ls.len() {
            for j in i + 1..ls.len() {
                let (a, b) = (pos[ls[i] as usize] as usize, pos[ls[j] as usize] as usize);
                let idx = a.min(b) * k + a.max(b);
                if !seen[idx] {
                    seen[idx] = true;
                    count += 1;
                }
            }
        }
    }
    count == k * (k - 1) / 2
}

/// Shuffles each run of consecutive elements with equal key.
fn shuffle_runs<T>(v: &mut [T], key: impl Fn(&T) -> usize, rng: &mut ChaCha8Rng) {
    use rand::seq::SliceRandom;
    let mut start = 0;
    while start < v.len() {
        let k = key(&v[start]);
        let mut end = start + 1;
        while end < v.len() && key(&v[end]) == k {
            end += 1;
        }
        v[start..end].shuffle(rng);
        start = end;
    }
}
