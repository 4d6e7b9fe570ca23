use std::collections::HashMap;
use std::fmt;

use super::Network;
use crate::taxa::Taxon;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    RootCount(usize),
    DirectedCycle,
    ParallelArcs(usize, usize),
    DegreeTooHigh(usize),
    ReticulationOutdegree(usize),
    Unsuppressed(usize),
    UnlabelledLeaf(usize),
    LabelledInternal(usize),
    DuplicateLabel(Taxon),
    NotLevel1,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "network has no vertices"),
            Violation::RootCount(n) => {
                write!(f, "expected a single root, found {n} indegree-0 vertices")
            }
            Violation::DirectedCycle => write!(f, "graph contains a directed cycle"),
            Violation::ParallelArcs(u, v) => write!(f, "parallel arcs from {u} to {v}"),
            Violation::DegreeTooHigh(v) => {
                write!(f, "vertex {v} is not binary (indegree or outdegree above 2)")
            }
            Violation::ReticulationOutdegree(v) => {
                write!(f, "reticulation {v} must have outdegree 1")
            }
            Violation::Unsuppressed(v) => {
                write!(f, "vertex {v} has indegree 1 and outdegree 1")
            }
            Violation::UnlabelledLeaf(v) => write!(f, "leaf {v} has no label"),
            Violation::LabelledInternal(v) => write!(f, "non-leaf vertex {v} carries a label"),
            Violation::DuplicateLabel(t) => write!(f, "label {t} is used on several leaves"),
            Violation::NotLevel1 => write!(f, "not level-1: two cycles share a vertex"),
        }
    }
}

/// Result of [`validate`]; empty when the graph is a valid network.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks that `net` is a rooted binary level-1 network with a bijective
/// leaf labelling.
pub fn validate(net: &Network) -> ValidationReport {
    let mut out = Vec::new();
    let n = net.vertex_count();
    if n == 0 {
        out.push(Violation::Empty);
        return ValidationReport { violations: out };
    }

    let roots = (0..n).filter(|&v| net.parents(v).is_empty()).count();
    if roots != 1 {
        out.push(Violation::RootCount(roots));
    }
    if net.topological_order().len() != n {
        out.push(Violation::DirectedCycle);
    }

    for u in 0..n {
        let cs = net.children(u);
        for (i, &c) in cs.iter().enumerate() {
            if cs[..i].contains(&c) {
                out.push(Violation::ParallelArcs(u, c));
            }
        }
    }

    let mut seen: HashMap<&Taxon, usize> = HashMap::new();
    for v in 0..n {
        let (ind, outd) = (net.parents(v).len(), net.children(v).len());
        if ind > 2 || outd > 2 {
            out.push(Violation::DegreeTooHigh(v));
        } else if ind == 2 && outd != 1 {
            out.push(Violation::ReticulationOutdegree(v));
        } else if ind == 1 && outd == 1 {
            out.push(Violation::Unsuppressed(v));
        }
        match (net.label(v), outd) {
            (None, 0) => out.push(Violation::UnlabelledLeaf(v)),
            (Some(_), d) if d > 0 => out.push(Violation::LabelledInternal(v)),
            (Some(t), _) => {
                let count = seen.entry(t).or_insert(0);
                *count += 1;
                if *count == 2 {
                    out.push(Violation::DuplicateLabel(t.clone()));
                }
            }
            _ => {}
        }
    }

    if !is_level1(net) {
        out.push(Violation::NotLevel1);
    }
    ValidationReport { violations: out }
}

/// Every biconnected component of the underlying undirected multigraph may
/// contain at most one vertex with two incoming arcs from that component.
fn is_level1(net: &Network) -> bool {
    let arcs: Vec<(usize, usize)> = net.arcs().collect();
    let n = net.vertex_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, &(u, v)) in arcs.iter().enumerate() {
        if u == v {
            continue;
        }
        adj[u].push((e, v));
        adj[v].push((e, u));
    }

    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    // (vertex, edge used to reach it, next adjacency index)
    let mut frames: Vec<(usize, usize, usize)> = Vec::new();

    for start in 0..n {
        if disc[start] != UNSEEN {
            continue;
        }
        disc[start] = time;
        low[start] = time;
        time += 1;
        frames.push((start, UNSEEN, 0));
        while let Some(&mut (v, pe, ref mut i)) = frames.last_mut() {
            if *i < adj[v].len() {
                let (e, w) = adj[v][*i];
                *i += 1;
                if e == pe {
                    continue;
                }
                if disc[w] == UNSEEN {
                    edge_stack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(u, _, _)) = frames.last() {
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    let mut heads: HashMap<usize, usize> = HashMap::new();
                    while let Some(e) = edge_stack.pop() {
                        *heads.entry(arcs[e].1).or_insert(0) += 1;
                        if e == pe {
                            break;
                        }
                    }
                    if heads.values().filter(|&&c| c >= 2).count() > 1 {
                        return false;
                    }
                }
            }
        }
    }
    true
}
