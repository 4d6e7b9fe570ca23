//! The auxiliary graphs of the solver over taxon names, for inspection and
//! testing. The search itself works on taxon ids.

use std::collections::HashMap;

use super::instance::{Instance, Item};
use super::partition::{closed_sets_by_weight, partition_side_ids, Colourings};
use super::rules::{d_arcs, height_arcs, k_edges, kdagger_edges, m_edges, o_edges, r_edges, w_edges};
use crate::graph::AuxGraph;
use crate::smallnet::SmallNetSet;
use crate::taxa::{TaxaSet, Taxon};

type Rule<'r> = &'r dyn Fn(&Item, &mut dyn FnMut(u32, u32));

fn taxon_graph(inst: &Instance, nodes: &TaxaSet, rule: Rule) -> AuxGraph<Taxon> {
    let nodes: Vec<Taxon> = nodes.iter().cloned().collect();
    let index: HashMap<u32, usize> = nodes.iter().enumerate().map(|(i, t)| (inst.id(t), i)).collect();
    let mut g = AuxGraph::new(nodes);
    for it in &inst.items {
        rule(it, &mut |a, b| {
            if let (Some(&x), Some(&y)) = (index.get(&a), index.get(&b)) {
                g.add_edge(x, y);
            }
        });
    }
    g
}

/// Components of `g` as nodes, with arcs (or edges) between the components
/// of each pair reported by `rule`.
fn quotient(inst: &Instance, g: &AuxGraph<Taxon>, rule: Rule, directed: bool) -> AuxGraph<TaxaSet> {
    let comps = g.components();
    let mut comp_of: HashMap<u32, usize> = HashMap::new();
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of.insert(inst.id(&g.nodes()[v]), i);
        }
    }
    let nodes = comps
        .iter()
        .map(|c| c.iter().map(|&v| g.nodes()[v].clone()).collect())
        .collect();
    let mut q = AuxGraph::new(nodes);
    for it in &inst.items {
        rule(it, &mut |a, b| {
            if let (Some(&x), Some(&y)) = (comp_of.get(&a), comp_of.get(&b)) {
                if directed {
                    q.add_arc(x, y);
                } else {
                    q.add_edge(x, y);
                }
            }
        });
    }
    q
}

fn instance_over(ts: &SmallNetSet, extra: &[&TaxaSet]) -> Instance {
    let mut ts = ts.clone();
    for set in extra {
        for t in *set {
            ts.add_taxon(t.clone());
        }
    }
    Instance::new(&ts)
}

/// Edge `{a,b}` when some item on `a` and `b` is cycle-rooted or has a
/// common ancestor of them other than its root.
pub fn build_r(ts: &SmallNetSet) -> AuxGraph<Taxon> {
    let inst = Instance::new(ts);
    taxon_graph(&inst, ts.taxa(), &|it, f| r_edges(it, f))
}

/// Edge `{a,b}` when `a` and `b` are at the same height in some item.
pub fn build_k(ts: &SmallNetSet) -> AuxGraph<Taxon> {
    let inst = Instance::new(ts);
    taxon_graph(&inst, ts.taxa(), &|it, f| k_edges(it, f))
}

/// [`build_k`] plus every pair of taxa of an `S1` or `S2` item.
pub fn build_kdagger(ts: &SmallNetSet) -> AuxGraph<Taxon> {
    let inst = Instance::new(ts);
    taxon_graph(&inst, ts.taxa(), &|it, f| kdagger_edges(it, f))
}

/// Digraph on the components of `k` with an arc from the component of a
/// high taxon to that of a low taxon of some cycle-rooted item.
pub fn build_omega(ts: &SmallNetSet, k: &AuxGraph<Taxon>) -> AuxGraph<TaxaSet> {
    let inst = Instance::new(ts);
    quotient(&inst, k, &|it, f| height_arcs(it, f), true)
}

/// [`build_omega`] over the components of [`build_kdagger`].
pub fn build_omegadagger(ts: &SmallNetSet) -> AuxGraph<TaxaSet> {
    build_omega(ts, &build_kdagger(ts))
}

/// Edge `{a,b}` between high taxa that share a non-root ancestor in some
/// item.
pub fn build_m(ts: &SmallNetSet, high: &TaxaSet) -> AuxGraph<Taxon> {
    let inst = instance_over(ts, &[high]);
    let h = inst.membership(&inst.ids_of(high));
    taxon_graph(&inst, high, &|it, f| m_edges(it, |t| h[t as usize], f))
}

/// Graph on the components of `m` with an edge for each `S1(x,y;z)` whose
/// `x` and `y` are high and `z` is not. An edge inside one component shows
/// up as a loop.
pub fn build_w(ts: &SmallNetSet, high: &TaxaSet, m: &AuxGraph<Taxon>) -> AuxGraph<TaxaSet> {
    let inst = instance_over(ts, &[high]);
    let h = inst.membership(&inst.ids_of(high));
    quotient(&inst, m, &|it, f| w_edges(it, |t| h[t as usize], f), false)
}

/// Edge `{a,b}` between taxa of `side_sub` that must share a pendant
/// sidenetwork.
pub fn build_o(ts: &SmallNetSet, side_sub: &TaxaSet, high: &TaxaSet) -> AuxGraph<Taxon> {
    let inst = instance_over(ts, &[side_sub, high]);
    let s = inst.membership(&inst.ids_of(side_sub));
    let h = inst.membership(&inst.ids_of(high));
    taxon_graph(&inst, side_sub, &|it, f| o_edges(it, |t| s[t as usize], |t| h[t as usize], f))
}

/// Digraph on the components of `o` with an arc `(x, y)`, possibly a loop,
/// for each `S2(x;y;z)` with `z` not high.
pub fn build_d(ts: &SmallNetSet, side_sub: &TaxaSet, high: &TaxaSet, o: &AuxGraph<Taxon>) -> AuxGraph<TaxaSet> {
    let inst = instance_over(ts, &[side_sub, high]);
    let s = inst.membership(&inst.ids_of(side_sub));
    let h = inst.membership(&inst.ids_of(high));
    quotient(&inst, o, &|it, f| d_arcs(it, |t| s[t as usize], |t| h[t as usize], f), true)
}

/// Candidate high sets: unions of nonempty strict node sets of `omega` that
/// no arc enters, largest first. With `semi_dense`, only the node set of the
/// unique source, if there is exactly one and it is not everything.
pub fn enumerate_high_sets(omega: &AuxGraph<TaxaSet>, semi_dense: bool) -> Vec<TaxaSet> {
    let n = omega.node_count();
    let union = |s: &[usize]| -> TaxaSet { s.iter().flat_map(|&i| omega.nodes()[i].iter().cloned()).collect() };
    if semi_dense {
        return match omega.sources(false).as_slice() {
            &[s] if n > 1 => vec![union(&[s])],
            _ => Vec::new(),
        };
    }
    let arcs: Vec<(usize, usize)> = omega.arcs().collect();
    closed_sets_by_weight(n, &arcs, |s| s.iter().map(|&i| omega.nodes()[i].len()).sum(), usize::MAX)
        .map(|s| union(&s))
        .collect()
}

/// Every proper 2-colouring of `w` as a pair of taxa sets, once per
/// unordered pair. The part holding the first node comes first.
pub fn enumerate_feasible_bipartitions(w: &AuxGraph<TaxaSet>) -> impl Iterator<Item = (TaxaSet, TaxaSet)> + '_ {
    let edges: Vec<(usize, usize)> = w.edges().collect();
    Colourings::new(w.node_count(), &edges, |_| false).map(move |colour| {
        let mut parts = (TaxaSet::new(), TaxaSet::new());
        for (i, &c) in colour.iter().enumerate() {
            let part = if c { &mut parts.1 } else { &mut parts.0 };
            part.extend(w.nodes()[i].iter().cloned());
        }
        parts
    })
}

/// Leaf sets of the pendant sidenetworks on one side, from the root down,
/// or `None` when the side cannot be ordered.
pub fn partition_side(ts: &SmallNetSet, side: &TaxaSet, high: &TaxaSet) -> Option<Vec<TaxaSet>> {
    let inst = instance_over(ts, &[side, high]);
    let h = inst.membership(&inst.ids_of(high));
    let blocks = partition_side_ids(inst.len(), &inst.items, &inst.ids_of(side), &h)?;
    Some(blocks.into_iter().map(|b| inst.set_of(b)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallnet::SmallNet;
    use crate::taxa::{taxa, taxon};

    fn set(items: &[&str]) -> SmallNetSet {
        items.iter().map(|s| s.parse::<SmallNet>().unwrap()).collect()
    }

    fn edges(g: &AuxGraph<Taxon>) -> Vec<(String, String)> {
        g.edges()
            .map(|(a, b)| (g.nodes()[a].to_string(), g.nodes()[b].to_string()))
            .collect()
    }

    fn pair(a: &str, b: &str) -> (String, String) {
        (a.into(), b.into())
    }

    #[test]
    fn r_graph() {
        assert_eq!(edges(&build_r(&set(&["T1(x,y;z)"]))), vec![pair("x", "y")]);
        assert_eq!(build_r(&set(&["N2(a,b;c)"])).edge_count(), 3);
        assert_eq!(build_r(&set(&["T(a,b)"])).edge_count(), 0);
    }

    #[test]
    fn k_graphs() {
        assert_eq!(build_k(&set(&["T1(x,y;z)"])).edge_count(), 3);
        assert_eq!(build_k(&set(&["N(x;y)"])).edge_count(), 0);
        assert_eq!(edges(&build_k(&set(&["S2(x;y;z)"]))), vec![pair("x", "y")]);
        assert_eq!(build_kdagger(&set(&["S1(x,y;z)"])).edge_count(), 3);
        let ts = set(&["N4(a;b;c)", "T1(a,b;d)"]);
        assert_eq!(build_kdagger(&ts), build_k(&ts));
    }

    #[test]
    fn omega_graph() {
        let ts = set(&["N(x;y)"]);
        let om = build_omega(&ts, &build_k(&ts));
        let arcs: Vec<_> = om.arcs().map(|(a, b)| (om.nodes()[a].clone(), om.nodes()[b].clone())).collect();
        assert_eq!(arcs, vec![(taxa(["y"]), taxa(["x"]))]);
        let ts = set(&["T1(x,y;z)"]);
        assert_eq!(build_omega(&ts, &build_k(&ts)).arc_count(), 0);
        let ts = set(&["S1(x,y;z)"]);
        let om = build_omega(&ts, &build_k(&ts));
        let arcs: Vec<_> = om.arcs().map(|(a, b)| (om.nodes()[a].clone(), om.nodes()[b].clone())).collect();
        assert_eq!(arcs, vec![(taxa(["x", "y"]), taxa(["z"]))]);
        assert_eq!(build_omegadagger(&ts).node_count(), 1);
    }

    #[test]
    fn high_sets() {
        let ts = set(&["N(x;y)"]);
        let om = build_omega(&ts, &build_k(&ts));
        assert_eq!(enumerate_high_sets(&om, false), vec![taxa(["y"])]);
        let ts: SmallNetSet = SmallNetSet::with_taxa(taxa(["a", "b"]));
        let om = build_omega(&ts, &build_k(&ts));
        let mut got = enumerate_high_sets(&om, false);
        got.sort();
        assert_eq!(got, vec![taxa(["a"]), taxa(["b"])]);
        assert!(enumerate_high_sets(&om, true).is_empty());
    }

    #[test]
    fn bipartitions() {
        let ts = set(&["S1(x,y;z)", "T(u,v)"]);
        let high = taxa(["x", "y", "w"]);
        let m = build_m(&ts, &high);
        let w = build_w(&ts, &high, &m);
        assert_eq!(w.edge_count(), 1);
        let parts: Vec<_> = enumerate_feasible_bipartitions(&w).collect();
        assert_eq!(parts.len(), 2);
        for (l, r) in &parts {
            assert_ne!(l.contains(&taxon("x")), l.contains(&taxon("y")));
            assert_eq!(l.len() + r.len(), 3);
        }
        let ts = set(&["S1(x,y;z)", "T1(x,y;q)"]);
        let high = taxa(["x", "y", "q"]);
        let w = build_w(&ts, &high, &build_m(&ts, &high));
        assert_eq!(enumerate_feasible_bipartitions(&w).count(), 0);
    }

    #[test]
    fn side_graphs() {
        let ts = set(&["N4(a;b;c)"]);
        let (side, high) = (taxa(["a", "b"]), taxa(["a", "b"]));
        assert_eq!(edges(&build_o(&ts, &side, &high)), vec![pair("a", "b")]);
        let ts = set(&["T1(a,b;c)"]);
        let side = taxa(["a", "b", "c"]);
        assert_eq!(edges(&build_o(&ts, &side, &side)), vec![pair("a", "b")]);

        let ts = set(&["S2(x;y;z)"]);
        let side = taxa(["x", "y"]);
        let o = build_o(&ts, &side, &side);
        assert_eq!(o.edge_count(), 0);
        let d = build_d(&ts, &side, &side, &o);
        assert_eq!(d.arc_count(), 1);
        assert_eq!(partition_side(&ts, &side, &side), Some(vec![taxa(["x"]), taxa(["y"])]));
        let both = set(&["S2(x;y;z)", "S2(y;x;z)"]);
        assert_eq!(partition_side(&both, &side, &side), None);
        assert_eq!(partition_side(&ts, &TaxaSet::new(), &side), Some(vec![]));
    }
}
