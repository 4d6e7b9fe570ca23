//! Polynomial-time construction from binets alone.
//!
//! If `R^b` is disconnected the components are solved separately and joined
//! under a new root. Otherwise the root lies on a cycle: the high taxa are
//! the source components of `Ω^b` (over the components of `K^b`), the rest
//! hang below the reticulation, and both parts are solved recursively.

use crate::error::SolveError;
use crate::graph::AuxGraph;
use crate::network::Network;
use crate::smallnet::{hang_cycle, join, realize, SmallNetSet};
use crate::solver::instance::{restrict_items, Instance, Item};
use crate::solver::partition::{ClosedSets, Groups};
use crate::solver::rules::{height_arcs, k_edges, r_edges};
use crate::solver::{build_k, build_omega, build_r};
use crate::taxa::{TaxaSet, Taxon};

fn binets_only(bs: &SmallNetSet) -> Result<(), SolveError> {
    match bs.iter().find(|s| !s.is_binet()) {
        Some(sn) => Err(SolveError::NotABinet(sn.to_string())),
        None => Ok(()),
    }
}

/// Edge `{x,y}` when `N(x;y)` or `N(y;x)` is in `bs`.
pub fn build_rb(bs: &SmallNetSet) -> Result<AuxGraph<Taxon>, SolveError> {
    binets_only(bs)?;
    Ok(build_r(bs))
}

/// Edge `{x,y}` when `T(x,y)` is in `bs`.
pub fn build_kb(bs: &SmallNetSet) -> Result<AuxGraph<Taxon>, SolveError> {
    binets_only(bs)?;
    Ok(build_k(bs))
}

/// Digraph on the components of `kb` with an arc from the component of `x`
/// to that of `y` for each `N(y;x)` in `bs`.
pub fn build_omegab(bs: &SmallNetSet, kb: &AuxGraph<Taxon>) -> Result<AuxGraph<TaxaSet>, SolveError> {
    binets_only(bs)?;
    Ok(build_omega(bs, kb))
}

/// A binary level-1 network displaying every binet of `bs`, or `None` if
/// there is none.
pub fn solve_binets(bs: &SmallNetSet) -> Result<Option<Network>, SolveError> {
    binets_only(bs)?;
    if bs.taxa().is_empty() {
        return Err(SolveError::EmptyTaxa);
    }
    let inst = Instance::new(bs);
    let all: Vec<u32> = (0..inst.len() as u32).collect();
    Ok(node(&inst, &all, &inst.items))
}

fn node(inst: &Instance, x: &[u32], items: &[Item]) -> Option<Network> {
    let leaf = |t: u32| Network::leaf(inst.taxon(t).clone());
    match (x.len(), items) {
        (1, _) => return Some(leaf(x[0])),
        (2, []) => return Some(join(&leaf(x[0]), &leaf(x[1]))),
        (2, [it]) => return Some(realize(&inst.smallnet(it))),
        (2, _) => return None,
        _ => {}
    }
    let mut pairs: Vec<[u32; 2]> = items
        .iter()
        .map(|it| [it.leaves[0].min(it.leaves[1]), it.leaves[0].max(it.leaves[1])])
        .collect();
    pairs.sort_unstable();
    if pairs.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let child = |block: &[u32]| {
        let sub = restrict_items(items, &inst.membership(block));
        node(inst, block, &sub)
    };

    let mut g = Groups::new(x, inst.len());
    for it in items {
        r_edges(it, |a, b| g.union(a, b));
    }
    let r = g.finish();
    if r.comps.len() > 1 {
        let mut acc = child(&r.comps[0])?;
        for c in &r.comps[1..] {
            acc = join(&acc, &child(c)?);
        }
        return Some(acc);
    }

    let mut g = Groups::new(x, inst.len());
    for it in items {
        k_edges(it, |a, b| g.union(a, b));
    }
    let k = g.finish();
    let arcs = k.arcs(items, |it, f| height_arcs(it, f));
    let closed = ClosedSets::new(k.comps.len(), &arcs);
    let mut srcs = closed.source_components();
    if srcs.iter().map(|c| c.len()).sum::<usize>() == k.comps.len() {
        if srcs.len() < 2 {
            return None;
        }
        let largest = k.comp_of[*x.last().unwrap() as usize] as usize;
        srcs.retain(|c| !c.contains(&largest));
    }
    let chosen: Vec<usize> = srcs.iter().flat_map(|c| c.iter().copied()).collect();
    let high = k.union_of(&chosen);
    let in_high = inst.membership(&high);
    let low: Vec<u32> = x.iter().copied().filter(|&t| !in_high[t as usize]).collect();
    let nh = child(&high)?;
    let nl = child(&low)?;
    Some(hang_cycle(&[&nh], &[], &nl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::displays;
    use crate::smallnet::SmallNet;
    use crate::taxa::taxa;

    fn set(items: &[&str]) -> SmallNetSet {
        items.iter().map(|s| s.parse::<SmallNet>().unwrap()).collect()
    }

    fn check(bs: &SmallNetSet) -> Network {
        let net = solve_binets(bs).unwrap().expect("solvable");
        assert_eq!(&net.taxa(), bs.taxa());
        for b in bs {
            assert!(displays(&net, &realize(b)).unwrap(), "{b}");
        }
        net
    }

    #[test]
    fn trivial_sets() {
        let net = check(&set(&["T(x,y)"]));
        assert_eq!(net.reticulation_count(), 0);
        assert!(solve_binets(&set(&["N(x;y)", "N(y;x)"])).unwrap().is_none());
        assert!(solve_binets(&set(&["T(x,y)", "N(y;x)"])).unwrap().is_none());
        assert!(solve_binets(&set(&["T1(x,y;z)"])).is_err());
    }

    #[test]
    fn graphs() {
        assert_eq!(build_rb(&set(&["T(x,y)"])).unwrap().edge_count(), 0);
        assert_eq!(build_rb(&set(&["N(x;y)"])).unwrap().edge_count(), 1);
        assert_eq!(build_kb(&set(&["T(x,y)"])).unwrap().edge_count(), 1);
        assert_eq!(build_kb(&set(&["N(x;y)"])).unwrap().edge_count(), 0);
        let bs = set(&["N(y;x)"]);
        let om = build_omegab(&bs, &build_kb(&bs).unwrap()).unwrap();
        let arcs: Vec<_> = om.arcs().map(|(a, b)| (om.nodes()[a].clone(), om.nodes()[b].clone())).collect();
        assert_eq!(arcs, vec![(taxa(["x"]), taxa(["y"]))]);
    }

    #[test]
    fn cycle_of_components() {
        let bs = set(&["T(a,b)", "N(c;a)", "N(c;b)", "N(d;a)", "T(c,d)", "N(e;b)", "N(f;g)"]);
        let net = check(&bs);
        assert!(net.reticulation_count() >= 2);
    }
}
