//! Deciding whether a set of binets and trinets is displayed by a binary
//! level-1 network, and building one when it is.
//!
//! The general solver recurses on subsets of the taxa. When the graph `R`
//! is disconnected the components are solved separately and joined under a
//! new root. Otherwise the network must be cycle-rooted, and the solver
//! guesses the high leaves and their split into two sides, orders each side
//! into pendant sidenetworks, and solves every block recursively. Each
//! assembled network is checked against the items before it is accepted.

mod assemble;
mod graphs;
pub(crate) mod instance;
pub(crate) mod partition;
pub(crate) mod rules;
mod search;

use crate::error::SolveError;
use crate::network::{validate, Network};
use crate::smallnet::{extract_all, SmallNetSet};

pub use assemble::{assemble, DecompositionGuess};
pub use graphs::{
    build_d, build_k, build_kdagger, build_m, build_o, build_omega, build_omegadagger, build_r, build_w,
    enumerate_feasible_bipartitions, enumerate_high_sets, partition_side,
};
use instance::Instance;

use search::{Res, Search};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Decomposition guesses allowed at each recursion node before the
    /// search gives up with [`Outcome::Unknown`].
    pub guess_budget: usize,
    /// Zero keeps the canonical guess order; any other value shuffles ties.
    pub deterministic_seed: u64,
    /// Try a tiny cycle at the root before largish ones.
    pub explore_tiny_first: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            guess_budget: 100_000,
            deterministic_seed: 0,
            explore_tiny_first: true,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Solved(Network),
    /// No binary level-1 network displays the input.
    NoSolution,
    /// The guess budget ran out before the search was decided.
    Unknown,
}

impl Outcome {
    pub fn network(&self) -> Option<&Network> {
        match self {
            Outcome::Solved(n) => Some(n),
            _ => None,
        }
    }

    pub fn into_network(self) -> Option<Network> {
        match self {
            Outcome::Solved(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_solved(&self) -> bool {
        matches!(self, Outcome::Solved(_))
    }
}

fn check(ts: &SmallNetSet, cfg: &SolverConfig) -> Result<(), SolveError> {
    if ts.taxa().is_empty() {
        return Err(SolveError::EmptyTaxa);
    }
    if cfg.guess_budget == 0 {
        return Err(SolveError::ZeroBudget);
    }
    Ok(())
}

fn run(ts: &SmallNetSet, cfg: &SolverConfig, tiny_only: bool) -> Outcome {
    let inst = Instance::new(ts);
    match Search::new(&inst, cfg, tiny_only).run() {
        Res::Solved(net) => Outcome::Solved((*net).clone()),
        Res::No => Outcome::NoSolution,
        Res::Unknown => Outcome::Unknown,
    }
}

/// Finds a binary level-1 network on `ts.taxa()` displaying every item.
pub fn solve(ts: &SmallNetSet, cfg: &SolverConfig) -> Result<Outcome, SolveError> {
    check(ts, cfg)?;
    Ok(run(ts, cfg, false))
}

/// Polynomial-time variant for inputs without `S1` or `S2` items. Only
/// networks whose root is not on a cycle or lies on a 3-cycle are built,
/// which suffices for such inputs, so the answer is never
/// [`Outcome::Unknown`].
pub fn solve_tiny(ts: &SmallNetSet, cfg: &SolverConfig) -> Result<Outcome, SolveError> {
    check(ts, cfg)?;
    if let Some(sn) = ts.iter().find(|s| !s.shape().is_tiny()) {
        return Err(SolveError::NotTinyCycle(sn.to_string()));
    }
    Ok(run(ts, cfg, true))
}

/// A network displaying every input network, found by solving the union of
/// their binets and trinets. Uses [`solve_tiny`] when every input is a
/// tiny-cycle network.
pub fn solve_supernetwork(nets: &[Network], cfg: &SolverConfig) -> Result<Outcome, SolveError> {
    let mut ts = SmallNetSet::new();
    for (index, net) in nets.iter().enumerate() {
        let report = validate(net);
        if !report.is_valid() {
            return Err(SolveError::InvalidInput { index, report });
        }
        if net.leaf_count() < 2 {
            return Err(SolveError::TooFewLeaves(index));
        }
        ts.extend(extract_all(net).expect("validated").iter().cloned());
    }
    if nets.iter().all(Network::is_tiny_cycle_network) {
        solve_tiny(&ts, cfg)
    } else {
        solve(&ts, cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{displays, is_equivalent};
    use crate::smallnet::{realize, Shape, SmallNet};
    use crate::taxa::taxon;

    fn set(items: &[&str]) -> SmallNetSet {
        items.iter().map(|s| s.parse::<SmallNet>().unwrap()).collect()
    }

    fn solved(ts: &SmallNetSet) -> Network {
        let net = solve(ts, &SolverConfig::default()).unwrap().into_network().expect("solvable");
        for sn in ts {
            assert!(displays(&net, &realize(sn)).unwrap(), "{sn} not displayed");
        }
        net
    }

    #[test]
    fn every_single_shape() {
        for shape in Shape::ALL {
            let names = ["a", "b", "c"];
            let sn = SmallNet::new(shape, names[..shape.arity()].iter().map(|n| taxon(n)).collect()).unwrap();
            let net = solved(&[sn.clone()].into_iter().collect());
            assert!(is_equivalent(&net, &realize(&sn)), "{sn}");
        }
    }

    #[test]
    fn contradictions() {
        let ts = set(&["T1(a,b;c)", "T1(b,c;a)"]);
        assert!(matches!(solve(&ts, &SolverConfig::default()).unwrap(), Outcome::NoSolution));
        let ts = set(&["N(a;b)", "N(b;a)"]);
        assert!(matches!(solve(&ts, &SolverConfig::default()).unwrap(), Outcome::NoSolution));
    }

    #[test]
    fn leaf_disjoint_parts() {
        let net = solved(&set(&["S1(a,b;c)", "T1(d,e;f)"]));
        assert_eq!(net.leaf_count(), 6);
    }

    #[test]
    fn unconstrained_taxa() {
        let mut ts = SmallNetSet::new();
        ts.add_taxon(taxon("z"));
        let net = solved(&ts);
        assert_eq!(net.leaf_count(), 1);
        for k in 2..5 {
            let mut ts = SmallNetSet::new();
            for i in 0..k {
                ts.add_taxon(taxon(&format!("t{i}")));
            }
            assert_eq!(solved(&ts).reticulation_count(), 0);
        }
    }

    #[test]
    fn config_errors() {
        let ts = set(&["T(a,b)"]);
        let cfg = SolverConfig {
            guess_budget: 0,
            ..SolverConfig::default()
        };
        assert_eq!(solve(&ts, &cfg).unwrap_err(), SolveError::ZeroBudget);
        assert!(solve(&SmallNetSet::new(), &SolverConfig::default()).is_err());
        assert!(solve_tiny(&set(&["S2(a;b;c)"]), &SolverConfig::default()).is_err());
    }

    #[test]
    fn tiny_solver() {
        let ts = set(&["N1(x,y;z)"]);
        let net = solve_tiny(&ts, &SolverConfig::default()).unwrap().into_network().unwrap();
        assert!(is_equivalent(&net, &realize(&"N1(x,y;z)".parse().unwrap())));
    }
}
