use std::collections::BTreeMap;

use crate::error::SolveError;
use crate::network::Network;
use crate::smallnet::hang_cycle;
use crate::taxa::{format_set, TaxaSet};

/// One guess for the layout of a cycle-rooted network: the high taxa split
/// into two sides, each cut into the leaf sets of its pendant
/// sidenetworks from the root down, and the low taxa below the
/// reticulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionGuess {
    pub high: TaxaSet,
    pub low: TaxaSet,
    pub left: TaxaSet,
    pub right: TaxaSet,
    pub left_blocks: Vec<TaxaSet>,
    pub right_blocks: Vec<TaxaSet>,
}

impl DecompositionGuess {
    /// Builds a guess from its blocks, deriving the sides and the high set.
    pub fn from_blocks(left_blocks: Vec<TaxaSet>, right_blocks: Vec<TaxaSet>, low: TaxaSet) -> Self {
        let left: TaxaSet = left_blocks.iter().flatten().cloned().collect();
        let right: TaxaSet = right_blocks.iter().flatten().cloned().collect();
        DecompositionGuess {
            high: left.union(&right).cloned().collect(),
            low,
            left,
            right,
            left_blocks,
            right_blocks,
        }
    }

    fn check(&self) -> Result<(), SolveError> {
        let bad = |msg: String| Err(SolveError::InvalidGuess(msg));
        if self.high.is_empty() || self.low.is_empty() {
            return bad("high and low taxa must both be nonempty".into());
        }
        if !self.high.is_disjoint(&self.low) {
            return bad("high and low taxa overlap".into());
        }
        for (name, side, blocks) in [("left", &self.left, &self.left_blocks), ("right", &self.right, &self.right_blocks)] {
            let mut seen = TaxaSet::new();
            for b in blocks {
                if b.is_empty() || !b.is_disjoint(&seen) {
                    return bad(format!("{name} blocks are not a partition"));
                }
                seen.extend(b.iter().cloned());
            }
            if &seen != side {
                return bad(format!("{name} blocks do not cover {}", format_set(side)));
            }
        }
        if !self.left.is_disjoint(&self.right) || self.left.union(&self.right).cloned().collect::<TaxaSet>() != self.high {
            return bad("sides do not split the high taxa".into());
        }
        Ok(())
    }
}

/// The network with a root cycle carrying `subnets[block]` along each side in
/// block order and `low_net` below the reticulation.
pub fn assemble(
    guess: &DecompositionGuess,
    subnets: &BTreeMap<TaxaSet, Network>,
    low_net: &Network,
) -> Result<Network, SolveError> {
    guess.check()?;
    let lookup = |b: &TaxaSet| -> Result<&Network, SolveError> {
        let net = subnets
            .get(b)
            .ok_or_else(|| SolveError::InvalidGuess(format!("no subnetwork for {}", format_set(b))))?;
        if &net.taxa() != b {
            return Err(SolveError::InvalidGuess(format!("subnetwork leaves differ from {}", format_set(b))));
        }
        Ok(net)
    };
    let left = guess.left_blocks.iter().map(lookup).collect::<Result<Vec<_>, _>>()?;
    let right = guess.right_blocks.iter().map(lookup).collect::<Result<Vec<_>, _>>()?;
    if low_net.taxa() != guess.low {
        return Err(SolveError::InvalidGuess("low network leaves differ from the low taxa".into()));
    }
    Ok(hang_cycle(&left, &right, low_net))
}
