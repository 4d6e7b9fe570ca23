//! Brute-force ground truth for small taxa sets.
//!
//! [`enumerate_networks`] lists every binary level-1 network on up to
//! [`MAX_TAXA`] taxa, up to equivalence. A network on two or more taxa is
//! either two smaller networks joined under a new root, or a root cycle with
//! pendant networks along its two sides and one network below the
//! reticulation, so the catalog is built from the catalogs of all subsets.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{SmallNetError, SolveError};
use crate::network::{canonical_code, Network};
use crate::smallnet::{extract_all, hang_cycle, join, Shape, SmallNet, SmallNetSet};
use crate::taxa::{TaxaSet, Taxon};

pub const MAX_TAXA: usize = 6;

/// All binary level-1 networks on a taxa set, pairwise non-equivalent, each
/// with the set of binets and trinets it displays stored as a bitset.
#[derive(Clone, Debug)]
pub struct NetworkCatalog {
    taxa: TaxaSet,
    networks: Vec<Network>,
    index: HashMap<SmallNet, usize>,
    words: usize,
    profiles: Vec<u64>,
}

impl NetworkCatalog {
    pub fn taxa(&self) -> &TaxaSet {
        &self.taxa
    }

    pub fn networks(&self) -> &[Network] {
        &self.networks
    }

    pub fn len(&self) -> usize {
        self.networks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.networks.is_empty()
    }

    fn query(&self, ts: &SmallNetSet) -> Result<Vec<u64>, SolveError> {
        let mut q = vec![0u64; self.words];
        for sn in ts {
            if let Some(t) = sn.slots().iter().find(|t| !self.taxa.contains(*t)) {
                return Err(SmallNetError::Undeclared(t.clone()).into());
            }
            let i = self.index[sn];
            q[i / 64] |= 1 << (i % 64);
        }
        Ok(q)
    }

    /// Catalog networks displaying every item of `ts`, in catalog order.
    pub fn solutions<'a>(&'a self, ts: &SmallNetSet) -> Result<impl Iterator<Item = &'a Network> + 'a, SolveError> {
        let q = self.query(ts)?;
        Ok(self.networks.iter().enumerate().filter_map(move |(i, net)| {
            let p = &self.profiles[i * self.words..(i + 1) * self.words];
            p.iter().zip(&q).all(|(&p, &q)| p & q == q).then_some(net)
        }))
    }

    /// The first catalog network displaying every item of `ts`.
    pub fn brute_solve(&self, ts: &SmallNetSet) -> Result<Option<Network>, SolveError> {
        Ok(self.solutions(ts)?.next().cloned())
    }
}

fn check_size(taxa: &TaxaSet) -> Result<(), SolveError> {
    if taxa.is_empty() {
        return Err(SolveError::EmptyTaxa);
    }
    if taxa.len() > MAX_TAXA {
        return Err(SolveError::TooManyTaxa {
            found: taxa.len(),
            limit: MAX_TAXA,
        });
    }
    Ok(())
}

/// Every binary level-1 network on exactly `taxa`, up to equivalence.
pub fn enumerate_networks(taxa: &TaxaSet) -> Result<NetworkCatalog, SolveError> {
    check_size(taxa)?;
    let names: Vec<Taxon> = taxa.iter().cloned().collect();
    let n = names.len();
    let full = (1usize << n) - 1;
    let mut by_mask: Vec<Vec<Network>> = vec![Vec::new(); full + 1];
    let mut masks: Vec<usize> = (1..=full).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        by_mask[mask] = networks_on(mask, &names, &by_mask);
    }
    let networks = std::mem::take(&mut by_mask[full]);

    let index = small_net_index(&names);
    let words = index.len().div_ceil(64).max(1);
    let mut profiles = vec![0u64; words * networks.len()];
    if n >= 2 {
        for (k, net) in networks.iter().enumerate() {
            for sn in &extract_all(net).expect("generated networks are valid") {
                let i = index[sn];
                profiles[k * words + i / 64] |= 1 << (i % 64);
            }
        }
    }
    Ok(NetworkCatalog {
        taxa: taxa.clone(),
        networks,
        index,
        words,
        profiles,
    })
}

fn networks_on(mask: usize, names: &[Taxon], by_mask: &[Vec<Network>]) -> Vec<Network> {
    let members: Vec<usize> = (0..names.len()).filter(|&i| mask >> i & 1 == 1).collect();
    if members.len() == 1 {
        return vec![Network::leaf(names[members[0]].clone())];
    }
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut keep = |net: Network| {
        if seen.insert(canonical_code(&net)) {
            out.push(net);
        }
    };

    let low_bit = mask & mask.wrapping_neg();
    for a in submasks(mask) {
        if a & low_bit != 0 && a != mask {
            for x in &by_mask[a] {
                for y in &by_mask[mask ^ a] {
                    keep(join(x, y));
                }
            }
        }
    }

    for high in submasks(mask) {
        if high == mask {
            continue;
        }
        let low = mask ^ high;
        let first = high & high.wrapping_neg();
        for blocks in ordered_partitions(high) {
            // The side holding the smallest high taxon is listed first.
            let lead = blocks.iter().position(|&b| b & first != 0).unwrap();
            for cut in lead + 1..=blocks.len() {
                let mut lists: Vec<&[Network]> = blocks.iter().map(|&b| by_mask[b].as_slice()).collect();
                lists.push(&by_mask[low]);
                for choice in product(&lists) {
                    let (pendants, low_net) = choice.split_at(blocks.len());
                    keep(hang_cycle(&pendants[..cut], &pendants[cut..], low_net[0]));
                }
            }
        }
    }
    out
}

/// Nonempty submasks of `mask`.
fn submasks(mask: usize) -> impl Iterator<Item = usize> {
    let mut s = mask;
    let mut done = mask == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = s;
        if s == 0 {
            return None;
        }
        s = (s - 1) & mask;
        if s == 0 {
            done = true;
        }
        Some(cur)
    })
}

/// Sequences of disjoint nonempty masks whose union is `mask`.
fn ordered_partitions(mask: usize) -> Vec<Vec<usize>> {
    if mask == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in submasks(mask) {
        for mut rest in ordered_partitions(mask ^ first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn product<'a, T>(lists: &[&'a [T]]) -> Vec<Vec<&'a T>> {
    let mut out: Vec<Vec<&T>> = vec![Vec::new()];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Positions of all labelled binets and trinets on `names`.
fn small_net_index(names: &[Taxon]) -> HashMap<SmallNet, usize> {
    let mut index = HashMap::new();
    let n = names.len();
    let mut add = |shape: Shape, slots: Vec<Taxon>| {
        let sn = SmallNet::new(shape, slots).unwrap();
        let next = index.len();
        index.entry(sn).or_insert(next);
    };
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for shape in Shape::ALL.iter().filter(|s| s.is_binet()) {
                add(*shape, vec![names[i].clone(), names[j].clone()]);
            }
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                for shape in Shape::ALL.iter().filter(|s| !s.is_binet()) {
                    add(*shape, vec![names[i].clone(), names[j].clone(), names[k].clone()]);
                }
            }
        }
    }
    index
}

/// [`NetworkCatalog::brute_solve`] over the catalog of `ts.taxa()`, kept for
/// reuse by later calls on the same taxa.
pub fn brute_solve(ts: &SmallNetSet) -> Result<Option<Network>, SolveError> {
    catalog(ts.taxa())?.brute_solve(ts)
}

/// The shared catalog for `taxa`, built on first use.
pub fn catalog(taxa: &TaxaSet) -> Result<Arc<NetworkCatalog>, SolveError> {
    static CACHE: OnceLock<Mutex<HashMap<TaxaSet, Arc<NetworkCatalog>>>> = OnceLock::new();
    check_size(taxa)?;
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(c) = guard.get(taxa) {
        return Ok(c.clone());
    }
    let c = Arc::new(enumerate_networks(taxa)?);
    guard.insert(taxa.clone(), c.clone());
    Ok(c)
}

/// A random binary level-1 network on `taxa`.
pub fn random_network<R: Rng + ?Sized>(taxa: &TaxaSet, rng: &mut R) -> Network {
    let names: Vec<Taxon> = taxa.iter().cloned().collect();
    random_on(&names, rng, false)
}

/// A random network on `taxa` in which every cycle has three vertices.
pub fn random_tiny_cycle_network<R: Rng + ?Sized>(taxa: &TaxaSet, rng: &mut R) -> Network {
    let names: Vec<Taxon> = taxa.iter().cloned().collect();
    random_on(&names, rng, true)
}

fn random_on<R: Rng + ?Sized>(names: &[Taxon], rng: &mut R, tiny: bool) -> Network {
    assert!(!names.is_empty(), "random network needs a taxon");
    if names.len() == 1 {
        return Network::leaf(names[0].clone());
    }
    let mut shuffled = names.to_vec();
    shuffled.shuffle(rng);
    let split = rng.gen_range(1..names.len());
    let (a, b) = shuffled.split_at(split);
    if rng.gen_bool(0.5) {
        return join(&random_on(a, rng, tiny), &random_on(b, rng, tiny));
    }
    let (high, low) = (a, b);
    let nblocks = if tiny { 1 } else { rng.gen_range(1..=high.len()) };
    let mut cuts: Vec<usize> = (1..high.len()).collect();
    cuts.shuffle(rng);
    cuts.truncate(nblocks - 1);
    cuts.sort_unstable();
    cuts.push(high.len());
    let mut pendants = Vec::with_capacity(nblocks);
    let mut start = 0;
    for c in cuts {
        pendants.push(random_on(&high[start..c], rng, tiny));
        start = c;
    }
    let side = rng.gen_range(0..=pendants.len());
    let refs: Vec<&Network> = pendants.iter().collect();
    let low_net = random_on(low, rng, tiny);
    if refs.len() == 1 {
        return hang_cycle(&refs, &[], &low_net);
    }
    hang_cycle(&refs[..side], &refs[side..], &low_net)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::validate;
    use crate::smallnet::classify;
    use crate::taxa::taxa;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_catalog_sizes() {
        assert_eq!(enumerate_networks(&taxa(["a"])).unwrap().len(), 1);
        assert_eq!(enumerate_networks(&taxa(["a", "b"])).unwrap().len(), 3);
        let c3 = enumerate_networks(&taxa(["a", "b", "c"])).unwrap();
        assert_eq!(c3.len(), 36);
        let shapes: HashSet<Shape> = c3.networks().iter().map(|n| classify(n).unwrap().shape()).collect();
        assert_eq!(shapes.len(), 8);
        assert!(enumerate_networks(&taxa(["a", "b", "c", "d", "e", "f", "g"])).is_err());
    }

    #[test]
    fn brute_solutions() {
        let ts: SmallNetSet = ["T(x,y)"].iter().map(|s| s.parse::<SmallNet>().unwrap()).collect();
        assert!(brute_solve(&ts).unwrap().is_some());
        let ts: SmallNetSet = ["N(x;y)", "N(y;x)"].iter().map(|s| s.parse::<SmallNet>().unwrap()).collect();
        assert!(brute_solve(&ts).unwrap().is_none());
    }

    #[test]
    fn random_networks_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let t = taxa((0..12).map(|i| format!("t{i}")));
        for _ in 0..50 {
            let net = random_network(&t, &mut rng);
            assert!(validate(&net).is_valid());
            assert_eq!(net.taxa(), t);
            let tiny = random_tiny_cycle_network(&t, &mut rng);
            assert!(tiny.is_tiny_cycle_network());
        }
    }
}
