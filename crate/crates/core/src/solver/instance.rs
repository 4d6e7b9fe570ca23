use crate::smallnet::{info, Shape, SmallNet, SmallNetSet};
use crate::taxa::{TaxaSet, Taxon};

/// A small net with taxa replaced by their index in the sorted taxa list.
/// Symmetric slot pairs are stored in index order, which is name order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Item {
    pub shape: Shape,
    pub leaves: [u32; 3],
}

impl Item {
    pub fn new(shape: Shape, mut leaves: [u32; 3]) -> Item {
        if shape.is_symmetric() && leaves[0] > leaves[1] {
            leaves.swap(0, 1);
        }
        if shape.is_binet() {
            leaves[2] = u32::MAX;
        }
        Item { shape, leaves }
    }

    pub fn leaves(&self) -> &[u32] {
        &self.leaves[..self.shape.arity()]
    }

    pub fn mask(&self, keep: impl Fn(u32) -> bool) -> usize {
        self.leaves()
            .iter()
            .enumerate()
            .filter(|(_, &l)| keep(l))
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// The item restricted to the leaves accepted by `keep`.
    pub fn restrict(&self, keep: impl Fn(u32) -> bool) -> Option<Item> {
        let mask = self.mask(keep);
        if mask == (1 << self.shape.arity()) - 1 {
            return Some(*self);
        }
        let (shape, map) = info(self.shape).restrictions[mask]?;
        let mut leaves = [0; 3];
        for i in 0..shape.arity() {
            leaves[i] = self.leaves[map[i] as usize];
        }
        Some(Item::new(shape, leaves))
    }
}

/// A small-net set over taxa `0..n`.
#[derive(Clone, Debug)]
pub(crate) struct Instance {
    pub taxa: Vec<Taxon>,
    pub items: Vec<Item>,
}

impl Instance {
    pub fn new(ts: &SmallNetSet) -> Instance {
        let taxa: Vec<Taxon> = ts.taxa().iter().cloned().collect();
        let mut inst = Instance {
            taxa,
            items: Vec::new(),
        };
        let mut items: Vec<Item> = ts
            .iter()
            .map(|sn| {
                let mut leaves = [u32::MAX; 3];
                for (i, t) in sn.slots().iter().enumerate() {
                    leaves[i] = inst.id(t);
                }
                Item::new(sn.shape(), leaves)
            })
            .collect();
        items.sort_unstable();
        items.dedup();
        inst.items = items;
        inst
    }

    pub fn len(&self) -> usize {
        self.taxa.len()
    }

    pub fn id(&self, t: &Taxon) -> u32 {
        self.taxa.binary_search(t).expect("declared taxon") as u32
    }

    pub fn taxon(&self, id: u32) -> &Taxon {
        &self.taxa[id as usize]
    }

    pub fn set_of(&self, ids: impl IntoIterator<Item = u32>) -> TaxaSet {
        ids.into_iter().map(|i| self.taxon(i).clone()).collect()
    }

    pub fn ids_of(&self, set: &TaxaSet) -> Vec<u32> {
        let mut v: Vec<u32> = set.iter().map(|t| self.id(t)).collect();
        v.sort_unstable();
        v
    }

    pub fn membership(&self, ids: &[u32]) -> Vec<bool> {
        let mut m = vec![false; self.len()];
        for &i in ids {
            m[i as usize] = true;
        }
        m
    }

    pub fn smallnet(&self, it: &Item) -> SmallNet {
        let slots = it.leaves().iter().map(|&i| self.taxon(i).clone()).collect();
        SmallNet::new(it.shape, slots).expect("item with distinct taxa")
    }
}

/// Items restricted to the taxa marked in `keep`, deduplicated.
pub(crate) fn restrict_items(items: &[Item], keep: &[bool]) -> Vec<Item> {
    let mut out: Vec<Item> = items
        .iter()
        .filter_map(|it| it.restrict(|l| keep[l as usize]))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}
