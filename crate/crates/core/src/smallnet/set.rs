use std::collections::{BTreeSet, HashSet};

use super::{classify_valid, SmallNet};
use crate::error::{NetworkError, SmallNetError};
use crate::network::{validate, Network, Restrictor};
use crate::taxa::{TaxaSet, Taxon};

/// A set of binets and trinets over a declared taxa set.
///
/// The declared taxa always include every taxon used by an item and may
/// contain more. Different items on the same leaf set are allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SmallNetSet {
    taxa: TaxaSet,
    items: BTreeSet<SmallNet>,
}

impl SmallNetSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_taxa(taxa: TaxaSet) -> Self {
        SmallNetSet {
            taxa,
            items: BTreeSet::new(),
        }
    }

    /// Items over a fixed taxa set; fails on an item using other taxa.
    pub fn from_items_over<I>(taxa: TaxaSet, items: I) -> Result<Self, SmallNetError>
    where
        I: IntoIterator<Item = SmallNet>,
    {
        let mut set = Self::with_taxa(taxa);
        for sn in items {
            if let Some(t) = sn.slots().iter().find(|t| !set.taxa.contains(*t)) {
                return Err(SmallNetError::Undeclared(t.clone()));
            }
            set.items.insert(sn);
        }
        Ok(set)
    }

    /// Adds an item and its taxa. Returns false if it was already present.
    pub fn insert(&mut self, sn: SmallNet) -> bool {
        self.taxa.extend(sn.slots().iter().cloned());
        self.items.insert(sn)
    }

    pub fn add_taxon(&mut self, t: Taxon) {
        self.taxa.insert(t);
    }

    pub fn taxa(&self) -> &TaxaSet {
        &self.taxa
    }

    pub fn iter(&self) -> impl Iterator<Item = &SmallNet> + '_ {
        self.items.iter()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, sn: &SmallNet) -> bool {
        self.items.contains(sn)
    }

    /// Every 3-subset of the taxa carries a trinet.
    pub fn is_dense(&self) -> bool {
        let covered: HashSet<TaxaSet> = self
            .items
            .iter()
            .filter(|s| !s.is_binet())
            .map(SmallNet::taxa)
            .collect();
        let n = self.taxa.len();
        covered.len() == n * n.saturating_sub(1) * n.saturating_sub(2) / 6
    }

    /// Every 2-subset of the taxa lies in some item.
    pub fn is_semi_dense(&self) -> bool {
        let mut covered: HashSet<(&Taxon, &Taxon)> = HashSet::new();
        for s in &self.items {
            let slots = s.slots();
            for i in 0..slots.len() {
                for j in 0..slots.len() {
                    if slots[i] < slots[j] {
                        covered.insert((&slots[i], &slots[j]));
                    }
                }
            }
        }
        let n = self.taxa.len();
        covered.len() == n * n.saturating_sub(1) / 2
    }

    /// Items whose shape is a tiny-cycle network.
    pub fn tiny_only(&self) -> Self {
        SmallNetSet {
            taxa: self.taxa.clone(),
            items: self.items.iter().filter(|s| s.shape().is_tiny()).cloned().collect(),
        }
    }

    pub fn binets_only(&self) -> Self {
        SmallNetSet {
            taxa: self.taxa.clone(),
            items: self.items.iter().filter(|s| s.is_binet()).cloned().collect(),
        }
    }
}

impl FromIterator<SmallNet> for SmallNetSet {
    fn from_iter<I: IntoIterator<Item = SmallNet>>(iter: I) -> Self {
        let mut set = SmallNetSet::new();
        set.extend(iter);
        set
    }
}

impl Extend<SmallNet> for SmallNetSet {
    fn extend<I: IntoIterator<Item = SmallNet>>(&mut self, iter: I) {
        for sn in iter {
            self.insert(sn);
        }
    }
}

impl<'a> IntoIterator for &'a SmallNetSet {
    type Item = &'a SmallNet;
    type IntoIter = std::collections::btree_set::Iter<'a, SmallNet>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

/// `ts|sub`: each item restricted to its taxa in `sub`, keeping those with
/// two or three taxa left.
pub fn restrict_set(ts: &SmallNetSet, sub: &TaxaSet) -> SmallNetSet {
    SmallNetSet {
        taxa: ts.taxa.intersection(sub).cloned().collect(),
        items: ts.items.iter().filter_map(|s| s.restrict(sub)).collect(),
    }
}

/// All binets and trinets displayed by a valid network.
pub fn extract_all(net: &Network) -> Result<SmallNetSet, NetworkError> {
    let report = validate(net);
    if !report.is_valid() {
        return Err(NetworkError::Invalid(report));
    }
    let mut leaves: Vec<(&Taxon, usize)> = net.leaves().map(|(v, t)| (t, v)).collect();
    if leaves.len() < 2 {
        return Err(NetworkError::LeafCount {
            expected: "at least 2".into(),
            found: leaves.len(),
        });
    }
    leaves.sort();
    let vs: Vec<usize> = leaves.iter().map(|&(_, v)| v).collect();
    let r = Restrictor::new(net);
    let mut out = SmallNetSet::with_taxa(net.taxa());
    let mut classify = |sub: &[usize]| {
        let sn = classify_valid(&r.restrict_vertices(sub)).expect("restriction is a small net");
        out.items.insert(sn);
    };
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            classify(&[vs[i], vs[j]]);
            for k in j + 1..vs.len() {
                classify(&[vs[i], vs[j], vs[k]]);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallnet::{realize, Shape};
    use crate::taxa::{taxa, taxon};

    fn sn(shape: Shape, names: &[&str]) -> SmallNet {
        SmallNet::new(shape, names.iter().map(|n| taxon(n)).collect()).unwrap()
    }

    #[test]
    fn extract_from_tree_trinet() {
        let got = extract_all(&realize(&sn(Shape::T1, &["x", "y", "z"]))).unwrap();
        let want: SmallNetSet = [
            sn(Shape::T, &["x", "y"]),
            sn(Shape::T, &["x", "z"]),
            sn(Shape::T, &["y", "z"]),
            sn(Shape::T1, &["x", "y", "z"]),
        ]
        .into_iter()
        .collect();
        assert_eq!(got, want);
        assert!(got.is_dense() && got.is_semi_dense());
    }

    #[test]
    fn extract_from_binet() {
        let b = sn(Shape::N, &["x", "y"]);
        let got = extract_all(&realize(&b)).unwrap();
        assert_eq!(got.iter().cloned().collect::<Vec<_>>(), vec![b]);
    }

    #[test]
    fn density_flags() {
        let mut s = SmallNetSet::with_taxa(taxa(["a", "b", "c", "d"]));
        s.insert(sn(Shape::T1, &["a", "b", "c"]));
        assert!(!s.is_dense() && !s.is_semi_dense());
        let t: SmallNetSet = [
            sn(Shape::T, &["a", "b"]),
            sn(Shape::T, &["b", "c"]),
            sn(Shape::T, &["a", "c"]),
        ]
        .into_iter()
        .collect();
        assert!(t.is_semi_dense() && !t.is_dense());
    }

    #[test]
    fn restriction_of_sets() {
        let s: SmallNetSet = [sn(Shape::S2, &["x", "y", "z"])].into_iter().collect();
        let r = restrict_set(&s, &taxa(["x", "z"]));
        assert_eq!(r.iter().next(), Some(&sn(Shape::N, &["z", "x"])));
        assert_eq!(restrict_set(&s, s.taxa()), s);
        assert!(SmallNetSet::from_items_over(taxa(["x"]), s.iter().cloned()).is_err());
    }
}
