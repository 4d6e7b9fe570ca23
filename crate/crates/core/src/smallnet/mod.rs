//! The two binets and eight trinets, and sets of them.

mod info;
mod set;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

pub(crate) use info::info;
pub use set::{extract_all, restrict_set, SmallNetSet};

use crate::error::{NetworkError, ParseError, SmallNetError};
use crate::network::{code_with, validate, Network, NetworkBuilder};
use crate::taxa::{TaxaSet, Taxon};

/// Catalog shape of a binet or trinet.
///
/// Slot conventions (`x`, `y`, `z` in order):
/// - `T(x,y)`: cherry.
/// - `N(x;y)`: tiny cycle at the root, `x` below the reticulation.
/// - `T1(x,y;z)`: tree with cluster `{x,y}`.
/// - `N3(x;y;z)`: root with children `N(x;y)` and `z`.
/// - `N1(x,y;z)` / `N4(x;y;z)`: tiny cycle at the root, `z` low, side pendant
///   `T(x,y)` / `N(x;y)`.
/// - `N2(x,y;z)` / `N5(x;y;z)`: tiny cycle at the root, `z` the side leaf,
///   `T(x,y)` / `N(x;y)` below the reticulation.
/// - `S1(x,y;z)`: four-cycle with `x` and `y` on opposite sides, `z` low.
/// - `S2(x;y;z)`: four-cycle with `x` above `y` on one side, `z` low.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    T,
    N,
    T1,
    N3,
    N1,
    N4,
    N2,
    N5,
    S1,
    S2,
}

impl Shape {
    pub const ALL: [Shape; 10] = [
        Shape::T,
        Shape::N,
        Shape::T1,
        Shape::N3,
        Shape::N1,
        Shape::N4,
        Shape::N2,
        Shape::N5,
        Shape::S1,
        Shape::S2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Shape::T => "T",
            Shape::N => "N",
            Shape::T1 => "T1",
            Shape::N3 => "N3",
            Shape::N1 => "N1",
            Shape::N4 => "N4",
            Shape::N2 => "N2",
            Shape::N5 => "N5",
            Shape::S1 => "S1",
            Shape::S2 => "S2",
        }
    }

    pub fn arity(self) -> usize {
        if self.is_binet() {
            2
        } else {
            3
        }
    }

    pub fn is_binet(self) -> bool {
        matches!(self, Shape::T | Shape::N)
    }

    /// Whether the first two slots are interchangeable.
    pub fn is_symmetric(self) -> bool {
        matches!(self, Shape::T | Shape::T1 | Shape::S1 | Shape::N1 | Shape::N2)
    }

    /// Every shape except S1 and S2 is a tiny-cycle network.
    pub fn is_tiny(self) -> bool {
        !matches!(self, Shape::S1 | Shape::S2)
    }

    /// Separator written after each slot but the last.
    pub(crate) fn separators(self) -> &'static [char] {
        match self {
            Shape::T => &[','],
            Shape::N => &[';'],
            Shape::T1 | Shape::S1 | Shape::N1 | Shape::N2 => &[',', ';'],
            Shape::N3 | Shape::N4 | Shape::N5 | Shape::S2 => &[';', ';'],
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Shape {
    type Err = SmallNetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Shape::ALL
            .into_iter()
            .find(|sh| sh.name() == s)
            .ok_or_else(|| SmallNetError::UnknownShape(s.to_string()))
    }
}

/// A binet or trinet given by its shape and slot taxa.
///
/// Symmetric slot pairs are stored in name order, so equal values denote
/// equivalent networks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SmallNet {
    shape: Shape,
    slots: Vec<Taxon>,
}

impl SmallNet {
    pub fn new(shape: Shape, mut slots: Vec<Taxon>) -> Result<Self, SmallNetError> {
        if slots.len() != shape.arity() {
            return Err(SmallNetError::Arity {
                shape: shape.name(),
                expected: shape.arity(),
                found: slots.len(),
            });
        }
        for (i, t) in slots.iter().enumerate() {
            if slots[..i].contains(t) {
                return Err(SmallNetError::RepeatedTaxon(t.clone()));
            }
        }
        if shape.is_symmetric() && slots[0] > slots[1] {
            slots.swap(0, 1);
        }
        Ok(SmallNet { shape, slots })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn slots(&self) -> &[Taxon] {
        &self.slots
    }

    pub fn taxa(&self) -> TaxaSet {
        self.slots.iter().cloned().collect()
    }

    pub fn is_binet(&self) -> bool {
        self.shape.is_binet()
    }

    /// `self|sub`, or `None` when fewer than two slots survive.
    pub fn restrict(&self, sub: &TaxaSet) -> Option<SmallNet> {
        let mask = self
            .slots
            .iter()
            .enumerate()
            .filter(|(_, t)| sub.contains(*t))
            .fold(0usize, |m, (i, _)| m | 1 << i);
        let (shape, map) = info(self.shape).restrictions[mask]?;
        let slots = map[..shape.arity()]
            .iter()
            .map(|&i| self.slots[i as usize].clone())
            .collect();
        Some(SmallNet::new(shape, slots).expect("restriction of a valid small net"))
    }
}

impl fmt::Display for SmallNet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.shape)?;
        for (i, t) in self.slots.iter().enumerate() {
            if i > 0 {
                write!(f, "{}", self.shape.separators()[i - 1])?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for SmallNet {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        crate::io::parse_smallnet_item(s, 1, 1)
    }
}

/// Builds the network of a small net.
pub fn realize(sn: &SmallNet) -> Network {
    let leaf = |i: usize| Network::leaf(sn.slots[i].clone());
    let binet = |shape: Shape, a: usize, b: usize| {
        realize(&SmallNet::new(shape, vec![sn.slots[a].clone(), sn.slots[b].clone()]).unwrap())
    };
    match sn.shape {
        Shape::T => join(&leaf(0), &leaf(1)),
        Shape::N => hang_cycle(&[&leaf(1)], &[], &leaf(0)),
        Shape::T1 => join(&binet(Shape::T, 0, 1), &leaf(2)),
        Shape::N3 => join(&binet(Shape::N, 0, 1), &leaf(2)),
        Shape::N1 => hang_cycle(&[&binet(Shape::T, 0, 1)], &[], &leaf(2)),
        Shape::N4 => hang_cycle(&[&binet(Shape::N, 0, 1)], &[], &leaf(2)),
        Shape::N2 => hang_cycle(&[&leaf(2)], &[], &binet(Shape::T, 0, 1)),
        Shape::N5 => hang_cycle(&[&leaf(2)], &[], &binet(Shape::N, 0, 1)),
        Shape::S1 => hang_cycle(&[&leaf(0)], &[&leaf(1)], &leaf(2)),
        Shape::S2 => hang_cycle(&[&leaf(0), &leaf(1)], &[], &leaf(2)),
    }
}

/// A new root above `a` and `b`.
pub(crate) fn join(a: &Network, b: &Network) -> Network {
    let mut bld = NetworkBuilder::new();
    let ra = bld.graft(a);
    let rb = bld.graft(b);
    let root = bld.add_vertex();
    bld.add_arc(root, ra);
    bld.add_arc(root, rb);
    bld.build()
}

/// A root cycle with the given pendant networks along its two sides, in
/// order from the root, and `low` below the reticulation. At least one side
/// must be nonempty.
pub(crate) fn hang_cycle(left: &[&Network], right: &[&Network], low: &Network) -> Network {
    assert!(!left.is_empty() || !right.is_empty());
    let mut bld = NetworkBuilder::new();
    let root = bld.add_vertex();
    let ret = bld.add_vertex();
    for side in [left, right] {
        let mut prev = root;
        for net in side {
            let u = bld.add_vertex();
            bld.add_arc(prev, u);
            let r = bld.graft(net);
            bld.add_arc(u, r);
            prev = u;
        }
        bld.add_arc(prev, ret);
    }
    let r = bld.graft(low);
    bld.add_arc(ret, r);
    bld.build()
}

type ClassTable = HashMap<String, (Shape, [u8; 3])>;

/// Canonical codes of all small nets on the placeholder taxa "0", "1", "2",
/// mapped to the shape and the slot order that produced them.
fn class_table() -> &'static ClassTable {
    static TABLE: OnceLock<ClassTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = HashMap::new();
        for shape in Shape::ALL {
            for perm in permutations(shape.arity()) {
                if shape.is_symmetric() && perm[0] > perm[1] {
                    continue;
                }
                let slots = perm[..shape.arity()]
                    .iter()
                    .map(|i| Taxon::new(&i.to_string()).unwrap())
                    .collect();
                let net = realize(&SmallNet::new(shape, slots).unwrap());
                let code = code_with(&net, |t| t.as_str().to_string());
                let prev = table.insert(code, (shape, perm));
                debug_assert!(prev.is_none());
            }
        }
        table
    })
}

fn permutations(k: usize) -> Vec<[u8; 3]> {
    let mut out = Vec::new();
    for a in 0..k as u8 {
        for b in 0..k as u8 {
            if b == a {
                continue;
            }
            if k == 2 {
                out.push([a, b, 0]);
                continue;
            }
            out.push([a, b, 3 - a - b]);
        }
    }
    out
}

/// Identifies a 2- or 3-leaf network with its catalog entry.
pub fn classify(net: &Network) -> Result<SmallNet, NetworkError> {
    let report = validate(net);
    if !report.is_valid() {
        return Err(NetworkError::Invalid(report));
    }
    let k = net.leaf_count();
    if !(2..=3).contains(&k) {
        return Err(NetworkError::LeafCount {
            expected: "2 or 3".into(),
            found: k,
        });
    }
    classify_valid(net).ok_or(NetworkError::Unclassifiable)
}

/// [`classify`] for a network already known to be valid.
pub(crate) fn classify_valid(net: &Network) -> Option<SmallNet> {
    let mut leaves: Vec<&Taxon> = net.leaves().map(|(_, t)| t).collect();
    leaves.sort();
    let code = code_with(net, |t| {
        leaves.iter().position(|&l| l == t).unwrap().to_string()
    });
    let &(shape, perm) = class_table().get(&code)?;
    let slots = perm[..shape.arity()]
        .iter()
        .map(|&i| leaves[i as usize].clone())
        .collect();
    SmallNet::new(shape, slots).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{canonical_code, is_equivalent, root_kind, RootKind};
    use crate::taxa::{taxa, taxon};

    fn sn(shape: Shape, names: &[&str]) -> SmallNet {
        SmallNet::new(shape, names.iter().map(|n| taxon(n)).collect()).unwrap()
    }

    #[test]
    fn table_has_every_labelled_small_net() {
        assert_eq!(class_table().len(), 39);
        let binets = class_table().values().filter(|(s, _)| s.is_binet()).count();
        assert_eq!(binets, 3);
    }

    #[test]
    fn classify_inverts_realize() {
        for shape in Shape::ALL {
            for perm in permutations(shape.arity()) {
                let names = ["p", "q", "r"];
                let slots: Vec<&str> = perm[..shape.arity()].iter().map(|&i| names[i as usize]).collect();
                let s = sn(shape, &slots);
                let net = realize(&s);
                assert!(validate(&net).is_valid(), "{s}");
                assert_eq!(classify(&net).unwrap(), s);
            }
        }
    }

    #[test]
    fn normalization() {
        assert_eq!(sn(Shape::T1, &["b", "a", "c"]), sn(Shape::T1, &["a", "b", "c"]));
        assert_ne!(sn(Shape::S2, &["x", "y", "z"]), sn(Shape::S2, &["y", "x", "z"]));
        assert!(SmallNet::new(Shape::T, vec![taxon("a")]).is_err());
        assert!(SmallNet::new(Shape::T, vec![taxon("a"), taxon("a")]).is_err());
        assert_eq!(sn(Shape::S1, &["y", "x", "z"]).to_string(), "S1(x,y;z)");
        assert_eq!(sn(Shape::N5, &["y", "x", "z"]).to_string(), "N5(y;x;z)");
    }

    #[test]
    fn realized_shapes() {
        let n = realize(&sn(Shape::N, &["x", "y"]));
        assert_eq!(canonical_code(&n), "(;;y;x)");
        assert_eq!(root_kind(&realize(&sn(Shape::S1, &["x", "y", "z"]))), RootKind::LargishCycleRooted);
        assert_eq!(root_kind(&realize(&sn(Shape::N3, &["x", "y", "z"]))), RootKind::NotCycleRooted);
        assert_eq!(root_kind(&realize(&sn(Shape::N2, &["x", "y", "z"]))), RootKind::TinyCycleRooted);
        assert!(!is_equivalent(
            &realize(&sn(Shape::S2, &["x", "y", "z"])),
            &realize(&sn(Shape::S2, &["y", "x", "z"]))
        ));
    }

    #[test]
    fn small_net_restriction() {
        let t1 = sn(Shape::T1, &["x", "y", "z"]);
        assert_eq!(t1.restrict(&taxa(["x", "y"])), Some(sn(Shape::T, &["x", "y"])));
        let s2 = sn(Shape::S2, &["x", "y", "z"]);
        assert_eq!(s2.restrict(&taxa(["x", "z"])), Some(sn(Shape::N, &["z", "x"])));
        assert_eq!(s2.restrict(&taxa(["x", "y"])), Some(sn(Shape::T, &["x", "y"])));
        assert_eq!(s2.restrict(&taxa(["x"])), None);
        assert_eq!(s2.restrict(&taxa(["x", "y", "z", "w"])), Some(s2.clone()));
    }

    #[test]
    fn classify_rejects_wrong_sizes() {
        assert!(classify(&Network::leaf(taxon("a"))).is_err());
    }
}
