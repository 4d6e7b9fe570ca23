//! SetSplitting instances and their reduction to trinet sets.
//!
//! An instance is a totally ordered universe and a list of 3-element
//! subsets. It is splittable when the universe has a bipartition meeting
//! every triple on both sides. [`reduce`] builds a trinet set that some
//! binary level-1 network displays exactly when the instance is
//! splittable, and [`extract_splitting`] reads a splitting back off such a
//! network.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::HardnessError;
use crate::network::{side_decomposition, Network, Restrictor};
use crate::smallnet::{classify_valid, Shape, SmallNet, SmallNetSet};
use crate::taxa::{TaxaSet, Taxon};

/// Largest universe [`brute_setsplitting`] will scan.
pub const MAX_BRUTE_UNIVERSE: usize = 20;

/// Name of the taxon placed below the reticulation.
pub const LOW_TAXON: &str = "b";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSplittingInstance {
    universe: Vec<String>,
    triples: Vec<[usize; 3]>,
}

/// A bipartition of the universe, each part in universe order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    pub a: Vec<String>,
    pub b: Vec<String>,
}

impl SetSplittingInstance {
    /// The order of `universe` is the total order used by [`reduce`].
    pub fn new<S: AsRef<str>>(universe: Vec<String>, triples: &[[S; 3]]) -> Result<Self, HardnessError> {
        if universe.is_empty() {
            return Err(HardnessError::EmptyUniverse);
        }
        let mut seen = HashSet::new();
        for e in &universe {
            if Taxon::new(&format!("{e}_0")).is_err() {
                return Err(HardnessError::BadElementName(e.clone()));
            }
            if !seen.insert(e.as_str()) {
                return Err(HardnessError::DuplicateElement(e.clone()));
            }
        }
        let mut ids = Vec::with_capacity(triples.len());
        for (i, t) in triples.iter().enumerate() {
            let mut ix = [0; 3];
            for (slot, name) in ix.iter_mut().zip(t) {
                *slot = universe
                    .iter()
                    .position(|e| e == name.as_ref())
                    .ok_or(HardnessError::BadTriple(i + 1))?;
            }
            ix.sort_unstable();
            if ix[0] == ix[1] || ix[1] == ix[2] {
                return Err(HardnessError::BadTriple(i + 1));
            }
            ids.push(ix);
        }
        Ok(SetSplittingInstance { universe, triples: ids })
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    /// Triples as ascending universe positions.
    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    /// True when `s` partitions the universe and splits every triple.
    pub fn is_splitting(&self, s: &Splitting) -> bool {
        let mut side = vec![None; self.universe.len()];
        for (part, flag) in [(&s.a, false), (&s.b, true)] {
            for e in part {
                match self.universe.iter().position(|u| u == e) {
                    Some(i) if side[i].is_none() => side[i] = Some(flag),
                    _ => return false,
                }
            }
        }
        if side.iter().any(Option::is_none) {
            return false;
        }
        self.triples.iter().all(|t| {
            let s: Vec<bool> = t.iter().map(|&i| side[i].unwrap()).collect();
            s.contains(&true) && s.contains(&false)
        })
    }

    /// Whether each element lies in some triple.
    pub fn used(&self) -> Vec<bool> {
        let mut used = vec![false; self.universe.len()];
        for t in &self.triples {
            for &i in t {
                used[i] = true;
            }
        }
        used
    }

    fn splitting_from(&self, in_b: impl Fn(usize) -> bool) -> Splitting {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (i, e) in self.universe.iter().enumerate() {
            if in_b(i) { &mut b } else { &mut a }.push(e.clone());
        }
        Splitting { a, b }
    }
}

impl fmt::Display for SetSplittingInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.universe.join(" "))?;
        for t in &self.triples {
            writeln!(f, "{} {} {}", self.universe[t[0]], self.universe[t[1]], self.universe[t[2]])?;
        }
        Ok(())
    }
}

/// First non-blank line: the universe in order. Each further line: three
/// elements. Lines starting with `#` are ignored.
impl FromStr for SetSplittingInstance {
    type Err = HardnessError;

    fn from_str(s: &str) -> Result<Self, HardnessError> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let Some((_, first)) = lines.next() else {
            return Err(HardnessError::EmptyUniverse);
        };
        let universe: Vec<String> = first.split_whitespace().map(str::to_string).collect();
        let mut triples = Vec::new();
        let mut line_of = Vec::new();
        for (line, l) in lines {
            let toks: Vec<&str> = l.split_whitespace().collect();
            let [a, b, c] = toks[..] else {
                return Err(HardnessError::Parse {
                    line,
                    message: format!("expected three elements, found {}", toks.len()),
                });
            };
            triples.push([a, b, c]);
            line_of.push(line);
        }
        SetSplittingInstance::new(universe, &triples).map_err(|e| match e {
            HardnessError::BadTriple(i) => HardnessError::Parse {
                line: line_of[i - 1],
                message: "triple needs three distinct universe elements".into(),
            },
            other => other,
        })
    }
}

fn names(inst: &SetSplittingInstance) -> (Vec<Taxon>, Vec<[[Taxon; 2]; 3]>) {
    let tx = |s: String| Taxon::new(&s).expect("element names are checked");
    let zero = inst.universe.iter().map(|e| tx(format!("{e}_0"))).collect();
    let indexed = inst
        .triples
        .iter()
        .enumerate()
        .map(|(i, t)| {
            t.map(|u| {
                let e = &inst.universe[u];
                [tx(format!("{e}_{}", i + 1)), tx(format!("{e}_{}p", i + 1))]
            })
        })
        .collect();
    (zero, indexed)
}

/// The nine trinets per triple over the taxa `u_0`, `b`, `u_i` and `u_ip`.
pub fn reduce(inst: &SetSplittingInstance) -> Result<SmallNetSet, HardnessError> {
    if inst.triples.is_empty() {
        return Err(HardnessError::NoTriples);
    }
    let (zero, indexed) = names(inst);
    let b = Taxon::new(LOW_TAXON).unwrap();
    let mut taxa = TaxaSet::new();
    let mut add = |t: &Taxon| {
        if !taxa.insert(t.clone()) {
            return Err(HardnessError::NameCollision(t.to_string()));
        }
        Ok(())
    };
    add(&b)?;
    for t in zero.iter().chain(indexed.iter().flatten().flatten()) {
        add(t)?;
    }

    let mut ts = SmallNetSet::with_taxa(taxa);
    let sn = |shape, slots: [&Taxon; 3]| SmallNet::new(shape, slots.into_iter().cloned().collect()).unwrap();
    for (t, [[ui, uip], [vi, vip], [wi, wip]]) in inst.triples.iter().zip(&indexed) {
        ts.insert(sn(Shape::T1, [vi, vip, ui]));
        ts.insert(sn(Shape::T1, [wi, wip, vi]));
        ts.insert(sn(Shape::T1, [ui, uip, wi]));
        ts.insert(sn(Shape::S2, [vi, vip, &b]));
        ts.insert(sn(Shape::S2, [wi, wip, &b]));
        ts.insert(sn(Shape::S2, [ui, uip, &b]));
        for (x, e) in [ui, vi, wi].into_iter().zip(t) {
            ts.insert(sn(Shape::S1, [x, &zero[*e], &b]));
        }
    }
    Ok(ts)
}

/// A splitting found by scanning all bipartitions, or `None`.
pub fn brute_setsplitting(inst: &SetSplittingInstance) -> Result<Option<Splitting>, HardnessError> {
    let n = inst.universe.len();
    if n > MAX_BRUTE_UNIVERSE {
        return Err(HardnessError::TooLarge {
            found: n,
            limit: MAX_BRUTE_UNIVERSE,
        });
    }
    // The first element stays in `a`; bit `i` puts element `i + 1` in `b`.
    let found = (0u32..1 << (n - 1)).find(|&mask| {
        inst.triples.iter().all(|t| {
            let bits = t.map(|i| i > 0 && mask >> (i - 1) & 1 == 1);
            bits.contains(&true) && bits.contains(&false)
        })
    });
    Ok(found.map(|mask| inst.splitting_from(|i| i > 0 && mask >> (i - 1) & 1 == 1)))
}

/// The splitting `a = {u : u_0 on the first side}` read off a network that
/// displays [`reduce`]`(inst)`.
pub fn extract_splitting(net: &Network, inst: &SetSplittingInstance) -> Result<Splitting, HardnessError> {
    let ts = reduce(inst)?;
    if &net.taxa() != ts.taxa() {
        return Err(HardnessError::NotDisplayed);
    }
    let r = Restrictor::new(net);
    for sn in &ts {
        let vs: Vec<usize> = sn.slots().iter().map(|t| r.leaf(t).unwrap()).collect();
        if classify_valid(&r.restrict_vertices(&vs)).as_ref() != Some(sn) {
            return Err(HardnessError::NotDisplayed);
        }
    }
    // Elements outside every triple are unconstrained; read the sides off
    // the part of the network over the other taxa, and put them in `a`.
    let (zero, _) = names(inst);
    let used = inst.used();
    let core: TaxaSet = ts
        .taxa()
        .iter()
        .filter(|t| !zero.iter().enumerate().any(|(i, z)| z == *t && !used[i]))
        .cloned()
        .collect();
    let sd = side_decomposition(&r.restrict(&core).expect("taxa are leaves of the network"));
    let in_left = |t: &Taxon| sd.left_blocks.iter().any(|blk| blk.contains(t));
    Ok(inst.splitting_from(|i| used[i] && !in_left(&zero[i])))
}

/// `k` triples drawn uniformly (with repeats) over a universe `e1..en`.
pub fn random_instance<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> SetSplittingInstance {
    assert!(n >= 3, "a triple needs three elements");
    let universe: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    let idx: Vec<usize> = (0..n).collect();
    let triples: Vec<[&str; 3]> = (0..k)
        .map(|_| {
            let mut pick = idx.choose_multiple(rng, 3).map(|&i| universe[i].as_str());
            [pick.next().unwrap(), pick.next().unwrap(), pick.next().unwrap()]
        })
        .collect();
    SetSplittingInstance::new(universe.clone(), &triples).expect("generated instance is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taxa::taxon;

    fn fig_instance() -> SetSplittingInstance {
        "q x y z\nx y z\nq x z\n".parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        let inst = fig_instance();
        assert_eq!(inst.to_string(), "q x y z\nx y z\nq x z\n");
        assert_eq!(inst.to_string().parse::<SetSplittingInstance>().unwrap(), inst);
        assert!(matches!("a b c\na b\n".parse::<SetSplittingInstance>(), Err(HardnessError::Parse { line: 2, .. })));
        assert!(matches!("a b c\na b d\n".parse::<SetSplittingInstance>(), Err(HardnessError::Parse { line: 2, .. })));
        assert!(matches!("a b a\n".parse::<SetSplittingInstance>(), Err(HardnessError::DuplicateElement(_))));
        assert!(matches!("".parse::<SetSplittingInstance>(), Err(HardnessError::EmptyUniverse)));
    }

    #[test]
    fn single_triple_trinets() {
        let inst: SetSplittingInstance = "u v w\nw u v\n".parse().unwrap();
        let ts = reduce(&inst).unwrap();
        let mut got: Vec<String> = ts.iter().map(|s| s.to_string()).collect();
        got.sort();
        let mut want: Vec<String> = [
            "T1(v_1,v_1p;u_1)",
            "T1(w_1,w_1p;v_1)",
            "T1(u_1,u_1p;w_1)",
            "S2(v_1;v_1p;b)",
            "S2(w_1;w_1p;b)",
            "S2(u_1;u_1p;b)",
            "S1(u_1,u_0;b)",
            "S1(v_1,v_0;b)",
            "S1(w_1,w_0;b)",
        ]
        .iter()
        .map(|s| s.parse::<SmallNet>().unwrap().to_string())
        .collect();
        want.sort();
        assert_eq!(got, want);
        assert_eq!(ts.taxa().len(), 3 + 1 + 6);
    }

    #[test]
    fn fig_instance_sizes() {
        let inst = fig_instance();
        let ts = reduce(&inst).unwrap();
        assert_eq!(ts.len(), 18);
        assert_eq!(ts.taxa().len(), 17);
        assert!(ts.taxa().contains(&taxon("q_2")));
        let witness = Splitting {
            a: vec!["q".into(), "z".into()],
            b: vec!["x".into(), "y".into()],
        };
        assert!(inst.is_splitting(&witness));
        let found = brute_setsplitting(&inst).unwrap().unwrap();
        assert!(inst.is_splitting(&found));
    }

    #[test]
    fn unsplittable() {
        let inst: SetSplittingInstance = "a b c d\na b c\na b d\na c d\nb c d\n".parse().unwrap();
        assert!(brute_setsplitting(&inst).unwrap().is_some());
        let inst: SetSplittingInstance = "a b c d e\na b c\na b d\na b e\na c d\na c e\na d e\nb c d\nb c e\nb d e\nc d e\n"
            .parse()
            .unwrap();
        assert!(brute_setsplitting(&inst).unwrap().is_none());
        let empty = SetSplittingInstance::new(vec!["a".into()], &[] as &[[&str; 3]]).unwrap();
        assert!(brute_setsplitting(&empty).unwrap().is_some());
        assert!(reduce(&empty).is_err());
    }

    #[test]
    fn round_trip_through_solver() {
        use crate::solver::{solve, SolverConfig};
        let inst = fig_instance();
        let net = solve(&reduce(&inst).unwrap(), &SolverConfig::default())
            .unwrap()
            .into_network()
            .expect("splittable");
        assert_eq!(net.reticulation_count(), 1);
        let s = extract_splitting(&net, &inst).unwrap();
        assert!(inst.is_splitting(&s));
        assert!(extract_splitting(&crate::network::fixtures::cherry("q_0", "b"), &inst).is_err());
    }

    #[test]
    fn unused_elements() {
        use crate::solver::{solve, SolverConfig};
        let inst: SetSplittingInstance = "a b c d e\na b c\n".parse().unwrap();
        assert_eq!(inst.used(), vec![true, true, true, false, false]);
        let net = solve(&reduce(&inst).unwrap(), &SolverConfig::default())
            .unwrap()
            .into_network()
            .unwrap();
        let s = extract_splitting(&net, &inst).unwrap();
        assert!(inst.is_splitting(&s));
        assert!(s.a.contains(&"d".to_string()) && s.a.contains(&"e".to_string()));
    }
}
