use std::sync::OnceLock;

use super::{classify_valid, realize, Shape, SmallNet};
use crate::network::{cycles, root_kind, side_decomposition, Restrictor, RootKind};
use crate::taxa::Taxon;

/// Structural facts about each slot of a shape, read off its realized
/// network once and cached. Pair tables are symmetric and indexed by slot.
#[derive(Debug)]
pub(crate) struct ShapeInfo {
    pub cycle_rooted: bool,
    pub largish: bool,
    pub high: [bool; 3],
    /// The two slots have a common ancestor other than the root.
    pub shared_ancestor: [[bool; 3]; 3],
    /// Some cycle contains the root or a common ancestor of the two slots.
    pub cycle_over: [[bool; 3]; 3],
    /// Both slots are high and in the same pendant sidenetwork, and the
    /// remaining slot is low.
    pub same_pendant: [[bool; 3]; 3],
    /// For each slot mask, the restriction's shape and the original slot
    /// feeding each of its slots.
    pub restrictions: [Option<(Shape, [u8; 3])>; 8],
}

pub(crate) fn info(shape: Shape) -> &'static ShapeInfo {
    static TABLE: OnceLock<Vec<ShapeInfo>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Shape::ALL.iter().map(|&s| derive(s)).collect());
    &table[Shape::ALL.iter().position(|&s| s == shape).unwrap()]
}

fn placeholder(i: usize) -> Taxon {
    Taxon::new(&i.to_string()).unwrap()
}

fn derive(shape: Shape) -> ShapeInfo {
    let k = shape.arity();
    let sn = SmallNet::new(shape, (0..k).map(placeholder).collect()).unwrap();
    let net = realize(&sn);
    let leaf: Vec<usize> = (0..k)
        .map(|i| net.leaf_vertex(&placeholder(i)).unwrap())
        .collect();

    let n = net.vertex_count();
    let mut below = vec![[false; 3]; n];
    for &v in net.topological_order().iter().rev() {
        for (i, &l) in leaf.iter().enumerate() {
            below[v][i] = v == l || net.children(v).iter().any(|&c| below[c][i]);
        }
    }
    let kind = root_kind(&net);
    let cycle_rooted = kind != RootKind::NotCycleRooted;
    let on_cycle: Vec<bool> = {
        let mut on = vec![false; n];
        for c in cycles(&net) {
            on[c.source] = true;
            on[c.reticulation] = true;
            for &v in c.sides.iter().flatten() {
                on[v] = true;
            }
        }
        on
    };

    let dec = side_decomposition(&net);
    let mut high = [false; 3];
    for (i, h) in high.iter_mut().enumerate().take(k) {
        *h = dec.high.contains(&placeholder(i));
    }
    let block_of = |i: usize| {
        let t = placeholder(i);
        dec.left_blocks
            .iter()
            .chain(&dec.right_blocks)
            .position(|b| b.contains(&t))
    };

    let mut shared_ancestor = [[false; 3]; 3];
    let mut cycle_over = [[false; 3]; 3];
    let mut same_pendant = [[false; 3]; 3];
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let common = (0..n).filter(|&v| below[v][i] && below[v][j]);
            shared_ancestor[i][j] = common.clone().any(|v| v != net.root());
            cycle_over[i][j] = cycle_rooted || common.clone().any(|v| on_cycle[v]);
            let rest_low = (0..k).filter(|&c| c != i && c != j).all(|c| !high[c]);
            same_pendant[i][j] = cycle_rooted
                && high[i]
                && high[j]
                && k == 3
                && rest_low
                && block_of(i) == block_of(j);
        }
    }

    let restrictor = Restrictor::new(&net);
    let mut restrictions = [None; 8];
    for (mask, slot) in restrictions.iter_mut().enumerate() {
        let chosen: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        if chosen.len() < 2 || mask >> k != 0 {
            continue;
        }
        let vs: Vec<usize> = chosen.iter().map(|&i| leaf[i]).collect();
        let sub = classify_valid(&restrictor.restrict_vertices(&vs)).unwrap();
        let mut map = [0u8; 3];
        for (j, t) in sub.slots().iter().enumerate() {
            map[j] = t.as_str().parse().unwrap();
        }
        *slot = Some((sub.shape(), map));
    }

    ShapeInfo {
        cycle_rooted,
        largish: kind == RootKind::LargishCycleRooted,
        high,
        shared_ancestor,
        cycle_over,
        same_pendant,
        restrictions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heights() {
        assert_eq!(info(Shape::N).high[..2], [false, true]);
        assert_eq!(info(Shape::T1).high, [true, true, true]);
        assert_eq!(info(Shape::S2).high, [true, true, false]);
        assert_eq!(info(Shape::N2).high, [false, false, true]);
        assert!(info(Shape::S1).largish && info(Shape::S2).largish);
        assert!(!info(Shape::N1).largish && info(Shape::N1).cycle_rooted);
    }

    #[test]
    fn ancestors_and_pendants() {
        let t1 = info(Shape::T1);
        assert!(t1.shared_ancestor[0][1] && !t1.shared_ancestor[0][2]);
        let n3 = info(Shape::N3);
        assert!(n3.cycle_over[0][1] && !n3.cycle_over[0][2]);
        assert!(info(Shape::N4).same_pendant[0][1]);
        assert!(info(Shape::N1).same_pendant[1][0]);
        assert!(!info(Shape::S2).same_pendant[0][1]);
        assert!(!info(Shape::S1).shared_ancestor[0][1]);
        assert!(info(Shape::S2).shared_ancestor[0][1]);
    }

    #[test]
    fn restriction_table() {
        assert_eq!(info(Shape::S2).restrictions[0b101], Some((Shape::N, [2, 0, 0])));
        assert_eq!(info(Shape::S2).restrictions[0b011], Some((Shape::T, [0, 1, 0])));
        assert_eq!(info(Shape::N5).restrictions[0b011], Some((Shape::N, [0, 1, 0])));
        assert_eq!(info(Shape::N).restrictions[0b11], Some((Shape::N, [0, 1, 0])));
        assert_eq!(info(Shape::T1).restrictions[0b001], None);
    }
}
