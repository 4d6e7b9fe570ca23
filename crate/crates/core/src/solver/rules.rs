//! Edge and arc rules of the auxiliary graphs, one item at a time. Each rule
//! reports pairs of taxon ids through a callback.

use super::instance::Item;
use crate::smallnet::{info, Shape};

fn slot_pairs(it: &Item) -> impl Iterator<Item = (usize, usize)> {
    let k = it.shape.arity();
    (0..k).flat_map(move |i| (i + 1..k).map(move |j| (i, j)))
}

/// Pairs that force the two taxa below a common child of the root, or into
/// a cycle at the root.
pub(crate) fn r_edges(it: &Item, mut f: impl FnMut(u32, u32)) {
    let si = info(it.shape);
    for (i, j) in slot_pairs(it) {
        if si.cycle_rooted || si.shared_ancestor[i][j] {
            f(it.leaves[i], it.leaves[j]);
        }
    }
}

/// Pairs at the same height in the item.
pub(crate) fn k_edges(it: &Item, mut f: impl FnMut(u32, u32)) {
    let si = info(it.shape);
    for (i, j) in slot_pairs(it) {
        if si.high[i] == si.high[j] {
            f(it.leaves[i], it.leaves[j]);
        }
    }
}

/// Same-height pairs plus every pair of a largish-cycle rooted item.
pub(crate) fn kdagger_edges(it: &Item, mut f: impl FnMut(u32, u32)) {
    let si = info(it.shape);
    for (i, j) in slot_pairs(it) {
        if si.largish || si.high[i] == si.high[j] {
            f(it.leaves[i], it.leaves[j]);
        }
    }
}

/// `(high, low)` pairs of a cycle-rooted item.
pub(crate) fn height_arcs(it: &Item, mut f: impl FnMut(u32, u32)) {
    let si = info(it.shape);
    if !si.cycle_rooted {
        return;
    }
    let k = it.shape.arity();
    for i in 0..k {
        for j in 0..k {
            if si.high[i] && !si.high[j] {
                f(it.leaves[i], it.leaves[j]);
            }
        }
    }
}

/// Pairs of high taxa that share a non-root ancestor in the item.
pub(crate) fn m_edges(it: &Item, in_high: impl Fn(u32) -> bool, mut f: impl FnMut(u32, u32)) {
    let si = info(it.shape);
    for (i, j) in slot_pairs(it) {
        let (a, b) = (it.leaves[i], it.leaves[j]);
        if si.shared_ancestor[i][j] && in_high(a) && in_high(b) {
            f(a, b);
        }
    }
}

/// The two side taxa of `S1(x,y;z)` when both are high and `z` is not.
pub(crate) fn w_edges(it: &Item, in_high: impl Fn(u32) -> bool, mut f: impl FnMut(u32, u32)) {
    if it.shape == Shape::S1 {
        let [x, y, z] = it.leaves;
        if in_high(x) && in_high(y) && !in_high(z) {
            f(x, y);
        }
    }
}

/// Pairs within `side` that must share a pendant sidenetwork.
pub(crate) fn o_edges(
    it: &Item,
    in_side: impl Fn(u32) -> bool,
    in_high: impl Fn(u32) -> bool,
    mut f: impl FnMut(u32, u32),
) {
    let si = info(it.shape);
    let k = it.shape.arity();
    let mask = it.mask(&in_side);
    if mask == (1 << k) - 1 {
        for (i, j) in slot_pairs(it) {
            if si.cycle_over[i][j] {
                f(it.leaves[i], it.leaves[j]);
            }
        }
        if it.shape == Shape::T1 {
            f(it.leaves[0], it.leaves[1]);
        }
    } else if mask.count_ones() >= 2 {
        let (shape, map) = info(it.shape).restrictions[mask].expect("two or more slots");
        let ri = info(shape);
        for i in 0..shape.arity() {
            for j in i + 1..shape.arity() {
                if ri.cycle_over[i][j] {
                    f(it.leaves[map[i] as usize], it.leaves[map[j] as usize]);
                }
            }
        }
    }
    if k == 3 {
        for (i, j) in slot_pairs(it) {
            let (a, b, c) = (it.leaves[i], it.leaves[j], it.leaves[3 - i - j]);
            if si.same_pendant[i][j] && in_side(a) && in_side(b) && !in_high(c) {
                f(a, b);
            }
        }
    }
}

/// `(x, y)` for `S2(x;y;z)` with `x`, `y` in the side and `z` not high.
pub(crate) fn d_arcs(
    it: &Item,
    in_side: impl Fn(u32) -> bool,
    in_high: impl Fn(u32) -> bool,
    mut f: impl FnMut(u32, u32),
) {
    if it.shape == Shape::S2 {
        let [x, y, z] = it.leaves;
        if in_side(x) && in_side(y) && !in_high(z) {
            f(x, y);
        }
    }
}
