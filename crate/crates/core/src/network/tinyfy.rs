use super::builder::NetworkBuilder;
use super::structure::cycles;
use super::Network;

/// Replaces every cycle with four or more vertices by a tiny cycle.
///
/// For a cycle with source `s`, reticulation `t` and last side vertices
/// `v`, `w` (either may be `s` itself), the arcs `(v,t)` and `(w,t)` are
/// removed, new vertices `q`, `r` are inserted above `s` with arcs
/// `(q,r)`, `(r,t)`, `(q,t)`, `(r,s)`, and any arc into `s` is redirected to
/// `q`. All cycles are rewritten at once and the degree-2 vertices left
/// behind are suppressed in a single final pass. The result displays every
/// tiny-cycle small net displayed by `net`.
pub fn tinyfy(net: &Network) -> Network {
    let mut b = NetworkBuilder::from_network(net);
    for c in cycles(net) {
        if c.size() == 3 {
            continue;
        }
        let (s, t) = (c.source, c.reticulation);
        let v = c.sides[0].last().copied().unwrap_or(s);
        let w = c.sides[1].last().copied().unwrap_or(s);
        b.remove_arc(v, t);
        b.remove_arc(w, t);
        let q = b.add_vertex();
        let r = b.add_vertex();
        if let Some(&p) = b.parents(s).first() {
            b.redirect(p, s, q);
        }
        b.add_arc(q, r);
        b.add_arc(r, t);
        b.add_arc(q, t);
        b.add_arc(r, s);
    }
    b.suppress();
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{canonical_code, validate};
    use crate::taxa::taxon;

    #[test]
    fn four_cycle_becomes_tiny() {
        // S2(x;y;z): root 0, side 0 -> 1 -> 2 -> 3 (reticulation), 0 -> 3.
        let n = Network::new(
            7,
            &[(0, 1), (0, 3), (1, 2), (1, 4), (2, 3), (2, 5), (3, 6)],
            [(4, taxon("x")), (5, taxon("y")), (6, taxon("z"))],
        )
        .unwrap();
        let t = tinyfy(&n);
        assert!(validate(&t).is_valid(), "{}", validate(&t));
        assert!(t.is_tiny_cycle_network());
        assert_eq!(canonical_code(&t), "(;;(x,y);z)");
    }

    #[test]
    fn tiny_networks_are_unchanged() {
        let n = crate::network::fixtures::tiny_binet("a", "b");
        assert_eq!(canonical_code(&tinyfy(&n)), canonical_code(&n));
    }
}
