use super::structure::{cycles, Cycle};
use super::validate::validate;
use super::Network;
use crate::taxa::Taxon;

/// Canonical codes of every subnetwork of a valid network.
///
/// Leaves code as their label, tree vertices as `(a,b)` with `a <= b`, and a
/// cycle source as `(;A;B;L)` where `A <= B` are the comma-joined pendant
/// codes of the two sides and `L` is the code below the reticulation. Side
/// vertices have no code of their own and are left empty.
pub(crate) struct CodeTable {
    pub codes: Vec<String>,
    pub cycles: Vec<Cycle>,
    pub cycle_at: Vec<Option<usize>>,
}

impl CodeTable {
    pub fn new<F>(net: &Network, label: F) -> Self
    where
        F: Fn(&Taxon) -> String,
    {
        let n = net.vertex_count();
        let cycles = cycles(net);
        let mut cycle_at = vec![None; n];
        let mut on_side = vec![false; n];
        for (i, c) in cycles.iter().enumerate() {
            cycle_at[c.source] = Some(i);
            for &v in c.sides.iter().flatten() {
                on_side[v] = true;
            }
        }
        let mut codes = vec![String::new(); n];
        for &v in net.topological_order().iter().rev() {
            if let Some(t) = net.label(v) {
                codes[v] = label(t);
            } else if on_side[v] {
                continue;
            } else if net.parents(v).len() == 2 {
                codes[v] = codes[net.children(v)[0]].clone();
            } else if let Some(ci) = cycle_at[v] {
                let c = &cycles[ci];
                let mut sides: Vec<String> = (0..2)
                    .map(|s| {
                        (0..c.sides[s].len())
                            .map(|i| codes[c.pendant(net, s, i)].as_str())
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect();
                sides.sort();
                codes[v] = format!("(;{};{};{})", sides[0], sides[1], codes[c.reticulation]);
            } else {
                let (a, b) = (&codes[net.children(v)[0]], &codes[net.children(v)[1]]);
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                codes[v] = format!("({a},{b})");
            }
        }
        CodeTable {
            codes,
            cycles,
            cycle_at,
        }
    }
}

/// Code of the whole network with leaves renamed through `label`.
pub(crate) fn code_with<F>(net: &Network, label: F) -> String
where
    F: Fn(&Taxon) -> String,
{
    let mut t = CodeTable::new(net, label);
    std::mem::take(&mut t.codes[net.root()])
}

/// A string that is equal for two valid networks exactly when they are
/// isomorphic as leaf-labelled networks.
pub fn canonical_code(net: &Network) -> String {
    code_with(net, |t| t.as_str().to_string())
}

/// Label-preserving isomorphism. Uses canonical codes when both inputs are
/// valid networks and falls back to a search otherwise.
pub fn is_equivalent(a: &Network, b: &Network) -> bool {
    if validate(a).is_valid() && validate(b).is_valid() {
        canonical_code(a) == canonical_code(b)
    } else {
        is_isomorphic_brute(a, b)
    }
}

/// Label-preserving isomorphism by backtracking over vertex bijections.
/// Works on arbitrary directed graphs; exponential in the worst case.
pub fn is_isomorphic_brute(a: &Network, b: &Network) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.arc_count() != b.arc_count() {
        return false;
    }
    let signature = |net: &Network, v: usize| {
        (
            net.parents(v).len(),
            net.children(v).len(),
            net.label(v).cloned(),
        )
    };
    let mut sa: Vec<_> = (0..n).map(|v| signature(a, v)).collect();
    let mut sb: Vec<_> = (0..n).map(|v| signature(b, v)).collect();
    sa.sort();
    sb.sort();
    if sa != sb {
        return false;
    }

    // Labelled vertices first, then the rest bottom-up so that most
    // neighbours are already mapped when a vertex is tried.
    let mut order: Vec<usize> = a.leaves().map(|(v, _)| v).collect();
    let topo = a.topological_order();
    let rest: Vec<usize> = if topo.len() == n {
        topo.into_iter().rev().collect()
    } else {
        (0..n).collect()
    };
    for v in rest {
        if !order.contains(&v) {
            order.push(v);
        }
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(a, b, &order, 0, &mut map, &mut used)
}

fn count(list: &[usize], x: usize) -> usize {
    list.iter().filter(|&&y| y == x).count()
}

fn search(
    a: &Network,
    b: &Network,
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&u) = order.get(depth) else {
        return true;
    };
    for w in 0..b.vertex_count() {
        if used[w]
            || a.label(u) != b.label(w)
            || a.parents(u).len() != b.parents(w).len()
            || a.children(u).len() != b.children(w).len()
        {
            continue;
        }
        map[u] = w;
        let consistent = a.children(u).iter().chain(a.parents(u)).all(|&x| {
            let y = if x == u { w } else { map[x] };
            y == usize::MAX
                || (count(a.children(u), x) == count(b.children(w), y)
                    && count(a.parents(u), x) == count(b.parents(w), y))
        });
        if consistent {
            used[w] = true;
            if search(a, b, order, depth + 1, map, used) {
                return true;
            }
            used[w] = false;
        }
        map[u] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::fixtures::*;
    use crate::taxa::taxon;

    #[test]
    fn codes() {
        assert_eq!(canonical_code(&cherry("b", "a")), "(a,b)");
        assert_eq!(canonical_code(&tiny_binet("x", "y")), "(;;y;x)");
        assert_eq!(canonical_code(&Network::leaf(taxon("q"))), "q");
    }

    #[test]
    fn equivalence_ignores_vertex_ids() {
        let a = cherry("a", "b");
        let b = Network::new(3, &[(2, 0), (2, 1)], [(0, taxon("b")), (1, taxon("a"))]).unwrap();
        assert!(is_equivalent(&a, &b));
        assert!(is_isomorphic_brute(&a, &b));
        assert!(!is_equivalent(&tiny_binet("a", "b"), &tiny_binet("b", "a")));
        assert!(!is_isomorphic_brute(&tiny_binet("a", "b"), &tiny_binet("b", "a")));
        assert!(is_isomorphic_brute(&tiny_binet("a", "b"), &tiny_binet("a", "b")));
    }

    #[test]
    fn brute_handles_invalid_graphs() {
        let a = Network::from_arcs(3, &[(0, 1), (0, 1), (1, 2)], [(2, taxon("a"))]).unwrap();
        let b = Network::from_arcs(3, &[(2, 0), (2, 0), (0, 1)], [(1, taxon("a"))]).unwrap();
        let c = Network::from_arcs(3, &[(0, 1), (1, 2), (0, 2)], [(2, taxon("a"))]).unwrap();
        assert!(is_equivalent(&a, &b));
        assert!(!is_equivalent(&a, &c));
    }
}
