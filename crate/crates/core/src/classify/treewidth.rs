//! Tree decompositions from the min-fill elimination heuristic.

use std::collections::BTreeSet;

use crate::csp::TreeDecomposition;
use crate::graph::Graph;

/// Eliminates vertices greedily by fewest fill edges (ties: lower degree,
/// then lower index). The bag of `v` is `v` plus its neighbours at
/// elimination time, and hangs below the bag of whichever of those
/// neighbours is eliminated first. The result is always a valid
/// decomposition; its width is an upper bound on the treewidth.
pub fn treewidth_upper_bound(g: &Graph) -> (usize, TreeDecomposition) {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut eliminated = vec![false; n];
    let mut position = vec![0; n];
    let mut bags: Vec<Vec<usize>> = vec![Vec::new(); n];

    for step in 0..n {
        let v = (0..n)
            .filter(|&v| !eliminated[v])
            .min_by_key(|&v| (fill_in(&adj, v), adj[v].len(), v))
            .expect("a vertex remains");
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
            adj[a].remove(&v);
        }
        let mut bag = nbrs;
        bag.push(v);
        bag.sort_unstable();
        bags[v] = bag;
        eliminated[v] = true;
        position[v] = step;
    }

    // node k of the decomposition is the bag of the k-th eliminated vertex
    let mut order = vec![0; n];
    for v in 0..n {
        order[position[v]] = v;
    }
    let mut tree_edges = Vec::new();
    let mut roots = Vec::new();
    for v in 0..n {
        let parent = bags[v].iter().copied().filter(|&u| u != v).min_by_key(|&u| position[u]);
        match parent {
            Some(u) => tree_edges.push((position[v], position[u])),
            None => roots.push(position[v]),
        }
    }
    // one root per component; chaining them keeps running intersection intact
    for w in roots.windows(2) {
        tree_edges.push((w[0], w[1]));
    }
    let bags: Vec<Vec<usize>> = order.iter().map(|&v| std::mem::take(&mut bags[v])).collect();
    let td = TreeDecomposition::new(bags, tree_edges);
    (td.width(), td)
}

fn fill_in(adj: &[BTreeSet<usize>], v: usize) -> usize {
    let nbrs: Vec<usize> = adj[v].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !adj[a].contains(&b) {
                missing += 1;
            }
        }
    }
    missing
}

#[cfg(test)]
mod tests {
    use super::*;

    fn width(g: &Graph) -> usize {
        let (w, td) = treewidth_upper_bound(g);
        td.validate(g).unwrap();
        w
    }

    #[test]
    fn examples() {
        assert_eq!(width(&Graph::path(5)), 1);
        assert_eq!(width(&Graph::complete(4)), 3);
        assert_eq!(width(&Graph::cycle(5)), 2);
    }

    #[test]
    fn edgeless_and_disconnected() {
        assert_eq!(width(&Graph::empty(4)), 0);
        assert_eq!(width(&Graph::empty(0)), 0);
        assert_eq!(width(&Graph::cycle(4).disjoint_union(&Graph::complete(5))), 4);
    }

    #[test]
    fn grids_stay_small() {
        assert!(width(&Graph::grid(4, 4)) <= 5);
        assert_eq!(width(&Graph::star(9)), 1);
    }
}
