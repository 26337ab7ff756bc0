//! Brute-force oracles shared by the property and acceptance suites.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use fpe_core::csp::CspInstance;
use fpe_core::Graph;

/// Canonical form of a graph on at most 6 vertices: `(n, min edge mask)`
/// over all vertex permutations.
pub fn canon(g: &Graph) -> (usize, u16) {
    let n = g.n();
    assert!(n <= 6);
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut best = u16::MAX;
    for perm in permutations(n) {
        let mut mask = 0u16;
        for &(u, v) in &edges {
            let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
            mask |= 1 << pair_index(a, b);
        }
        best = best.min(mask);
    }
    (n, if edges.is_empty() { 0 } else { best })
}

fn pair_index(a: usize, b: usize) -> usize {
    // pairs (a, b), a < b < 6, in lexicographic order
    a * 6 - a * (a + 1) / 2 + (b - a - 1)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap(n, &mut p, &mut out);
    out
}

fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k - 1 {
        heap(k - 1, p, out);
        if k % 2 == 0 {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
    heap(k - 1, p, out);
}

/// One representative per isomorphism class of graphs on `n ≤ 6` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let g = Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap();
        if seen.insert(canon(&g)) {
            out.push(g);
        }
    }
    out
}

/// All minors of `g` (up to isomorphism) by exhaustive vertex deletion,
/// edge deletion and edge contraction.
pub fn minor_closure(g: &Graph) -> HashSet<(usize, u16)> {
    let mut seen = HashSet::new();
    let mut stack = vec![g.clone()];
    seen.insert(canon(g));
    while let Some(h) = stack.pop() {
        let mut next = Vec::new();
        for v in 0..h.n() {
            let keep: Vec<usize> = (0..h.n()).filter(|&u| u != v).collect();
            next.push(h.induced(&keep));
        }
        for (u, v) in h.edges() {
            next.push(Graph::new(h.n(), h.edges().filter(|&e| e != (u, v))).unwrap());
            // contract v into u, then drop v
            let relabel = |w: usize| if w == v { u } else if w > v { w - 1 } else { w };
            let edges = h
                .edges()
                .filter(|&e| e != (u, v))
                .map(|(a, b)| (relabel(a), relabel(b)))
                .filter(|(a, b)| a != b)
                .map(|(a, b)| (a.min(b), a.max(b)));
            next.push(Graph::from_edges_lossy(h.n() - 1, edges));
        }
        for m in next {
            if seen.insert(canon(&m)) {
                stack.push(m);
            }
        }
    }
    seen
}

/// Exact treewidth by the subset recurrence
/// `TW(S) = min_{v∈S} max(TW(S∖v), |Q(S∖v, v)|)`, `n ≤ 16`.
pub fn exact_treewidth(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0, |m, &u| m | 1 << u)).collect();
    // |Q(S, v)|: vertices outside S ∪ {v} reachable from v through S
    let q = |s: u32, v: usize| -> u32 {
        let mut reach = 1u32 << v;
        let mut frontier = reach;
        while frontier != 0 {
            let w = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = adj[w] & !reach;
            reach |= nb;
            frontier |= nb & s;
        }
        (reach & !s & !(1 << v)).count_ones()
    };
    let full = (1u32 << n) - 1;
    let mut tw = vec![u32::MAX; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut best = u32::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let without = s & !(1 << v);
            best = best.min(tw[without as usize].max(q(without, v)));
        }
        tw[s as usize] = best;
    }
    tw[full as usize] as usize
}

/// Every satisfying assignment of `csp` (domain indices), by backtracking.
pub fn all_csp_solutions(csp: &CspInstance, limit: usize) -> Vec<Vec<usize>> {
    let n = csp.num_variables();
    let mut allowed: HashMap<(usize, usize), HashSet<(usize, usize)>> = HashMap::new();
    for c in &csp.constraints {
        allowed.entry((c.x, c.y)).or_default().extend(c.allowed.iter().copied());
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn go(
        csp: &CspInstance,
        allowed: &HashMap<(usize, usize), HashSet<(usize, usize)>>,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        let v = current.len();
        if v == csp.num_variables() {
            out.push(current.clone());
            return;
        }
        for a in 0..csp.domains[v].len() {
            let ok = (0..v).all(|u| match allowed.get(&(u, v)) {
                Some(set) => set.contains(&(current[u], a)),
                None => true,
            });
            if ok {
                current.push(a);
                go(csp, allowed, current, out, limit);
                current.pop();
            }
        }
    }
    go(csp, &allowed, &mut current, &mut out, limit);
    out
}

/// Exact isomorphism test by degree-pruned backtracking.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut map = vec![usize::MAX; a.n()];
    let mut used = vec![false; b.n()];
    fn go(a: &Graph, b: &Graph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if v == a.n() {
            return true;
        }
        for w in 0..b.n() {
            if used[w] || a.degree(v) != b.degree(w) {
                continue;
            }
            if (0..v).any(|u| a.has_edge(u, v) != b.has_edge(map[u], w)) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if go(a, b, v + 1, map, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    go(a, b, 0, &mut map, &mut used)
}
