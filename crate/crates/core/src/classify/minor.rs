//! Minor containment by branch-set search, plus the vertex-cover-one test.

use crate::graph::Graph;
use crate::{Error, Result};

/// Largest pattern graph the branch-set search accepts.
pub const MAX_PATTERN_VERTICES: usize = 6;
/// Largest host graph (branch sets are 64-bit masks).
pub const MAX_HOST_VERTICES: usize = 64;

/// Decides `h ⪯ g`.
///
/// Searches for pairwise disjoint connected branch sets in `g`, one per
/// vertex of `h`, with an edge between the sets of every adjacent pair.
/// `K³` and `K² ⊕ K²` take fast paths (a cycle, resp. two disjoint edges).
pub fn has_minor(g: &Graph, h: &Graph) -> Result<bool> {
    if h.n() > MAX_PATTERN_VERTICES {
        return Err(Error::MinorTooLarge { vertices: h.n(), limit: MAX_PATTERN_VERTICES });
    }
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return Ok(false);
    }
    if h.edge_count() == 0 {
        return Ok(true);
    }
    if is_triangle(h) {
        return Ok(!g.is_forest());
    }
    if is_two_disjoint_edges(h) {
        return Ok(has_two_disjoint_edges(g));
    }
    if g.n() > MAX_HOST_VERTICES {
        return Err(Error::HostTooLarge { vertices: g.n(), limit: MAX_HOST_VERTICES });
    }
    Ok(BranchSearch::new(g, h).run())
}

fn is_triangle(h: &Graph) -> bool {
    h.n() == 3 && h.edge_count() == 3
}

fn is_two_disjoint_edges(h: &Graph) -> bool {
    h.n() == 4 && h.edge_count() == 2 && (0..4).all(|v| h.degree(v) == 1)
}

fn has_two_disjoint_edges(g: &Graph) -> bool {
    let edges: Vec<_> = g.edges().collect();
    edges.iter().enumerate().any(|(i, &(a, b))| {
        edges[i + 1..].iter().any(|&(c, d)| a != c && a != d && b != c && b != d)
    })
}

/// True iff one vertex touches every edge (edgeless graphs qualify).
pub fn has_vertex_cover_one(g: &Graph) -> bool {
    let m = g.edge_count();
    m == 0 || (0..g.n()).any(|v| g.degree(v) == m)
}

struct BranchSearch<'a> {
    adj: Vec<u64>,
    h: &'a Graph,
    order: Vec<usize>,
    n: usize,
}

impl<'a> BranchSearch<'a> {
    fn new(g: &Graph, h: &'a Graph) -> Self {
        BranchSearch { adj: g.adjacency_masks(), h, order: placement_order(h), n: g.n() }
    }

    fn run(&self) -> bool {
        let mut branch = vec![0u64; self.h.n()];
        self.place(0, 0, &mut branch)
    }

    fn place(&self, k: usize, used: u64, branch: &mut [u64]) -> bool {
        if k == self.order.len() {
            return true;
        }
        let v = self.order[k];
        let placed_nbrs: Vec<usize> = self
            .h
            .neighbors(v)
            .iter()
            .copied()
            .filter(|u| self.order[..k].contains(u))
            .collect();
        let still_needed = self.order.len() - k - 1;
        let free = (!used) & full_mask(self.n);
        let max_size = free.count_ones() as usize - still_needed.min(free.count_ones() as usize);
        if max_size == 0 {
            return false;
        }
        // isolated pattern vertices only ever need a single host vertex
        let max_size = if self.h.degree(v) == 0 { 1 } else { max_size };

        let mut roots = free;
        while roots != 0 {
            let r = roots.trailing_zeros() as usize;
            roots &= roots - 1;
            // canonical root: the smallest vertex of the branch set
            let allowed = free & !((1u64 << r) - 1);
            let found = enumerate_connected(&self.adj, allowed, r, max_size, &mut |set| {
                let touch = neighborhood_mask(&self.adj, set);
                if placed_nbrs.iter().all(|&u| touch & branch[u] != 0) {
                    branch[v] = set;
                    if self.place(k + 1, used | set, branch) {
                        return true;
                    }
                }
                false
            });
            if found {
                return true;
            }
        }
        false
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn neighborhood_mask(adj: &[u64], set: u64) -> u64 {
    let mut out = 0;
    let mut rest = set;
    while rest != 0 {
        let w = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out |= adj[w];
    }
    out
}

/// Pattern vertices ordered so that, within each component, every vertex
/// after the first has an already placed neighbour. Isolated vertices go last.
fn placement_order(h: &Graph) -> Vec<usize> {
    let mut comps: Vec<Vec<usize>> = h.components();
    comps.sort_by_key(|c| (c.len() == 1, std::cmp::Reverse(c.len())));
    let mut order = Vec::with_capacity(h.n());
    let mut seen = vec![false; h.n()];
    for comp in comps {
        let start = *comp.iter().max_by_key(|&&v| (h.degree(v), std::cmp::Reverse(v))).unwrap();
        let mut queue = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < queue.len() {
            let u = queue[i];
            i += 1;
            order.push(u);
            let mut next: Vec<usize> = h.neighbors(u).iter().copied().filter(|&w| !seen[w]).collect();
            next.sort_by_key(|&w| std::cmp::Reverse(h.degree(w)));
            for w in next {
                seen[w] = true;
                queue.push(w);
            }
        }
    }
    order
}

/// Calls `visit` once for every connected vertex set that contains `root`,
/// lies inside `allowed` and has at most `max_size` members. Stops early
/// (returning true) as soon as `visit` returns true.
pub(crate) fn enumerate_connected(
    adj: &[u64],
    allowed: u64,
    root: usize,
    max_size: usize,
    visit: &mut impl FnMut(u64) -> bool,
) -> bool {
    let set = 1u64 << root;
    let ext = adj[root] & allowed & !set;
    grow(adj, allowed, set, ext, set, max_size, visit)
}

fn grow(
    adj: &[u64],
    allowed: u64,
    set: u64,
    ext: u64,
    banned: u64,
    max_size: usize,
    visit: &mut impl FnMut(u64) -> bool,
) -> bool {
    if visit(set) {
        return true;
    }
    if set.count_ones() as usize >= max_size {
        return false;
    }
    let mut rest = ext;
    let mut banned = banned;
    while rest != 0 {
        let w = rest.trailing_zeros() as usize;
        let bit = 1u64 << w;
        rest &= rest - 1;
        banned |= bit;
        let new_set = set | bit;
        let new_ext = (rest | (adj[w] & allowed)) & !banned & !new_set;
        if grow(adj, allowed, new_set, new_ext, banned, max_size, visit) {
            return true;
        }
    }
    false
}
