//! Binary constraint satisfaction, the fixed-point reduction into it, and a
//! dynamic program over tree decompositions.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::function::row_args;
use crate::graph::Graph;
use crate::system::{Config, System};
use crate::{Error, Result};

/// A binary constraint on `(x, y)`, `x < y`, listing the allowed pairs of
/// domain indices in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub x: usize,
    pub y: usize,
    pub allowed: Vec<(usize, usize)>,
}

/// Variables are `0..domains.len()`. A domain is a list of value labels;
/// assignments refer to values by their index in the domain.
///
/// For instances built from a system, variable `i` is vertex `i` and a label
/// is a row index of `f_i`'s table (arguments MSB-first over `N⁰(i)`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CspInstance {
    pub domains: Vec<Vec<u64>>,
    pub constraints: Vec<Constraint>,
}

impl CspInstance {
    pub fn new(domains: Vec<Vec<u64>>, mut constraints: Vec<Constraint>) -> Result<Self> {
        let n = domains.len();
        for c in &mut constraints {
            if c.x >= n || c.y >= n || c.x == c.y {
                return Err(Error::InvalidCsp(format!("constraint scope ({}, {}) is invalid", c.x, c.y)));
            }
            if c.x > c.y {
                std::mem::swap(&mut c.x, &mut c.y);
                for p in &mut c.allowed {
                    *p = (p.1, p.0);
                }
            }
            for &(a, b) in &c.allowed {
                if a >= domains[c.x].len() || b >= domains[c.y].len() {
                    return Err(Error::InvalidCsp(format!(
                        "constraint ({}, {}) references a value outside its domains",
                        c.x, c.y
                    )));
                }
            }
            c.allowed.sort_unstable();
            c.allowed.dedup();
        }
        Ok(CspInstance { domains, constraints })
    }

    pub fn num_variables(&self) -> usize {
        self.domains.len()
    }

    pub fn is_satisfied_by(&self, assignment: &[usize]) -> bool {
        assignment.len() == self.num_variables()
            && assignment.iter().zip(&self.domains).all(|(&a, d)| a < d.len())
            && self
                .constraints
                .iter()
                .all(|c| c.allowed.binary_search(&(assignment[c.x], assignment[c.y])).is_ok())
    }

    /// Labels of the chosen values.
    pub fn labels(&self, assignment: &[usize]) -> Vec<u64> {
        assignment.iter().zip(&self.domains).map(|(&a, d)| d[a]).collect()
    }
}

/// Vertices are the variables, edges the constraint scopes.
pub fn constraint_graph(csp: &CspInstance) -> Graph {
    Graph::from_edges_lossy(csp.num_variables(), csp.constraints.iter().map(|c| (c.x, c.y)))
}

/// Locally fixed rows of `f_v`: assignments to `N⁰(v)` that `f_v` maps to
/// the bit they give `v`.
pub fn local_domain(s: &System, v: usize) -> Vec<u64> {
    let f = s.function(v);
    let arity = f.arity();
    let own = s.self_position(v);
    (0..1u64 << arity)
        .filter(|&row| {
            let args = row_args(arity, row as usize);
            f.eval_unchecked(&args) == args[own]
        })
        .collect()
}

/// `Σ |D_i|·|D_j|` over edges: an upper bound on the relation sizes
/// [`build_csp`] would materialise.
pub fn relation_size_bound(s: &System) -> u128 {
    let sizes: Vec<u128> = (0..s.n()).map(|v| local_domain(s, v).len() as u128).collect();
    s.graph().edges().map(|(u, v)| sizes[u] * sizes[v]).sum()
}

/// The fixed-point CSP of `s`: one variable per vertex whose values are
/// the locally fixed assignments of its closed neighbourhood, and one
/// constraint per edge admitting pairs that agree on the shared vertices.
///
/// Refuses systems with isolated vertices; split them off first.
pub fn build_csp(s: &System) -> Result<CspInstance> {
    if let Some(&v) = s.graph().isolated_vertices().first() {
        return Err(Error::Precondition(format!("vertex {v} is isolated; split isolated vertices off first")));
    }
    let domains: Vec<Vec<u64>> = (0..s.n()).map(|v| local_domain(s, v)).collect();
    let mut constraints = Vec::with_capacity(s.graph().edge_count());
    for (i, j) in s.graph().edges() {
        let (ni, nj) = (s.neighborhood(i), s.neighborhood(j));
        let shared: Vec<(usize, usize)> = ni
            .iter()
            .enumerate()
            .filter_map(|(pi, w)| nj.binary_search(w).ok().map(|pj| (pi, pj)))
            .collect();
        let key = |label: u64, arity: usize, pos: &dyn Fn(&(usize, usize)) -> usize| -> u64 {
            shared.iter().fold(0, |acc, p| (acc << 1) | ((label >> (arity - 1 - pos(p))) & 1))
        };
        let mut by_key: HashMap<u64, Vec<usize>> = HashMap::new();
        for (b, &label) in domains[j].iter().enumerate() {
            by_key.entry(key(label, nj.len(), &|p| p.1)).or_default().push(b);
        }
        let mut allowed = Vec::new();
        for (a, &label) in domains[i].iter().enumerate() {
            if let Some(bs) = by_key.get(&key(label, ni.len(), &|p| p.0)) {
                allowed.extend(bs.iter().map(|&b| (a, b)));
            }
        }
        constraints.push(Constraint { x: i, y: j, allowed });
    }
    Ok(CspInstance { domains, constraints })
}

/// Reads each vertex's own bit out of its chosen local assignment.
pub fn csp_assignment_to_config(s: &System, labels: &[u64]) -> Config {
    Config(
        (0..s.n())
            .map(|v| {
                let arity = s.neighborhood(v).len();
                (labels[v] >> (arity - 1 - s.self_position(v))) & 1 == 1
            })
            .collect(),
    )
}

/// Labels describing `c`: each vertex gets `c` restricted to `N⁰(v)`.
pub fn canonical_assignment(s: &System, c: &Config) -> Vec<u64> {
    (0..s.n())
        .map(|v| s.neighborhood(v).iter().fold(0u64, |acc, &u| (acc << 1) | c.get(u) as u64))
        .collect()
}

/// A tree of bags over the vertices of some graph. Node `k` owns `bags[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(mut bags: Vec<Vec<usize>>, tree_edges: Vec<(usize, usize)>) -> Self {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        TreeDecomposition { bags, tree_edges }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree_edges
    }

    /// Largest bag size minus one (zero when there are no bags).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    /// Checks tree shape, vertex coverage, edge coverage and running
    /// intersection against `g`. The error names the first violated invariant.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let k = self.bags.len();
        let fail = |what: &str| Err(Error::InvalidDecomposition(what.to_string()));
        if self.bags.iter().flatten().any(|&v| v >= g.n()) {
            return fail("vertex coverage: a bag names a vertex outside the graph");
        }
        if self.tree_edges.iter().any(|&(a, b)| a >= k || b >= k || a == b) {
            return fail("tree shape: a tree edge names a missing node");
        }
        if k > 0 {
            let tree = Graph::new(k, self.tree_edges.iter().copied());
            match tree {
                Ok(t) if t.edge_count() == k - 1 && t.is_connected() => {}
                _ => return fail("tree shape: nodes and tree edges do not form a tree"),
            }
        } else if !self.tree_edges.is_empty() {
            return fail("tree shape: edges without nodes");
        }
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
        for (node, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                holders[v].push(node);
            }
        }
        if let Some(v) = holders.iter().position(Vec::is_empty) {
            return fail(&format!("vertex coverage: vertex {v} is in no bag"));
        }
        for (u, v) in g.edges() {
            if !self.bags.iter().any(|b| b.binary_search(&u).is_ok() && b.binary_search(&v).is_ok()) {
                return fail(&format!("edge coverage: edge ({u}, {v}) is in no bag"));
            }
        }
        let tree = Graph::new(k, self.tree_edges.iter().copied()).expect("checked above");
        for (v, nodes) in holders.iter().enumerate() {
            if !tree.induced(nodes).is_connected() {
                return fail(&format!("running intersection: bags holding vertex {v} are not connected"));
            }
        }
        Ok(())
    }
}

/// Solves `csp` by dynamic programming over `td`, which must be valid for
/// the constraint graph. Returns domain indices of a satisfying assignment.
pub fn solve_csp_td(csp: &CspInstance, td: &TreeDecomposition) -> Result<Option<Vec<usize>>> {
    solve_csp_td_limited(csp, td, usize::MAX)
}

/// As [`solve_csp_td`], but refuses once any bag table would exceed
/// `max_rows` rows.
pub fn solve_csp_td_limited(csp: &CspInstance, td: &TreeDecomposition, max_rows: usize) -> Result<Option<Vec<usize>>> {
    td.validate(&constraint_graph(csp))?;
    let n = csp.num_variables();
    if td.bags.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let index = ConstraintIndex::new(csp);

    // root at node 0; parents before children in `order`
    let k = td.bags.len();
    let mut tree_adj = vec![Vec::new(); k];
    for &(a, b) in &td.tree_edges {
        tree_adj[a].push(b);
        tree_adj[b].push(a);
    }
    let mut parent = vec![usize::MAX; k];
    let mut order = vec![0];
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let t = order[i];
        i += 1;
        for &c in &tree_adj[t] {
            if !seen[c] {
                seen[c] = true;
                parent[c] = t;
                order.push(c);
            }
        }
    }

    // positions (in parent bag, in child bag) of the shared variables
    let shared: Vec<Vec<(usize, usize)>> = (0..k)
        .map(|c| {
            if parent[c] == usize::MAX {
                return Vec::new();
            }
            let pb = &td.bags[parent[c]];
            td.bags[c]
                .iter()
                .enumerate()
                .filter_map(|(ci, v)| pb.binary_search(v).ok().map(|pi| (pi, ci)))
                .collect()
        })
        .collect();

    let mut tables: Vec<Vec<Vec<usize>>> = vec![Vec::new(); k];
    let mut keys: Vec<HashSet<Vec<usize>>> = vec![HashSet::new(); k];
    for &t in order.iter().rev() {
        let children: Vec<usize> = tree_adj[t].iter().copied().filter(|&c| parent[c] == t).collect();
        let rows = index.bag_rows(&td.bags[t], max_rows)?;
        let rows: Vec<Vec<usize>> = rows
            .into_iter()
            .filter(|row| {
                children.iter().all(|&c| {
                    let key: Vec<usize> = shared[c].iter().map(|&(pi, _)| row[pi]).collect();
                    keys[c].contains(&key)
                })
            })
            .collect();
        if rows.is_empty() {
            return Ok(None);
        }
        keys[t] = rows.iter().map(|row| shared[t].iter().map(|&(_, ci)| row[ci]).collect()).collect();
        tables[t] = rows;
    }

    let mut assignment = vec![usize::MAX; n];
    let mut chosen: Vec<usize> = vec![0; k];
    for &t in &order {
        let row_idx = if parent[t] == usize::MAX {
            0
        } else {
            let prow = &tables[parent[t]][chosen[parent[t]]];
            let want: Vec<usize> = shared[t].iter().map(|&(pi, _)| prow[pi]).collect();
            tables[t]
                .iter()
                .position(|row| shared[t].iter().map(|&(_, ci)| row[ci]).eq(want.iter().copied()))
                .ok_or_else(|| Error::Internal("child table lost a parent projection".into()))?
        };
        chosen[t] = row_idx;
        for (pos, &v) in td.bags[t].iter().enumerate() {
            assignment[v] = tables[t][row_idx][pos];
        }
    }
    if !csp.is_satisfied_by(&assignment) {
        return Err(Error::Internal("tree decomposition DP produced a violating assignment".into()));
    }
    Ok(Some(assignment))
}

/// Per-variable constraint lookups used to enumerate bag tables.
struct ConstraintIndex<'a> {
    csp: &'a CspInstance,
    /// `(other variable, constraint index, this variable is x)`
    incident: Vec<Vec<(usize, usize, bool)>>,
    /// for each constraint: successors of each x-value, and of each y-value
    forward: Vec<Vec<Vec<usize>>>,
    backward: Vec<Vec<Vec<usize>>>,
}

impl<'a> ConstraintIndex<'a> {
    fn new(csp: &'a CspInstance) -> Self {
        let mut incident = vec![Vec::new(); csp.num_variables()];
        let mut forward = Vec::new();
        let mut backward = Vec::new();
        for (ci, c) in csp.constraints.iter().enumerate() {
            incident[c.x].push((c.y, ci, true));
            incident[c.y].push((c.x, ci, false));
            let mut fwd = vec![Vec::new(); csp.domains[c.x].len()];
            let mut bwd = vec![Vec::new(); csp.domains[c.y].len()];
            for &(a, b) in &c.allowed {
                fwd[a].push(b);
                bwd[b].push(a);
            }
            for l in &mut bwd {
                l.sort_unstable();
            }
            forward.push(fwd);
            backward.push(bwd);
        }
        ConstraintIndex { csp, incident, forward, backward }
    }

    /// Values of `var` compatible with `other = value` under constraint `ci`.
    fn compatible(&self, ci: usize, var_is_x: bool, value: usize) -> &[usize] {
        if var_is_x {
            &self.backward[ci][value]
        } else {
            &self.forward[ci][value]
        }
    }

    /// All assignments to `bag` satisfying the constraints inside it.
    fn bag_rows(&self, bag: &[usize], max_rows: usize) -> Result<Vec<Vec<usize>>> {
        // for each position, constraints linking it to earlier positions
        let links: Vec<Vec<(usize, usize, bool)>> = bag
            .iter()
            .enumerate()
            .map(|(pos, &v)| {
                self.incident[v]
                    .iter()
                    .filter_map(|&(u, ci, v_is_x)| {
                        bag[..pos].iter().position(|&w| w == u).map(|upos| (upos, ci, v_is_x))
                    })
                    .collect()
            })
            .collect();
        let mut rows = Vec::new();
        let mut current = Vec::with_capacity(bag.len());
        self.extend(bag, &links, &mut current, &mut rows, max_rows)?;
        Ok(rows)
    }

    fn extend(
        &self,
        bag: &[usize],
        links: &[Vec<(usize, usize, bool)>],
        current: &mut Vec<usize>,
        rows: &mut Vec<Vec<usize>>,
        max_rows: usize,
    ) -> Result<()> {
        let pos = current.len();
        if pos == bag.len() {
            if rows.len() >= max_rows {
                return Err(Error::Precondition(format!("bag table exceeds {max_rows} rows")));
            }
            rows.push(current.clone());
            return Ok(());
        }
        let v = bag[pos];
        let candidates: Vec<usize> = match links[pos].first() {
            Some(&(upos, ci, v_is_x)) => self.compatible(ci, v_is_x, current[upos]).to_vec(),
            None => (0..self.csp.domains[v].len()).collect(),
        };
        for a in candidates {
            let ok = links[pos].iter().skip(1).all(|&(upos, ci, v_is_x)| {
                let pair = if v_is_x { (a, current[upos]) } else { (current[upos], a) };
                self.csp.constraints[ci].allowed.binary_search(&pair).is_ok()
            });
            if ok {
                current.push(a);
                self.extend(bag, links, current, rows, max_rows)?;
                current.pop();
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::treewidth_upper_bound;
    use crate::function::{LocalFunction, TruthTable};
    use crate::system::fixtures::{sys_not, sys_xor2};

    fn solve(csp: &CspInstance) -> Option<Vec<usize>> {
        let (_, td) = treewidth_upper_bound(&constraint_graph(csp));
        solve_csp_td(csp, &td).unwrap()
    }

    fn identity_path(n: usize) -> System {
        let g = Graph::path(n);
        let fs = (0..n)
            .map(|v| {
                let a = g.degree(v) + 1;
                let own = g.closed_neighborhood(v).binary_search(&v).unwrap();
                LocalFunction::lookup(TruthTable::projection(a, own))
            })
            .collect();
        System::new(g, fs).unwrap()
    }

    #[test]
    fn xor2_reduction() {
        let s = sys_xor2();
        let csp = build_csp(&s).unwrap();
        assert_eq!(csp.num_variables(), 2);
        assert_eq!(csp.constraints.len(), 1);
        // f₁ = x₁ ⊕ x₂ fixes rows 00 and 10; f₂ = x₁ ∧ x₂ fixes 00, 10, 11
        assert_eq!(csp.domains, vec![vec![0b00, 0b10], vec![0b00, 0b10, 0b11]]);
        assert_eq!(constraint_graph(&csp), Graph::path(2));
        let a = solve(&csp).unwrap();
        let c = csp_assignment_to_config(&s, &csp.labels(&a));
        assert!(c == Config::from_bit_string("00").unwrap() || c == Config::from_bit_string("10").unwrap());
        assert!(s.is_fixed_point(&c));
    }

    #[test]
    fn identity_path_domains_are_full() {
        let s = identity_path(3);
        let csp = build_csp(&s).unwrap();
        assert_eq!(csp.domains.iter().map(Vec::len).collect::<Vec<_>>(), vec![4, 8, 4]);
        assert_eq!(csp.constraints.len(), 2);
        let zeros = Config::zeros(3);
        assert_eq!(canonical_assignment(&s, &zeros), vec![0, 0, 0]);
        assert_eq!(csp_assignment_to_config(&s, &[0, 0, 0]), zeros);
    }

    #[test]
    fn isolated_vertices_are_rejected() {
        assert!(matches!(build_csp(&sys_not()), Err(Error::Precondition(_))));
    }

    #[test]
    fn canonical_round_trip() {
        let s = sys_xor2();
        for c in s.enumerate_fixed_points(25).unwrap() {
            assert_eq!(csp_assignment_to_config(&s, &canonical_assignment(&s, &c)), c);
        }
    }

    #[test]
    fn trivial_instances() {
        let full = CspInstance::new(
            vec![vec![0, 1], vec![0, 1], vec![0, 1]],
            vec![
                Constraint { x: 0, y: 1, allowed: vec![(0, 0), (0, 1), (1, 0), (1, 1)] },
                Constraint { x: 2, y: 1, allowed: vec![(0, 0), (0, 1), (1, 0), (1, 1)] },
            ],
        )
        .unwrap();
        assert!(full.is_satisfied_by(&solve(&full).unwrap()));

        let empty = CspInstance::new(
            vec![vec![0, 1], vec![]],
            vec![Constraint { x: 0, y: 1, allowed: vec![] }],
        )
        .unwrap();
        assert_eq!(solve(&empty), None);

        let edgeless = CspInstance::new(vec![vec![7]; 3], vec![]).unwrap();
        assert_eq!(constraint_graph(&edgeless), Graph::empty(3));
        assert_eq!(solve(&edgeless), Some(vec![0, 0, 0]));
    }

    #[test]
    fn triangle_constraint_graph() {
        let g = Graph::complete(3);
        let fs = (0..3).map(|_| LocalFunction::lookup(TruthTable::from_bit_string("00010111").unwrap())).collect();
        let csp = build_csp(&System::new(g, fs).unwrap()).unwrap();
        assert_eq!(constraint_graph(&csp), Graph::complete(3));
    }

    #[test]
    fn decomposition_errors_name_the_invariant() {
        let g = Graph::path(3);
        let err = |td: TreeDecomposition| match td.validate(&g).unwrap_err() {
            Error::InvalidDecomposition(msg) => msg,
            e => panic!("unexpected {e:?}"),
        };
        assert!(err(TreeDecomposition::new(vec![vec![0, 1], vec![1]], vec![])).starts_with("tree shape"));
        assert!(err(TreeDecomposition::new(vec![vec![0, 1]], vec![])).starts_with("vertex coverage"));
        assert!(err(TreeDecomposition::new(vec![vec![0, 1], vec![2]], vec![(0, 1)])).starts_with("edge coverage"));
        let split = TreeDecomposition::new(vec![vec![0, 1], vec![2], vec![1, 2]], vec![(0, 1), (1, 2)]);
        assert!(err(split).starts_with("running intersection"));
    }

    #[test]
    fn bag_row_limit_refuses() {
        let s = identity_path(4);
        let csp = build_csp(&s).unwrap();
        let (_, td) = treewidth_upper_bound(&constraint_graph(&csp));
        assert!(solve_csp_td_limited(&csp, &td, 2).is_err());
        assert!(solve_csp_td_limited(&csp, &td, 1 << 10).unwrap().is_some());
    }
}
