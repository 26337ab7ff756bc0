//! Planar 3SAT to fixed points on planar networks of maximum degree three.

use crate::classify::planar_embedding;
use crate::function::{LocalFunction, TruthTable};
use crate::gadgets::cnf::{incidence_graph, Cnf};
use crate::graph::Graph;
use crate::system::System;
use crate::{Error, Result};

/// The generated system with its vertex bookkeeping.
#[derive(Clone, Debug)]
pub struct Planar3SatGadget {
    pub system: System,
    /// `clause_vertex[j]` is the vertex of clause `j` (always `j`).
    pub clause_vertex: Vec<usize>,
    /// For variable `k` (0-based), its copies as `(clause, vertex)` in cycle order.
    pub copies: Vec<Vec<(usize, usize)>>,
}

/// Replaces every variable vertex of the incidence graph by a cycle of
/// copies, one per clause it occurs in, following the embedding's rotation
/// at that vertex and starting from the smallest clause index.
///
/// A clause vertex outputs 1 when its copies satisfy the clause and
/// otherwise negates itself. A copy keeps its bit when every cycle
/// neighbour agrees with it and otherwise negates itself. Variables with
/// one occurrence get a lone copy that always keeps its bit; two
/// occurrences give two copies joined by one edge.
pub fn planar3sat_to_system(h: &Cnf) -> Result<Planar3SatGadget> {
    if !h.is_3cnf() {
        return Err(Error::InvalidCnf("planar 3SAT needs clauses of at most three literals".into()));
    }
    let n = h.num_vars();
    let m = h.clauses().len();
    let gamma = incidence_graph(h);
    let embedding = planar_embedding(&gamma).ok_or(Error::NonPlanar)?;

    let mut copies: Vec<Vec<(usize, usize)>> = Vec::with_capacity(n);
    let mut next = m;
    for k in 0..n {
        let mut clauses: Vec<usize> = embedding.rotation(k).iter().map(|&c| c - n).collect();
        if let Some(start) = clauses.iter().enumerate().min_by_key(|&(_, &j)| j).map(|(i, _)| i) {
            clauses.rotate_left(start);
        }
        copies.push(
            clauses
                .into_iter()
                .map(|j| {
                    next += 1;
                    (j, next - 1)
                })
                .collect(),
        );
    }

    let mut edges = Vec::new();
    let mut copy_of = vec![vec![usize::MAX; n]; m];
    for (k, cycle) in copies.iter().enumerate() {
        for &(j, v) in cycle {
            edges.push((j, v));
            copy_of[j][k] = v;
        }
        let r = cycle.len();
        if r == 2 {
            edges.push((cycle[0].1, cycle[1].1));
        } else if r >= 3 {
            for i in 0..r {
                edges.push((cycle[i].1, cycle[(i + 1) % r].1));
            }
        }
    }
    let graph = Graph::new(next, edges)?;

    let mut functions = Vec::with_capacity(next);
    for (j, clause) in h.clauses().iter().enumerate() {
        let nbhd = graph.closed_neighborhood(j);
        let pos = |v: usize| nbhd.binary_search(&v).unwrap();
        let own = pos(j);
        let lits: Vec<(usize, bool)> = clause
            .iter()
            .map(|&l| (pos(copy_of[j][l.unsigned_abs() as usize - 1]), l > 0))
            .collect();
        functions.push(LocalFunction::lookup(TruthTable::from_fn(nbhd.len(), |x| {
            lits.iter().any(|&(p, positive)| x[p] == positive) || !x[own]
        })));
    }
    let mut copy_functions = vec![None; next - m];
    for cycle in &copies {
        for &(_, v) in cycle {
            let nbhd = graph.closed_neighborhood(v);
            let own = nbhd.binary_search(&v).unwrap();
            // cycle neighbours are the other copies; clause vertices are below m
            let cyc: Vec<usize> = (0..nbhd.len()).filter(|&p| p != own && nbhd[p] >= m).collect();
            copy_functions[v - m] = Some(LocalFunction::lookup(TruthTable::from_fn(nbhd.len(), |x| {
                if cyc.iter().all(|&p| x[p] == x[own]) {
                    x[own]
                } else {
                    !x[own]
                }
            })));
        }
    }
    functions.extend(copy_functions.into_iter().map(|f| f.expect("every copy has a function")));

    Ok(Planar3SatGadget { system: System::new(graph, functions)?, clause_vertex: (0..m).collect(), copies })
}
