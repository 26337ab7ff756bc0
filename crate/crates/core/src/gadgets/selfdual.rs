//! The self-dualizer `sd_n` and the self-dual lift of planar systems.

use crate::classify::is_planar;
use crate::function::{LocalFunction, TruthTable};
use crate::graph::Graph;
use crate::system::System;
use crate::{Error, Result};

/// `sd_n(f)(x, y, z)` for `f` of arity `k`, with `x` the first `k`
/// arguments, `y` the next `n` and `z` the last:
/// `f(x)` if `y = 0…0`, `¬f(¬x)` if `y = 1…1`, `¬z` otherwise.
/// The result is self-dual for every `f`.
pub fn self_dualize(f: &LocalFunction, n: usize) -> Result<LocalFunction> {
    if n == 0 {
        return Err(Error::Precondition("self_dualize needs at least one guard variable".into()));
    }
    let t = f.to_table();
    let k = t.arity();
    Ok(LocalFunction::lookup(TruthTable::from_fn(k + n + 1, |args| {
        sd_value(&t, &args[..k], &args[k..k + n], args[k + n])
    })))
}

fn sd_value(t: &TruthTable, x: &[bool], y: &[bool], z: bool) -> bool {
    if y.iter().all(|&b| !b) {
        t.eval(x)
    } else if y.iter().all(|&b| b) {
        let neg: Vec<bool> = x.iter().map(|&b| !b).collect();
        !t.eval(&neg)
    } else {
        !z
    }
}

/// Adds one vertex per edge (after the original vertices, in sorted edge
/// order) adjacent to both endpoints. Vertex `i` of degree `k ≥ 1` gets
/// `sd_k(f_i)` with its original arguments as `x`, its edge vertices as `y`
/// and its own bit as `z`; edge vertices keep their bit. An isolated
/// vertex becomes the identity if `f_i` has a fixed bit and negation
/// otherwise. All functions of the result are self-dual and the result has
/// a fixed point iff `s` does.
pub fn planar_selfdual_lift(s: &System) -> Result<System> {
    let g = s.graph();
    if !is_planar(g) {
        return Err(Error::NonPlanar);
    }
    let n = s.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut new_edges = edges.clone();
    for (e, &(u, v)) in edges.iter().enumerate() {
        new_edges.push((u, n + e));
        new_edges.push((v, n + e));
    }
    let lifted = Graph::new(n + edges.len(), new_edges)?;

    let mut functions = Vec::with_capacity(lifted.n());
    for v in 0..n {
        let f = s.function(v);
        let k = g.degree(v);
        if k == 0 {
            let has_fixed_bit = [false, true].iter().any(|&b| f.eval_unchecked(&[b]) == b);
            let t = if has_fixed_bit { "01" } else { "10" };
            functions.push(LocalFunction::lookup(TruthTable::from_bit_string(t)?));
            continue;
        }
        // original arguments come first because edge vertices are numbered above n
        let t = f.to_table();
        let own = s.self_position(v);
        functions.push(LocalFunction::lookup(TruthTable::from_fn(2 * k + 1, |args| {
            sd_value(&t, &args[..=k], &args[k + 1..], args[own])
        })));
    }
    for _ in &edges {
        functions.push(LocalFunction::lookup(TruthTable::projection(3, 2)));
    }
    System::new(lifted, functions)
}
