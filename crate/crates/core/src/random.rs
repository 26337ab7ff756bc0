//! Seeded generators for graphs, functions and systems of a given class.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
pub use rand_chacha::ChaCha8Rng;

use crate::classify::{Mode, PostClass};
use crate::function::{Circuit, Expr, Gate, LocalFunction, Symbol, TruthTable};
use crate::graph::Graph;
use crate::system::System;
use crate::{Error, Result};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random graph families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GraphModel {
    /// Each edge independently with probability `p`.
    Gnp(f64),
    /// Random recursive tree: vertex `v > 0` attaches to a uniform earlier vertex.
    Tree,
    Star,
    Cycle,
    Path,
    /// The first `n` vertices of a grid with `⌊√n⌋` rows.
    Grid,
}

impl fmt::Display for GraphModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphModel::Gnp(p) => write!(f, "gnp:{p}"),
            GraphModel::Tree => f.write_str("tree"),
            GraphModel::Star => f.write_str("star"),
            GraphModel::Cycle => f.write_str("cycle"),
            GraphModel::Path => f.write_str("path"),
            GraphModel::Grid => f.write_str("grid"),
        }
    }
}

impl FromStr for GraphModel {
    type Err = Error;

    /// `tree`, `star`, `cycle`, `path`, `grid`, `gnp` (p = 0.3) or `gnp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("unknown graph model `{s}`"));
        Ok(match s.to_ascii_lowercase().as_str() {
            "tree" => GraphModel::Tree,
            "star" => GraphModel::Star,
            "cycle" => GraphModel::Cycle,
            "path" => GraphModel::Path,
            "grid" => GraphModel::Grid,
            "gnp" => GraphModel::Gnp(0.3),
            other => {
                let p: f64 = other.strip_prefix("gnp:").ok_or_else(bad)?.parse().map_err(|_| bad())?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::Precondition(format!("edge probability {p} outside [0, 1]")));
                }
                GraphModel::Gnp(p)
            }
        })
    }
}

pub fn random_graph(model: GraphModel, n: usize, rng: &mut impl Rng) -> Result<Graph> {
    Ok(match model {
        GraphModel::Gnp(p) => {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(n, edges)?
        }
        GraphModel::Tree => Graph::new(n, (1..n).map(|v| (rng.gen_range(0..v), v)))?,
        GraphModel::Star => Graph::star(n.saturating_sub(1)),
        GraphModel::Cycle => {
            if n < 3 {
                return Err(Error::Precondition("a cycle needs at least three vertices".into()));
            }
            Graph::cycle(n)
        }
        GraphModel::Path => Graph::path(n),
        GraphModel::Grid => {
            let rows = ((n as f64).sqrt().floor() as usize).max(1);
            let cols = n.div_ceil(rows);
            Graph::grid(rows, cols).induced(&(0..n).collect::<Vec<_>>())
        }
    })
}

/// A uniformly chosen table among a simple family inside `class`.
pub fn random_table(class: PostClass, arity: usize, rng: &mut impl Rng) -> TruthTable {
    let len = 1usize << arity;
    let full = len - 1;
    match class {
        PostClass::BF => TruthTable::from_fn(arity, |_| rng.gen()),
        PostClass::R0 => {
            let mut bits: Vec<bool> = (0..len).map(|_| rng.gen()).collect();
            bits[0] = false;
            TruthTable::new(arity, bits).expect("length matches")
        }
        PostClass::R1 => {
            let mut bits: Vec<bool> = (0..len).map(|_| rng.gen()).collect();
            bits[full] = true;
            TruthTable::new(arity, bits).expect("length matches")
        }
        PostClass::L => {
            let a0: bool = rng.gen();
            let mask = rng.gen_range(0..len);
            let bits = (0..len).map(|row| a0 ^ ((row & mask).count_ones() % 2 == 1)).collect();
            TruthTable::new(arity, bits).expect("length matches")
        }
        PostClass::M => {
            // upward closure of a few random rows
            let k = rng.gen_range(0..=3);
            let gens: Vec<usize> = (0..k).map(|_| rng.gen_range(0..len)).collect();
            let bits = (0..len).map(|row| gens.iter().any(|&g| row & g == g)).collect();
            TruthTable::new(arity, bits).expect("length matches")
        }
        PostClass::D => {
            let mut bits = vec![false; len];
            for row in 0..len {
                if row < full ^ row {
                    let b: bool = rng.gen();
                    bits[row] = b;
                    bits[full ^ row] = !b;
                }
            }
            TruthTable::new(arity, bits).expect("length matches")
        }
    }
}

/// Symbols used to build formulas and circuits of `class`.
pub fn class_symbols(class: PostClass) -> Vec<Symbol> {
    match class {
        PostClass::BF => Symbol::ALL.to_vec(),
        c => c.basis(),
    }
}

/// A random formula over `class`'s symbols with at most `depth` levels.
pub fn random_formula(class: PostClass, arity: usize, depth: usize, rng: &mut impl Rng) -> Expr {
    let symbols = class_symbols(class);
    let (consts, ops): (Vec<Symbol>, Vec<Symbol>) = symbols.iter().partition(|s| s.arity() == 0);
    gen_expr(&consts, &ops, arity, depth, rng)
}

fn gen_expr(consts: &[Symbol], ops: &[Symbol], arity: usize, depth: usize, rng: &mut impl Rng) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        if !consts.is_empty() && rng.gen_bool(0.1) {
            return Expr::Apply(*consts.choose(rng).unwrap(), Vec::new());
        }
        return Expr::var(rng.gen_range(0..arity));
    }
    let op = *ops.choose(rng).unwrap();
    Expr::Apply(op, (0..op.arity()).map(|_| gen_expr(consts, ops, arity, depth - 1, rng)).collect())
}

/// A random circuit over `class`'s symbols with `1..=max_gates` gates.
pub fn random_circuit(class: PostClass, arity: usize, max_gates: usize, rng: &mut impl Rng) -> Circuit {
    let symbols = class_symbols(class);
    let count = rng.gen_range(1..=max_gates.max(1));
    let gates = (0..count)
        .map(|g| {
            let op = *symbols.choose(rng).unwrap();
            Gate { op, args: (0..op.arity()).map(|_| rng.gen_range(0..arity + g)).collect() }
        })
        .collect();
    Circuit::new(arity, gates).expect("wires reference earlier gates")
}

pub fn random_function(class: PostClass, arity: usize, mode: Mode, rng: &mut impl Rng) -> LocalFunction {
    match mode {
        Mode::Lookup => LocalFunction::lookup(random_table(class, arity, rng)),
        Mode::Formula => {
            LocalFunction::formula(arity, random_formula(class, arity, 4, rng)).expect("variables are in range")
        }
        Mode::Circuit => LocalFunction::circuit(random_circuit(class, arity, 8, rng)),
    }
}

/// A system on `graph` whose every function lies in `class`.
pub fn random_system(graph: Graph, class: PostClass, mode: Mode, rng: &mut impl Rng) -> System {
    let functions = (0..graph.n()).map(|v| random_function(class, graph.degree(v) + 1, mode, rng)).collect();
    System::new(graph, functions).expect("arities follow degrees")
}

/// A system whose vertices each draw their own class and representation.
pub fn random_mixed_system(graph: Graph, rng: &mut impl Rng) -> System {
    let functions = (0..graph.n())
        .map(|v| {
            let class = *PostClass::ALL.choose(rng).unwrap();
            let mode = *Mode::ALL.choose(rng).unwrap();
            random_function(class, graph.degree(v) + 1, mode, rng)
        })
        .collect();
    System::new(graph, functions).expect("arities follow degrees")
}
