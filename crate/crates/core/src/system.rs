//! Boolean dynamical systems, update schedules and fixed points.

use std::fmt;

use rayon::prelude::*;

use crate::function::{LocalFunction, TruthTable};
use crate::graph::Graph;
use crate::{Error, Result};

/// Default vertex cap for exhaustive enumeration.
pub const BRUTE_FORCE_CAP: usize = 25;

/// A configuration: one bit per vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Config(pub Vec<bool>);

/// Serialises as its bit string, vertex 0 first.
impl serde::Serialize for Config {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl Config {
    pub fn zeros(n: usize) -> Self {
        Config(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        Config(vec![true; n])
    }

    pub fn constant(n: usize, b: bool) -> Self {
        Config(vec![b; n])
    }

    /// Configuration number `index` in lexicographic order; vertex 0 is the
    /// most significant bit.
    pub fn from_index(n: usize, index: u64) -> Self {
        Config((0..n).map(|v| (index >> (n - 1 - v)) & 1 == 1).collect())
    }

    pub fn from_bit_string(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidSystem(format!("unexpected character `{other}` in configuration"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Config)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> bool {
        self.0[v]
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn complement(&self) -> Config {
        Config(self.0.iter().map(|b| !b).collect())
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &Config) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| !a | b)
    }

    /// Restriction to `vertices`, in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> Vec<bool> {
        vertices.iter().map(|&v| self.0[v]).collect()
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Config({self})")
    }
}

/// A set of vertices of a fixed system size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    members: Vec<bool>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet { members: vec![false; n] }
    }

    pub fn all(n: usize) -> Self {
        VertexSet { members: vec![true; n] }
    }

    pub fn singleton(n: usize, v: usize) -> Result<Self> {
        Self::from_vertices(n, [v])
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = Self::empty(n);
        for v in vertices {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            set.members[v] = true;
        }
        Ok(set)
    }

    /// Subset of `0..n` whose members are the set bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        VertexSet { members: (0..n).map(|v| (mask >> v) & 1 == 1).collect() }
    }

    pub fn universe(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members[v]
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter_map(|(v, &m)| m.then_some(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet { members: self.members.iter().zip(&other.members).map(|(a, b)| a | b).collect() }
    }
}

/// An update schedule: step `k` updates the vertices of `steps[k]` simultaneously.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    steps: Vec<VertexSet>,
}

impl Schedule {
    pub fn new(n: usize, steps: Vec<Vec<usize>>) -> Result<Self> {
        let steps = steps
            .into_iter()
            .map(|s| VertexSet::from_vertices(n, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Schedule { steps })
    }

    pub fn from_sets(steps: Vec<VertexSet>) -> Self {
        Schedule { steps }
    }

    /// `t` fully synchronous steps.
    pub fn synchronous(n: usize, t: usize) -> Self {
        Schedule { steps: vec![VertexSet::all(n); t] }
    }

    pub fn steps(&self) -> &[VertexSet] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// A network plus one local transition function per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct System {
    graph: Graph,
    functions: Vec<LocalFunction>,
    neighborhoods: Vec<Vec<usize>>,
}

impl System {
    /// Checks that `functions[v]` has arity `deg(v) + 1` for every vertex.
    pub fn new(graph: Graph, functions: Vec<LocalFunction>) -> Result<Self> {
        if functions.len() != graph.n() {
            return Err(Error::InvalidSystem(format!(
                "{} functions for {} vertices",
                functions.len(),
                graph.n()
            )));
        }
        for (v, f) in functions.iter().enumerate() {
            if f.arity() != graph.degree(v) + 1 {
                return Err(Error::InvalidSystem(format!(
                    "vertex {v} has degree {} but its function has arity {}",
                    graph.degree(v),
                    f.arity()
                )));
            }
        }
        let neighborhoods = (0..graph.n()).map(|v| graph.closed_neighborhood(v)).collect();
        Ok(System { graph, functions, neighborhoods })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn functions(&self) -> &[LocalFunction] {
        &self.functions
    }

    pub fn function(&self, v: usize) -> &LocalFunction {
        &self.functions[v]
    }

    /// Argument vertices of `f_v`: the closed neighbourhood, ascending.
    pub fn neighborhood(&self, v: usize) -> &[usize] {
        &self.neighborhoods[v]
    }

    /// Position of `v` itself among the arguments of `f_v`.
    pub fn self_position(&self, v: usize) -> usize {
        self.neighborhoods[v].binary_search(&v).expect("closed neighbourhood contains v")
    }

    /// Value of `f_v` on the restriction of `c` to `N⁰(v)`.
    pub fn local_value(&self, v: usize, c: &Config) -> bool {
        let args: Vec<bool> = self.neighborhoods[v].iter().map(|&u| c.0[u]).collect();
        self.functions[v].eval_unchecked(&args)
    }

    /// Applies `F_S[U]`: vertices in `active` update simultaneously, the rest keep their bit.
    ///
    /// Panics if `c` or `active` do not match the system size.
    pub fn global_step(&self, active: &VertexSet, c: &Config) -> Config {
        self.check_sizes(active, c);
        Config(
            (0..self.n())
                .map(|v| if active.contains(v) { self.local_value(v, c) } else { c.0[v] })
                .collect(),
        )
    }

    /// Runs the schedule with step 0 applied first.
    pub fn run_schedule(&self, schedule: &Schedule, c: &Config) -> Config {
        schedule.steps().iter().fold(c.clone(), |acc, step| self.global_step(step, &acc))
    }

    /// Every intermediate configuration, starting with `c` itself.
    pub fn trajectory(&self, schedule: &Schedule, c: &Config) -> Vec<Config> {
        let mut out = vec![c.clone()];
        for step in schedule.steps() {
            let next = self.global_step(step, out.last().unwrap());
            out.push(next);
        }
        out
    }

    pub fn is_local_fixed_point(&self, active: &VertexSet, c: &Config) -> bool {
        self.check_sizes(active, c);
        active.iter().all(|v| self.local_value(v, c) == c.0[v])
    }

    pub fn is_fixed_point(&self, c: &Config) -> bool {
        assert_eq!(c.len(), self.n(), "configuration length must match the system");
        (0..self.n()).all(|v| self.local_value(v, c) == c.0[v])
    }

    /// All fixed points in lexicographic order. Refuses systems with more than `cap` vertices.
    pub fn enumerate_fixed_points(&self, cap: usize) -> Result<Vec<Config>> {
        let n = self.n();
        self.check_cap(cap)?;
        let fixed: Vec<u64> = (0..1u64 << n)
            .into_par_iter()
            .filter(|&idx| self.index_is_fixed_point(idx))
            .collect();
        Ok(fixed.into_iter().map(|idx| Config::from_index(n, idx)).collect())
    }

    /// The lexicographically first fixed point, if any, under the same cap.
    pub fn find_fixed_point(&self, cap: usize) -> Result<Option<Config>> {
        let n = self.n();
        self.check_cap(cap)?;
        let found = (0..1u64 << n)
            .into_par_iter()
            .find_first(|&idx| self.index_is_fixed_point(idx));
        Ok(found.map(|idx| Config::from_index(n, idx)))
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        let n = self.n();
        if n > cap || n >= 63 {
            return Err(Error::BruteForceCap { n, cap: cap.min(62) });
        }
        Ok(())
    }

    fn index_is_fixed_point(&self, idx: u64) -> bool {
        let n = self.n();
        let bit = |v: usize| (idx >> (n - 1 - v)) & 1 == 1;
        let mut args = Vec::new();
        (0..n).all(|v| {
            args.clear();
            args.extend(self.neighborhoods[v].iter().map(|&u| bit(u)));
            self.functions[v].eval_unchecked(&args) == bit(v)
        })
    }

    /// Same network with every function converted to a lookup table.
    pub fn to_lookup(&self) -> System {
        System {
            graph: self.graph.clone(),
            functions: self.functions.iter().map(LocalFunction::to_lookup).collect(),
            neighborhoods: self.neighborhoods.clone(),
        }
    }

    pub fn tables(&self) -> Vec<TruthTable> {
        self.functions.iter().map(LocalFunction::to_table).collect()
    }

    /// Splits off isolated vertices. Returns the isolated vertices and the
    /// subsystem induced by the others together with its vertex map
    /// (`kept[i]` is the original id of subsystem vertex `i`).
    pub fn split_isolated(&self) -> (Vec<usize>, System, Vec<usize>) {
        let isolated = self.graph.isolated_vertices();
        let kept: Vec<usize> = (0..self.n()).filter(|&v| self.graph.degree(v) > 0).collect();
        let graph = self.graph.induced(&kept);
        // relative order of neighbours is unchanged, so functions carry over as is
        let functions = kept.iter().map(|&v| self.functions[v].clone()).collect();
        let sub = System::new(graph, functions).expect("induced subsystem keeps arities");
        (isolated, sub, kept)
    }

    /// Size measure used for reduction bounds: `Σ_v (1 + d_v)·2^(1 + d_v)`,
    /// the length of all lookup tables written out row by row.
    pub fn table_size(&self) -> usize {
        (0..self.n())
            .map(|v| {
                let a = self.graph.degree(v) + 1;
                a << a
            })
            .sum()
    }

    fn check_sizes(&self, active: &VertexSet, c: &Config) {
        assert_eq!(c.len(), self.n(), "configuration length must match the system");
        assert_eq!(active.universe(), self.n(), "vertex set must match the system");
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::function::{Expr, TruthTable};

    pub fn table(s: &str) -> LocalFunction {
        LocalFunction::lookup(TruthTable::from_bit_string(s).unwrap())
    }

    /// Single vertex, `f(x) = ¬x`.
    pub fn sys_not() -> System {
        System::new(Graph::empty(1), vec![table("10")]).unwrap()
    }

    /// Single vertex, `f(x) = x`.
    pub fn sys_id() -> System {
        System::new(Graph::empty(1), vec![table("01")]).unwrap()
    }

    /// Edge {0,1}, `f₀ = x₀ ⊕ x₁`, `f₁ = x₀ ∧ x₁`.
    pub fn sys_xor2() -> System {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let f0 = LocalFunction::formula(2, Expr::xor(Expr::var(0), Expr::var(1))).unwrap();
        let f1 = LocalFunction::formula(2, Expr::and(Expr::var(0), Expr::var(1))).unwrap();
        System::new(g, vec![f0, f1]).unwrap()
    }
}
