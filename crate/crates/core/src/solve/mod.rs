//! Fixed-point existence solvers and the dispatcher that picks among them.

pub mod gf2;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classify::post::{is_b_reproducing, table_is_monotone, table_linear_coefficients};
use crate::classify::{treewidth_upper_bound, Algorithm};
use crate::csp::{build_csp, csp_assignment_to_config, relation_size_bound, solve_csp_td_limited};
use crate::function::TruthTable;
use crate::system::{Config, System, VertexSet, BRUTE_FORCE_CAP};
use crate::{Error, Result};
use gf2::{BitRow, Elimination, Gf2System};

/// The algorithm that produced an outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    ConstantWitness0,
    ConstantWitness1,
    MonotoneIteration,
    LinearAlgebra,
    BoundedTreewidth,
    BoundedDegreeExpansion,
    BruteForce,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::ConstantWitness0,
        Method::ConstantWitness1,
        Method::MonotoneIteration,
        Method::LinearAlgebra,
        Method::BoundedTreewidth,
        Method::BoundedDegreeExpansion,
        Method::BruteForce,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::ConstantWitness0 => "ConstantWitness0",
            Method::ConstantWitness1 => "ConstantWitness1",
            Method::MonotoneIteration => "MonotoneIteration",
            Method::LinearAlgebra => "LinearAlgebra",
            Method::BoundedTreewidth => "BoundedTreewidth",
            Method::BoundedDegreeExpansion => "BoundedDegreeExpansion",
            Method::BruteForce => "BruteForce",
        }
    }

    fn short_name(self) -> &'static str {
        match self {
            Method::ConstantWitness0 => "const0",
            Method::ConstantWitness1 => "const1",
            Method::MonotoneIteration => "monotone",
            Method::LinearAlgebra => "linear",
            Method::BoundedTreewidth => "treewidth",
            Method::BoundedDegreeExpansion => "degree",
            Method::BruteForce => "brute",
        }
    }
}

impl From<Algorithm> for Method {
    fn from(a: Algorithm) -> Self {
        match a {
            Algorithm::ConstantWitness0 => Method::ConstantWitness0,
            Algorithm::ConstantWitness1 => Method::ConstantWitness1,
            Algorithm::MonotoneIteration => Method::MonotoneIteration,
            Algorithm::LinearAlgebra => Method::LinearAlgebra,
            Algorithm::BoundedTreewidth => Method::BoundedTreewidth,
            Algorithm::BoundedDegreeExpansion => Method::BoundedDegreeExpansion,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    /// Accepts the tag name or its short form (`brute`, `linear`, ...).
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s) || m.short_name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Precondition(format!("unknown strategy `{s}`")))
    }
}

/// Resource limits. Routes whose limits are exceeded refuse rather than run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Budgets {
    /// Largest system the brute-force oracle will enumerate.
    pub brute_force_cap: usize,
    /// Largest tree-decomposition width the CSP route accepts.
    pub max_width: usize,
    /// Largest degree at which formulas and circuits are expanded to tables.
    pub max_degree: usize,
    /// Largest number of relation pairs (and bag-table rows) the CSP route builds.
    pub max_relation_pairs: usize,
    /// Largest arity whose table is scanned for linearity or monotonicity.
    pub max_probe_arity: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            brute_force_cap: BRUTE_FORCE_CAP,
            max_width: 20,
            max_degree: 12,
            max_relation_pairs: 1 << 22,
            max_probe_arity: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub config: Config,
    pub method: Method,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SolveOutcome {
    Exists(Witness),
    NotExists(Method),
    Refused(Vec<String>),
}

impl SolveOutcome {
    /// `Some(true)` / `Some(false)` for a decided instance, `None` when refused.
    pub fn exists(&self) -> Option<bool> {
        match self {
            SolveOutcome::Exists(_) => Some(true),
            SolveOutcome::NotExists(_) => Some(false),
            SolveOutcome::Refused(_) => None,
        }
    }

    pub fn method(&self) -> Option<Method> {
        match self {
            SolveOutcome::Exists(w) => Some(w.method),
            SolveOutcome::NotExists(m) => Some(*m),
            SolveOutcome::Refused(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SolveOutcome::Exists(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    Forced(Method),
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("auto") {
            Ok(Strategy::Auto)
        } else {
            s.parse().map(Strategy::Forced)
        }
    }
}

/// Re-checks `config` and wraps it. A failed check is a solver bug.
fn emit(s: &System, config: Config, method: Method) -> Result<SolveOutcome> {
    if !s.is_fixed_point(&config) {
        return Err(Error::Internal(format!("{method} produced {config}, which is not a fixed point")));
    }
    Ok(SolveOutcome::Exists(Witness { config, method, verified: true }))
}

fn refused(reason: impl Into<String>) -> SolveOutcome {
    SolveOutcome::Refused(vec![reason.into()])
}

/// Tables of every function, or `None` if some arity exceeds `max_arity`.
fn tables_within(s: &System, max_arity: usize) -> Option<Vec<TruthTable>> {
    s.functions().iter().all(|f| f.arity() <= max_arity).then(|| s.tables())
}

/// All-`b` witness for systems of `b`-reproducing functions.
pub fn solve_trivial_reproducing(s: &System, b: bool) -> Result<SolveOutcome> {
    if let Some(v) = (0..s.n()).find(|&v| !is_b_reproducing(s.function(v), b)) {
        return Err(Error::Precondition(format!("f_{v} is not {}-reproducing", b as u8)));
    }
    let method = if b { Method::ConstantWitness1 } else { Method::ConstantWitness0 };
    emit(s, Config::constant(s.n(), b), method)
}

/// Synchronous iteration from all zeros. Returns the limit and the number
/// of steps that changed the configuration. Assumes monotone functions.
pub fn monotone_iteration(s: &System) -> Result<(Config, usize)> {
    let all = VertexSet::all(s.n());
    let mut c = Config::zeros(s.n());
    for steps in 0..=s.n() {
        let next = s.global_step(&all, &c);
        if next == c {
            return Ok((c, steps));
        }
        if !c.le(&next) {
            return Err(Error::Internal("monotone iteration decreased a bit".into()));
        }
        c = next;
    }
    Err(Error::Internal(format!("monotone iteration did not converge within {} steps", s.n())))
}

/// Least fixed point of a monotone system.
pub fn solve_monotone(s: &System) -> Result<SolveOutcome> {
    solve_monotone_with(s, &Budgets::default())
}

fn solve_monotone_with(s: &System, budgets: &Budgets) -> Result<SolveOutcome> {
    let Some(tables) = tables_within(s, budgets.max_probe_arity) else {
        return Ok(refused("monotone: arity too large to check monotonicity"));
    };
    if let Some(v) = tables.iter().position(|t| !table_is_monotone(t)) {
        return Err(Error::Precondition(format!("f_{v} is not monotone")));
    }
    let (c, _) = monotone_iteration(s)?;
    emit(s, c, Method::MonotoneIteration)
}

/// The GF(2) system `(A ⊕ I)·x = b` whose solutions are the fixed points
/// of a system of affine functions `f_v(x) = b_v ⊕ (A·x)_v`.
pub fn linear_equations(s: &System) -> Result<Gf2System> {
    linear_equations_with(s, &Budgets::default())
}

fn linear_equations_with(s: &System, budgets: &Budgets) -> Result<Gf2System> {
    let n = s.n();
    let mut sys = Gf2System::new(n);
    for v in 0..n {
        let f = s.function(v);
        if f.arity() > budgets.max_probe_arity {
            return Err(Error::Precondition(format!("f_{v} has arity {} above the probe limit", f.arity())));
        }
        let coeffs = table_linear_coefficients(&f.to_table())
            .ok_or_else(|| Error::Precondition(format!("f_{v} is not linear")))?;
        let mut row = BitRow::zeros(n);
        for (j, &u) in s.neighborhood(v).iter().enumerate() {
            row.set(u, coeffs[j + 1]);
        }
        row.flip(v);
        sys.push(row, coeffs[0]);
    }
    Ok(sys)
}

/// Fixed points of an affine system by Gaussian elimination. The fixed
/// points form a coset of size `2^(n − rank)` when the system is consistent.
pub fn solve_linear(s: &System) -> Result<SolveOutcome> {
    solve_linear_with(s, &Budgets::default())
}

fn solve_linear_with(s: &System, budgets: &Budgets) -> Result<SolveOutcome> {
    if s.functions().iter().any(|f| f.arity() > budgets.max_probe_arity) {
        return Ok(refused("linear: arity too large to extract coefficients"));
    }
    let Elimination { solution, .. } = linear_equations_with(s, budgets)?.eliminate();
    match solution {
        Some(x) => emit(s, Config(x), Method::LinearAlgebra),
        None => Ok(SolveOutcome::NotExists(Method::LinearAlgebra)),
    }
}

/// Fixed point via the CSP reduction solved over a min-fill tree
/// decomposition of the network. Isolated vertices are decided directly.
pub fn solve_treewidth(s: &System) -> Result<SolveOutcome> {
    solve_treewidth_with(s, &Budgets::default())
}

fn solve_treewidth_with(s: &System, budgets: &Budgets) -> Result<SolveOutcome> {
    if !s.functions().iter().all(|f| f.is_lookup()) && s.graph().max_degree() > budgets.max_degree {
        return Ok(refused(format!(
            "treewidth: degree {} above the expansion budget {}",
            s.graph().max_degree(),
            budgets.max_degree
        )));
    }
    treewidth_route(s, budgets, Method::BoundedTreewidth)
}

fn treewidth_route(s: &System, budgets: &Budgets, method: Method) -> Result<SolveOutcome> {
    let (isolated, sub, kept) = s.split_isolated();
    let mut config = vec![false; s.n()];
    for &v in &isolated {
        let f = s.function(v);
        match [false, true].into_iter().find(|&b| f.eval_unchecked(&[b]) == b) {
            Some(b) => config[v] = b,
            None => return Ok(SolveOutcome::NotExists(method)),
        }
    }
    if sub.n() > 0 {
        let (width, td) = treewidth_upper_bound(sub.graph());
        if width > budgets.max_width {
            return Ok(refused(format!("{}: width {width} above budget {}", method.short_name(), budgets.max_width)));
        }
        let pairs = relation_size_bound(&sub);
        if pairs > budgets.max_relation_pairs as u128 {
            return Ok(refused(format!(
                "{}: {pairs} relation pairs above budget {}",
                method.short_name(),
                budgets.max_relation_pairs
            )));
        }
        let csp = build_csp(&sub)?;
        let assignment = match solve_csp_td_limited(&csp, &td, budgets.max_relation_pairs) {
            Ok(a) => a,
            Err(Error::Precondition(reason)) => return Ok(refused(format!("{}: {reason}", method.short_name()))),
            Err(e) => return Err(e),
        };
        let Some(assignment) = assignment else {
            return Ok(SolveOutcome::NotExists(method));
        };
        let sub_config = csp_assignment_to_config(&sub, &csp.labels(&assignment));
        for (i, &v) in kept.iter().enumerate() {
            config[v] = sub_config.get(i);
        }
    }
    emit(s, Config(config), method)
}

/// Expands every function to a table (degree at most `max_degree`), then
/// decides by the treewidth route, falling back to brute force.
pub fn solve_bounded_degree_expand(s: &System) -> Result<SolveOutcome> {
    solve_bounded_degree_expand_with(s, &Budgets::default())
}

fn solve_bounded_degree_expand_with(s: &System, budgets: &Budgets) -> Result<SolveOutcome> {
    let degree = s.graph().max_degree();
    if degree > budgets.max_degree {
        return Ok(refused(format!("degree: maximum degree {degree} above budget {}", budgets.max_degree)));
    }
    let expanded = s.to_lookup();
    let mut reasons = Vec::new();
    match treewidth_route(&expanded, budgets, Method::BoundedDegreeExpansion)? {
        SolveOutcome::Refused(r) => reasons.extend(r),
        decided => return Ok(decided),
    }
    match brute_force(&expanded, budgets.brute_force_cap, Method::BoundedDegreeExpansion)? {
        SolveOutcome::Refused(r) => {
            reasons.extend(r);
            Ok(SolveOutcome::Refused(reasons))
        }
        decided => Ok(decided),
    }
}

/// Exhaustive search for the lexicographically first fixed point.
pub fn solve_brute_force(s: &System, cap: usize) -> Result<SolveOutcome> {
    brute_force(s, cap, Method::BruteForce)
}

fn brute_force(s: &System, cap: usize, method: Method) -> Result<SolveOutcome> {
    match s.find_fixed_point(cap) {
        Ok(Some(c)) => emit(s, c, method),
        Ok(None) => Ok(SolveOutcome::NotExists(method)),
        Err(Error::BruteForceCap { n, cap }) => {
            Ok(refused(format!("{}: {n} vertices above the cap {cap}", method.short_name())))
        }
        Err(e) => Err(e),
    }
}

/// Decides fixed-point existence.
///
/// `Auto` probes, in order: all functions 1-reproducing, all
/// 0-reproducing, all linear, all monotone, the treewidth route (lookup
/// systems), bounded-degree expansion (formula or circuit systems) and
/// finally brute force. A forced method runs alone and reports a contract
/// error when its precondition fails.
pub fn solve_fpe(s: &System, strategy: Strategy, budgets: &Budgets) -> Result<SolveOutcome> {
    match strategy {
        Strategy::Forced(m) => run_method(s, m, budgets),
        Strategy::Auto => solve_auto(s, budgets),
    }
}

fn run_method(s: &System, m: Method, budgets: &Budgets) -> Result<SolveOutcome> {
    match m {
        Method::ConstantWitness0 => solve_trivial_reproducing(s, false),
        Method::ConstantWitness1 => solve_trivial_reproducing(s, true),
        Method::MonotoneIteration => solve_monotone_with(s, budgets),
        Method::LinearAlgebra => solve_linear_with(s, budgets),
        Method::BoundedTreewidth => solve_treewidth_with(s, budgets),
        Method::BoundedDegreeExpansion => solve_bounded_degree_expand_with(s, budgets),
        Method::BruteForce => solve_brute_force(s, budgets.brute_force_cap),
    }
}

fn solve_auto(s: &System, budgets: &Budgets) -> Result<SolveOutcome> {
    for b in [true, false] {
        if s.functions().iter().all(|f| is_b_reproducing(f, b)) {
            return solve_trivial_reproducing(s, b);
        }
    }
    let mut reasons = Vec::new();
    match tables_within(s, budgets.max_probe_arity) {
        Some(tables) => {
            if tables.iter().all(|t| table_linear_coefficients(t).is_some()) {
                return solve_linear_with(s, budgets);
            }
            if tables.iter().all(table_is_monotone) {
                return solve_monotone_with(s, budgets);
            }
        }
        None => reasons.push("class probes: arity above the probe limit".to_string()),
    }
    let structural = if s.functions().iter().all(|f| f.is_lookup()) {
        treewidth_route(s, budgets, Method::BoundedTreewidth)?
    } else {
        solve_bounded_degree_expand_with(s, budgets)?
    };
    match structural {
        SolveOutcome::Refused(r) => reasons.extend(r),
        decided => return Ok(decided),
    }
    match solve_brute_force(s, budgets.brute_force_cap)? {
        SolveOutcome::Refused(r) => {
            reasons.extend(r);
            Ok(SolveOutcome::Refused(reasons))
        }
        decided => Ok(decided),
    }
}
