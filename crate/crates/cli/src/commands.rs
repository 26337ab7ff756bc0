//! The six verbs. Each returns a rendered output and an exit code; errors
//! propagate to `main`, which exits with 2.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Subcommand, ValueEnum};
use fpe_core::classify::{
    dichotomy, has_vertex_cover_one, is_planar, is_self_dual, treewidth_upper_bound, FunctionClassSpec,
    GraphClassSpec, Mode, PostClass,
};
use fpe_core::csp::{build_csp, constraint_graph};
use fpe_core::gadgets::{planar3sat_to_system, planar_selfdual_lift, sat_to_star_system, Cnf};
use fpe_core::random::{random_graph, random_system, rng, GraphModel};
use fpe_core::solve::{solve_fpe, Budgets, Method, SolveOutcome, Strategy};
use fpe_core::{Config, Error, LocalFunction, Schedule, Symbol, System, VertexSet};
use rand::Rng;
use serde_json::{json, Value};

use crate::document::{canonical_json, parse_minor_list, parse_schedule, read_system, SystemDocument};
use crate::report::{Format, Output, Report};

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report Post-class membership, graph predicates and dichotomy verdicts.
    Classify(ClassifyArgs),
    /// Decide fixed-point existence. Exit 0 = exists, 1 = none, 2 = refused or error.
    Solve(SolveArgs),
    /// Print the trajectory under a schedule.
    Simulate(SimulateArgs),
    /// Run a reduction and emit its output document.
    Reduce(ReduceArgs),
    /// Generate a seeded random system.
    Gen(GenArgs),
    /// Run invariant suites against one instance. Nonzero exit on any failure.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// System document; classifies the class its functions generate.
    #[arg(conflicts_with = "class", required_unless_present = "class")]
    pub system: Option<PathBuf>,
    /// Named class instead of a system: R0, R1, M, L, D or BF.
    #[arg(long)]
    pub class: Option<PostClass>,
    /// Graph class: all, planar, vc1, or a minor-list file.
    #[arg(long, default_value = "all")]
    pub graphs: String,
    /// Restrict verdicts to one representation.
    #[arg(long)]
    pub repr: Option<Mode>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub system: PathBuf,
    /// auto, or one of const0, const1, monotone, linear, treewidth, degree, brute.
    #[arg(long, default_value = "auto")]
    pub strategy: Strategy,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    pub system: PathBuf,
    /// T synchronous steps.
    #[arg(long, conflicts_with = "schedule", required_unless_present = "schedule")]
    pub sync: Option<usize>,
    /// Schedule file: JSON array of steps, each an array of 1-based vertices.
    #[arg(long)]
    pub schedule: Option<PathBuf>,
    /// Start configuration as a bit string, vertex 1 first. Defaults to all zeros.
    #[arg(long)]
    pub start: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReduceKind {
    /// System document to CSP dump.
    Csp,
    /// DIMACS planar CNF to a planar system of max degree 3.
    Planar3sat,
    /// Planar system document to a planar all-self-dual system.
    SelfdualLift,
    /// DIMACS CNF to a star system over the self-dual basis.
    Star,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    pub kind: ReduceKind,
    pub input: PathBuf,
    /// Write here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Number of vertices.
    pub n: usize,
    /// gnp[:p], tree, star, cycle, path or grid.
    #[arg(long, default_value = "gnp")]
    pub graph: GraphModel,
    #[arg(long, default_value = "BF")]
    pub class: PostClass,
    #[arg(long, default_value = "lookup")]
    pub repr: Mode,
    #[arg(long)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Schedule,
    Mirror,
    Oracle,
    Witness,
    Sat,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub system: PathBuf,
    #[arg(long, default_value = "all")]
    pub suite: Suite,
    /// Solve report whose witness is re-checked (witness suite).
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// DIMACS CNF the system was reduced from (sat suite).
    #[arg(long)]
    pub cnf: Option<PathBuf>,
    /// Seed for random schedules.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn run(cmd: &Command, budgets: &Budgets, format: Format) -> Result<Output> {
    match cmd {
        Command::Classify(a) => classify(a, budgets).map(|r| Output { stdout: r.render(format), code: 0 }),
        Command::Solve(a) => solve(a, budgets).map(|(r, code)| Output { stdout: r.render(format), code }),
        Command::Simulate(a) => simulate(a).map(|r| Output { stdout: r.render(format), code: 0 }),
        Command::Reduce(a) => reduce(a, budgets),
        Command::Gen(a) => gen(a, budgets),
        Command::Verify(a) => verify(a, budgets).map(|(r, code)| Output { stdout: r.render(format), code }),
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_cnf(path: &Path) -> Result<Cnf> {
    Cnf::parse_dimacs(&read_text(path)?).with_context(|| format!("{}", path.display()))
}

fn graph_spec(arg: &str) -> Result<GraphClassSpec> {
    match GraphClassSpec::from_alias(arg) {
        Ok(spec) => Ok(spec),
        Err(_) if Path::new(arg).exists() => Ok(GraphClassSpec::forbidding(parse_minor_list(&read_text(Path::new(arg))?)?)),
        Err(_) => bail!("--graphs `{arg}` is neither all, planar, vc1 nor a readable minor-list file"),
    }
}

fn emit_document(text: String, output: &Option<PathBuf>) -> Result<Output> {
    match output {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            Ok(Output { stdout: String::new(), code: 0 })
        }
        None => Ok(Output { stdout: text, code: 0 }),
    }
}

fn within_probe(s: &System, budgets: &Budgets) -> bool {
    s.functions().iter().all(|f| f.arity() <= budgets.max_probe_arity)
}

fn classify(a: &ClassifyArgs, budgets: &Budgets) -> Result<Report> {
    let graphs = graph_spec(&a.graphs)?;
    let modes: Vec<Mode> = a.repr.map_or(Mode::ALL.to_vec(), |m| vec![m]);
    let mut json = serde_json::Map::new();
    let mut text = Vec::new();
    json.insert("command".into(), json!("classify"));
    json.insert("graphs".into(), json!(a.graphs));

    let spec = match (&a.class, &a.system) {
        (Some(c), _) => {
            json.insert("class".into(), json!(c.name()));
            text.push(format!("class: {c}"));
            FunctionClassSpec::Named(*c)
        }
        (None, Some(path)) => {
            let s = read_system(path)?;
            if !within_probe(&s, budgets) {
                bail!("a function's arity exceeds the probe budget of {}", budgets.max_probe_arity);
            }
            let tables = s.tables();
            let per_vertex: Vec<Value> = tables
                .iter()
                .enumerate()
                .map(|(v, t)| {
                    let member: serde_json::Map<String, Value> =
                        PostClass::ALL[..5].iter().map(|c| (c.name().to_string(), json!(c.contains_table(t)))).collect();
                    json!({"vertex": v + 1, "repr": s.function(v).repr_name(), "arity": t.arity(), "classes": member})
                })
                .collect();
            let spec = FunctionClassSpec::generated(tables)?;
            let joint: Vec<&str> = spec.contained_in().iter().map(|c| c.name()).collect();
            let self_dual = s.functions().iter().all(is_self_dual);
            text.push(format!("functions: {} vertices, jointly in [{}], all self-dual: {self_dual}", s.n(), joint.join(", ")));

            let g = s.graph();
            let (width, _) = treewidth_upper_bound(g);
            let in_class = match graphs.contains(g) {
                Ok(b) => json!(b),
                Err(e) => json!(format!("refused: {e}")),
            };
            text.push(format!(
                "graph: planar {}, vertex cover one {}, max degree {}, treewidth ≤ {width}, in graph class {in_class}",
                is_planar(g),
                has_vertex_cover_one(g),
                g.max_degree()
            ));
            json.insert("functions".into(), json!(per_vertex));
            json.insert("joint_coatoms".into(), json!(joint));
            json.insert("all_self_dual".into(), json!(self_dual));
            json.insert(
                "graph".into(),
                json!({
                    "vertices": g.n(),
                    "edges": g.edge_count(),
                    "planar": is_planar(g),
                    "vertex_cover_one": has_vertex_cover_one(g),
                    "forest": g.is_forest(),
                    "max_degree": g.max_degree(),
                    "treewidth_upper_bound": width,
                    "in_graph_class": in_class,
                }),
            );
            spec
        }
        (None, None) => bail!("give a system file or --class"),
    };

    let mut verdicts = serde_json::Map::new();
    for mode in modes {
        let v = dichotomy(&spec, &graphs, mode);
        text.push(format!("{mode}: {v}"));
        verdicts.insert(mode.name().into(), json!(v.to_string()));
    }
    json.insert("verdicts".into(), Value::Object(verdicts));
    Ok(Report { json: Value::Object(json), text })
}

fn outcome_name(out: &SolveOutcome) -> &'static str {
    match out {
        SolveOutcome::Exists(_) => "exists",
        SolveOutcome::NotExists(_) => "not_exists",
        SolveOutcome::Refused(_) => "refused",
    }
}

pub fn exit_code(out: &SolveOutcome) -> u8 {
    match out.exists() {
        Some(true) => 0,
        Some(false) => 1,
        None => 2,
    }
}

fn solve(a: &SolveArgs, budgets: &Budgets) -> Result<(Report, u8)> {
    let s = read_system(&a.system)?;
    let start = Instant::now();
    let out = match solve_fpe(&s, a.strategy, budgets) {
        // a forced route whose precondition fails is a refusal, not a crash
        Err(Error::Precondition(reason)) => SolveOutcome::Refused(vec![reason]),
        other => other?,
    };
    let ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
    if let Some(w) = out.witness() {
        // checked again here so a report never carries an unverified witness
        if !s.is_fixed_point(&w.config) {
            bail!("internal error: witness {} is not a fixed point", w.config);
        }
    }
    let strategy = match a.strategy {
        Strategy::Auto => "auto".to_string(),
        Strategy::Forced(m) => m.name().to_string(),
    };
    let refusals = match &out {
        SolveOutcome::Refused(r) => r.clone(),
        _ => Vec::new(),
    };
    let mut r = Report::new(json!({
        "command": "solve",
        "strategy": strategy,
        "vertices": s.n(),
        "outcome": outcome_name(&out),
        "method": out.method().map(Method::name),
        "witness": out.witness().map(|w| w.config.to_string()),
        "witness_verified": out.witness().map(|w| w.verified),
        "refusals": refusals,
        "wall_time_ms": ms,
    }));
    match &out {
        SolveOutcome::Exists(w) => r.line(format!("fixed point exists: {} (method {}, verified)", w.config, w.method.name())),
        SolveOutcome::NotExists(m) => r.line(format!("no fixed point (method {})", m.name())),
        SolveOutcome::Refused(reasons) => {
            r.line("refused");
            for reason in reasons {
                r.line(format!("  {reason}"));
            }
        }
    }
    r.line(format!("wall time: {ms:.3} ms"));
    Ok((r, exit_code(&out)))
}

fn simulate(a: &SimulateArgs) -> Result<Report> {
    let s = read_system(&a.system)?;
    let n = s.n();
    let schedule = match (&a.sync, &a.schedule) {
        (Some(t), _) => Schedule::synchronous(n, *t),
        (None, Some(path)) => parse_schedule(&read_text(path)?, n).with_context(|| format!("{}", path.display()))?,
        (None, None) => bail!("give --sync or --schedule"),
    };
    let start = match &a.start {
        Some(bits) => Config::from_bit_string(bits).context("--start")?,
        None => Config::zeros(n),
    };
    if start.len() != n {
        bail!("--start has {} bits for a system with {n} vertices", start.len());
    }
    let traj = s.trajectory(&schedule, &start);
    let arrival = traj.iter().position(|c| s.is_fixed_point(c));
    let configs: Vec<String> = traj.iter().map(Config::to_string).collect();
    let mut r = Report::new(json!({
        "command": "simulate",
        "steps": schedule.len(),
        "trajectory": configs,
        "fixed_point_at": arrival,
    }));
    r.line(format!("trajectory: {}", configs.join(",")));
    for (t, c) in configs.iter().enumerate() {
        let mark = if Some(t) == arrival { "  <- fixed point reached" } else { "" };
        r.line(format!("{t:>4}  {c}{mark}"));
    }
    Ok(r)
}

fn only_d(f: &LocalFunction) -> bool {
    match f {
        LocalFunction::Formula { expr, .. } => expr.symbols().iter().all(|&s| s == Symbol::D),
        LocalFunction::Circuit(c) => c.symbols().iter().all(|&s| s == Symbol::D),
        LocalFunction::Lookup(_) => false,
    }
}

/// Checks every named guarantee; refuses to emit if one fails.
fn guarantees(checks: &[(&str, bool)]) -> Result<Value> {
    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        bail!("internal error: guarantee `{name}` does not hold for the constructed output");
    }
    Ok(Value::Object(checks.iter().map(|(k, v)| (k.to_string(), json!(v))).collect()))
}

fn reduce(a: &ReduceArgs, budgets: &Budgets) -> Result<Output> {
    let text = match a.kind {
        ReduceKind::Csp => {
            let s = read_system(&a.input)?;
            let csp = build_csp(&s)?;
            let checks = guarantees(&[
                ("variables_equal_vertices", csp.num_variables() == s.n()),
                ("constraints_equal_edges", csp.constraints.len() == s.graph().edge_count()),
                ("constraint_graph_is_network", &constraint_graph(&csp) == s.graph()),
            ])?;
            let constraints: Vec<Value> = csp
                .constraints
                .iter()
                .map(|c| json!({"x": c.x + 1, "y": c.y + 1, "allowed": c.allowed}))
                .collect();
            let doc = json!({
                "domains": csp.domains,
                "constraints": constraints,
                "metadata": {
                    "reduction": "csp",
                    "variables": csp.num_variables(),
                    "constraints": csp.constraints.len(),
                    "guarantees": checks,
                },
            });
            canonical_json(&doc)
        }
        ReduceKind::Planar3sat => {
            let h = read_cnf(&a.input)?;
            let gadget = planar3sat_to_system(&h)?;
            let s = &gadget.system;
            let checks = guarantees(&[("planar", is_planar(s.graph())), ("max_degree_at_most_3", s.graph().max_degree() <= 3)])?;
            let meta = json!({
                "reduction": "planar3sat",
                "source": {"variables": h.num_vars(), "clauses": h.clauses().len()},
                "max_degree": s.graph().max_degree(),
                "guarantees": checks,
            });
            SystemDocument::from_system(s).with_metadata(meta).to_canonical_string()
        }
        ReduceKind::SelfdualLift => {
            let s = read_system(&a.input)?;
            let lift = planar_selfdual_lift(&s)?;
            if !within_probe(&lift, budgets) {
                bail!("lifted arity exceeds the probe budget of {}; self-duality cannot be re-checked", budgets.max_probe_arity);
            }
            let checks = guarantees(&[
                ("planar", is_planar(lift.graph())),
                ("self_dual", lift.functions().iter().all(is_self_dual)),
            ])?;
            let meta = json!({
                "reduction": "selfdual-lift",
                "source": {"vertices": s.n(), "edges": s.graph().edge_count()},
                "guarantees": checks,
            });
            SystemDocument::from_system(&lift).with_metadata(meta).to_canonical_string()
        }
        ReduceKind::Star => {
            let h = read_cnf(&a.input)?;
            let s = sat_to_star_system(&h)?;
            // D is self-dual and self-duality is closed under composition
            let checks = guarantees(&[
                ("vertex_cover_one", has_vertex_cover_one(s.graph())),
                ("self_dual_basis_only", s.functions().iter().all(only_d)),
            ])?;
            let meta = json!({
                "reduction": "star",
                "source": {"variables": h.num_vars(), "clauses": h.clauses().len()},
                "guarantees": checks,
            });
            SystemDocument::from_system(&s).with_metadata(meta).to_canonical_string()
        }
    };
    emit_document(text, &a.output)
}

fn gen(a: &GenArgs, budgets: &Budgets) -> Result<Output> {
    let mut r = rng(a.seed);
    let g = random_graph(a.graph, a.n, &mut r).map_err(|e| anyhow!("refused: {e}"))?;
    let s = random_system(g, a.class, a.repr, &mut r);
    if within_probe(&s, budgets) {
        if let Some(v) = (0..s.n()).find(|&v| !a.class.contains(s.function(v))) {
            bail!("internal error: generated function at vertex {} is not in {}", v + 1, a.class);
        }
    }
    emit_document(SystemDocument::from_system(&s).to_canonical_string(), &a.output)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skipped,
}

struct Section {
    name: &'static str,
    status: Status,
    detail: String,
}

fn pass(name: &'static str, detail: impl Into<String>) -> Section {
    Section { name, status: Status::Pass, detail: detail.into() }
}

fn fail(name: &'static str, detail: impl Into<String>) -> Section {
    Section { name, status: Status::Fail, detail: detail.into() }
}

fn skip(name: &'static str, detail: impl Into<String>) -> Section {
    Section { name, status: Status::Skipped, detail: detail.into() }
}

fn verify(a: &VerifyArgs, budgets: &Budgets) -> Result<(Report, u8)> {
    let s = read_system(&a.system)?;
    let cap = budgets.brute_force_cap;
    let fixed = if s.n() <= cap { Some(s.enumerate_fixed_points(cap)?) } else { None };
    let want = |suite: Suite| a.suite == Suite::All || a.suite == suite;
    let mut sections = Vec::new();

    if want(Suite::Schedule) {
        sections.push(match &fixed {
            None => skip("schedule", format!("{} vertices exceed the brute-force cap {cap}", s.n())),
            Some(fps) => schedule_suite(&s, fps, a.seed),
        });
    }
    if want(Suite::Mirror) {
        sections.push(if !within_probe(&s, budgets) || !s.functions().iter().all(is_self_dual) {
            skip("mirror", "system is not all self-dual")
        } else {
            match &fixed {
                None => skip("mirror", format!("{} vertices exceed the brute-force cap {cap}", s.n())),
                Some(fps) => match fps.iter().find(|c| fps.binary_search(&c.complement()).is_err()) {
                    Some(c) => fail("mirror", format!("complement of fixed point {c} is not fixed")),
                    None => pass("mirror", format!("{} fixed points, closed under complement", fps.len())),
                },
            }
        });
    }
    if want(Suite::Oracle) {
        sections.push(match &fixed {
            None => skip("oracle", format!("{} vertices exceed the brute-force cap {cap}", s.n())),
            Some(fps) => oracle_suite(&s, !fps.is_empty(), budgets)?,
        });
    }
    if want(Suite::Witness) {
        sections.push(match &a.report {
            None => skip("witness", "no --report given"),
            Some(path) => witness_suite(&s, &read_text(path)?, fixed.as_deref())?,
        });
    }
    if want(Suite::Sat) {
        sections.push(match (&a.cnf, &fixed) {
            (None, _) => skip("sat", "no --cnf given"),
            (Some(_), None) => skip("sat", format!("{} vertices exceed the brute-force cap {cap}", s.n())),
            (Some(path), Some(fps)) => {
                let sat = read_cnf(path)?.is_satisfiable()?;
                if sat == !fps.is_empty() {
                    pass("sat", format!("satisfiable {sat} and fixed point exists {sat}"))
                } else {
                    fail("sat", format!("satisfiable {sat} but fixed point exists {}", !sat))
                }
            }
        });
    }

    let failed = sections.iter().any(|x| x.status == Status::Fail);
    let status_name = |st: Status| match st {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    };
    let mut r = Report::new(json!({
        "command": "verify",
        "passed": !failed,
        "sections": sections
            .iter()
            .map(|x| json!({"name": x.name, "status": status_name(x.status), "detail": x.detail}))
            .collect::<Vec<_>>(),
    }));
    for x in &sections {
        r.line(format!("{:<8} {:<8} {}", status_name(x.status).to_uppercase(), x.name, x.detail));
    }
    r.line(if failed { "verify: FAILED" } else { "verify: ok" });
    Ok((r, failed as u8))
}

fn schedule_suite(s: &System, fps: &[Config], seed: u64) -> Section {
    let n = s.n();
    let mut r = rng(seed);
    for c in fps {
        for _ in 0..100 {
            let len = r.gen_range(1..=8);
            let steps = (0..len)
                .map(|_| VertexSet::from_vertices(n, (0..n).filter(|_| r.gen_bool(0.5))).expect("vertices in range"))
                .collect();
            let sched = Schedule::from_sets(steps);
            if s.run_schedule(&sched, c) != *c {
                return fail("schedule", format!("fixed point {c} moved by a random schedule"));
            }
        }
    }
    let sync = Schedule::synchronous(n, 1);
    let checked = if n <= 16 {
        for idx in 0..1u64 << n {
            let c = Config::from_index(n, idx);
            let fixed = fps.binary_search(&c).is_ok();
            if fixed == (s.run_schedule(&sync, &c) != c) {
                return fail("schedule", format!("configuration {c}: fixed {fixed} disagrees with the synchronous step"));
            }
        }
        ", synchronous step moves every other configuration"
    } else {
        ""
    };
    pass("schedule", format!("{} fixed points unchanged by 100 schedules each{checked}", fps.len()))
}

fn oracle_suite(s: &System, truth: bool, budgets: &Budgets) -> Result<Section> {
    let mut decided = Vec::new();
    for strategy in std::iter::once(Strategy::Auto).chain(Method::ALL.into_iter().map(Strategy::Forced)) {
        let label = match strategy {
            Strategy::Auto => "auto",
            Strategy::Forced(m) => m.name(),
        };
        match solve_fpe(s, strategy, budgets) {
            Ok(SolveOutcome::Refused(_)) | Err(Error::Precondition(_)) => {}
            Ok(out) => {
                if out.exists() != Some(truth) {
                    return Ok(fail("oracle", format!("{label} says {:?}, brute force says {truth}", out.exists())));
                }
                if let Some(w) = out.witness() {
                    if !s.is_fixed_point(&w.config) {
                        return Ok(fail("oracle", format!("{label} returned non-fixed witness {}", w.config)));
                    }
                }
                decided.push(label);
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(pass("oracle", format!("existence {truth} confirmed by {}", decided.join(", "))))
}

fn witness_suite(s: &System, report: &str, fixed: Option<&[Config]>) -> Result<Section> {
    let doc: Value = serde_json::from_str(report)
        .map_err(|e| anyhow!("malformed report at line {}, column {}: {e}", e.line(), e.column()))?;
    match doc.get("witness").and_then(Value::as_str) {
        Some(bits) => {
            let c = match Config::from_bit_string(bits) {
                Ok(c) if c.len() == s.n() => c,
                _ => return Ok(fail("witness", format!("`{bits}` is not a configuration of {} vertices", s.n()))),
            };
            Ok(if s.is_fixed_point(&c) {
                pass("witness", format!("{c} is a fixed point"))
            } else {
                fail("witness", format!("{c} is not a fixed point"))
            })
        }
        None => match (doc.get("outcome").and_then(Value::as_str), fixed) {
            (Some("not_exists"), Some([])) => Ok(pass("witness", "no witness claimed, none exists")),
            (Some("not_exists"), Some(fps)) => Ok(fail("witness", format!("report claims none but {} is fixed", fps[0]))),
            (Some("exists"), _) => Ok(fail("witness", "report claims existence without a witness")),
            _ => Ok(skip("witness", "report carries no checkable claim")),
        },
    }
}
