//! End-to-end runs of the `fpe` binary.

use std::path::{Path, PathBuf};
use std::process::Command;

use fpe_cli::document::SystemDocument;
use fpe_core::classify::{has_vertex_cover_one, is_monotone, is_planar, is_self_dual};
use serde_json::Value;
use tempfile::TempDir;

const SYS_NOT: &str = r#"{"vertices": 1, "edges": [], "functions": [{"vertex": 1, "repr": "lookup", "data": "10"}]}"#;
const SYS_ID: &str = r#"{"vertices": 1, "edges": [], "functions": [{"vertex": 1, "repr": "lookup", "data": "01"}]}"#;
const SYS_XOR2: &str = r#"{"vertices": 2, "edges": [[1, 2]], "functions": [
  {"vertex": 1, "repr": "formula", "data": "XOR VAR 0 VAR 1"},
  {"vertex": 2, "repr": "formula", "data": "AND VAR 0 VAR 1"}]}"#;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn fpe(args: &[&str]) -> Run {
    fpe_env(args, &[])
}

fn fpe_env(args: &[&str], env: &[(&str, &Path)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fpe"));
    cmd.args(args).env_remove("FIXPOINT_CONFIG");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("{e}: {}", run.stdout))
}

#[test]
fn generated_documents_round_trip_byte_for_byte() {
    for seed in 0..12u64 {
        for repr in ["lookup", "formula", "circuit"] {
            let run = fpe(&["gen", "7", "--graph", "gnp:0.4", "--class", "BF", "--repr", repr, "--seed", &seed.to_string()]);
            assert_eq!(run.code, 0, "{}", run.stderr);
            let s = SystemDocument::parse(&run.stdout).unwrap().to_system().unwrap();
            assert_eq!(SystemDocument::from_system(&s).to_canonical_string(), run.stdout);
        }
    }
}

#[test]
fn same_seed_gives_identical_output() {
    let a = fpe(&["gen", "9", "--graph", "tree", "--class", "L", "--repr", "circuit", "--seed", "42"]);
    let b = fpe(&["gen", "9", "--graph", "tree", "--class", "L", "--repr", "circuit", "--seed", "42"]);
    let c = fpe(&["gen", "9", "--graph", "tree", "--class", "L", "--repr", "circuit", "--seed", "43"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn generated_functions_respect_the_class() {
    for seed in 0..5 {
        let m = fpe(&["gen", "8", "--class", "M", "--repr", "formula", "--seed", &seed.to_string()]);
        let s = SystemDocument::parse(&m.stdout).unwrap().to_system().unwrap();
        assert!(s.functions().iter().all(is_monotone));
        let d = fpe(&["gen", "8", "--class", "D", "--repr", "lookup", "--seed", &seed.to_string()]);
        let s = SystemDocument::parse(&d.stdout).unwrap().to_system().unwrap();
        assert!(s.functions().iter().all(is_self_dual));
    }
    let bad = fpe(&["gen", "2", "--graph", "cycle", "--seed", "1"]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("refused"), "{}", bad.stderr);
}

#[test]
fn solve_exit_codes_follow_the_contract() {
    let dir = TempDir::new().unwrap();
    let not = write(&dir, "not.json", SYS_NOT);
    let id = write(&dir, "id.json", SYS_ID);

    let run = fpe(&["--format", "json", "solve", p(&not)]);
    assert_eq!(run.code, 1);
    assert_eq!(json(&run)["method"], "LinearAlgebra");

    let run = fpe(&["--format", "json", "solve", p(&id)]);
    assert_eq!(run.code, 0);
    assert_eq!(json(&run)["witness_verified"], true);
    let run = fpe(&["--format", "json", "solve", p(&id), "--strategy", "const0"]);
    assert_eq!((run.code, json(&run)["witness"].as_str()), (0, Some("0")));

    // forcing a route whose precondition fails is a refusal
    let run = fpe(&["--format", "json", "solve", p(&not), "--strategy", "monotone"]);
    assert_eq!(run.code, 2);
    assert_eq!(json(&run)["outcome"], "refused");

    let broken = write(&dir, "broken.json", "{\n  \"vertices\": 1,\n  \"edges\": [\n");
    let run = fpe(&["solve", p(&broken)]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("line 4"), "{}", run.stderr);
}

#[test]
fn auto_and_brute_force_agree_on_random_systems() {
    let dir = TempDir::new().unwrap();
    for seed in 0..16u64 {
        let class = ["R0", "R1", "M", "L", "D", "BF"][seed as usize % 6];
        let gen = fpe(&["gen", "10", "--class", class, "--seed", &seed.to_string()]);
        let path = write(&dir, "sys.json", &gen.stdout);
        let auto = fpe(&["solve", p(&path)]);
        let brute = fpe(&["solve", p(&path), "--strategy", "brute"]);
        assert_eq!(auto.code, brute.code, "seed {seed}");
        assert!(auto.code < 2);
    }
}

#[test]
fn budgets_come_from_file_then_flags() {
    let dir = TempDir::new().unwrap();
    let gen = fpe(&["gen", "10", "--seed", "3"]);
    let sys = write(&dir, "sys.json", &gen.stdout);
    let config = write(&dir, "fpe.toml", "brute_force_cap = 5\n");
    let env = [("FIXPOINT_CONFIG", config.as_path())];

    let capped = fpe_env(&["--format", "json", "solve", p(&sys), "--strategy", "brute"], &env);
    assert_eq!(capped.code, 2);
    assert!(json(&capped)["refusals"][0].as_str().unwrap().contains("cap"));

    let lifted = fpe_env(&["solve", p(&sys), "--strategy", "brute", "--budget-brute-force-cap", "12"], &env);
    assert!(lifted.code < 2, "{}", lifted.stdout);

    let bad = write(&dir, "bad.toml", "brute_force_cap = \"many\"\n");
    let run = fpe_env(&["solve", p(&sys)], &[("FIXPOINT_CONFIG", bad.as_path())]);
    assert_eq!(run.code, 2);
}

#[test]
fn simulate_matches_hand_evaluation() {
    let dir = TempDir::new().unwrap();
    let not = write(&dir, "not.json", SYS_NOT);
    let xor2 = write(&dir, "xor2.json", SYS_XOR2);
    let run = fpe(&["simulate", p(&not), "--sync", "2", "--start", "0"]);
    assert!(run.stdout.starts_with("trajectory: 0,1,0\n"), "{}", run.stdout);
    let run = fpe(&["--format", "json", "simulate", p(&xor2), "--sync", "1", "--start", "11"]);
    assert_eq!(json(&run)["trajectory"], serde_json::json!(["11", "01"]));

    // 00 is fixed: constant trajectory, flagged at step 0
    let sched = write(&dir, "sched.json", "[[1], [2], [1, 2]]");
    let run = fpe(&["--format", "json", "simulate", p(&xor2), "--schedule", p(&sched), "--start", "00"]);
    assert_eq!(json(&run)["trajectory"], serde_json::json!(["00", "00", "00", "00"]));
    assert_eq!(json(&run)["fixed_point_at"], 0);
}

#[test]
fn classify_reports_verdicts() {
    let dir = TempDir::new().unwrap();
    let run = fpe(&["classify", "--class", "D", "--graphs", "planar", "--repr", "lookup"]);
    assert_eq!(run.stdout, "class: D\nlookup: NPComplete(PlanarLookup)\n");

    let claw = write(&dir, "claw.json", r#"[{"vertices": 4, "edges": [[1, 2], [1, 3], [1, 4]]}]"#);
    let run = fpe(&["--format", "json", "classify", "--class", "BF", "--graphs", p(&claw)]);
    let v = json(&run);
    assert_eq!(v["verdicts"]["lookup"], "Tractable(BoundedTreewidth)");
    assert_eq!(v["verdicts"]["formula"], "Tractable(BoundedDegreeExpansion)");

    let xor2 = write(&dir, "xor2.json", SYS_XOR2);
    let v = json(&fpe(&["--format", "json", "classify", p(&xor2)]));
    assert_eq!(v["functions"][0]["classes"]["L"], true);
    assert_eq!(v["functions"][1]["classes"]["L"], false);
    assert_eq!(v["joint_coatoms"], serde_json::json!(["R0"]));
    assert_eq!(v["verdicts"]["lookup"], "Tractable(ConstantWitness0)");

    // for an all-self-dual system the verdict moves only with --graphs
    let tri = fpe(&["gen", "3", "--graph", "cycle", "--class", "D", "--seed", "0"]);
    let tri = write(&dir, "tri.json", &tri.stdout);
    let all = json(&fpe(&["--format", "json", "classify", p(&tri)]));
    let vc1 = json(&fpe(&["--format", "json", "classify", p(&tri), "--graphs", "vc1"]));
    assert_eq!(all["all_self_dual"], true);
    assert_eq!(all["verdicts"]["lookup"], "NPComplete(PlanarLookup)");
    assert_eq!(vc1["verdicts"]["lookup"], "Tractable(BoundedTreewidth)");
}

#[test]
fn reductions_emit_verified_documents() {
    let dir = TempDir::new().unwrap();
    let x1 = write(&dir, "x1.cnf", "p cnf 1 1\n1 0\n");
    let run = fpe(&["reduce", "star", p(&x1)]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let doc = SystemDocument::parse(&run.stdout).unwrap();
    assert_eq!(doc.metadata.as_ref().unwrap()["guarantees"]["vertex_cover_one"], true);
    let star = doc.to_system().unwrap();
    assert!(has_vertex_cover_one(star.graph()));

    let planar = write(&dir, "p.cnf", "p cnf 4 3\n1 -2 3 0\n2 -3 4 0\n-1 -4 0\n");
    let out = dir.path().join("planar.json");
    assert_eq!(fpe(&["reduce", "planar3sat", p(&planar), "-o", p(&out)]).code, 0);
    let s = SystemDocument::parse(&std::fs::read_to_string(&out).unwrap()).unwrap().to_system().unwrap();
    assert!(s.graph().max_degree() <= 3 && is_planar(s.graph()));

    let xor2 = write(&dir, "xor2.json", SYS_XOR2);
    let v = json(&fpe(&["reduce", "csp", p(&xor2)]));
    assert_eq!(v["domains"].as_array().unwrap().len(), 2);
    assert_eq!(v["constraints"].as_array().unwrap().len(), 1);

    let lift = fpe(&["reduce", "selfdual-lift", p(&xor2)]);
    let s = SystemDocument::parse(&lift.stdout).unwrap().to_system().unwrap();
    assert!(s.functions().iter().all(is_self_dual));

    let k33 = fpe(&["gen", "6", "--graph", "gnp:1.0", "--seed", "0"]);
    let k33 = write(&dir, "k6.json", &k33.stdout);
    let run = fpe(&["reduce", "selfdual-lift", p(&k33)]);
    assert_eq!(run.code, 2);
}

#[test]
fn verify_passes_and_names_failures() {
    let dir = TempDir::new().unwrap();
    let id = write(&dir, "id.json", SYS_ID);
    let run = fpe(&["verify", p(&id)]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    assert!(run.stdout.contains("PASS     schedule") && run.stdout.contains("PASS     oracle"));

    let good = fpe(&["--format", "json", "solve", p(&id)]);
    let good = write(&dir, "good.json", &good.stdout);
    assert_eq!(fpe(&["verify", p(&id), "--suite", "witness", "--report", p(&good)]).code, 0);

    let not = write(&dir, "not.json", SYS_NOT);
    let xor2 = write(&dir, "xor2.json", SYS_XOR2);
    let report = fpe(&["--format", "json", "solve", p(&xor2)]);
    let corrupted = write(&dir, "bad.json", &report.stdout.replace("\"witness\": \"00\"", "\"witness\": \"01\""));
    let run = fpe(&["--format", "json", "verify", p(&xor2), "--suite", "witness", "--report", p(&corrupted)]);
    assert_eq!(run.code, 1);
    let v = json(&run);
    assert_eq!(v["sections"][0]["name"], "witness");
    assert_eq!(v["sections"][0]["status"], "fail");
    let claim = write(&dir, "claim.json", r#"{"outcome": "not_exists"}"#);
    assert_eq!(fpe(&["verify", p(&not), "--suite", "witness", "--report", p(&claim)]).code, 0);
    assert_eq!(fpe(&["verify", p(&id), "--suite", "witness", "--report", p(&claim)]).code, 1);

    for (cnf, sat) in [("p cnf 2 2\n1 2 0\n-1 0\n", true), ("p cnf 1 2\n1 0\n-1 0\n", false)] {
        let cnf = write(&dir, "h.cnf", cnf);
        let star = write(&dir, "star.json", &fpe(&["reduce", "star", p(&cnf)]).stdout);
        let run = fpe(&["verify", p(&star), "--suite", "sat", "--cnf", p(&cnf)]);
        assert_eq!(run.code, 0, "{}", run.stdout);
        assert!(run.stdout.contains(&format!("satisfiable {sat}")));
        let mirror = fpe(&["verify", p(&star), "--suite", "mirror"]);
        assert!(mirror.stdout.starts_with("PASS"), "{}", mirror.stdout);
    }
}
