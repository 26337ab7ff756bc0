//! On-disk formats: the system document, schedules and minor lists.
//!
//! Vertices are 1-based in every file; the library is 0-based. Formula
//! variables `VAR k` and circuit wires are argument positions (0-based)
//! into the vertex's closed neighbourhood in ascending vertex order.
//!
//! Serialization is canonical: keys sorted, functions sorted by vertex,
//! two-space indentation and a trailing newline.

use anyhow::{anyhow, bail, Context, Result};
use fpe_core::{Circuit, Expr, Gate, Graph, LocalFunction, Schedule, System, TruthTable};
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Field order is alphabetical so the derived serializer emits sorted keys.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    pub edges: Vec<[usize; 2]>,
    pub functions: Vec<FunctionEntry>,
    /// Free-form; ignored on load.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Value>,
    pub vertices: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionEntry {
    pub data: FunctionData,
    pub repr: String,
    pub vertex: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionData {
    Text(String),
    Gates(Vec<GateEntry>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateEntry {
    pub args: Vec<usize>,
    pub op: String,
}

impl SystemDocument {
    pub fn from_system(s: &System) -> Self {
        let edges = s.graph().edges().map(|(u, v)| [u + 1, v + 1]).collect();
        let functions = s
            .functions()
            .iter()
            .enumerate()
            .map(|(v, f)| {
                let data = match f {
                    LocalFunction::Lookup(t) => FunctionData::Text(t.to_bit_string()),
                    LocalFunction::Formula { expr, .. } => FunctionData::Text(expr.to_string()),
                    LocalFunction::Circuit(c) => FunctionData::Gates(
                        c.gates()
                            .iter()
                            .map(|g| GateEntry { args: g.args.clone(), op: g.op.name().to_string() })
                            .collect(),
                    ),
                };
                FunctionEntry { data, repr: f.repr_name().to_string(), vertex: v + 1 }
            })
            .collect();
        SystemDocument { edges, functions, metadata: None, vertices: s.n() }
    }

    pub fn with_metadata(mut self, metadata: Value) -> Self {
        self.metadata = Some(metadata);
        self
    }

    /// Builds the system, enforcing every system invariant. Errors name the
    /// offending entry.
    pub fn to_system(&self) -> Result<System> {
        let n = self.vertices;
        let mut edges = Vec::with_capacity(self.edges.len());
        for (k, &[a, b]) in self.edges.iter().enumerate() {
            if a == 0 || b == 0 || a > n || b > n {
                bail!("edges[{k}]: vertex out of range 1..={n} in [{a}, {b}]");
            }
            edges.push((a - 1, b - 1));
        }
        let graph = Graph::new(n, edges).context("edges")?;
        let mut slots: Vec<Option<LocalFunction>> = vec![None; n];
        for (k, entry) in self.functions.iter().enumerate() {
            let v = entry.vertex;
            if v == 0 || v > n {
                bail!("functions[{k}]: vertex {v} out of range 1..={n}");
            }
            if slots[v - 1].is_some() {
                bail!("functions[{k}]: second function for vertex {v}");
            }
            let arity = graph.degree(v - 1) + 1;
            let f = parse_function(entry, arity).with_context(|| format!("functions[{k}] (vertex {v})"))?;
            slots[v - 1] = Some(f);
        }
        let functions = slots
            .into_iter()
            .enumerate()
            .map(|(v, f)| f.ok_or_else(|| anyhow!("functions: no function for vertex {}", v + 1)))
            .collect::<Result<Vec<_>>>()?;
        Ok(System::new(graph, functions)?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| anyhow!("malformed system document at line {}, column {}: {e}", e.line(), e.column()))
    }

    pub fn to_canonical_string(&self) -> String {
        canonical_json(&serde_json::to_value(self).expect("documents always serialize"))
    }
}

fn parse_function(entry: &FunctionEntry, arity: usize) -> Result<LocalFunction> {
    let f = match (entry.repr.as_str(), &entry.data) {
        ("lookup", FunctionData::Text(bits)) => LocalFunction::lookup(TruthTable::from_bit_string(bits)?),
        ("formula", FunctionData::Text(text)) => LocalFunction::formula(arity, Expr::parse_prefix(text)?)?,
        ("circuit", FunctionData::Gates(gates)) => {
            let gates = gates
                .iter()
                .enumerate()
                .map(|(g, e)| Ok(Gate { op: e.op.parse().with_context(|| format!("gate {g}"))?, args: e.args.clone() }))
                .collect::<Result<Vec<_>>>()?;
            LocalFunction::circuit(Circuit::new(arity, gates)?)
        }
        ("lookup" | "formula", _) => bail!("{} data must be a string", entry.repr),
        ("circuit", _) => bail!("circuit data must be a gate array"),
        (other, _) => bail!("unknown repr `{other}` (expected lookup, formula or circuit)"),
    };
    if f.arity() != arity {
        bail!("function has arity {} but the closed neighbourhood has {arity} vertices", f.arity());
    }
    Ok(f)
}

/// Canonical text for any JSON value: sorted keys, two-space indentation,
/// arrays without nested objects on one line, small flat objects on one
/// line, trailing newline.
pub fn canonical_json(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(is_flat),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let fields: Vec<String> =
                map.iter().map(|(k, x)| format!("{}: {}", Value::String(k.clone()), inline(x))).collect();
            format!("{{{}}}", fields.join(", "))
        }
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        scalar => scalar.to_string(),
    }
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Object(map) if !map.is_empty() && !(map.values().all(is_flat) && inline(v).len() <= 80) => {
            out.push_str("{\n");
            for (k, (key, val)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(val, depth + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() && !is_flat(v) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(item, depth + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        flat => out.push_str(&inline(flat)),
    }
}

pub fn read_system(path: &std::path::Path) -> Result<System> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    SystemDocument::parse(&text)
        .and_then(|d| d.to_system())
        .with_context(|| format!("{}", path.display()))
}

/// A schedule file is a JSON array of steps, each an array of 1-based vertices.
pub fn parse_schedule(text: &str, n: usize) -> Result<Schedule> {
    let steps: Vec<Vec<usize>> = serde_json::from_str(text)
        .map_err(|e| anyhow!("malformed schedule at line {}, column {}: {e}", e.line(), e.column()))?;
    let mut zero_based = Vec::with_capacity(steps.len());
    for (k, step) in steps.into_iter().enumerate() {
        if let Some(&v) = step.iter().find(|&&v| v == 0 || v > n) {
            bail!("schedule step {k}: vertex {v} out of range 1..={n}");
        }
        zero_based.push(step.into_iter().map(|v| v - 1).collect());
    }
    Ok(Schedule::new(n, zero_based)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MinorEntry {
    edges: Vec<[usize; 2]>,
    vertices: usize,
}

/// A minor list is a JSON array of `{"vertices": n, "edges": [[i, j], …]}`.
pub fn parse_minor_list(text: &str) -> Result<Vec<Graph>> {
    let entries: Vec<MinorEntry> = serde_json::from_str(text)
        .map_err(|e| anyhow!("malformed minor list at line {}, column {}: {e}", e.line(), e.column()))?;
    entries
        .into_iter()
        .enumerate()
        .map(|(k, m)| {
            let mut edges = Vec::new();
            for &[a, b] in &m.edges {
                if a == 0 || b == 0 || a > m.vertices || b > m.vertices {
                    bail!("minor {k}: vertex out of range in [{a}, {b}]");
                }
                edges.push((a - 1, b - 1));
            }
            Graph::new(m.vertices, edges).with_context(|| format!("minor {k}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const XOR2: &str = r#"{
  "edges": [[1, 2]],
  "functions": [
    {"vertex": 2, "repr": "circuit", "data": [{"op": "AND", "args": [0, 1]}]},
    {"vertex": 1, "repr": "formula", "data": "XOR VAR 0 VAR 1"}
  ],
  "vertices": 2
}"#;

    #[test]
    fn loads_mixed_representations() {
        let s = SystemDocument::parse(XOR2).unwrap().to_system().unwrap();
        assert_eq!(s.n(), 2);
        assert_eq!(s.function(0).repr_name(), "formula");
        assert_eq!(s.function(1).repr_name(), "circuit");
    }

    #[test]
    fn canonical_form_is_a_fixed_point_of_round_tripping() {
        let s = SystemDocument::parse(XOR2).unwrap().to_system().unwrap();
        let text = SystemDocument::from_system(&s).to_canonical_string();
        let again = SystemDocument::parse(&text).unwrap().to_system().unwrap();
        assert_eq!(again, s);
        assert_eq!(SystemDocument::from_system(&again).to_canonical_string(), text);
        assert!(text.find("\"edges\"").unwrap() < text.find("\"functions\"").unwrap());
    }

    #[test]
    fn errors_carry_a_location() {
        let err = SystemDocument::parse("{\n  \"vertices\": 1,\n  \"edges\": [}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let doc = SystemDocument::parse(r#"{"vertices": 1, "edges": [], "functions": [{"vertex": 1, "repr": "lookup", "data": "1"}]}"#).unwrap();
        let err = format!("{:#}", doc.to_system().unwrap_err());
        assert!(err.contains("functions[0] (vertex 1)"), "{err}");
    }

    #[test]
    fn metadata_is_ignored_on_load() {
        let doc = r#"{"vertices": 1, "edges": [], "functions": [{"vertex": 1, "repr": "lookup", "data": "01"}], "metadata": {"anything": [1, 2]}}"#;
        let s = SystemDocument::parse(doc).unwrap().to_system().unwrap();
        assert_eq!(SystemDocument::from_system(&s).metadata, None);
    }

    #[test]
    fn schedules_and_minors_are_one_based() {
        let sched = parse_schedule("[[1], [1, 2]]", 2).unwrap();
        assert_eq!(sched.len(), 2);
        assert!(parse_schedule("[[0]]", 2).is_err());
        let minors = parse_minor_list(r#"[{"vertices": 3, "edges": [[1, 2], [2, 3], [1, 3]]}]"#).unwrap();
        assert_eq!(minors[0], Graph::complete(3));
    }
}
