//! Local transition functions in three representations: lookup tables,
//! formulas and circuits.
//!
//! Lookup rows are indexed MSB-first: argument 0 is the most significant bit
//! of the row index, so the table for `¬x` reads `"10"` and the table for
//! `x₀ ∧ x₁` reads `"0001"`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Gate and formula symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symbol {
    And,
    Or,
    Not,
    Xor,
    Xnor,
    Const0,
    Const1,
    /// Ternary self-dual basis function `(x∧¬y) ∨ (x∧¬z) ∨ (¬y∧¬z)`.
    D,
}

impl Symbol {
    pub const ALL: [Symbol; 8] = [
        Symbol::And,
        Symbol::Or,
        Symbol::Not,
        Symbol::Xor,
        Symbol::Xnor,
        Symbol::Const0,
        Symbol::Const1,
        Symbol::D,
    ];

    pub fn arity(self) -> usize {
        match self {
            Symbol::Const0 | Symbol::Const1 => 0,
            Symbol::Not => 1,
            Symbol::And | Symbol::Or | Symbol::Xor | Symbol::Xnor => 2,
            Symbol::D => 3,
        }
    }

    /// Applies the symbol. `args.len()` must equal [`Symbol::arity`].
    pub fn apply(self, args: &[bool]) -> bool {
        match self {
            Symbol::And => args[0] & args[1],
            Symbol::Or => args[0] | args[1],
            Symbol::Not => !args[0],
            Symbol::Xor => args[0] ^ args[1],
            Symbol::Xnor => !(args[0] ^ args[1]),
            Symbol::Const0 => false,
            Symbol::Const1 => true,
            Symbol::D => d(args[0], args[1], args[2]),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::And => "AND",
            Symbol::Or => "OR",
            Symbol::Not => "NOT",
            Symbol::Xor => "XOR",
            Symbol::Xnor => "XNOR",
            Symbol::Const0 => "CONST0",
            Symbol::Const1 => "CONST1",
            Symbol::D => "D",
        }
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Symbol::ALL
            .into_iter()
            .find(|sym| sym.name() == s)
            .ok_or_else(|| Error::InvalidFunction(format!("unknown symbol `{s}`")))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The self-dual basis function.
#[inline]
pub fn d(x: bool, y: bool, z: bool) -> bool {
    (x && !y) || (x && !z) || (!y && !z)
}

/// A logical basis: the set of symbols a formula or circuit may use.
pub type Basis = BTreeSet<Symbol>;

/// Row index of `args` under MSB-first ordering.
#[inline]
pub fn row_index(args: &[bool]) -> usize {
    args.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize)
}

/// Argument vector of row `row` for a function of the given arity.
pub fn row_args(arity: usize, row: usize) -> Vec<bool> {
    (0..arity).map(|k| (row >> (arity - 1 - k)) & 1 == 1).collect()
}

/// A complete truth table with `2^arity` rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    arity: usize,
    bits: Vec<bool>,
}

impl TruthTable {
    pub fn new(arity: usize, bits: Vec<bool>) -> Result<Self> {
        if arity >= usize::BITS as usize - 1 || bits.len() != 1usize << arity {
            return Err(Error::InvalidFunction(format!(
                "lookup table for arity {arity} needs {} rows, got {}",
                1u128 << arity.min(100),
                bits.len()
            )));
        }
        Ok(TruthTable { arity, bits })
    }

    pub fn from_fn(arity: usize, mut f: impl FnMut(&[bool]) -> bool) -> Self {
        let bits = (0..1usize << arity).map(|row| f(&row_args(arity, row))).collect();
        TruthTable { arity, bits }
    }

    pub fn constant(arity: usize, value: bool) -> Self {
        TruthTable { arity, bits: vec![value; 1 << arity] }
    }

    /// Projection onto argument `k`.
    pub fn projection(arity: usize, k: usize) -> Self {
        assert!(k < arity);
        TruthTable::from_fn(arity, |args| args[k])
    }

    /// Parses a `0`/`1` string, one character per row.
    pub fn from_bit_string(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidFunction(format!("unexpected character `{other}` in table"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if !bits.len().is_power_of_two() {
            return Err(Error::InvalidFunction(format!(
                "table length {} is not a power of two",
                bits.len()
            )));
        }
        let arity = bits.len().trailing_zeros() as usize;
        TruthTable::new(arity, bits)
    }

    pub fn to_bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    #[inline]
    pub fn row(&self, row: usize) -> bool {
        self.bits[row]
    }

    #[inline]
    pub fn eval(&self, args: &[bool]) -> bool {
        debug_assert_eq!(args.len(), self.arity);
        self.bits[row_index(args)]
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable({})", self.to_bit_string())
    }
}

/// Formula syntax tree. Every internal node applies a [`Symbol`] to exactly
/// `symbol.arity()` children.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(usize),
    Apply(Symbol, Vec<Expr>),
}

impl Expr {
    pub fn var(k: usize) -> Expr {
        Expr::Var(k)
    }

    pub fn constant(value: bool) -> Expr {
        Expr::Apply(if value { Symbol::Const1 } else { Symbol::Const0 }, Vec::new())
    }

    pub fn not(a: Expr) -> Expr {
        Expr::Apply(Symbol::Not, vec![a])
    }

    pub fn and(a: Expr, b: Expr) -> Expr {
        Expr::Apply(Symbol::And, vec![a, b])
    }

    pub fn or(a: Expr, b: Expr) -> Expr {
        Expr::Apply(Symbol::Or, vec![a, b])
    }

    pub fn xor(a: Expr, b: Expr) -> Expr {
        Expr::Apply(Symbol::Xor, vec![a, b])
    }

    pub fn xnor(a: Expr, b: Expr) -> Expr {
        Expr::Apply(Symbol::Xnor, vec![a, b])
    }

    pub fn d(a: Expr, b: Expr, c: Expr) -> Expr {
        Expr::Apply(Symbol::D, vec![a, b, c])
    }

    pub fn eval(&self, args: &[bool]) -> bool {
        match self {
            Expr::Var(k) => args[*k],
            Expr::Apply(sym, children) => match sym {
                // short-circuit the common cases
                Symbol::And => children[0].eval(args) && children[1].eval(args),
                Symbol::Or => children[0].eval(args) || children[1].eval(args),
                _ => {
                    let mut vals = [false; 3];
                    for (slot, c) in vals.iter_mut().zip(children) {
                        *slot = c.eval(args);
                    }
                    sym.apply(&vals[..children.len()])
                }
            },
        }
    }

    /// Number of symbols, leaves included.
    pub fn size(&self) -> usize {
        match self {
            Expr::Var(_) => 1,
            Expr::Apply(_, children) => 1 + children.iter().map(Expr::size).sum::<usize>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Var(_) => 0,
            Expr::Apply(_, children) => 1 + children.iter().map(Expr::depth).max().unwrap_or(0),
        }
    }

    /// Largest variable index plus one (0 for closed formulas).
    pub fn var_bound(&self) -> usize {
        match self {
            Expr::Var(k) => k + 1,
            Expr::Apply(_, children) => children.iter().map(Expr::var_bound).max().unwrap_or(0),
        }
    }

    pub fn symbols(&self) -> Basis {
        let mut out = Basis::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut Basis) {
        if let Expr::Apply(sym, children) = self {
            out.insert(*sym);
            for c in children {
                c.collect_symbols(out);
            }
        }
    }

    /// Replaces every variable `k` by `f(k)`.
    pub fn map_vars(&self, f: &impl Fn(usize) -> usize) -> Expr {
        match self {
            Expr::Var(k) => Expr::Var(f(*k)),
            Expr::Apply(sym, children) => {
                Expr::Apply(*sym, children.iter().map(|c| c.map_vars(f)).collect())
            }
        }
    }

    fn check_shape(&self) -> Result<()> {
        if let Expr::Apply(sym, children) = self {
            if children.len() != sym.arity() {
                return Err(Error::InvalidFunction(format!(
                    "{sym} applied to {} arguments",
                    children.len()
                )));
            }
            children.iter().try_for_each(Expr::check_shape)?;
        }
        Ok(())
    }

    /// Parses prefix notation, e.g. `AND VAR 0 NOT VAR 1`.
    pub fn parse_prefix(s: &str) -> Result<Expr> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let mut pos = 0;
        let expr = parse_tokens(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::InvalidFunction(format!(
                "trailing input at token {pos}: `{}`",
                tokens[pos]
            )));
        }
        Ok(expr)
    }
}

fn parse_tokens(tokens: &[&str], pos: &mut usize) -> Result<Expr> {
    let at = *pos;
    let tok = tokens
        .get(at)
        .ok_or_else(|| Error::InvalidFunction(format!("unexpected end of formula at token {at}")))?;
    *pos += 1;
    if *tok == "VAR" {
        let idx = tokens
            .get(*pos)
            .ok_or_else(|| Error::InvalidFunction(format!("VAR without index at token {at}")))?;
        *pos += 1;
        let k = idx
            .parse::<usize>()
            .map_err(|_| Error::InvalidFunction(format!("bad variable index `{idx}` at token {}", at + 1)))?;
        return Ok(Expr::Var(k));
    }
    let sym: Symbol = tok
        .parse()
        .map_err(|_| Error::InvalidFunction(format!("unknown symbol `{tok}` at token {at}")))?;
    let children = (0..sym.arity())
        .map(|_| parse_tokens(tokens, pos))
        .collect::<Result<Vec<_>>>()?;
    Ok(Expr::Apply(sym, children))
}

impl fmt::Display for Expr {
    /// Prefix notation, the inverse of [`Expr::parse_prefix`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(k) => write!(f, "VAR {k}"),
            Expr::Apply(sym, children) => {
                f.write_str(sym.name())?;
                for c in children {
                    write!(f, " {c}")?;
                }
                Ok(())
            }
        }
    }
}

/// One gate of a [`Circuit`]. Argument `w < arity` names circuit input `w`;
/// `w >= arity` names the output of gate `w - arity`, which must come earlier.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gate {
    pub op: Symbol,
    pub args: Vec<usize>,
}

/// A gate list in topological order; the last gate is the output.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    arity: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(arity: usize, gates: Vec<Gate>) -> Result<Self> {
        if gates.is_empty() {
            return Err(Error::InvalidFunction("circuit has no gates".into()));
        }
        for (g, gate) in gates.iter().enumerate() {
            if gate.args.len() != gate.op.arity() {
                return Err(Error::InvalidFunction(format!(
                    "gate {g}: {} takes {} inputs, got {}",
                    gate.op,
                    gate.op.arity(),
                    gate.args.len()
                )));
            }
            if let Some(&w) = gate.args.iter().find(|&&w| w >= arity + g) {
                return Err(Error::InvalidFunction(format!(
                    "gate {g}: wire {w} is neither an input nor an earlier gate"
                )));
            }
        }
        Ok(Circuit { arity, gates })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Number of gates including the input gates.
    pub fn size(&self) -> usize {
        self.arity + self.gates.len()
    }

    pub fn eval(&self, args: &[bool]) -> bool {
        let mut wires = Vec::with_capacity(self.arity + self.gates.len());
        wires.extend_from_slice(args);
        let mut vals = [false; 3];
        for gate in &self.gates {
            for (slot, &w) in vals.iter_mut().zip(&gate.args) {
                *slot = wires[w];
            }
            wires.push(gate.op.apply(&vals[..gate.args.len()]));
        }
        *wires.last().expect("circuit has at least one gate")
    }

    pub fn symbols(&self) -> Basis {
        self.gates.iter().map(|g| g.op).collect()
    }
}

/// A vertex's local transition function.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LocalFunction {
    Lookup(TruthTable),
    Formula { arity: usize, expr: Expr },
    Circuit(Circuit),
}

impl LocalFunction {
    pub fn lookup(table: TruthTable) -> Self {
        LocalFunction::Lookup(table)
    }

    /// Wraps a formula, checking symbol arities and that every variable is below `arity`.
    pub fn formula(arity: usize, expr: Expr) -> Result<Self> {
        expr.check_shape()?;
        if expr.var_bound() > arity {
            return Err(Error::InvalidFunction(format!(
                "formula references VAR {} but the function has arity {arity}",
                expr.var_bound() - 1
            )));
        }
        Ok(LocalFunction::Formula { arity, expr })
    }

    pub fn circuit(circuit: Circuit) -> Self {
        LocalFunction::Circuit(circuit)
    }

    pub fn arity(&self) -> usize {
        match self {
            LocalFunction::Lookup(t) => t.arity(),
            LocalFunction::Formula { arity, .. } => *arity,
            LocalFunction::Circuit(c) => c.arity(),
        }
    }

    pub fn is_lookup(&self) -> bool {
        matches!(self, LocalFunction::Lookup(_))
    }

    pub fn repr_name(&self) -> &'static str {
        match self {
            LocalFunction::Lookup(_) => "lookup",
            LocalFunction::Formula { .. } => "formula",
            LocalFunction::Circuit(_) => "circuit",
        }
    }

    /// Evaluates the function, checking the argument count.
    pub fn eval(&self, args: &[bool]) -> Result<bool> {
        if args.len() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), actual: args.len() });
        }
        Ok(self.eval_unchecked(args))
    }

    /// Evaluates without the arity check.
    #[inline]
    pub fn eval_unchecked(&self, args: &[bool]) -> bool {
        match self {
            LocalFunction::Lookup(t) => t.eval(args),
            LocalFunction::Formula { expr, .. } => expr.eval(args),
            LocalFunction::Circuit(c) => c.eval(args),
        }
    }

    /// Full truth table; `2^arity` evaluations for formulas and circuits.
    pub fn to_table(&self) -> TruthTable {
        match self {
            LocalFunction::Lookup(t) => t.clone(),
            _ => TruthTable::from_fn(self.arity(), |args| self.eval_unchecked(args)),
        }
    }

    pub fn to_lookup(&self) -> LocalFunction {
        LocalFunction::Lookup(self.to_table())
    }

    /// Symbols used by a formula or circuit; `None` for lookup tables.
    pub fn basis(&self) -> Option<Basis> {
        match self {
            LocalFunction::Lookup(_) => None,
            LocalFunction::Formula { expr, .. } => Some(expr.symbols()),
            LocalFunction::Circuit(c) => Some(c.symbols()),
        }
    }

    /// Representation size: table rows, formula symbols, or circuit gates.
    pub fn size(&self) -> usize {
        match self {
            LocalFunction::Lookup(t) => t.len(),
            LocalFunction::Formula { expr, .. } => expr.size(),
            LocalFunction::Circuit(c) => c.size(),
        }
    }
}

impl From<TruthTable> for LocalFunction {
    fn from(t: TruthTable) -> Self {
        LocalFunction::Lookup(t)
    }
}
