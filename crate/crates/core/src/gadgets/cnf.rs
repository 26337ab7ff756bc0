//! CNF formulas, DIMACS input and incidence graphs.

use std::fmt;

use crate::function::Expr;
use crate::graph::Graph;
use crate::{Error, Result};

/// A CNF over variables `1..=num_vars`; literal `-k` is the negation of `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cnf {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for (j, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::InvalidCnf(format!("clause {} is empty", j + 1)));
            }
            if let Some(&lit) = clause.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > num_vars) {
                return Err(Error::InvalidCnf(format!(
                    "clause {} has literal {lit} outside 1..={num_vars}",
                    j + 1
                )));
            }
        }
        Ok(Cnf { num_vars, clauses })
    }

    /// Parses DIMACS CNF. Comment lines start with `c` (or `%`); clauses
    /// end with `0` and may span lines. Errors carry the line number.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let at = |msg: String| Error::InvalidCnf(format!("line {}: {msg}", lineno + 1));
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if header.is_some() {
                    return Err(at("duplicate problem line".into()));
                }
                if parts.len() != 4 || parts[1] != "cnf" {
                    return Err(at(format!("expected `p cnf <vars> <clauses>`, found `{line}`")));
                }
                let vars = parts[2].parse().map_err(|_| at(format!("bad variable count `{}`", parts[2])))?;
                let count = parts[3].parse().map_err(|_| at(format!("bad clause count `{}`", parts[3])))?;
                header = Some((vars, count));
                continue;
            }
            let Some((vars, _)) = header else {
                return Err(at("clause before the problem line".into()));
            };
            for tok in line.split_whitespace() {
                let lit: i32 = tok.parse().map_err(|_| at(format!("bad literal `{tok}`")))?;
                if lit == 0 {
                    if current.is_empty() {
                        return Err(at("empty clause".into()));
                    }
                    clauses.push(std::mem::take(&mut current));
                } else if lit.unsigned_abs() as usize > vars {
                    return Err(at(format!("literal {lit} exceeds the declared {vars} variables")));
                } else {
                    current.push(lit);
                }
            }
        }
        let (vars, count) = header.ok_or_else(|| Error::InvalidCnf("missing problem line".into()))?;
        if !current.is_empty() {
            clauses.push(current);
        }
        if clauses.len() != count {
            return Err(Error::InvalidCnf(format!("header declares {count} clauses, found {}", clauses.len())));
        }
        Cnf::new(vars, clauses)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Literal count `Σ|C_j|`, the size measure for the formula bound.
    pub fn size(&self) -> usize {
        self.clauses.iter().map(Vec::len).sum()
    }

    pub fn is_3cnf(&self) -> bool {
        self.clauses.iter().all(|c| c.len() <= 3)
    }

    /// Every clause widened to exactly three literals by repeating its last one.
    pub fn padded(&self) -> Result<Cnf> {
        if !self.is_3cnf() {
            return Err(Error::InvalidCnf("a clause has more than three literals".into()));
        }
        let clauses = self
            .clauses
            .iter()
            .map(|c| {
                let mut c = c.clone();
                while c.len() < 3 {
                    c.push(*c.last().unwrap());
                }
                c
            })
            .collect();
        Ok(Cnf { num_vars: self.num_vars, clauses })
    }

    /// `assignment[k]` is the value of variable `k + 1`.
    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| literal_value(l, assignment)))
    }

    /// Exhaustive search; refuses above 25 variables.
    pub fn satisfying_assignment(&self) -> Result<Option<Vec<bool>>> {
        if self.num_vars > 25 {
            return Err(Error::BruteForceCap { n: self.num_vars, cap: 25 });
        }
        Ok((0..1u64 << self.num_vars)
            .map(|idx| (0..self.num_vars).map(|k| (idx >> k) & 1 == 1).collect::<Vec<bool>>())
            .find(|a| self.eval(a)))
    }

    pub fn is_satisfiable(&self) -> Result<bool> {
        Ok(self.satisfying_assignment()?.is_some())
    }

    /// `H` as an expression over `Var(k − 1)` for variable `k`.
    pub fn to_expr(&self) -> Expr {
        conjunction(self.clauses.iter().map(|c| disjunction(c.iter().map(|&l| literal_expr(l)))))
    }
}

impl fmt::Display for Cnf {
    /// DIMACS text.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        for c in &self.clauses {
            for l in c {
                write!(f, "{l} ")?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

pub(crate) fn literal_value(lit: i32, assignment: &[bool]) -> bool {
    assignment[lit.unsigned_abs() as usize - 1] == (lit > 0)
}

fn literal_expr(lit: i32) -> Expr {
    let v = Expr::var(lit.unsigned_abs() as usize - 1);
    if lit > 0 {
        v
    } else {
        Expr::not(v)
    }
}

fn conjunction(items: impl Iterator<Item = Expr>) -> Expr {
    items.reduce(Expr::and).unwrap_or(Expr::constant(true))
}

fn disjunction(items: impl Iterator<Item = Expr>) -> Expr {
    items.reduce(Expr::or).unwrap_or(Expr::constant(false))
}

/// Bipartite variable/clause graph: variable `k` is vertex `k − 1`, clause
/// `j` (0-based) is vertex `num_vars + j`. Repeated occurrences give one edge.
pub fn incidence_graph(h: &Cnf) -> Graph {
    let n = h.num_vars;
    Graph::from_edges_lossy(
        n + h.clauses.len(),
        h.clauses
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |&l| (l.unsigned_abs() as usize - 1, n + j))),
    )
}

/// `dual(H)(x) = ¬H(¬x)`.
pub fn dual_formula(h: &Cnf) -> Expr {
    Expr::not(h.to_expr().negate_vars())
}

impl Expr {
    /// Replaces every variable by its negation.
    fn negate_vars(&self) -> Expr {
        match self {
            Expr::Var(k) => Expr::not(Expr::var(*k)),
            Expr::Apply(sym, args) => Expr::Apply(*sym, args.iter().map(Expr::negate_vars).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{row_args, LocalFunction};

    fn cnf(n: usize, clauses: &[&[i32]]) -> Cnf {
        Cnf::new(n, clauses.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn incidence_examples() {
        let g = incidence_graph(&cnf(3, &[&[1, 2, 3]]));
        assert_eq!(g, Graph::new(4, [(0, 3), (1, 3), (2, 3)]).unwrap());
        // C₁ – x₁ – C₂
        let g = incidence_graph(&cnf(1, &[&[1], &[-1]]));
        assert_eq!(g, Graph::new(3, [(0, 1), (0, 2)]).unwrap());
        let g = incidence_graph(&cnf(2, &[&[1, 1, 2]]));
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn dual_examples() {
        let table = |e: Expr, n: usize| LocalFunction::formula(n, e).unwrap().to_table();
        assert_eq!(table(dual_formula(&cnf(1, &[&[1]])), 1).to_bit_string(), "01");
        assert_eq!(table(dual_formula(&cnf(2, &[&[1, 2]])), 2).to_bit_string(), "0001");
        let h = cnf(3, &[&[1, -2, 3], &[-1, 2]]);
        let d = table(dual_formula(&h), 3);
        let t = table(h.to_expr(), 3);
        for row in 0..8 {
            assert_eq!(d.row(row), !t.row(7 ^ row), "row {:?}", row_args(3, row));
        }
    }

    #[test]
    fn dimacs_round_trip() {
        let text = "c example\np cnf 3 2\n1 -2 0\n2 3\n-1 0\n";
        let h = Cnf::parse_dimacs(text).unwrap();
        assert_eq!(h.clauses(), &[vec![1, -2], vec![2, 3, -1]]);
        assert_eq!(Cnf::parse_dimacs(&h.to_string()).unwrap(), h);
    }

    #[test]
    fn dimacs_errors_carry_lines() {
        let err = Cnf::parse_dimacs("p cnf 2 1\n1 x 0\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(Cnf::parse_dimacs("1 2 0\n").is_err());
        assert!(Cnf::parse_dimacs("p cnf 1 1\n2 0\n").is_err());
        assert!(Cnf::parse_dimacs("p cnf 1 2\n1 0\n").is_err());
    }

    #[test]
    fn satisfiability_and_padding() {
        assert!(cnf(1, &[&[1, 1, 1]]).is_satisfiable().unwrap());
        assert!(!cnf(1, &[&[1, 1, 1], &[-1, -1, -1]]).is_satisfiable().unwrap());
        assert_eq!(cnf(2, &[&[1], &[2, -1]]).padded().unwrap().clauses(), &[vec![1, 1, 1], vec![2, -1, -1]]);
        assert!(cnf(4, &[&[1, 2, 3, 4]]).padded().is_err());
        assert!(Cnf::new(2, vec![vec![]]).is_err());
        assert!(Cnf::new(2, vec![vec![3]]).is_err());
    }
}
