//! SAT to fixed points of star networks with D-formulas.

use crate::function::{Expr, LocalFunction};
use crate::gadgets::cnf::Cnf;
use crate::graph::Graph;
use crate::system::System;
use crate::{Error, Result};

/// `D(z, z, e) = ¬e`, so negation stays inside the D basis.
fn neg(z: usize, e: Expr) -> Expr {
    Expr::d(Expr::var(z), Expr::var(z), e)
}

/// A D-only formula for `(H ∧ z) ∨ (dual(H) ∧ ¬z)`.
///
/// Variable `k` of `H` is `Var(k − 1)`; `z` must be a fresh index
/// (`z ≥ num_vars`). Every clause needs exactly three literals (see
/// [`Cnf::padded`]). Clause lists are split in halves, so the recursion
/// depth is logarithmic in the clause count.
pub fn sd_dformula(h: &Cnf, z: usize) -> Result<Expr> {
    if z < h.num_vars() {
        return Err(Error::Precondition(format!("z = {z} collides with a formula variable")));
    }
    if let Some(j) = h.clauses().iter().position(|c| c.len() != 3) {
        return Err(Error::InvalidCnf(format!("clause {} does not have exactly three literals", j + 1)));
    }
    Ok(sd_clauses(h.clauses(), z))
}

fn sd_clauses(clauses: &[Vec<i32>], z: usize) -> Expr {
    match clauses.len() {
        0 => Expr::var(z),
        1 => {
            // ¬l for each literal: a positive literal is negated through D,
            // a negative literal's negation is its bare variable
            let not_lit = |l: i32| {
                let v = Expr::var(l.unsigned_abs() as usize - 1);
                if l > 0 {
                    neg(z, v)
                } else {
                    v
                }
            };
            let c = &clauses[0];
            let not_z = neg(z, Expr::var(z));
            let a = Expr::d(Expr::var(z), not_lit(c[0]), not_lit(c[1]));
            let b = Expr::d(Expr::var(z), not_lit(c[0]), not_lit(c[2]));
            neg(z, Expr::d(not_z, a, b))
        }
        m => {
            let (left, right) = clauses.split_at(m / 2);
            let not_z = neg(z, Expr::var(z));
            Expr::d(not_z, neg(z, sd_clauses(left, z)), neg(z, sd_clauses(right, z)))
        }
    }
}

/// Vertex layout of [`sat_to_star_system`] for a CNF with `n` variables
/// and `m` clauses: `0` is the centre, `1` is `x₀`, `k + 1` is `x_k`, and
/// `n + 1 + j` is the auxiliary `y_j` of clause `j` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StarLayout {
    pub num_vars: usize,
    pub num_clauses: usize,
}

impl StarLayout {
    pub fn centre(&self) -> usize {
        0
    }

    pub fn x0(&self) -> usize {
        1
    }

    pub fn var(&self, k: usize) -> usize {
        k + 1
    }

    pub fn aux(&self, j: usize) -> usize {
        self.num_vars + 1 + j
    }

    pub fn vertices(&self) -> usize {
        self.num_vars + self.num_clauses + 2
    }
}

/// The widened CNF `Ĥ`: each clause `(l₁ ∨ l₂ ∨ l₃)` of `H` becomes
/// `(l₁ ∨ l₂ ∨ y_j) ∧ (¬y_j ∨ l₃ ∨ ¬x₀)`. Variable `1` is `x₀`, variable
/// `k + 1` is `x_k` and `n + 1 + j` is `y_j`. `Ĥ` with `x₀ = 1` is
/// satisfiable iff `H` is.
pub fn widened_cnf(h: &Cnf) -> Result<Cnf> {
    let h = h.padded()?;
    let n = h.num_vars() as i32;
    let shift = |l: i32| if l > 0 { l + 1 } else { l - 1 };
    let mut clauses = Vec::with_capacity(2 * h.clauses().len());
    for (j, c) in h.clauses().iter().enumerate() {
        let y = n + 2 + j as i32;
        clauses.push(vec![shift(c[0]), shift(c[1]), y]);
        clauses.push(vec![-y, shift(c[2]), -1]);
    }
    Cnf::new(h.num_vars() + h.clauses().len() + 1, clauses)
}

/// Builds a system on the star `K₁,ₙ₊ₘ₊₁` with a fixed point iff `H` is
/// satisfiable. The centre computes `sd(Ĥ)` with both `z` and `x₀` read
/// from the centre's own bit; leaf `v` computes `D(c, c, D(c, c, x_v)) = x_v`.
///
/// Reading `x₀` from the centre is what ties the two halves together: at
/// centre value 1 the centre needs `Ĥ(x, y, 1)`, at centre value 0 it needs
/// `¬dual(Ĥ)(x, y, 0)`, which is `Ĥ(¬x, ¬y, 1)`. A separate `x₀` leaf could
/// always be set to 0, satisfying `Ĥ` outright.
pub fn sat_to_star_system(h: &Cnf) -> Result<System> {
    let layout = StarLayout { num_vars: h.num_vars(), num_clauses: h.clauses().len() };
    let hat = widened_cnf(h)?;
    let z = hat.num_vars();
    let centre = sd_dformula(&hat, z)?.map_vars(&|v| if v == z || v == 0 { 0 } else { v + 1 });
    star_system(layout, centre)
}

pub(crate) fn star_system(layout: StarLayout, centre: Expr) -> Result<System> {
    let size = layout.vertices();
    let graph = Graph::star(size - 1);
    let mut functions = vec![LocalFunction::formula(size, centre)?];
    let c = || Expr::var(0);
    let leaf = Expr::d(c(), c(), Expr::d(c(), c(), Expr::var(1)));
    for _ in 1..size {
        functions.push(LocalFunction::formula(2, leaf.clone())?);
    }
    System::new(graph, functions)
}
