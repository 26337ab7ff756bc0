//! Membership in the coatoms of Post's lattice.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::function::{LocalFunction, Symbol, TruthTable};
use crate::{Error, Result};

pub fn is_b_reproducing(f: &LocalFunction, b: bool) -> bool {
    f.eval_unchecked(&vec![b; f.arity()]) == b
}

/// Checks every single-bit-flip cover `x < x ∨ e_k` of the hypercube.
pub fn is_monotone(f: &LocalFunction) -> bool {
    table_is_monotone(&f.to_table())
}

pub fn table_is_monotone(t: &TruthTable) -> bool {
    let bits = t.bits();
    (0..t.arity()).all(|k| {
        let bit = 1usize << k;
        (0..bits.len()).filter(|row| row & bit == 0).all(|row| !bits[row] | bits[row | bit])
    })
}

/// Affine coefficients `(a₀, a₁, …, a_n)` with `f(x) = a₀ ⊕ a₁x₁ ⊕ … ⊕ a_nx_n`, if `f` is linear.
pub fn linear_coefficients(f: &LocalFunction) -> Option<Vec<bool>> {
    table_linear_coefficients(&f.to_table())
}

pub fn table_linear_coefficients(t: &TruthTable) -> Option<Vec<bool>> {
    let n = t.arity();
    let a0 = t.row(0);
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(a0);
    let mut mask = 0usize;
    for j in 0..n {
        let row = 1usize << (n - 1 - j);
        let aj = t.row(row) ^ a0;
        coeffs.push(aj);
        if aj {
            mask |= row;
        }
    }
    let ok = (0..t.len()).all(|row| t.row(row) == (a0 ^ ((row & mask).count_ones() & 1 == 1)));
    ok.then_some(coeffs)
}

pub fn is_linear(f: &LocalFunction) -> bool {
    linear_coefficients(f).is_some()
}

/// `f(x) = ¬f(¬x)` on every input.
pub fn is_self_dual(f: &LocalFunction) -> bool {
    table_is_self_dual(&f.to_table())
}

pub fn table_is_self_dual(t: &TruthTable) -> bool {
    let full = t.len() - 1;
    (0..t.len()).all(|row| t.row(row) != t.row(full ^ row))
}

/// The named Post classes the oracle understands: the five coatoms and `BF`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PostClass {
    R0,
    R1,
    M,
    L,
    D,
    BF,
}

impl PostClass {
    pub const ALL: [PostClass; 6] =
        [PostClass::R0, PostClass::R1, PostClass::M, PostClass::L, PostClass::D, PostClass::BF];

    /// The four coatoms other than `D`, in solver probe order.
    pub const NON_SELF_DUAL_COATOMS: [PostClass; 4] =
        [PostClass::R1, PostClass::R0, PostClass::L, PostClass::M];

    pub fn contains_table(self, t: &TruthTable) -> bool {
        match self {
            PostClass::R0 => !t.row(0),
            PostClass::R1 => t.row(t.len() - 1),
            PostClass::M => table_is_monotone(t),
            PostClass::L => table_linear_coefficients(t).is_some(),
            PostClass::D => table_is_self_dual(t),
            PostClass::BF => true,
        }
    }

    pub fn contains(self, f: &LocalFunction) -> bool {
        match self {
            PostClass::R0 => is_b_reproducing(f, false),
            PostClass::R1 => is_b_reproducing(f, true),
            PostClass::BF => true,
            _ => self.contains_table(&f.to_table()),
        }
    }

    /// A logical basis generating the class.
    pub fn basis(self) -> Vec<Symbol> {
        match self {
            PostClass::R0 => vec![Symbol::And, Symbol::Xor],
            PostClass::R1 => vec![Symbol::Or, Symbol::Xnor],
            PostClass::L => vec![Symbol::Xor, Symbol::Const0, Symbol::Const1],
            PostClass::M => vec![Symbol::And, Symbol::Or, Symbol::Const0, Symbol::Const1],
            PostClass::D => vec![Symbol::D],
            PostClass::BF => vec![Symbol::And, Symbol::Or, Symbol::Not],
        }
    }

    /// Inclusion between named classes.
    pub fn is_subclass_of(self, other: PostClass) -> bool {
        self == other || other == PostClass::BF
    }

    pub fn name(self) -> &'static str {
        match self {
            PostClass::R0 => "R0",
            PostClass::R1 => "R1",
            PostClass::M => "M",
            PostClass::L => "L",
            PostClass::D => "D",
            PostClass::BF => "BF",
        }
    }
}

impl fmt::Display for PostClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PostClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PostClass::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Precondition(format!("unknown function class `{s}`")))
    }
}

/// A Post class, either named or generated by a finite basis of tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionClassSpec {
    Named(PostClass),
    Generated(Vec<TruthTable>),
}

impl FunctionClassSpec {
    pub fn generated(basis: Vec<TruthTable>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::Precondition("generated class needs a nonempty basis".into()));
        }
        Ok(FunctionClassSpec::Generated(basis))
    }

    /// Coatoms among `R1, R0, L, M` (probe order) that contain the whole class.
    /// A clone lies in a coatom iff all of its generators do.
    pub fn contained_in(&self) -> Vec<PostClass> {
        PostClass::NON_SELF_DUAL_COATOMS
            .into_iter()
            .filter(|&coatom| match self {
                FunctionClassSpec::Named(c) => *c == coatom,
                FunctionClassSpec::Generated(basis) => basis.iter().all(|t| coatom.contains_table(t)),
            })
            .collect()
    }
}

/// Whether the class generated by `spec` contains every self-dual function.
///
/// A clone misses `D` exactly when it lies below one of `R0`, `R1`, `M`, `L`.
pub fn closure_contains_selfduals(spec: &FunctionClassSpec) -> bool {
    match spec {
        FunctionClassSpec::Named(c) => matches!(c, PostClass::D | PostClass::BF),
        FunctionClassSpec::Generated(_) => spec.contained_in().is_empty(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::Expr;

    fn t(s: &str) -> TruthTable {
        TruthTable::from_bit_string(s).unwrap()
    }

    fn f(s: &str) -> LocalFunction {
        LocalFunction::lookup(t(s))
    }

    const AND: &str = "0001";
    const OR: &str = "0111";
    const XOR: &str = "0110";
    const ID: &str = "01";
    const NOT: &str = "10";
    const D: &str = "10001110";

    #[test]
    fn reproducing() {
        assert!(is_b_reproducing(&f(AND), true));
        // D(0,0,0) = (0∧1) ∨ (0∧1) ∨ (1∧1) = 1
        assert!(!is_b_reproducing(&f(D), false));
        assert!(is_b_reproducing(&f(ID), false));
        assert!(is_b_reproducing(&f(ID), true));
        let formula = LocalFunction::formula(3, Expr::d(Expr::var(0), Expr::var(1), Expr::var(2))).unwrap();
        assert!(!is_b_reproducing(&formula, false));
    }

    #[test]
    fn monotone() {
        assert!(is_monotone(&f(OR)));
        assert!(!is_monotone(&f(NOT)));
        // D(0,0,0) = 1 but D(0,0,1) = 0 (row 000 -> 001)
        assert!(t(D).row(0) && !t(D).row(1));
        assert!(!is_monotone(&f(D)));
    }

    #[test]
    fn linear() {
        assert_eq!(linear_coefficients(&f(XOR)), Some(vec![false, true, true]));
        assert_eq!(linear_coefficients(&f("1111")), Some(vec![true, false, false]));
        assert_eq!(linear_coefficients(&f(AND)), None);
    }

    #[test]
    fn and_is_not_affine_by_enumeration() {
        // all 8 affine functions of arity 2
        for a in 0..8u8 {
            let (a0, a1, a2) = (a & 4 != 0, a & 2 != 0, a & 1 != 0);
            let affine = TruthTable::from_fn(2, |x| a0 ^ (a1 & x[0]) ^ (a2 & x[1]));
            assert_ne!(affine, t(AND));
        }
    }

    #[test]
    fn self_dual() {
        assert!(is_self_dual(&f(ID)));
        assert!(is_self_dual(&f(D)));
        assert!(!is_self_dual(&f(AND)));
    }

    #[test]
    fn closure_examples() {
        assert!(closure_contains_selfduals(&FunctionClassSpec::generated(vec![t(D)]).unwrap()));
        assert!(!closure_contains_selfduals(&FunctionClassSpec::generated(vec![t(AND), t(OR)]).unwrap()));
        assert!(!closure_contains_selfduals(&FunctionClassSpec::Named(PostClass::L)));
        assert!(closure_contains_selfduals(&FunctionClassSpec::Named(PostClass::BF)));
        // {AND, NOT} generates everything
        assert!(closure_contains_selfduals(&FunctionClassSpec::generated(vec![t(AND), t(NOT)]).unwrap()));
        assert!(FunctionClassSpec::generated(vec![]).is_err());
    }

    #[test]
    fn bases_generate_members() {
        for class in [PostClass::R0, PostClass::R1, PostClass::L, PostClass::M, PostClass::D] {
            for sym in class.basis() {
                let tt = TruthTable::from_fn(sym.arity(), |x| sym.apply(x));
                assert!(class.contains_table(&tt), "{sym} should lie in {class}");
            }
        }
    }
}
