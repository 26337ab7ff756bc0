//! The tractability dichotomy for fixed-point existence.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::minor::{has_minor, has_vertex_cover_one};
use super::planar::is_planar;
use super::post::{closure_contains_selfduals, FunctionClassSpec, PostClass};
use crate::graph::Graph;
use crate::{Error, Result};

/// A minor-closed graph class given by its forbidden minors. An empty list
/// means all graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphClassSpec {
    forbidden: Vec<Graph>,
}

impl GraphClassSpec {
    pub fn forbidding(forbidden: Vec<Graph>) -> Self {
        GraphClassSpec { forbidden }
    }

    pub fn all() -> Self {
        Self::forbidding(Vec::new())
    }

    /// `Forb(K₃,₃, K⁵)`.
    pub fn planar() -> Self {
        Self::forbidding(vec![Graph::complete_bipartite(3, 3), Graph::complete(5)])
    }

    /// `Forb(K³, K² ⊕ K²)`: graphs with a vertex cover of size one.
    pub fn vc1() -> Self {
        Self::forbidding(vec![Graph::complete(3), Graph::two_disjoint_edges()])
    }

    /// Resolves `all`, `planar` or `vc1` (case-insensitive).
    pub fn from_alias(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "all" => Ok(Self::all()),
            "planar" => Ok(Self::planar()),
            "vc1" => Ok(Self::vc1()),
            _ => Err(Error::Precondition(format!("unknown graph class alias `{name}`"))),
        }
    }

    pub fn forbidden(&self) -> &[Graph] {
        &self.forbidden
    }

    /// Whether `g` avoids every forbidden minor.
    pub fn contains(&self, g: &Graph) -> Result<bool> {
        for h in &self.forbidden {
            if has_minor(g, h)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Lookup,
    Formula,
    Circuit,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Lookup, Mode::Formula, Mode::Circuit];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Lookup => "lookup",
            Mode::Formula => "formula",
            Mode::Circuit => "circuit",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Precondition(format!("unknown representation `{s}`")))
    }
}

/// Polynomial-time algorithm named by a tractable verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    ConstantWitness0,
    ConstantWitness1,
    MonotoneIteration,
    LinearAlgebra,
    BoundedTreewidth,
    BoundedDegreeExpansion,
}

impl Algorithm {
    /// Solver attached to a non-self-dual coatom.
    pub fn for_coatom(c: PostClass) -> Option<Algorithm> {
        match c {
            PostClass::R0 => Some(Algorithm::ConstantWitness0),
            PostClass::R1 => Some(Algorithm::ConstantWitness1),
            PostClass::M => Some(Algorithm::MonotoneIteration),
            PostClass::L => Some(Algorithm::LinearAlgebra),
            PostClass::D | PostClass::BF => None,
        }
    }
}

/// Hardness reduction named by an intractable verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reduction {
    PlanarLookup,
    StarFormula,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Tractable(Algorithm),
    NPComplete(Reduction),
}

impl Verdict {
    pub fn is_np_complete(self) -> bool {
        matches!(self, Verdict::NPComplete(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Tractable(a) => write!(f, "Tractable({a:?})"),
            Verdict::NPComplete(r) => write!(f, "NPComplete({r:?})"),
        }
    }
}

/// Classifies fixed-point existence for systems with functions from
/// `functions` on networks from `graphs`.
///
/// Lookup tables: hard iff the function class contains every self-dual
/// function and no forbidden minor is planar. Formulas and circuits: hard
/// iff the class contains the self-duals and no forbidden minor has a vertex
/// cover of size one.
pub fn dichotomy(functions: &FunctionClassSpec, graphs: &GraphClassSpec, mode: Mode) -> Verdict {
    if let Some(&coatom) = functions.contained_in().first() {
        return Verdict::Tractable(Algorithm::for_coatom(coatom).expect("non-self-dual coatom"));
    }
    debug_assert!(closure_contains_selfduals(functions));
    match mode {
        Mode::Lookup => {
            if graphs.forbidden().iter().any(is_planar) {
                Verdict::Tractable(Algorithm::BoundedTreewidth)
            } else {
                Verdict::NPComplete(Reduction::PlanarLookup)
            }
        }
        Mode::Formula | Mode::Circuit => {
            if graphs.forbidden().iter().any(has_vertex_cover_one) {
                Verdict::Tractable(Algorithm::BoundedDegreeExpansion)
            } else {
                Verdict::NPComplete(Reduction::StarFormula)
            }
        }
    }
}
