//! Fixed-point existence for boolean dynamical systems.
//!
//! A system is an undirected network whose vertices each carry a bit and a
//! local transition function over their closed neighbourhood. This crate
//! evaluates such systems under arbitrary update schedules, classifies them
//! by Post class and forbidden minors, decides fixed-point existence with a
//! family of polynomial-time solvers (plus a brute-force oracle) and builds
//! the reductions that witness hardness on the intractable side.
//!
//! Vertices and function arguments are 0-based throughout the Rust API.
//! The arguments of a vertex function are the members of its closed
//! neighbourhood in ascending vertex order.

pub mod classify;
pub mod csp;
mod error;
pub mod function;
pub mod gadgets;
pub mod graph;
pub mod random;
pub mod solve;
pub mod system;

pub use error::{Error, Result};
pub use function::{Circuit, Expr, Gate, LocalFunction, Symbol, TruthTable};
pub use graph::Graph;
pub use system::{Config, Schedule, System, VertexSet};
