//! Function-class and graph-class predicates, and the dichotomy oracle.

pub mod dichotomy;
pub mod minor;
pub mod planar;
pub mod post;
pub mod treewidth;

pub use dichotomy::{dichotomy, Algorithm, GraphClassSpec, Mode, Reduction, Verdict};
pub use minor::{has_minor, has_vertex_cover_one};
pub use planar::{is_planar, planar_embedding, Embedding};
pub use post::{
    closure_contains_selfduals, is_b_reproducing, is_linear, is_monotone, is_self_dual, linear_coefficients,
    FunctionClassSpec, PostClass,
};
pub use treewidth::treewidth_upper_bound;
