//! Executable versions of the hardness reductions.

pub mod cnf;
pub mod planar3sat;
pub mod selfdual;
pub mod star;

pub use cnf::{dual_formula, incidence_graph, Cnf};
pub use planar3sat::{planar3sat_to_system, Planar3SatGadget};
pub use selfdual::{planar_selfdual_lift, self_dualize};
pub use star::{sat_to_star_system, sd_dformula, widened_cnf, StarLayout};
