//! Free and finitely presented abelian lattice-ordered groups, realized as
//! positively homogeneous piecewise-linear functions on polyhedral cones.

mod pl;
mod solve;
mod term;

pub use pl::{
    decompose_pl, nonneg_region, nonneg_region_on, pl_equal, presentation_cone, LPresentation,
    PLFunc, DEFAULT_PIECE_CAP,
};
pub use solve::{irrational_demo, lgroup_solve, sqrt2_convergents, IrrationalRow};
pub use term::{term_to_diff_of_meets, DiffOfMeets, LatticeTerm, LinFunc, DEFAULT_NODE_CAP};
