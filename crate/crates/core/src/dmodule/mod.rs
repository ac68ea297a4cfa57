//! Linear PDE systems as presented left modules, and the example modules.

mod density;
mod ladder;
mod membership;
mod solve;

pub use density::DensityForm;
pub use ladder::{window_generates, WeightWindow, WindowVector};
pub use membership::{ideal_member_bounded, Membership};
pub use solve::{monomials_up_to, poly_solutions, OpMatrix, PolyVec, SolutionBasis};
