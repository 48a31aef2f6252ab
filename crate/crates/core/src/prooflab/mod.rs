//! Executable checks of the auxiliary lemmas: the leading term of `Q(X)`,
//! a Vandermonde-type determinant, residue counting, the `l_j` construction,
//! the stochastic fixed-point step and multiplicative independence.

mod algebra;
mod fixed_point;
mod residues;

pub use algebra::{det_beta_identity, expand_q, DetIdentity, QExpansion};
pub use fixed_point::{fixed_point_collision, multiplicative_independence_check, FixedPointVerdict, Independence};
pub use residues::{construct_ell, construct_ell_crt, count_admissible_residues, ResidueCount};
