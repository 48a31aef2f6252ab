//! Exact integer, rational, polynomial and modular arithmetic shared by the
//! rest of the crate. Nothing in here uses floating point.

pub mod arith;
pub mod crt;
pub mod cyclotomic;
pub mod linalg;
pub mod poly;
pub mod sqrt;

pub use crt::{crt_combine, lcm_tower, Residue};
pub use cyclotomic::{cyclotomic_poly, cyclotomic_root_of_unity_test, euler_phi, ratio_bound, RootOfUnityTest};
pub use poly::Poly;
pub use sqrt::{hensel_lift_sqrt, legendre_symbol, sqrt_mod_prime};
