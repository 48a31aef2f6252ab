//! Primitive prime divisors of an EDS prefix.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::EdsSequence;
use crate::ntkernel::arith::factor_biguint;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveReport {
    pub n: usize,
    /// Primitive primes found (may be partial when `complete` is false).
    #[serde(with = "crate::serde_big::uints")]
    pub primes: Vec<BigUint>,
    /// Part of `z_n` coprime to every earlier term.
    #[serde(with = "crate::serde_big::uint")]
    pub primitive_part: BigUint,
    pub has_primitive: bool,
    /// False when the factorization budget ran out.
    pub complete: bool,
}

/// For each `n`, the primes dividing `z_n` and no earlier `z_m`.
///
/// The primitive part is found by stripping common factors with every
/// earlier term, so `has_primitive` is exact even when factoring is not.
/// Zero terms (degenerate Ward sequences) end the scan.
pub fn primitive_divisor_scan(seq: &EdsSequence, budget: u64) -> Vec<PrimitiveReport> {
    let abs: Vec<BigUint> = seq.terms().iter().map(|t| t.magnitude().clone()).collect();
    let mut out = Vec::with_capacity(abs.len());
    for (i, z) in abs.iter().enumerate() {
        if z.is_zero() {
            break;
        }
        let mut part = z.clone();
        for earlier in &abs[..i] {
            loop {
                let g = part.gcd(earlier);
                if g.is_one() {
                    break;
                }
                part /= g;
            }
        }
        let f = factor_biguint(&part, budget);
        out.push(PrimitiveReport {
            n: i + 1,
            primes: f.factors.iter().map(|(p, _)| p.clone()).collect(),
            has_primitive: !part.is_one(),
            complete: f.is_complete(),
            primitive_part: part,
        });
    }
    out
}
