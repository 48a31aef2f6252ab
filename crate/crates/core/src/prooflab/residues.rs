use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ntkernel::arith::{is_prime_u64, mul_mod, reduce};
use crate::ntkernel::sqrt::{legendre_u64, mod_inverse_big};
use crate::ntkernel::{crt_combine, hensel_lift_sqrt};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidueCount {
    pub r: u64,
    pub t: u32,
    pub c: i64,
    pub count: u64,
    /// `|2^t I_r - r|`.
    pub deviation: u64,
    /// `2 t (sqrt(r) + 1)`.
    pub band: f64,
}

impl ResidueCount {
    pub fn within_band(&self) -> bool {
        self.deviation as f64 <= self.band
    }
}

/// `I_r = #{n in [0, r) : (n^2 + j c / r) = 1 for j = 1..=t}`.
pub fn count_admissible_residues(r: u64, t: u32, c: i64) -> Result<ResidueCount> {
    if r < 3 || !is_prime_u64(r) {
        return Err(Error::NotOddPrime { value: r.to_string() });
    }
    let cr = (c as i128).rem_euclid(r as i128) as u64;
    if cr == 0 {
        return Err(Error::invalid(format!("r = {r} divides c = {c}")));
    }
    if r <= t as u64 {
        return Err(Error::invalid(format!("need r > t, got r = {r}, t = {t}")));
    }
    let count = (0..r)
        .filter(|&n| {
            let sq = mul_mod(n, n, r);
            (1..=t as u64).all(|j| legendre_u64((sq + mul_mod(j, cr, r)) % r, r) == 1)
        })
        .count() as u64;
    let scaled = (count as u128) << t;
    let deviation = scaled.abs_diff(r as u128) as u64;
    Ok(ResidueCount {
        r,
        t,
        c,
        count,
        deviation,
        band: 2.0 * t as f64 * ((r as f64).sqrt() + 1.0),
    })
}

/// `l` with `2 l n0 + c l^2 = j (mod r^e)`, i.e. `l = (-n0 + sqrt(n0^2 + j c)) / c`.
///
/// The square root mod `r^e` is lifted from the canonical root mod `r`, so
/// the result reduces mod `r` to the `e = 1` solution.
pub fn construct_ell(r: u64, e: u32, n0: &BigInt, j: &BigInt, c: &BigInt) -> Result<BigUint> {
    if e == 0 {
        return Err(Error::invalid("exponent must be positive"));
    }
    if reduce(c, r) == 0 {
        return Err(Error::invalid(format!("r = {r} divides c")));
    }
    let modulus = BigUint::from(r).pow(e);
    let m = BigInt::from(modulus.clone());
    let disc = n0 * n0 + j * c;
    let base = hensel_lift_sqrt(&disc, r, 1)?;
    let mut s = hensel_lift_sqrt(&disc, r, e)?;
    if &s % r != base {
        s = (&modulus - &s) % &modulus;
    }
    let c_mod = c.mod_floor(&m).magnitude().clone();
    let c_inv = mod_inverse_big(&c_mod, &modulus).ok_or_else(|| Error::NotInvertible {
        value: c.to_string(),
        modulus: modulus.to_string(),
    })?;
    let diff = (BigInt::from(s) - n0).mod_floor(&m);
    let ell = (diff.magnitude() * &c_inv) % &modulus;
    let l = BigInt::from(ell.clone());
    let lhs = BigInt::from(2) * &l * n0 + c * &l * &l - j;
    if !lhs.mod_floor(&m).is_zero() {
        return Err(Error::Internal(format!("l = {ell} fails 2 l n0 + c l^2 = j mod {modulus}")));
    }
    Ok(ell)
}

/// `l` modulo `prod r_i^{e_i}` assembled by CRT from the prime-power solutions.
pub fn construct_ell_crt(parts: &[(u64, u32)], n0: &BigInt, j: &BigInt, c: &BigInt) -> Result<(BigUint, BigUint)> {
    let residues = parts
        .iter()
        .map(|&(r, e)| Ok((BigInt::from(construct_ell(r, e, n0, j, c)?), BigUint::from(r).pow(e))))
        .collect::<Result<Vec<_>>>()?;
    let (ell, modulus) = crt_combine(&residues)?;
    let m = BigInt::from(modulus.clone());
    let l = BigInt::from(ell.clone());
    let check = BigInt::from(2) * &l * n0 + c * &l * &l - j;
    if !check.mod_floor(&m).is_zero() {
        return Err(Error::Internal("CRT assembly broke the defining congruence".into()));
    }
    Ok((ell, modulus))
}
