//! Quadratic residues, Tonelli-Shanks and Hensel lifting.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;

use super::arith::{is_prime_u64, mul_mod, pow_mod, reduce};
use crate::error::{Error, Result};

fn require_odd_prime(r: u64) -> Result<()> {
    if r.is_multiple_of(2) || !is_prime_u64(r) {
        return Err(Error::NotOddPrime {
            value: r.to_string(),
        });
    }
    Ok(())
}

/// Legendre symbol `(a / r)` for an odd prime `r`.
pub fn legendre_symbol(a: &BigInt, r: u64) -> Result<i8> {
    require_odd_prime(r)?;
    Ok(legendre_u64(reduce(a, r), r))
}

/// Legendre symbol of a residue already reduced modulo the odd prime `r`.
/// The caller guarantees primality.
pub fn legendre_u64(a: u64, r: u64) -> i8 {
    let a = a % r;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (r - 1) / 2, r) == 1 {
        1
    } else {
        -1
    }
}

/// The square root of `a` modulo the odd prime `r` lying in `[0, r/2]`.
pub fn sqrt_mod_prime(a: &BigInt, r: u64) -> Result<u64> {
    require_odd_prime(r)?;
    let a = reduce(a, r);
    tonelli_shanks(a, r).ok_or_else(|| Error::NoSquareRoot {
        a: a.to_string(),
        modulus: r.to_string(),
    })
}

/// Tonelli-Shanks with the smallest quadratic non-residue; canonical root.
pub(crate) fn tonelli_shanks(a: u64, r: u64) -> Option<u64> {
    let a = a % r;
    if a == 0 {
        return Some(0);
    }
    if legendre_u64(a, r) != 1 {
        return None;
    }
    let mut q = r - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..r).find(|&z| legendre_u64(z, r) == -1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, r);
    let mut t = pow_mod(a, q, r);
    let mut root = pow_mod(a, q.div_ceil(2), r);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, r);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), r);
        m = i;
        c = mul_mod(b, b, r);
        t = mul_mod(t, c, r);
        root = mul_mod(root, b, r);
    }
    Some(root.min(r - root))
}

/// Lift the canonical square root of `a` modulo `r` to a root modulo `r^e`.
///
/// Newton steps double the precision each round; the final root is the
/// representative in `[0, r^e / 2]`.
pub fn hensel_lift_sqrt(a: &BigInt, r: u64, e: u32) -> Result<BigUint> {
    if e == 0 {
        return Err(Error::invalid("exponent must be at least 1"));
    }
    let base = sqrt_mod_prime(a, r)?;
    if e == 1 {
        return Ok(BigUint::from(base));
    }
    if reduce(a, r) == 0 {
        return Err(Error::invalid(format!(
            "{r} divides {a}; lifting non-unit square roots is not supported"
        )));
    }
    let rb = BigUint::from(r);
    let target = rb.pow(e);
    let a_mod = a.mod_floor(&BigInt::from(target.clone())).to_biguint().unwrap();
    let mut s = BigUint::from(base);
    let mut prec = 1u32;
    while prec < e {
        prec = (prec * 2).min(e);
        let m = rb.pow(prec);
        let a_m = &a_mod % &m;
        // s <- s - (s^2 - a) / (2 s) mod r^prec
        let s2 = (&s * &s) % &m;
        let diff = (s2 + &m - a_m) % &m;
        let two_s = (&s * 2u32) % &m;
        let inv = mod_inverse_big(&two_s, &m).expect("2s is a unit for odd r not dividing a");
        s = (&s + &m - (diff * inv) % &m) % &m;
    }
    let other = &target - &s;
    let s = if other < s { other } else { s };
    debug_assert!(((&s * &s) % &target) == a_mod);
    Ok(s)
}

/// Inverse modulo a big modulus.
pub fn mod_inverse_big(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let a = BigInt::from(a % m);
    let m_i = BigInt::from(m.clone());
    let g = a.extended_gcd(&m_i);
    if !g.gcd.is_one() {
        return None;
    }
    g.x.mod_floor(&m_i).to_biguint()
}
