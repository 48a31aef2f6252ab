//! Chinese remaindering, the `lcm{p^j - 1}` tower and residue classes.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::arith::is_prime_u64;
use super::sqrt::mod_inverse_big;
use crate::error::{Error, Result};

/// Combine congruences `x = v_i (mod m_i)` with pairwise coprime moduli.
/// Returns `(x, M)` with `x` in `[0, M)` and `M` the product of the moduli.
pub fn crt_combine(residues: &[(BigInt, BigUint)]) -> Result<(BigUint, BigUint)> {
    if residues.is_empty() {
        return Err(Error::invalid("no congruences supplied"));
    }
    for (i, (_, mi)) in residues.iter().enumerate() {
        if mi.is_zero() {
            return Err(Error::invalid(format!("modulus at position {i} is zero")));
        }
        for (j, (_, mj)) in residues.iter().enumerate().skip(i + 1) {
            if !mi.gcd(mj).is_one() {
                return Err(Error::NonCoprimeModuli {
                    first: i,
                    second: j,
                    m1: mi.to_string(),
                    m2: mj.to_string(),
                });
            }
        }
    }
    let mut x = BigUint::zero();
    let mut modulus = BigUint::one();
    for (v, m) in residues {
        let v = v.mod_floor(&BigInt::from(m.clone())).to_biguint().unwrap();
        // x + modulus * t = v (mod m)
        let inv = mod_inverse_big(&(&modulus % m), m).expect("coprime moduli");
        let diff = (v + m - (&x % m)) % m;
        let t = (diff * inv) % m;
        x += &modulus * t;
        modulus *= m;
    }
    Ok((x, modulus))
}

/// `lcm{p^j - 1 : 1 <= j <= k}`.
pub fn lcm_tower(p: u64, k: u32) -> Result<BigUint> {
    if !is_prime_u64(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    let pb = BigUint::from(p);
    let mut l = BigUint::one();
    for j in 1..=k {
        let term = pb.pow(j) - 1u32;
        l = l.lcm(&term);
    }
    Ok(l)
}

/// An element of `Z / mZ` kept in canonical range.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    modulus: BigUint,
    value: BigUint,
}

impl Residue {
    pub fn new(value: &BigInt, modulus: BigUint) -> Result<Self> {
        if modulus.is_zero() {
            return Err(Error::invalid("modulus must be positive"));
        }
        let value = value
            .mod_floor(&BigInt::from(modulus.clone()))
            .to_biguint()
            .unwrap();
        Ok(Residue { modulus, value })
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    fn same_ring(&self, other: &Residue) {
        assert_eq!(self.modulus, other.modulus, "residues from different rings");
    }

    pub fn add(&self, other: &Residue) -> Residue {
        self.same_ring(other);
        Residue {
            value: (&self.value + &other.value) % &self.modulus,
            modulus: self.modulus.clone(),
        }
    }

    pub fn sub(&self, other: &Residue) -> Residue {
        self.same_ring(other);
        Residue {
            value: (&self.value + &self.modulus - &other.value) % &self.modulus,
            modulus: self.modulus.clone(),
        }
    }

    pub fn mul(&self, other: &Residue) -> Residue {
        self.same_ring(other);
        Residue {
            value: (&self.value * &other.value) % &self.modulus,
            modulus: self.modulus.clone(),
        }
    }

    pub fn pow(&self, e: &BigUint) -> Residue {
        Residue {
            value: self.value.modpow(e, &self.modulus),
            modulus: self.modulus.clone(),
        }
    }

    pub fn inverse(&self) -> Result<Residue> {
        mod_inverse_big(&self.value, &self.modulus)
            .map(|value| Residue {
                value,
                modulus: self.modulus.clone(),
            })
            .ok_or_else(|| Error::NotInvertible {
                value: self.value.to_string(),
                modulus: self.modulus.to_string(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(v: i64, m: u64) -> (BigInt, BigUint) {
        (BigInt::from(v), BigUint::from(m))
    }

    #[test]
    fn crt_examples() {
        let (x, m) = crt_combine(&[pair(2, 3), pair(3, 5)]).unwrap();
        // direct scan of 0..15
        let scan = (0u32..15).find(|v| v % 3 == 2 && v % 5 == 3).unwrap();
        assert_eq!((x, m), (BigUint::from(scan), BigUint::from(15u32)));
        assert_eq!(scan, 8);
        let (x, _) = crt_combine(&[pair(0, 12)]).unwrap();
        assert!(x.is_zero());
        let (x, m) = crt_combine(&[pair(1, 2), pair(1, 3), pair(1, 5)]).unwrap();
        assert_eq!((x, m), (BigUint::one(), BigUint::from(30u32)));
        let (x, _) = crt_combine(&[pair(-1, 7), pair(4, 9)]).unwrap();
        assert_eq!(x, BigUint::from(13u32));
    }

    #[test]
    fn crt_reports_offending_pair() {
        let err = crt_combine(&[pair(1, 3), pair(1, 5), pair(2, 9)]).unwrap_err();
        assert_eq!(
            err,
            Error::NonCoprimeModuli {
                first: 0,
                second: 2,
                m1: "3".into(),
                m2: "9".into()
            }
        );
    }

    #[test]
    fn lcm_tower_examples() {
        assert_eq!(lcm_tower(5, 2).unwrap(), BigUint::from(24u32));
        assert_eq!(lcm_tower(13, 1).unwrap(), BigUint::from(12u32));
        assert_eq!(lcm_tower(2, 3).unwrap(), BigUint::from(21u32));
        assert!(lcm_tower(4, 2).is_err());
        assert!(lcm_tower(5, 0).is_err());
    }

    #[test]
    fn residue_ring_ops() {
        let m = BigUint::from(35u32);
        let a = Residue::new(&BigInt::from(-2), m.clone()).unwrap();
        let b = Residue::new(&BigInt::from(9), m.clone()).unwrap();
        assert_eq!(a.value(), &BigUint::from(33u32));
        assert_eq!(a.add(&b).value(), &BigUint::from(7u32));
        assert_eq!(a.sub(&b).value(), &BigUint::from(24u32));
        assert_eq!(a.mul(&b).value(), &BigUint::from(17u32));
        let inv = b.inverse().unwrap();
        assert!(b.mul(&inv).value().is_one());
        assert!(Residue::new(&BigInt::from(7), m).unwrap().inverse().is_err());
    }
}
