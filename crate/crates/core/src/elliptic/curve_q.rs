//! Short Weierstrass curves `y^2 = x^3 + A x + B` over Q with exact points.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::fp::{CurveFp, PointFp};
use crate::error::{Error, Result};
use crate::ntkernel::arith::{inv_mod, mul_mod, reduce};

/// Torsion orders over Q are at most 12; 16 leaves margin.
pub const TORSION_SEARCH_BOUND: u64 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveQ {
    #[serde(with = "crate::serde_big::int")]
    a: BigInt,
    #[serde(with = "crate::serde_big::int")]
    b: BigInt,
}

/// A rational point, `(x / z^2, y / z^3)` with `gcd(x, y, z) = 1` and `z > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PointQ {
    Infinity,
    Affine { x: BigInt, y: BigInt, z: BigInt },
}

impl CurveQ {
    pub fn new(a: BigInt, b: BigInt) -> Result<Self> {
        let c = CurveQ { a, b };
        if c.disc().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(c)
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Self> {
        CurveQ::new(a.into(), b.into())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// `4A^3 + 27B^2`.
    pub fn disc(&self) -> BigInt {
        BigInt::from(4) * self.a.pow(3) + BigInt::from(27) * self.b.pow(2)
    }

    /// Good reduction at an odd prime `p` (p = 2 is always treated as bad).
    pub fn has_good_reduction(&self, p: u64) -> bool {
        p > 2 && reduce(&self.disc(), p) != 0
    }

    pub fn contains(&self, point: &PointQ) -> bool {
        match point.affine() {
            None => true,
            Some((x, y)) => {
                let a = BigRational::from_integer(self.a.clone());
                let b = BigRational::from_integer(self.b.clone());
                &y * &y == &x * &x * &x + a * &x + b
            }
        }
    }

    /// Build a point from integer triple `(x, y, z)` meaning `(x/z^2, y/z^3)`,
    /// normalizing and checking the curve equation.
    pub fn point(&self, x: BigInt, y: BigInt, z: BigInt) -> Result<PointQ> {
        if z.is_zero() {
            return Err(Error::invalid("z must be non-zero; use Infinity for the identity"));
        }
        let xr = BigRational::new(x, z.pow(2));
        let yr = BigRational::new(y, z.pow(3));
        let p = PointQ::from_affine(xr, yr)?;
        if !self.contains(&p) {
            return Err(Error::NotOnCurve);
        }
        Ok(p)
    }

    pub fn point_i64(&self, x: i64, y: i64, z: i64) -> Result<PointQ> {
        self.point(x.into(), y.into(), z.into())
    }

    pub fn neg(&self, p: &PointQ) -> PointQ {
        match p {
            PointQ::Infinity => PointQ::Infinity,
            PointQ::Affine { x, y, z } => PointQ::Affine {
                x: x.clone(),
                y: -y,
                z: z.clone(),
            },
        }
    }

    /// Chord-and-tangent addition.
    pub fn add(&self, p: &PointQ, q: &PointQ) -> PointQ {
        let (Some((x1, y1)), Some((x2, y2))) = (p.affine(), q.affine()) else {
            return if p.is_infinity() { q.clone() } else { p.clone() };
        };
        let lambda = if x1 == x2 {
            if (&y1 + &y2).is_zero() {
                return PointQ::Infinity;
            }
            let three = BigRational::from_integer(3.into());
            let a = BigRational::from_integer(self.a.clone());
            (three * &x1 * &x1 + a) / (BigRational::from_integer(2.into()) * &y1)
        } else {
            (&y2 - &y1) / (&x2 - &x1)
        };
        let x3 = &lambda * &lambda - &x1 - &x2;
        let y3 = &lambda * (&x1 - &x3) - &y1;
        PointQ::from_affine(x3, y3).expect("sum of curve points has valid denominators")
    }

    pub fn double(&self, p: &PointQ) -> PointQ {
        self.add(p, p)
    }

    /// `n P` by double-and-add.
    pub fn scalar_mul(&self, n: u64, p: &PointQ) -> PointQ {
        let mut acc = PointQ::Infinity;
        let mut base = p.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.double(&base);
            }
        }
        acc
    }

    /// The torsion order of `p` if `n p = O` for some `n <= 16`.
    pub fn torsion_order(&self, p: &PointQ) -> Option<u64> {
        let mut acc = p.clone();
        for n in 1..=TORSION_SEARCH_BOUND {
            if acc.is_infinity() {
                return Some(n);
            }
            acc = self.add(&acc, p);
        }
        None
    }

    pub fn is_torsion(&self, p: &PointQ) -> bool {
        self.torsion_order(p).is_some()
    }

    /// Reject torsion points; replace `P` by `2P` when `x(P) = 0`.
    /// Returns the point to work with and the multiplier applied.
    pub fn prepare_base_point(&self, p: &PointQ) -> Result<(PointQ, u64)> {
        if let Some(order) = self.torsion_order(p) {
            return Err(Error::TorsionPoint { order });
        }
        match p {
            PointQ::Affine { x, .. } if x.is_zero() => Ok((self.double(p), 2)),
            _ => Ok((p.clone(), 1)),
        }
    }

    pub fn reduce_mod(&self, p: u64) -> Result<CurveFp> {
        CurveFp::new(p, reduce(&self.a, p), reduce(&self.b, p))
    }

    /// Reduction of a point; points with `p | z` reduce to the identity.
    pub fn reduce_point(&self, point: &PointQ, p: u64) -> PointFp {
        match point {
            PointQ::Infinity => PointFp::Infinity,
            PointQ::Affine { x, y, z } => {
                let zr = reduce(z, p);
                if zr == 0 {
                    return PointFp::Infinity;
                }
                let zi = inv_mod(zr, p).expect("p prime, p does not divide z");
                let zi2 = mul_mod(zi, zi, p);
                let zi3 = mul_mod(zi2, zi, p);
                PointFp::Affine(mul_mod(reduce(x, p), zi2, p), mul_mod(reduce(y, p), zi3, p))
            }
        }
    }

    /// Growth estimates `c_n = log z_n / n^2` for `n = 1..=n_max`.
    pub fn canonical_height_estimate(&self, p: &PointQ, n_max: usize) -> Result<HeightEstimate> {
        if let Some(order) = self.torsion_order(p) {
            return Err(Error::TorsionPoint { order });
        }
        if n_max == 0 {
            return Err(Error::invalid("n_max must be positive"));
        }
        let mut estimates = Vec::with_capacity(n_max);
        let mut acc = PointQ::Infinity;
        for n in 1..=n_max {
            acc = self.add(&acc, p);
            let z = acc.z().expect("non-torsion multiple is affine");
            estimates.push(ln_big(&z) / (n * n) as f64);
        }
        let last = *estimates.last().unwrap();
        let half = estimates[(n_max / 2).max(1) - 1];
        Ok(HeightEstimate {
            estimates,
            last,
            convergence_gap: (last - half).abs(),
        })
    }
}

impl fmt::Display for CurveQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x + ({})", self.a, self.b)
    }
}

/// Output of [`CurveQ::canonical_height_estimate`].
#[derive(Clone, Debug, PartialEq)]
pub struct HeightEstimate {
    /// `estimates[n - 1] = log z_n / n^2`.
    pub estimates: Vec<f64>,
    pub last: f64,
    /// `|c_{n_max} - c_{n_max / 2}|`.
    pub convergence_gap: f64,
}

/// Natural logarithm of a positive big integer.
pub fn ln_big(z: &BigUint) -> f64 {
    let bits = z.bits();
    if bits <= 1000 {
        return z.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (z >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

impl PointQ {
    /// From affine rationals; denominators must be `z^2` and `z^3`.
    pub fn from_affine(x: BigRational, y: BigRational) -> Result<Self> {
        let z = x.denom().sqrt();
        if &(&z * &z) != x.denom() || &z.pow(3) != y.denom() {
            return Err(Error::invalid(format!(
                "denominators of ({x}, {y}) are not of the form (z^2, z^3)"
            )));
        }
        Ok(PointQ::Affine {
            x: x.numer().clone(),
            y: y.numer().clone(),
            z,
        })
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, PointQ::Infinity)
    }

    pub fn affine(&self) -> Option<(BigRational, BigRational)> {
        match self {
            PointQ::Infinity => None,
            PointQ::Affine { x, y, z } => Some((
                BigRational::new(x.clone(), z.pow(2)),
                BigRational::new(y.clone(), z.pow(3)),
            )),
        }
    }

    /// The positive denominator root `z`.
    pub fn z(&self) -> Option<BigUint> {
        match self {
            PointQ::Infinity => None,
            PointQ::Affine { z, .. } => z.to_biguint(),
        }
    }

    pub fn coords(&self) -> Option<(&BigInt, &BigInt, &BigInt)> {
        match self {
            PointQ::Infinity => None,
            PointQ::Affine { x, y, z } => Some((x, y, z)),
        }
    }

    /// Re-derive the normalized representation (identity on normalized input).
    pub fn renormalize(&self) -> PointQ {
        match self.affine() {
            None => PointQ::Infinity,
            Some((x, y)) => PointQ::from_affine(x, y).expect("valid point"),
        }
    }

    pub fn is_normalized(&self) -> bool {
        match self {
            PointQ::Infinity => true,
            PointQ::Affine { x, y, z } => {
                z.sign() == Sign::Plus && x.gcd(y).gcd(z).is_one() && x.gcd(z).is_one()
            }
        }
    }
}

impl fmt::Display for PointQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointQ::Infinity => write!(f, "O"),
            PointQ::Affine { x, y, z } => write!(f, "({x} : {y} : {z})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e3() -> CurveQ {
        CurveQ::from_i64(0, 3).unwrap()
    }

    #[test]
    fn rejects_singular() {
        assert_eq!(CurveQ::from_i64(-3, 2), Err(Error::SingularCurve));
        assert_eq!(CurveQ::from_i64(0, 0), Err(Error::SingularCurve));
        assert_eq!(e3().disc(), BigInt::from(243));
    }

    #[test]
    fn doubling_example() {
        let e = e3();
        let p = e.point_i64(1, 2, 1).unwrap();
        let two_p = e.add(&p, &p);
        assert_eq!(two_p, PointQ::Affine { x: (-23).into(), y: (-11).into(), z: 4.into() });
        assert_eq!(e.scalar_mul(2, &p), two_p);
        assert_eq!(e.scalar_mul(1, &p), p);
        assert!(e.contains(&two_p));
    }

    #[test]
    fn identity_and_inverse() {
        let e = e3();
        let p = e.point_i64(1, 2, 1).unwrap();
        assert_eq!(e.add(&p, &PointQ::Infinity), p);
        assert_eq!(e.add(&PointQ::Infinity, &p), p);
        assert_eq!(e.add(&p, &e.neg(&p)), PointQ::Infinity);
    }

    #[test]
    fn torsion() {
        let e = e3();
        assert_eq!(e.torsion_order(&PointQ::Infinity), Some(1));
        assert!(!e.is_torsion(&e.point_i64(1, 2, 1).unwrap()));
        // y^2 = x^3 - x has (0,0), (1,0), (-1,0) of order 2
        let e2 = CurveQ::from_i64(-1, 0).unwrap();
        assert_eq!(e2.torsion_order(&e2.point_i64(1, 0, 1).unwrap()), Some(2));
        // y^2 = x^3 + 1: (2, 3) has order 6
        let e6 = CurveQ::from_i64(0, 1).unwrap();
        assert_eq!(e6.torsion_order(&e6.point_i64(2, 3, 1).unwrap()), Some(6));
        assert!(matches!(
            e6.prepare_base_point(&e6.point_i64(2, 3, 1).unwrap()),
            Err(Error::TorsionPoint { order: 6 })
        ));
    }

    #[test]
    fn base_point_with_zero_x_is_doubled() {
        // y^2 = x^3 + x + 1, P = (0, 1)
        let e = CurveQ::from_i64(1, 1).unwrap();
        let p = e.point_i64(0, 1, 1).unwrap();
        let (q, m) = e.prepare_base_point(&p).unwrap();
        assert_eq!(m, 2);
        assert_eq!(q, e.double(&p));
    }

    #[test]
    fn rejects_bad_points() {
        let e = e3();
        assert_eq!(e.point_i64(1, 3, 1), Err(Error::NotOnCurve));
        // non-normalized triple for 2P
        assert!(e.point_i64(-23 * 4, -11 * 8, 8).is_ok());
    }

    #[test]
    fn height_estimates_positive() {
        let e = e3();
        let p = e.point_i64(1, 2, 1).unwrap();
        let h = e.canonical_height_estimate(&p, 24).unwrap();
        assert!(h.estimates[4..].iter().all(|&c| c > 0.0));
        assert!(h.convergence_gap < 0.1, "{h:?}");
        assert!(e.canonical_height_estimate(&PointQ::Infinity, 5).is_err());
    }

    fn small_points() -> Vec<(CurveQ, Vec<PointQ>)> {
        let e = CurveQ::from_i64(-1, 3).unwrap();
        let g = e.point_i64(2, 3, 1).unwrap();
        let pts: Vec<PointQ> = (1..=5).map(|n| e.scalar_mul(n, &g)).collect();
        vec![(e3(), (1..=4).map(|n| e3().scalar_mul(n, &e3().point_i64(1, 2, 1).unwrap())).collect()), (e, pts)]
    }

    proptest! {
        #[test]
        fn group_axioms(ci in 0usize..2, i in 0usize..4, j in 0usize..4, k in 0usize..4, neg in any::<bool>()) {
            let all = small_points();
            let (e, pts) = &all[ci];
            let p = &pts[i];
            let q = if neg { e.neg(&pts[j]) } else { pts[j].clone() };
            let r = &pts[k];
            prop_assert_eq!(e.add(p, &q), e.add(&q, p));
            prop_assert_eq!(e.add(&e.add(p, &q), r), e.add(p, &e.add(&q, r)));
            prop_assert!(e.contains(&e.add(p, &q)));
            prop_assert_eq!(e.add(p, &e.neg(p)), PointQ::Infinity);
            let s = e.add(p, &q);
            prop_assert!(s.is_normalized());
            prop_assert_eq!(s.renormalize(), s);
        }

        #[test]
        fn scalar_mul_matches_repeated_add(n in 1u64..=6) {
            let e = e3();
            let p = e.point_i64(1, 2, 1).unwrap();
            let mut acc = PointQ::Infinity;
            for _ in 0..n {
                acc = e.add(&acc, &p);
            }
            prop_assert_eq!(e.scalar_mul(n, &p), acc);
        }
    }
}
