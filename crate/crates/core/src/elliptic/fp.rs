//! Curves over prime fields: group law, naive point counting, point orders.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ntkernel::arith::{factor_u64, inv_mod, is_prime_u64, mul_mod};
use crate::ntkernel::sqrt::legendre_u64;

/// Above this size the square table is skipped in favour of Euler's criterion.
const SQUARE_TABLE_LIMIT: u64 = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveFp {
    p: u64,
    a: u64,
    b: u64,
    good_reduction: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointFp {
    Infinity,
    Affine(u64, u64),
}

/// `#E(F_p) = p + 1 - a_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointCount {
    pub p: u64,
    pub group_order: u64,
    pub trace: i64,
    pub good_reduction: bool,
}

impl CurveFp {
    /// `p` must be an odd prime; `a`, `b` are reduced.
    pub fn new(p: u64, a: u64, b: u64) -> Result<Self> {
        if p < 3 || !is_prime_u64(p) {
            return Err(Error::NotOddPrime { value: p.to_string() });
        }
        if p >= 1 << 62 {
            return Err(Error::invalid("prime too large for word arithmetic"));
        }
        let (a, b) = (a % p, b % p);
        let disc = (4 * mul_mod(mul_mod(a, a, p), a, p) + 27 * mul_mod(b, b, p)) % p;
        Ok(CurveFp {
            p,
            a,
            b,
            good_reduction: disc != 0,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn good_reduction(&self) -> bool {
        self.good_reduction
    }

    /// Right-hand side `x^3 + a x + b`.
    #[inline]
    pub fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        let x2 = mul_mod(x, x, p);
        (mul_mod(x2, x, p) + mul_mod(self.a, x, p) + self.b) % p
    }

    pub fn contains(&self, pt: PointFp) -> bool {
        match pt {
            PointFp::Infinity => true,
            PointFp::Affine(x, y) => mul_mod(y, y, self.p) == self.rhs(x),
        }
    }

    pub fn neg(&self, pt: PointFp) -> PointFp {
        match pt {
            PointFp::Infinity => PointFp::Infinity,
            PointFp::Affine(x, y) => PointFp::Affine(x, (self.p - y) % self.p),
        }
    }

    pub fn add(&self, s: PointFp, t: PointFp) -> PointFp {
        let p = self.p;
        let (PointFp::Affine(x1, y1), PointFp::Affine(x2, y2)) = (s, t) else {
            return if s == PointFp::Infinity { t } else { s };
        };
        let lambda = if x1 == x2 {
            if (y1 + y2) % p == 0 {
                return PointFp::Infinity;
            }
            let num = (3 * mul_mod(x1, x1, p) + self.a) % p;
            mul_mod(num, inv_mod(2 * y1 % p, p).unwrap(), p)
        } else {
            let num = (y2 + p - y1) % p;
            mul_mod(num, inv_mod((x2 + p - x1) % p, p).unwrap(), p)
        };
        let x3 = (mul_mod(lambda, lambda, p) + 2 * p - x1 - x2) % p;
        let y3 = (mul_mod(lambda, (x1 + p - x3) % p, p) + p - y1) % p;
        PointFp::Affine(x3, y3)
    }

    pub fn mul(&self, mut n: u64, pt: PointFp) -> PointFp {
        let mut acc = PointFp::Infinity;
        let mut base = pt;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            n >>= 1;
        }
        acc
    }

    /// Naive `O(p)` count using a table of squares (Euler's criterion for very
    /// large `p`).
    pub fn count_points(&self) -> PointCount {
        if self.p > SQUARE_TABLE_LIMIT {
            return self.count_points_legendre();
        }
        let p = self.p;
        let mut is_square = vec![false; p as usize];
        for y in 1..=(p / 2) {
            is_square[mul_mod(y, y, p) as usize] = true;
        }
        let mut n = 1u64;
        for x in 0..p {
            let r = self.rhs(x);
            n += if r == 0 {
                1
            } else if is_square[r as usize] {
                2
            } else {
                0
            };
        }
        self.point_count(n)
    }

    /// Same count, one Legendre symbol per `x`.
    pub fn count_points_legendre(&self) -> PointCount {
        let p = self.p;
        let sum: i64 = (0..p).map(|x| legendre_u64(self.rhs(x), p) as i64).sum();
        self.point_count((p as i64 + 1 + sum) as u64)
    }

    fn point_count(&self, n: u64) -> PointCount {
        PointCount {
            p: self.p,
            group_order: n,
            trace: self.p as i64 + 1 - n as i64,
            good_reduction: self.good_reduction,
        }
    }

    /// Order of `pt` given the group order: strip prime factors while the
    /// multiple stays the identity.
    pub fn point_order_with(&self, pt: PointFp, group_order: u64) -> Result<u64> {
        if !self.good_reduction {
            return Err(Error::BadReduction { p: self.p });
        }
        if !self.contains(pt) {
            return Err(Error::NotOnCurve);
        }
        let mut order = group_order;
        for (l, _) in factor_u64(group_order) {
            while order.is_multiple_of(l) && self.mul(order / l, pt) == PointFp::Infinity {
                order /= l;
            }
        }
        if self.mul(order, pt) != PointFp::Infinity {
            return Err(Error::Internal(format!(
                "point order does not divide #E(F_{}) = {group_order}",
                self.p
            )));
        }
        Ok(order)
    }

    pub fn point_order(&self, pt: PointFp) -> Result<u64> {
        let n = self.count_points().group_order;
        self.point_order_with(pt, n)
    }

    /// Every affine point, for brute-force checks on small fields.
    pub fn points(&self) -> Vec<PointFp> {
        let p = self.p;
        let mut out = vec![PointFp::Infinity];
        for x in 0..p {
            let r = self.rhs(x);
            for y in 0..p {
                if mul_mod(y, y, p) == r {
                    out.push(PointFp::Affine(x, y));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::CurveQ;
    use crate::ntkernel::arith::primes_up_to;
    use proptest::prelude::*;

    #[test]
    fn count_example_f5() {
        // y^2 = x^3 + 3 over F_5: x = 0..4 gives rhs 3, 4, 1, 0, 2
        // squares mod 5 are {1, 4}: 0 + 2 + 2 + 1 + 0 + infinity = 6
        let e = CurveFp::new(5, 0, 3).unwrap();
        let c = e.count_points();
        assert_eq!(c.group_order, 6);
        assert_eq!(c.trace, 0);
        assert_eq!(e.points().len(), 6);
    }

    #[test]
    fn hasse_and_lagrange_for_small_primes() {
        let curve = CurveQ::from_i64(0, 3).unwrap();
        let pt = curve.point_i64(1, 2, 1).unwrap();
        for p in primes_up_to(200).into_iter().filter(|&p| p > 2) {
            let e = curve.reduce_mod(p).unwrap();
            let c = e.count_points();
            assert_eq!(c, e.count_points_legendre());
            assert_eq!(c.group_order as usize, e.points().len());
            if !e.good_reduction() {
                assert!(e.point_order(PointFp::Infinity).is_err());
                continue;
            }
            assert!(((c.trace * c.trace) as u64) < 4 * p, "Hasse at {p}");
            let r = curve.reduce_point(&pt, p);
            let ord = e.point_order(r).unwrap();
            assert_eq!(c.group_order % ord, 0);
            assert_eq!(e.mul(ord, r), PointFp::Infinity);
            for (l, _) in factor_u64(ord) {
                assert_ne!(e.mul(ord / l, r), PointFp::Infinity);
            }
            // 2P has order ord / gcd(2, ord)
            let r2 = e.add(r, r);
            let expected = if ord.is_multiple_of(2) { ord / 2 } else { ord };
            assert_eq!(e.point_order(r2).unwrap(), expected);
        }
    }

    #[test]
    fn rejects_non_prime_fields() {
        assert!(CurveFp::new(9, 0, 3).is_err());
        assert!(CurveFp::new(2, 0, 1).is_err());
        let bad = CurveFp::new(3, 0, 3).unwrap();
        assert!(!bad.good_reduction());
        assert!(!bad.count_points().good_reduction);
    }

    proptest! {
        #[test]
        fn reduction_commutes_with_multiplication(n in 1u64..=50, pi in 0usize..20) {
            let curve = CurveQ::from_i64(-1, 3).unwrap();
            let pt = curve.point_i64(2, 3, 1).unwrap();
            let primes: Vec<u64> = primes_up_to(100)
                .into_iter()
                .filter(|&p| curve.has_good_reduction(p))
                .collect();
            let p = primes[pi % primes.len()];
            let np = curve.scalar_mul(n, &pt);
            let e = curve.reduce_mod(p).unwrap();
            let lhs = curve.reduce_point(&np, p);
            let rhs = e.mul(n, curve.reduce_point(&pt, p));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
