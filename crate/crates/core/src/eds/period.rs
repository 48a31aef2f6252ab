//! Residues of an EDS modulo a prime and their minimal period.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{generate_ward, EdsSequence, EdsSource, WardSeed};
use crate::elliptic::{count_points, point_order_fp, CurveQ, PointQ};
use crate::error::{Error, Result};
use crate::ntkernel::arith::{inv_mod, is_prime_u64, mul_mod, pow_mod, reduce};
use crate::period::smallest_period_multiple_of;

/// Number of stored terms checked against the division values before
/// residues are generated from the recurrence.
const PREFIX_CHECK: usize = 48;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PeriodStatus {
    Confirmed { period: u64 },
    Unconfirmed { searched_up_to: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdsPeriod {
    pub p: u64,
    #[serde(flatten)]
    pub status: PeriodStatus,
    /// First `n` with `z_n = 0 mod p`.
    pub rank_of_apparition: Option<u64>,
    pub horizon: u64,
    pub group_order: Option<u64>,
    pub point_order: Option<u64>,
    /// `T | 2 (p - 2) #E(F_p)`.
    pub divides_2_pm2_order: Option<bool>,
    /// `T | (p - 1) #E(F_p)`.
    pub divides_pm1_order: Option<bool>,
}

impl EdsPeriod {
    pub fn period(&self) -> Option<u64> {
        match self.status {
            PeriodStatus::Confirmed { period } => Some(period),
            PeriodStatus::Unconfirmed { .. } => None,
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime_u64(p) {
        return Err(Error::NotOddPrime { value: p.to_string() });
    }
    if p >= 1 << 32 {
        return Err(Error::invalid("residue streams need p < 2^32"));
    }
    Ok(())
}

/// `W_n mod p` for `n = 1..=count`, as a 0-based vector.
///
/// Geometric sequences use the signed division values `W_n = psi_n(P) z^{n^2}`
/// after checking `|W_n| = z_n` on the stored prefix; Ward sequences use the
/// recurrence mod p.
pub fn residues_mod_p(seq: &EdsSequence, p: u64, count: usize) -> Result<Vec<u32>> {
    check_prime(p)?;
    match seq.source() {
        EdsSource::Geometric { curve, point } => {
            verify_division_values(seq, curve, point)?;
            if !curve.has_good_reduction(p) {
                return Err(Error::BadReduction { p });
            }
            let (x, y, z) = point.coords().expect("geometric sources are affine");
            let zr = reduce(z, p);
            if zr == 0 {
                return Err(Error::invalid(format!("p = {p} divides z_1")));
            }
            Ok(division_values_mod_p(curve, reduce(x, p), reduce(y, p), zr, p, count))
        }
        EdsSource::Ward(seed) => ward_mod_p(seed, p, count),
    }
}

fn verify_division_values(seq: &EdsSequence, curve: &CurveQ, point: &PointQ) -> Result<()> {
    let n = seq.len().min(PREFIX_CHECK);
    let ward = generate_ward(&WardSeed::division_values(curve, point)?, n)?;
    for (i, (w, z)) in ward.terms().iter().zip(seq.terms()).enumerate() {
        if &w.abs() != z {
            return Err(Error::DivisionValueMismatch { index: i + 1 });
        }
    }
    Ok(())
}

/// Division polynomials at the reduced point, scaled so that no division is
/// needed: `g_n = psi_n` for odd `n` and `g_n = psi_n / (2y)` for even `n`.
fn division_values_mod_p(curve: &CurveQ, x: u64, y: u64, z: u64, p: u64, count: usize) -> Vec<u32> {
    let m = |a: u64, b: u64| mul_mod(a, b, p);
    let sub = |a: u64, b: u64| (a + p - b) % p;
    let zi = inv_mod(z, p).expect("p does not divide z");
    let zi2 = m(zi, zi);
    let xa = m(x, zi2);
    let ya = m(y, m(zi2, zi));
    let a = reduce(curve.a(), p);
    let b = reduce(curve.b(), p);
    let x2 = m(xa, xa);
    let x3 = m(x2, xa);
    let x4 = m(x2, x2);
    let x6 = m(x3, x3);
    let f = m(4, (x3 + m(a, xa) + b) % p);
    let f2 = m(f, f);
    let g3 = sub((m(3, x4) + m(6, m(a, x2)) + m(12, m(b, xa))) % p, m(a, a));
    let g4_pos = (x6 + m(5, m(a, x4)) + m(20, m(b, x3))) % p;
    let g4_neg = (m(5, m(m(a, a), x2)) + m(4, m(m(a, b), xa)) + m(8, m(b, b)) + m(m(a, a), a)) % p;
    let g4 = m(2, sub(g4_pos, g4_neg));

    let mut g: Vec<u64> = vec![0, 1, 1, g3, g4];
    g.reserve(count.saturating_sub(4));
    for n in 5..=count {
        let k = n / 2;
        let v = if n % 2 == 1 {
            let lhs = m(g[k + 2], m(g[k], m(g[k], g[k])));
            let rhs = m(g[k - 1], m(g[k + 1], m(g[k + 1], g[k + 1])));
            if k % 2 == 0 {
                sub(m(f2, lhs), rhs)
            } else {
                sub(lhs, m(f2, rhs))
            }
        } else {
            let t = sub(
                m(g[k + 2], m(g[k - 1], g[k - 1])),
                m(g[k - 2], m(g[k + 1], g[k + 1])),
            );
            m(g[k], t)
        };
        g.push(v);
    }

    // W_n = psi_n z^{n^2}; z^{(n+1)^2} = z^{n^2} z^{2n+1}.
    let two_y = m(2, ya);
    let z2 = m(z, z);
    let mut zpow = z; // z^{1}
    let mut step = m(z2, z); // z^{3}
    let mut out = Vec::with_capacity(count);
    for (n, &gn) in g.iter().enumerate().skip(1).take(count) {
        let psi = if n % 2 == 0 { m(two_y, gn) } else { gn };
        out.push(m(psi, zpow) as u32);
        zpow = m(zpow, step);
        step = m(step, z2);
    }
    out
}

fn ward_mod_p(seed: &WardSeed, p: u64, count: usize) -> Result<Vec<u32>> {
    let w: Vec<u64> = seed.values().iter().map(|v| reduce(v, p)).collect();
    let w1 = w[0];
    let w2 = w[1];
    let odd_inv = inv_mod(pow_mod(w1, 3, p), p);
    let even_inv = inv_mod(mul_mod(w2, mul_mod(w1, w1, p), p), p);
    let (Some(odd_inv), Some(even_inv)) = (odd_inv, even_inv) else {
        return Err(Error::invalid(format!("p = {p} divides w1 w2")));
    };
    let m = |a: u64, b: u64| mul_mod(a, b, p);
    let sub = |a: u64, b: u64| (a + p - b) % p;
    let mut r: Vec<u64> = Vec::with_capacity(count + 1);
    r.push(0);
    r.extend(w.iter().take(count));
    for n in 5..=count {
        let k = n / 2;
        let v = if n % 2 == 1 {
            let num = sub(m(r[k + 2], m(r[k], m(r[k], r[k]))), m(m(r[k + 1], m(r[k + 1], r[k + 1])), r[k - 1]));
            m(num, odd_inv)
        } else {
            let num = sub(
                m(m(r[k + 2], r[k]), m(r[k - 1], r[k - 1])),
                m(m(r[k], r[k - 2]), m(r[k + 1], r[k + 1])),
            );
            m(num, even_inv)
        };
        r.push(v);
    }
    Ok(r.into_iter().skip(1).map(|v| v as u32).collect())
}

/// Minimal period of `z_n mod p` on the window `1..=horizon`.
///
/// Candidates are multiples of the rank of apparition; a period is confirmed
/// only when the window holds two copies of it.
pub fn eds_period_mod_p(seq: &EdsSequence, p: u64, horizon: usize) -> Result<EdsPeriod> {
    let res = residues_mod_p(seq, p, horizon)?;
    let rank = res.iter().position(|&v| v == 0).map(|i| i + 1);
    let found = smallest_period_multiple_of(&res, rank.unwrap_or(1), horizon / 2);
    let status = match found {
        Some(t) => PeriodStatus::Confirmed { period: t as u64 },
        None => PeriodStatus::Unconfirmed {
            searched_up_to: (horizon / 2) as u64,
        },
    };
    let (group_order, point_order) = match seq.source() {
        EdsSource::Geometric { curve, point } => (
            Some(count_points(curve, p)?.group_order),
            Some(point_order_fp(curve, point, p)?),
        ),
        EdsSource::Ward(_) => (None, None),
    };
    let period = match status {
        PeriodStatus::Confirmed { period } => Some(period),
        _ => None,
    };
    let bound = |factor: u64| -> Option<bool> {
        let (t, n) = (period?, group_order?);
        Some((factor as u128 * n as u128).is_multiple_of(t as u128))
    };
    Ok(EdsPeriod {
        p,
        status,
        rank_of_apparition: rank.map(|r| r as u64),
        horizon: horizon as u64,
        group_order,
        point_order,
        divides_2_pm2_order: bound(2 * (p - 2)),
        divides_pm1_order: bound(p - 1),
    })
}

/// Doubling horizon from `start` until the period is confirmed or `max_horizon`
/// has been searched.
pub fn eds_period_adaptive(seq: &EdsSequence, p: u64, start: usize, max_horizon: usize) -> Result<EdsPeriod> {
    let mut h = start.clamp(8, max_horizon.max(8));
    loop {
        let r = eds_period_mod_p(seq, p, h)?;
        if r.period().is_some() || h >= max_horizon {
            return Ok(r);
        }
        h = (2 * h).min(max_horizon);
    }
}

/// Exact `z_n mod p` for the stored prefix (oracle for the recurrence route).
pub fn prefix_residues(seq: &EdsSequence, p: u64) -> Vec<u64> {
    seq.terms().iter().map(|t| reduce(t, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eds::generate_geometric;
    use crate::ntkernel::arith::primes_up_to;

    fn fixture(n: usize) -> EdsSequence {
        let e = CurveQ::from_i64(0, 3).unwrap();
        let p = e.point_i64(1, 2, 1).unwrap();
        generate_geometric(&e, &p, n).unwrap()
    }

    #[test]
    fn residues_agree_with_exact_terms_up_to_sign() {
        let seq = fixture(40);
        for p in primes_up_to(100).into_iter().filter(|&p| p > 3) {
            let res = residues_mod_p(&seq, p, 40).unwrap();
            for (n, (r, z)) in res.iter().zip(seq.terms()).enumerate() {
                let zr = reduce(z, p);
                let r = *r as u64;
                assert!(r == zr || (r + zr).is_multiple_of(p), "p = {p}, n = {}", n + 1);
            }
        }
    }

    #[test]
    fn ward_route_matches_division_values() {
        let e = CurveQ::from_i64(0, 3).unwrap();
        let pt = e.point_i64(1, 2, 1).unwrap();
        let seed = WardSeed::division_values(&e, &pt).unwrap();
        let ward = generate_ward(&seed, 4).unwrap();
        let geo = fixture(10);
        for p in [5u64, 7, 11, 13, 101] {
            assert_eq!(
                residues_mod_p(&ward, p, 300).unwrap(),
                residues_mod_p(&geo, p, 300).unwrap(),
                "p = {p}"
            );
        }
    }

    #[test]
    fn zeros_at_multiples_of_point_order() {
        let seq = fixture(10);
        let e = CurveQ::from_i64(0, 3).unwrap();
        let pt = e.point_i64(1, 2, 1).unwrap();
        for p in primes_up_to(200).into_iter().filter(|&p| p > 3) {
            let ord = point_order_fp(&e, &pt, p).unwrap() as usize;
            let res = residues_mod_p(&seq, p, 4 * ord + 10).unwrap();
            for (i, &r) in res.iter().enumerate() {
                assert_eq!(r == 0, (i + 1) % ord == 0, "p = {p}, n = {}", i + 1);
            }
        }
    }

    #[test]
    fn period_is_multiple_of_order_and_divides_pm1_bound() {
        let seq = fixture(10);
        for p in primes_up_to(100).into_iter().filter(|&p| p > 3) {
            let r = eds_period_adaptive(&seq, p, 64, 1 << 20).unwrap();
            let t = r.period().expect("confirmed");
            assert_eq!(t % r.point_order.unwrap(), 0);
            assert_eq!(r.rank_of_apparition, r.point_order);
            assert_eq!(r.divides_pm1_order, Some(true), "p = {p}");
        }
    }

    #[test]
    fn small_horizon_is_unconfirmed() {
        let seq = fixture(10);
        let r = eds_period_mod_p(&seq, 101, 20).unwrap();
        assert!(matches!(r.status, PeriodStatus::Unconfirmed { .. }));
    }

    #[test]
    fn rejects_bad_primes() {
        let seq = fixture(10);
        assert!(matches!(residues_mod_p(&seq, 3, 10), Err(Error::BadReduction { p: 3 })));
        assert!(matches!(residues_mod_p(&seq, 9, 10), Err(Error::NotOddPrime { .. })));
    }
}
