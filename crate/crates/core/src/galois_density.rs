//! Exact trace/determinant densities in `GL_2(F_q)` and the affine group
//! `F_q^2 x| GL_2(F_q)`, with an empirical prime scan beside them.

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::elliptic::{count_points, point_order_fp, CurveQ, PointQ};
use crate::error::{Error, Result};
use crate::ntkernel::arith::{is_prime_u64, primes_up_to};
use crate::par::{self, Execution};

pub const GL2_Q_LIMIT: u64 = 31;
pub const AFFINE_Q_LIMIT: u64 = 13;
/// Below this many matching primes the empirical frequency carries a warning.
pub const SMALL_SAMPLE: u64 = 30;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Empirical {
    pub x: u64,
    pub hits: u64,
    pub scanned: u64,
    #[serde(skip)]
    pub matching_primes: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    pub q: u64,
    pub a: u64,
    pub b: u64,
    pub numerator: u64,
    pub denominator: u64,
    pub delta_num: u64,
    pub delta_den: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub empirical: Option<Empirical>,
}

impl DensityReport {
    fn new(q: u64, a: u64, b: u64, numerator: u64, denominator: u64) -> Self {
        let g = numerator.gcd(&denominator).max(1);
        DensityReport {
            q,
            a,
            b,
            numerator,
            denominator,
            delta_num: numerator / g,
            delta_den: denominator / g,
            empirical: None,
        }
    }

    pub fn delta_is_positive(&self) -> bool {
        self.numerator > 0
    }
}

/// `|GL_2(F_q)| = (q^2 - 1)(q^2 - q)`.
pub fn gl2_order(q: u64) -> u64 {
    (q * q - 1) * (q * q - q)
}

fn validate(q: u64, a: u64, b: u64, limit: u64) -> Result<(u64, u64)> {
    if !is_prime_u64(q) {
        return Err(Error::invalid(format!("q = {q} is not prime")));
    }
    if q > limit {
        return Err(Error::invalid(format!("q = {q} exceeds the enumeration cap {limit}")));
    }
    let (a, b) = (a % q, b % q);
    if b == 0 {
        return Err(Error::invalid("determinant must be non-zero"));
    }
    Ok((a, b))
}

/// Counts of `GL_2(F_q)` matrices by `(trace, det)`, indexed `a q + b`.
/// Enumeration is split by first row.
pub fn gl2_table(q: u64, exec: Execution) -> Vec<u64> {
    par::sum_vectors_range(exec, q * q, (q * q) as usize, |row| {
        let (m00, m01) = (row / q, row % q);
        let mut counts = vec![0u64; (q * q) as usize];
        for m10 in 0..q {
            for m11 in 0..q {
                let det = (m00 * m11 % q + q * q - m01 * m10 % q) % q;
                if det != 0 {
                    counts[(((m00 + m11) % q) * q + det) as usize] += 1;
                }
            }
        }
        counts
    })
}

pub fn count_gl2(q: u64, a: u64, b: u64) -> Result<DensityReport> {
    count_gl2_with(Execution::default(), q, a, b, GL2_Q_LIMIT)
}

pub fn count_gl2_with(exec: Execution, q: u64, a: u64, b: u64, limit: u64) -> Result<DensityReport> {
    let (a, b) = validate(q, a, b, limit)?;
    let n = par::sum_range(exec, q * q, |row| {
        let (m00, m01) = (row / q, row % q);
        let m11 = (a + q - m00) % q;
        (0..q)
            .filter(|&m10| (m00 * m11 % q + q * q - m01 * m10 % q) % q == b)
            .count() as u64
    });
    Ok(DensityReport::new(q, a, b, n, gl2_order(q)))
}

/// `u` lies in the column space of the 2x2 matrix `m` over `F_q`.
pub fn in_column_space(m: [[u64; 2]; 2], u: [u64; 2], q: u64) -> bool {
    let cols = [[m[0][0], m[1][0]], [m[0][1], m[1][1]]];
    let det = (m[0][0] * m[1][1] % q + q * q - m[0][1] * m[1][0] % q) % q;
    if det != 0 {
        return true;
    }
    match cols.iter().find(|c| c[0] != 0 || c[1] != 0) {
        None => u == [0, 0],
        Some(c) => (c[0] * u[1] % q + q * q - c[1] * u[0] % q).is_multiple_of(q),
    }
}

pub fn count_affine(q: u64, a: u64, b: u64) -> Result<DensityReport> {
    count_affine_with(Execution::default(), q, a, b, AFFINE_Q_LIMIT)
}

/// Pairs `(J, u)` with `tr J = a`, `det J = b`, `u` outside `Im(J - I)`.
pub fn count_affine_with(exec: Execution, q: u64, a: u64, b: u64, limit: u64) -> Result<DensityReport> {
    let (a, b) = validate(q, a, b, limit)?;
    let n = par::sum_range(exec, q * q, |row| {
        let (m00, m01) = (row / q, row % q);
        let m11 = (a + q - m00) % q;
        let mut count = 0;
        for m10 in 0..q {
            if (m00 * m11 % q + q * q - m01 * m10 % q) % q != b {
                continue;
            }
            let jm = [[(m00 + q - 1) % q, m01], [m10, (m11 + q - 1) % q]];
            for u0 in 0..q {
                for u1 in 0..q {
                    if !in_column_space(jm, [u0, u1], q) {
                        count += 1;
                    }
                }
            }
        }
        count
    });
    Ok(DensityReport::new(q, a, b, n, gl2_order(q) * q * q))
}

/// The pair `J = [[a-1, -1], [0, 1]]`, `u = (1, 1)`: trace `a`, determinant
/// `a - 1`, and `Im(J - I) = {(x, 0)}`.
pub fn affine_witness(q: u64, a: u64) -> ([[u64; 2]; 2], [u64; 2]) {
    let a = a % q;
    ([[(a + q - 1) % q, q - 1], [0, 1]], [1, 1])
}

/// Frequency of good primes `p <= x` with `a_p = a`, `p = a - 1 (mod q)` and
/// `q | ord(P mod p)`, next to the exact affine density.
pub fn empirical_density(
    curve: &CurveQ,
    point: &PointQ,
    q: u64,
    a: u64,
    x: u64,
    exclude: &[u64],
) -> Result<DensityReport> {
    empirical_density_with(Execution::default(), curve, point, q, a, x, exclude)
}

pub fn empirical_density_with(
    exec: Execution,
    curve: &CurveQ,
    point: &PointQ,
    q: u64,
    a: u64,
    x: u64,
    exclude: &[u64],
) -> Result<DensityReport> {
    let a = a % q;
    let b = (a + q - 1) % q;
    let mut report = count_affine_with(exec, q, a, b, AFFINE_Q_LIMIT)?;
    let (base, _) = curve.prepare_base_point(point)?;
    let z = base.z().expect("non-torsion point is affine");
    let candidates: Vec<u64> = primes_up_to(x)
        .into_iter()
        .filter(|&p| {
            p > 2
                && p != q
                && curve.has_good_reduction(p)
                && !exclude.contains(&p)
                && !z.is_multiple_of(&BigUint::from(p))
        })
        .collect();
    let per_prime = par::map(exec, &candidates, |&p| -> Result<Option<u64>> {
        if p % q != b {
            return Ok(None);
        }
        let count = count_points(curve, p)?;
        if (count.trace.rem_euclid(q as i64)) as u64 != a {
            return Ok(None);
        }
        if count.group_order % q != 0 {
            return Err(Error::Internal(format!("q = {q} does not divide #E(F_{p})")));
        }
        let ord = point_order_fp(curve, &base, p)?;
        Ok((ord % q == 0).then_some(p))
    });
    let mut matching = Vec::new();
    for r in per_prime {
        if let Some(p) = r? {
            matching.push(p);
        }
    }
    let hits = matching.len() as u64;
    report.empirical = Some(Empirical {
        x,
        hits,
        scanned: candidates.len() as u64,
        matching_primes: matching,
        warning: (hits < SMALL_SAMPLE).then(|| format!("only {hits} matching primes; frequency is unreliable")),
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(gl2_order(3), 48);
        let r = count_gl2(3, 0, 2).unwrap();
        assert_eq!((r.numerator, r.delta_num, r.delta_den), (12, 1, 4));
        assert!(count_gl2(3, 1, 0).is_err());
        assert!(count_affine(5, 3, 2).unwrap().delta_is_positive());
    }

    #[test]
    fn witness_outside_image() {
        for q in [3u64, 5, 7, 11] {
            for a in 0..q {
                let (j, u) = affine_witness(q, a);
                assert_eq!((j[0][0] + j[1][1]) % q, a);
                let det = (j[0][0] * j[1][1] + q * q - j[0][1] * j[1][0]) % q;
                assert_eq!(det, (a + q - 1) % q);
                let jm = [[(j[0][0] + q - 1) % q, j[0][1]], [j[1][0], (j[1][1] + q - 1) % q]];
                assert!(!in_column_space(jm, u, q));
                assert!(in_column_space(jm, [1, 0], q));
            }
        }
    }

    #[test]
    fn strategies_agree() {
        for q in [3u64, 5, 7] {
            assert_eq!(gl2_table(q, Execution::Sequential), gl2_table(q, Execution::Parallel));
            for a in 0..q {
                let s = count_affine_with(Execution::Sequential, q, a, 1, 13).unwrap();
                let p = count_affine_with(Execution::Parallel, q, a, 1, 13).unwrap();
                assert_eq!(s, p);
            }
        }
    }
}
