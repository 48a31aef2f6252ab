use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ntkernel::arith::factor_biguint;
use crate::ntkernel::linalg::{kernel, primitive_integer_vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointVerdict {
    /// Basis of `ker(A - I)`.
    pub basis: Vec<Vec<BigRational>>,
    /// Pairs `(i, j)` with `v_i = v_j` for every basis vector, hence for every
    /// eigenvector.
    pub colliding_pairs: Vec<(usize, usize)>,
}

impl FixedPointVerdict {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// No eigenvector for eigenvalue 1 has pairwise-distinct coordinates.
    /// A subspace inside a finite union of hyperplanes `x_i = x_j` lies in one
    /// of them, so a common pair is necessary and sufficient.
    pub fn every_eigenvector_collides(&self) -> bool {
        self.basis.is_empty() || !self.colliding_pairs.is_empty()
    }
}

/// Requires a non-negative matrix with unit row sums where each row's support
/// avoids the diagonal or has at least three entries.
pub fn fixed_point_collision(a: &[Vec<BigRational>]) -> Result<FixedPointVerdict> {
    let n = a.len();
    if n == 0 {
        return Err(Error::invalid("empty matrix"));
    }
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(Error::invalid(format!("row {i} has {} entries, expected {n}", row.len())));
        }
        if row.iter().any(Signed::is_negative) {
            return Err(Error::invalid(format!("row {i} has a negative entry")));
        }
        if row.iter().sum::<BigRational>() != BigRational::one() {
            return Err(Error::invalid(format!("row {i} does not sum to 1")));
        }
        let support = row.iter().filter(|x| !x.is_zero()).count();
        if !row[i].is_zero() && support < 3 {
            return Err(Error::invalid(format!(
                "row {i} has the diagonal in a support of size {support} < 3"
            )));
        }
    }
    let shifted: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r[i] -= BigRational::one();
            r
        })
        .collect();
    let basis = kernel(&shifted, n);
    let colliding_pairs = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| basis.iter().all(|v| v[i] == v[j]))
        .collect();
    Ok(FixedPointVerdict { basis, colliding_pairs })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Independence {
    Independent,
    /// `prod v_i^{e_i} = 1`.
    Dependent { relation: Vec<String> },
    /// Value at this position could not be factored within the budget.
    Inconclusive { index: usize },
}

fn factor_exponents(v: &BigUint, budget: u64) -> Option<Vec<(BigUint, i64)>> {
    let f = factor_biguint(v, budget);
    f.is_complete()
        .then(|| f.factors.into_iter().map(|(p, e)| (p, e as i64)).collect())
}

/// Decide whether non-zero rationals satisfy `prod v_i^{e_i} = 1` with
/// integers `e` not all zero.
pub fn multiplicative_independence_check(values: &[BigRational], budget: u64) -> Result<Independence> {
    let mut primes: Vec<BigUint> = Vec::new();
    let mut columns: Vec<Vec<(BigUint, i64)>> = Vec::new();
    for (i, v) in values.iter().enumerate() {
        if v.is_zero() {
            return Err(Error::invalid(format!("value {i} is zero")));
        }
        let (Some(num), Some(den)) = (
            factor_exponents(v.numer().magnitude(), budget),
            factor_exponents(v.denom().magnitude(), budget),
        ) else {
            return Ok(Independence::Inconclusive { index: i });
        };
        let col: Vec<(BigUint, i64)> = num.into_iter().chain(den.into_iter().map(|(p, e)| (p, -e))).collect();
        primes.extend(col.iter().map(|(p, _)| p.clone()));
        columns.push(col);
    }
    primes.sort();
    primes.dedup();
    let matrix: Vec<Vec<BigRational>> = primes
        .iter()
        .map(|p| {
            columns
                .iter()
                .map(|col| {
                    let e: i64 = col.iter().filter(|(q, _)| q == p).map(|(_, e)| e).sum();
                    BigRational::from_integer(e.into())
                })
                .collect()
        })
        .collect();
    let Some(rel) = kernel(&matrix, values.len()).into_iter().next() else {
        return Ok(Independence::Independent);
    };
    let mut rel = primitive_integer_vector(&rel);
    // the relation fixes |prod| = 1; doubling removes a sign of -1
    let negative = values
        .iter()
        .zip(&rel)
        .filter(|(v, e)| v.is_negative() && e.is_odd())
        .count()
        % 2
        == 1;
    if negative {
        rel.iter_mut().for_each(|e| *e *= 2);
    }
    Ok(Independence::Dependent {
        relation: rel.iter().map(BigInt::to_string).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn uniform_rows() {
        let a = vec![vec![r(1, 3); 3]; 3];
        let v = fixed_point_collision(&a).unwrap();
        assert_eq!(v.dimension(), 1);
        assert_eq!(v.colliding_pairs.len(), 3);
        assert!(v.every_eigenvector_collides());
    }

    #[test]
    fn block_diagonal() {
        let mut a = vec![vec![r(0, 1); 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                if i / 3 == j / 3 {
                    a[i][j] = r(1, 3);
                }
            }
        }
        let v = fixed_point_collision(&a).unwrap();
        assert_eq!(v.dimension(), 2);
        assert!(v.colliding_pairs.contains(&(0, 1)));
        assert!(v.colliding_pairs.contains(&(3, 5)));
        assert!(!v.colliding_pairs.contains(&(0, 3)));
        assert!(v.every_eigenvector_collides());
    }

    #[test]
    fn preconditions() {
        assert!(fixed_point_collision(&[vec![r(1, 2), r(1, 2)], vec![r(1, 2), r(1, 2)]]).is_err());
        assert!(fixed_point_collision(&[vec![r(1, 1), r(1, 1)], vec![r(1, 1), r(0, 1)]]).is_err());
        // permutation: support avoids the diagonal
        let v = fixed_point_collision(&[vec![r(0, 1), r(1, 1)], vec![r(1, 1), r(0, 1)]]).unwrap();
        assert_eq!(v.colliding_pairs, vec![(0, 1)]);
    }

    #[test]
    fn independence() {
        let ints = |v: &[i64]| v.iter().map(|&x| r(x, 1)).collect::<Vec<_>>();
        assert_eq!(multiplicative_independence_check(&ints(&[2, 3]), 1000).unwrap(), Independence::Independent);
        assert_eq!(
            multiplicative_independence_check(&ints(&[2, 4]), 1000).unwrap(),
            Independence::Dependent { relation: vec!["2".into(), "-1".into()] }
        );
        assert_eq!(multiplicative_independence_check(&ints(&[6, 10, 15]), 1000).unwrap(), Independence::Independent);
        assert_eq!(
            multiplicative_independence_check(&ints(&[-2, 2]), 1000).unwrap(),
            Independence::Dependent { relation: vec!["2".into(), "-2".into()] }
        );
        assert_eq!(
            multiplicative_independence_check(&[r(2, 3), r(9, 4)], 1000).unwrap(),
            Independence::Dependent { relation: vec!["2".into(), "1".into()] }
        );
        assert!(multiplicative_independence_check(&ints(&[0]), 1000).is_err());
    }
}
