//! Exact dense linear algebra over Q and Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type RatMatrix = Vec<Vec<BigRational>>;
pub type IntMatrix = Vec<Vec<BigInt>>;

/// Basis of the right kernel `{v : A v = 0}` of an `rows x cols` matrix.
pub fn kernel(a: &RatMatrix, cols: usize) -> Vec<Vec<BigRational>> {
    let mut m: RatMatrix = a.to_vec();
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Scale a rational vector to a primitive integer vector whose first
/// non-zero entry is positive.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = if ints.iter().find(|x| !x.is_zero()).unwrap().is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

pub fn int_mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = b[0].len();
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..inner).map(|l| &a[i][l] * &b[l][j]).sum())
                .collect()
        })
        .collect()
}

pub fn int_identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn int_mat_pow(a: &IntMatrix, mut e: u64) -> IntMatrix {
    let mut base = a.clone();
    let mut acc = int_identity(a.len());
    while e > 0 {
        if e & 1 == 1 {
            acc = int_mat_mul(&acc, &base);
        }
        base = int_mat_mul(&base, &base);
        e >>= 1;
    }
    acc
}

/// Characteristic polynomial `det(x I - A)` by Faddeev-LeVerrier; returns
/// ascending integer coefficients (monic, length `n + 1`).
pub fn charpoly(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = int_mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = int_mat_mul(a, &m);
        let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let (q, r) = (-trace).div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        coeffs[n - k] = q;
    }
    coeffs
}

/// Determinant over a prime field `F_q` by Gaussian elimination.
pub fn det_mod(a: &[Vec<u64>], q: u64) -> u64 {
    use super::arith::{inv_mod, mul_mod};
    let n = a.len();
    let mut m: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|x| x % q).collect()).collect();
    let mut det = 1u64;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| m[i][c] != 0) else {
            return 0;
        };
        if pr != c {
            m.swap(pr, c);
            det = (q - det) % q;
        }
        det = mul_mod(det, m[c][c], q);
        let inv = inv_mod(m[c][c], q).expect("prime field");
        for i in c + 1..n {
            let f = mul_mod(m[i][c], inv, q);
            if f == 0 {
                continue;
            }
            for j in c..n {
                let sub = mul_mod(f, m[c][j], q);
                m[i][j] = (m[i][j] + q - sub) % q;
            }
        }
    }
    det
}

/// Exact integer determinant by Bareiss fraction-free elimination.
pub fn det_int(a: &IntMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(pr) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, pr);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn ints(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)]];
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &a {
                let dot: BigRational = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn charpoly_of_companion() {
        // Fibonacci companion [[0,1],[1,1]]: x^2 - x - 1
        let c = ints(&[&[0, 1], &[1, 1]]);
        assert_eq!(charpoly(&c), vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]);
        let c2 = int_mat_pow(&c, 2);
        assert_eq!(charpoly(&c2), vec![BigInt::from(1), BigInt::from(-3), BigInt::from(1)]);
    }

    #[test]
    fn determinants_agree() {
        let a = ints(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        let d = det_int(&a);
        assert_eq!(d, BigInt::from(-2 * 26 + (-2)));
        let am: Vec<Vec<u64>> = a
            .iter()
            .map(|r| r.iter().map(|x| super::super::arith::reduce(x, 11)).collect())
            .collect();
        assert_eq!(det_mod(&am, 11), super::super::arith::reduce(&d, 11));
    }

    #[test]
    fn primitive_vector() {
        let v = vec![r(0), BigRational::new((-2).into(), 3.into()), r(4)];
        assert_eq!(primitive_integer_vector(&v), vec![BigInt::from(0), BigInt::from(1), BigInt::from(-6)]);
    }
}
