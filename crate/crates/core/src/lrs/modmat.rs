//! Small dense matrices over `Z / mZ`.

use num_bigint::BigUint;

use crate::ntkernel::arith::mul_mod;

pub type ModMat = Vec<Vec<u64>>;

pub fn mat_mul_mod(a: &ModMat, b: &ModMat, m: u64) -> ModMat {
    let n = a.len();
    let cols = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![0u64; cols]; n];
    for i in 0..n {
        for (l, &ail) in a[i].iter().enumerate() {
            if ail == 0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] = (out[i][j] + mul_mod(ail, b[l][j], m)) % m;
            }
        }
    }
    out
}

fn identity(n: usize, m: u64) -> ModMat {
    (0..n).map(|i| (0..n).map(|j| u64::from(i == j) % m).collect()).collect()
}

pub fn mat_pow_mod(a: &ModMat, mut e: u64, m: u64) -> ModMat {
    let mut acc = identity(a.len(), m);
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul_mod(&acc, &base, m);
        }
        base = mat_mul_mod(&base, &base, m);
        e >>= 1;
    }
    acc
}

pub fn mat_pow_mod_big(a: &ModMat, e: &BigUint, m: u64) -> ModMat {
    let mut acc = identity(a.len(), m);
    for i in (0..e.bits()).rev() {
        acc = mat_mul_mod(&acc, &acc, m);
        if e.bit(i) {
            acc = mat_mul_mod(&acc, a, m);
        }
    }
    acc
}

pub fn mat_vec_mod(a: &ModMat, v: &[u64], m: u64) -> Vec<u64> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(0u64, |acc, (&x, &y)| (acc + mul_mod(x, y, m)) % m))
        .collect()
}
