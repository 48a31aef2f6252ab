//! Integer linear recurrence sequences.

mod degenerate;
mod fit;
mod modmat;
mod period;

pub use degenerate::{is_degenerate, nondegenerate_reduction, ratio_polynomial, DegeneracyReport};
pub use fit::{berlekamp_massey, decimate, fit_minimal_recurrence, DEFAULT_FIT_BOUND};
pub use modmat::{mat_mul_mod, mat_pow_mod, mat_pow_mod_big, mat_vec_mod, ModMat};
pub use period::{
    lrs_period_by_iteration, lrs_period_mod_p, square_sampled_period, LrsPeriod, SquarePeriod,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::elliptic::ln_big;
use crate::error::{Error, Result};
use crate::ntkernel::arith::reduce;
use crate::ntkernel::linalg::{int_mat_pow, IntMatrix};
use crate::ntkernel::Poly;

/// `u_{n+k} = c_1 u_{n+k-1} + ... + c_k u_n` with `c_k != 0`, started at `u_1..u_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LrsSpec {
    #[serde(with = "crate::serde_big::ints")]
    coeffs: Vec<BigInt>,
    #[serde(with = "crate::serde_big::ints")]
    initial: Vec<BigInt>,
}

impl LrsSpec {
    pub fn new(coeffs: Vec<BigInt>, initial: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("order must be at least 1"));
        }
        if coeffs.len() != initial.len() {
            return Err(Error::invalid(format!(
                "{} coefficients but {} initial terms",
                coeffs.len(),
                initial.len()
            )));
        }
        if coeffs.last().is_some_and(Zero::is_zero) {
            return Err(Error::invalid("last coefficient c_k must be non-zero"));
        }
        Ok(LrsSpec { coeffs, initial })
    }

    pub fn from_i64(coeffs: &[i64], initial: &[i64]) -> Result<Self> {
        LrsSpec::new(
            coeffs.iter().map(|&c| c.into()).collect(),
            initial.iter().map(|&u| u.into()).collect(),
        )
    }

    pub fn fibonacci() -> Self {
        LrsSpec::from_i64(&[1, 1], &[1, 1]).expect("valid")
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `c_1..c_k`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `u_1..u_k`.
    pub fn initial(&self) -> &[BigInt] {
        &self.initial
    }

    /// `x^k - c_1 x^{k-1} - ... - c_k`.
    pub fn char_poly(&self) -> Poly {
        let mut c: Vec<BigInt> = self.coeffs.iter().rev().map(|c| -c).collect();
        c.push(BigInt::one());
        Poly::from_bigints(&c)
    }

    /// `u_1..u_n`.
    pub fn terms(&self, n: usize) -> Vec<BigInt> {
        let k = self.order();
        let mut out: Vec<BigInt> = self.initial.iter().take(n).cloned().collect();
        while out.len() < n {
            let len = out.len();
            let next = self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * &out[len - 1 - i])
                .sum();
            out.push(next);
        }
        debug_assert!(n < k || out.len() == n);
        out
    }

    /// `u_n` by iteration.
    pub fn eval_exact(&self, n: usize) -> Result<BigInt> {
        if n == 0 {
            return Err(Error::invalid("indices start at 1"));
        }
        Ok(self.terms(n).pop().expect("n >= 1"))
    }

    /// Companion matrix acting on the column `(u_n, ..., u_{n+k-1})`.
    pub fn companion(&self) -> IntMatrix {
        let k = self.order();
        let mut m = vec![vec![BigInt::zero(); k]; k];
        for (i, row) in m.iter_mut().enumerate().take(k - 1) {
            row[i + 1] = BigInt::one();
        }
        for (j, c) in self.coeffs.iter().enumerate() {
            m[k - 1][k - 1 - j] = c.clone();
        }
        m
    }

    /// `u_n` as the first entry of `C^{n-1} (u_1, ..., u_k)`.
    pub fn eval_matrix(&self, n: u64) -> Result<BigInt> {
        if n == 0 {
            return Err(Error::invalid("indices start at 1"));
        }
        let c = int_mat_pow(&self.companion(), n - 1);
        Ok(c[0].iter().zip(&self.initial).map(|(a, u)| a * u).sum())
    }

    pub fn companion_mod(&self, p: u64) -> ModMat {
        self.companion()
            .iter()
            .map(|row| row.iter().map(|v| reduce(v, p)).collect())
            .collect()
    }

    pub fn initial_mod(&self, p: u64) -> Vec<u64> {
        self.initial.iter().map(|v| reduce(v, p)).collect()
    }

    /// `u_n mod m` by companion-matrix exponentiation.
    pub fn eval_mod(&self, n: u64, m: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::invalid("indices start at 1"));
        }
        if m == 0 {
            return Err(Error::invalid("modulus must be positive"));
        }
        let c = mat_pow_mod(&self.companion_mod(m), n - 1, m);
        Ok(mat_vec_mod(&c, &self.initial_mod(m), m)[0])
    }

    /// `u_1..u_n mod m` by iteration.
    pub fn terms_mod(&self, n: usize, m: u64) -> Vec<u64> {
        let k = self.order();
        let c: Vec<u64> = self.coeffs.iter().map(|v| reduce(v, m)).collect();
        let mut out: Vec<u64> = self.initial_mod(m).into_iter().take(n).collect();
        while out.len() < n {
            let len = out.len();
            let next = (0..k).fold(0u128, |acc, i| {
                (acc + c[i] as u128 * out[len - 1 - i] as u128) % m as u128
            });
            out.push(next as u64);
        }
        out
    }

    /// No recurrence of smaller order produces the same sequence.
    pub fn is_minimal(&self) -> bool {
        let k = self.order();
        let terms: Vec<_> = self.terms(2 * k).into_iter().map(num_rational::BigRational::from).collect();
        berlekamp_massey(&terms).len() == k
    }

    /// `log |u_n| / n` for `n = 1..=count` (`None` where `u_n = 0`).
    pub fn growth_rates(&self, count: usize) -> Vec<Option<f64>> {
        self.terms(count)
            .iter()
            .enumerate()
            .map(|(i, u)| (!u.is_zero()).then(|| ln_big(u.magnitude()) / (i + 1) as f64))
            .collect()
    }
}

impl fmt::Display for LrsSpec {
    /// `lrs k c1..ck u1..uk`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lrs {}", self.order())?;
        for v in self.coeffs.iter().chain(&self.initial) {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

impl FromStr for LrsSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut it = s.split_whitespace();
        if it.next() != Some("lrs") {
            return Err(Error::Parse("expected `lrs k c1..ck u1..uk`".into()));
        }
        let k: usize = it
            .next()
            .ok_or_else(|| Error::Parse("missing order".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("order: {e}")))?;
        let vals: Vec<BigInt> = it
            .map(|t| t.parse::<BigInt>().map_err(|e| Error::Parse(format!("`{t}`: {e}"))))
            .collect::<Result<_>>()?;
        if vals.len() != 2 * k {
            return Err(Error::Parse(format!("expected {} integers after the order, got {}", 2 * k, vals.len())));
        }
        let (c, u) = vals.split_at(k);
        LrsSpec::new(c.to_vec(), u.to_vec())
    }
}

/// One integer per line; blank lines and `#` comments are skipped.
pub fn parse_terms(text: &str) -> Result<Vec<BigInt>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.parse::<BigInt>().map_err(|e| Error::Parse(format!("`{l}`: {e}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_examples() {
        let fib = LrsSpec::fibonacci();
        assert_eq!(fib.eval_exact(10).unwrap(), BigInt::from(55));
        let geo = LrsSpec::from_i64(&[2], &[3]).unwrap();
        assert_eq!(geo.eval_exact(5).unwrap(), BigInt::from(48));
        for n in 1..=200u64 {
            assert_eq!(fib.eval_matrix(n).unwrap(), fib.eval_exact(n as usize).unwrap());
        }
    }

    #[test]
    fn mod_evaluation() {
        let fib = LrsSpec::fibonacci();
        let exact = fib.terms(500);
        for p in [2u64, 5, 11, 101] {
            for (n, u) in exact.iter().enumerate() {
                assert_eq!(fib.eval_mod(n as u64 + 1, p).unwrap(), reduce(u, p));
            }
            assert_eq!(
                fib.terms_mod(500, p),
                exact.iter().map(|u| reduce(u, p)).collect::<Vec<_>>()
            );
        }
        // Pisano period 20: u_{10^6} = u_20 = 6765 = 0 mod 5
        assert_eq!(fib.eval_mod(1_000_000, 5).unwrap(), fib.eval_mod(20, 5).unwrap());
        assert_eq!(fib.eval_mod(1_000_000, 5).unwrap(), 0);
    }

    #[test]
    fn text_format() {
        let s: LrsSpec = "lrs 2 1 1 1 1".parse().unwrap();
        assert_eq!(s, LrsSpec::fibonacci());
        assert_eq!(s.to_string(), "lrs 2 1 1 1 1");
        assert!("lrs 2 1 0 1 1".parse::<LrsSpec>().is_err());
        assert!("lrs 2 1 1 1".parse::<LrsSpec>().is_err());
        assert!("rec 1 1 1".parse::<LrsSpec>().is_err());
        assert_eq!(parse_terms("1\n\n# c\n-2\n").unwrap(), vec![BigInt::from(1), BigInt::from(-2)]);
    }

    #[test]
    fn char_poly_and_minimality() {
        assert_eq!(LrsSpec::fibonacci().char_poly(), Poly::from_ints(&[-1, -1, 1]));
        assert!(LrsSpec::fibonacci().is_minimal());
        // 2^n written with (x-2)(x-3)
        assert!(!LrsSpec::from_i64(&[5, -6], &[2, 4]).unwrap().is_minimal());
    }

    #[test]
    fn growth_tends_to_log_golden_ratio() {
        let g = LrsSpec::fibonacci().growth_rates(400);
        let last = g[399].unwrap();
        assert!((last - 1.618_033_988_749_895f64.ln()).abs() < 5e-3);
    }
}
