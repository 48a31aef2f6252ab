//! Minimal recurrences over Q (Berlekamp-Massey) and decimation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::LrsSpec;
use crate::error::{Error, Result};
use crate::ntkernel::linalg::{charpoly, int_mat_pow};

pub const DEFAULT_FIT_BOUND: usize = 12;

/// Shortest `c_1..c_L` over Q with `s_n = sum c_i s_{n-i}` for every `n >= L`
/// in the slice.
pub fn berlekamp_massey(s: &[BigRational]) -> Vec<BigRational> {
    let zero = BigRational::zero();
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut last_d = BigRational::one();
    for n in 0..s.len() {
        let mut d = s[n].clone();
        for i in 1..=l.min(c.len() - 1) {
            d += &c[i] * &s[n - i];
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let factor = &d / &last_d;
        let prev = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, zero.clone());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] -= &factor * bi;
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            last_d = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(l + 1, zero);
    c.into_iter().skip(1).map(|x| -x).collect()
}

/// Minimal integer recurrence of order `<= bound` reproducing every term.
///
/// The first `2 bound` terms determine the candidate; the rest verify it.
/// The all-zero sequence maps to `u_{n+1} = u_n`, `u_1 = 0`.
pub fn fit_minimal_recurrence(terms: &[BigInt], bound: usize) -> Result<LrsSpec> {
    let needed = 2 * bound.max(1);
    if terms.len() < needed {
        return Err(Error::InsufficientTerms {
            needed,
            got: terms.len(),
        });
    }
    if terms.iter().all(Zero::is_zero) {
        return LrsSpec::from_i64(&[1], &[0]);
    }
    let window: Vec<BigRational> = terms[..needed].iter().cloned().map(BigRational::from).collect();
    let c = berlekamp_massey(&window);
    let l = c.len();
    if l == 0 || l > bound {
        return Err(Error::NoFit { bound });
    }
    let verifies = (l..terms.len()).all(|n| {
        let rhs: BigRational = (0..l).map(|i| &c[i] * BigRational::from(terms[n - 1 - i].clone())).sum();
        rhs == BigRational::from(terms[n].clone())
    });
    if !verifies {
        return Err(Error::NoFit { bound });
    }
    if c.iter().any(|x| !x.is_integer()) {
        let shown: Vec<String> = c.iter().map(ToString::to_string).collect();
        return Err(Error::FatouViolation {
            order: l,
            coeffs: shown.join(", "),
        });
    }
    if c[l - 1].is_zero() {
        return Err(Error::ZeroTrailingCoefficient { order: l });
    }
    LrsSpec::new(c.iter().map(|x| x.to_integer()).collect(), terms[..l].to_vec())
}

/// Recurrence for `n -> u_{M n}`: the characteristic polynomial of `C^M`
/// started at `u_M..u_{kM}`, then re-minimized.
pub fn decimate(spec: &LrsSpec, m: u64) -> Result<LrsSpec> {
    if m == 0 {
        return Err(Error::invalid("decimation factor must be positive"));
    }
    if m == 1 {
        return Ok(spec.clone());
    }
    let k = spec.order();
    let cm = int_mat_pow(&spec.companion(), m);
    let chi = charpoly(&cm);
    let coeffs: Vec<BigInt> = (1..=k).map(|i| -&chi[k - i]).collect();
    let step = usize::try_from(m).map_err(|_| Error::invalid("decimation factor too large"))?;
    let all = spec.terms(k * step);
    let initial: Vec<BigInt> = (1..=k).map(|i| all[i * step - 1].clone()).collect();
    let full = LrsSpec::new(coeffs, initial)?;
    fit_minimal_recurrence(&full.terms(2 * k + 4), k)
}
