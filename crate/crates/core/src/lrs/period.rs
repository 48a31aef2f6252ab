//! Periods of `u_n mod p` and of the square-sampled stream `u_{n^2} mod p`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{mat_pow_mod_big, mat_vec_mod, LrsSpec};
use crate::error::{Error, Result};
use crate::ntkernel::arith::{factor_biguint, is_prime_u64, reduce};
use crate::ntkernel::{cyclotomic_poly, lcm_tower};
use crate::period::{is_verified_minimal_period, minimize_period};

/// Largest period for which residue tables are materialized.
const TABLE_LIMIT: u64 = 1 << 26;
const FACTOR_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LrsPeriod {
    pub p: u64,
    pub period: u64,
    /// `p^e lcm{p^j - 1 : j <= k}` with `p^e >= k`; the companion matrix order divides it.
    #[serde(with = "crate::serde_big::uint")]
    pub order_bound: BigUint,
    /// Whether the period was also checked on a window of two periods.
    pub window_checked: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquarePeriod {
    pub p: u64,
    /// Period of `u_n mod p`.
    pub base_period: u64,
    /// Minimal period of `u_{n^2} mod p`.
    pub period: u64,
    pub window: u64,
}

fn check(spec: &LrsSpec, p: u64) -> Result<()> {
    if !is_prime_u64(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if reduce(spec.coeffs().last().expect("k >= 1"), p) == 0 {
        return Err(Error::PrePeriodic { p });
    }
    Ok(())
}

/// Prime divisors of `p * prod_{d <= k} Phi_d(p)`, which cover the order bound.
fn bound_primes(p: u64, k: usize) -> Result<Vec<BigUint>> {
    let mut primes = vec![BigUint::from(p)];
    for d in 1..=k as u64 {
        let v = cyclotomic_poly(d).eval(&BigRational::from_integer(p.into()));
        let v = v.to_integer().magnitude().clone();
        let f = factor_biguint(&v, FACTOR_BUDGET);
        if !f.is_complete() {
            return Err(Error::Internal(format!("could not factor Phi_{d}({p})")));
        }
        primes.extend(f.factors.into_iter().map(|(q, _)| q));
    }
    primes.sort();
    primes.dedup();
    Ok(primes)
}

/// Minimal period of `u_n mod p` by shrinking the matrix-order bound.
pub fn lrs_period_mod_p(spec: &LrsSpec, p: u64) -> Result<LrsPeriod> {
    check(spec, p)?;
    let k = spec.order();
    let mut pe = BigUint::from(p);
    while pe < BigUint::from(k) {
        pe *= p;
    }
    let bound = &pe * lcm_tower(p, k as u32)?;
    let c = spec.companion_mod(p);
    let v = spec.initial_mod(p);
    let returns = |t: &BigUint| mat_vec_mod(&mat_pow_mod_big(&c, t, p), &v, p) == v;
    if !returns(&bound) {
        return Err(Error::Internal("state does not return after the order bound".into()));
    }
    let mut t = bound.clone();
    for l in bound_primes(p, k)? {
        while t.is_multiple_of(&l) && returns(&(&t / &l)) {
            t /= &l;
        }
    }
    let period = t
        .to_u64()
        .ok_or_else(|| Error::invalid(format!("period {t} does not fit in 64 bits")))?;
    let window_checked = period <= TABLE_LIMIT && {
        let s = spec.terms_mod(2 * period as usize + k, p);
        is_verified_minimal_period(&s, period as usize)
    };
    if period <= TABLE_LIMIT && !window_checked {
        return Err(Error::Internal(format!("period {period} failed the window check")));
    }
    Ok(LrsPeriod {
        p,
        period,
        order_bound: bound,
        window_checked,
    })
}

/// Period by stepping the state until it returns, giving up after `cap` steps.
pub fn lrs_period_by_iteration(spec: &LrsSpec, p: u64, cap: u64) -> Result<Option<u64>> {
    check(spec, p)?;
    let k = spec.order();
    let c: Vec<u64> = spec.coeffs().iter().map(|v| reduce(v, p)).collect();
    let start = spec.initial_mod(p);
    let mut state = start.clone();
    for t in 1..=cap {
        let next = (0..k).fold(0u128, |acc, i| (acc + c[i] as u128 * state[k - 1 - i] as u128) % p as u128);
        state.rotate_left(1);
        state[k - 1] = next as u64;
        if state == start {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Minimal period `T_u` of `u_{n^2} mod p`, refined from the base period on a
/// window of two base periods.
pub fn square_sampled_period(spec: &LrsSpec, p: u64) -> Result<SquarePeriod> {
    let base = lrs_period_mod_p(spec, p)?.period;
    if base > TABLE_LIMIT {
        return Err(Error::invalid(format!("base period {base} too large to sample")));
    }
    let table = spec.terms_mod(base as usize, p);
    let stream: Vec<u64> = (1..=2 * base)
        .map(|n| table[((n as u128 * n as u128 - 1) % base as u128) as usize])
        .collect();
    let t = minimize_period(&stream, base as usize);
    if !is_verified_minimal_period(&stream, t) {
        return Err(Error::Internal(format!("square-sampled period {t} failed the window check")));
    }
    Ok(SquarePeriod {
        p,
        base_period: base,
        period: t as u64,
        window: 2 * base,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntkernel::arith::primes_up_to;

    #[test]
    fn pisano() {
        let fib = LrsSpec::fibonacci();
        assert_eq!(lrs_period_mod_p(&fib, 5).unwrap().period, 20);
        assert_eq!(lrs_period_mod_p(&fib, 11).unwrap().period, 10);
        assert_eq!(lrs_period_by_iteration(&fib, 5, 1000).unwrap(), Some(20));
        assert_eq!(lrs_period_by_iteration(&fib, 11, 1000).unwrap(), Some(10));
        assert_eq!(lrs_period_mod_p(&fib, 2).unwrap().period, 3);
    }

    #[test]
    fn methods_agree() {
        let specs = [
            LrsSpec::fibonacci(),
            LrsSpec::from_i64(&[2, -1, 3], &[1, 0, 5]).unwrap(),
            LrsSpec::from_i64(&[0, 0, 0, 1], &[1, 2, 3, 4]).unwrap(),
            LrsSpec::from_i64(&[4, -6, 4, -1], &[1, 2, 3, 5]).unwrap(),
        ];
        for s in &specs {
            for p in primes_up_to(50) {
                let Ok(a) = lrs_period_mod_p(s, p) else { continue };
                let b = lrs_period_by_iteration(s, p, 10_000_000).unwrap().unwrap();
                assert_eq!(a.period, b, "{s} mod {p}");
                assert!(a.order_bound.is_multiple_of(&BigUint::from(a.period)));
            }
        }
    }

    #[test]
    fn pre_periodic_rejected() {
        let s = LrsSpec::from_i64(&[1, 5], &[1, 1]).unwrap();
        assert_eq!(lrs_period_mod_p(&s, 5), Err(Error::PrePeriodic { p: 5 }));
    }

    #[test]
    fn square_sampling() {
        let fib = LrsSpec::fibonacci();
        let r = square_sampled_period(&fib, 11).unwrap();
        assert_eq!(r.base_period, 10);
        assert!(r.base_period.is_multiple_of(r.period));
        // oracle: direct matrix evaluation of u_{n^2}
        let s: Vec<u64> = (1..=40u64).map(|n| fib.eval_mod(n * n, 11).unwrap()).collect();
        assert!(is_verified_minimal_period(&s, r.period as usize));
    }
}
