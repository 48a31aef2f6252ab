//! Cyclotomic polynomials and root-of-unity detection.

use super::poly::Poly;

pub fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn mobius(mut m: u64) -> i8 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// `Phi_m(x) = prod_{d | m} (x^d - 1)^{mu(m/d)}`.
pub fn cyclotomic_poly(m: u64) -> Poly {
    assert!(m >= 1);
    let mut num = Poly::one();
    let mut den = Poly::one();
    for d in (1..=m).filter(|d| m.is_multiple_of(*d)) {
        let mut coeffs = vec![0i64; d as usize + 1];
        coeffs[0] = -1;
        coeffs[d as usize] = 1;
        let factor = Poly::from_ints(&coeffs);
        match mobius(m / d) {
            1 => num = &num * &factor,
            -1 => den = &den * &factor,
            _ => {}
        }
    }
    num.exact_div(&den).expect("cyclotomic quotient is exact")
}

/// All `m` with `phi(m) <= bound`, ascending.
pub fn orders_with_phi_at_most(bound: u64) -> Vec<u64> {
    // phi(m) >= sqrt(m / 2), so m <= 2 bound^2 covers every candidate.
    let limit = 2 * bound.max(1) * bound.max(1) + 2;
    (1..=limit).filter(|&m| euler_phi(m) <= bound).collect()
}

/// Result of the cyclotomic-factor search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootOfUnityTest {
    pub has_root_of_unity: bool,
    /// Smallest order `m` with `gcd(f, Phi_m)` non-trivial.
    pub order: Option<u64>,
    /// Every such order within the bound.
    pub all_orders: Vec<u64>,
}

/// Decide whether `f` has a root that is an `m`-th root of unity for some
/// `m` with `phi(m) <= bound`.
pub fn cyclotomic_root_of_unity_test(f: &Poly, bound: u64) -> RootOfUnityTest {
    assert!(!f.is_zero(), "zero polynomial");
    let all_orders: Vec<u64> = if f.degree() == Some(0) {
        Vec::new()
    } else {
        orders_with_phi_at_most(bound)
            .into_iter()
            .filter(|&m| f.gcd(&cyclotomic_poly(m)).degree().unwrap_or(0) > 0)
            .collect()
    };
    RootOfUnityTest {
        has_root_of_unity: !all_orders.is_empty(),
        order: all_orders.first().copied(),
        all_orders,
    }
}

/// Safe search bound for root ratios of an order-`k` recurrence: each ratio
/// has degree at most `k^2`, so `phi(m) <= k^2` suffices.
pub fn ratio_bound(k: usize) -> u64 {
    (k * k) as u64
}
