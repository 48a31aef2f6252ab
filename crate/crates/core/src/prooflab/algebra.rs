use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ntkernel::arith::{is_prime_u64, mul_mod, pow_mod};
use crate::ntkernel::linalg::det_mod;
use crate::ntkernel::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    pub p: Poly,
    pub alpha: BigRational,
    pub q: Poly,
    pub degree: usize,
    pub leading: BigRational,
    pub predicted_degree: usize,
    pub predicted_leading: BigRational,
}

impl QExpansion {
    pub fn matches(&self) -> bool {
        self.degree == self.predicted_degree && self.leading == self.predicted_leading
    }
}

/// `Q(X) = P((2X+1)^2) - alpha^3 (P((X+2)^2) P(X^2)^3 - P((X-1)^2) P((X+1)^2)^3)`,
/// expanded exactly, next to the predicted degree `8d - 3` and leading
/// coefficient `-4 d a0^4 alpha^3` (`Q = a0` when `d = 0`).
pub fn expand_q(p: &Poly, alpha: &BigRational) -> Result<QExpansion> {
    let d = p
        .degree()
        .ok_or_else(|| Error::invalid("P must be non-zero"))?;
    let sq = |shift: i64, scale: i64| Poly::from_ints(&[shift, scale]).pow(2);
    let at = |arg: &Poly| p.compose(arg);
    let alpha3 = alpha * alpha * alpha;
    let inner = &(&at(&sq(2, 1)) * &at(&sq(0, 1)).pow(3)) - &(&at(&sq(-1, 1)) * &at(&sq(1, 1)).pow(3));
    let q = &at(&sq(1, 2)) - &inner.scale(&alpha3);
    let a0 = p.leading();
    let (predicted_degree, predicted_leading) = if d == 0 {
        (0, a0.clone())
    } else {
        let four_d = BigRational::from_integer((4 * d as i64).into());
        (8 * d - 3, -(four_d * a0.pow(4) * &alpha3))
    };
    Ok(QExpansion {
        p: p.clone(),
        alpha: alpha.clone(),
        degree: q.degree().unwrap_or(0),
        leading: if q.is_zero() { BigRational::zero() } else { q.leading() },
        q,
        predicted_degree,
        predicted_leading,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetIdentity {
    pub q: u64,
    pub betas: Vec<u64>,
    /// `det[beta_j^u - 1]`, rows `u = 1..t`, over `F_q`.
    pub det: u64,
    /// `prod (beta_i - 1) prod_{i<j} (beta_i - beta_j)` over `F_q`.
    pub product: u64,
    /// `det = sign * product`; 0 when both vanish.
    pub sign: i8,
    pub holds: bool,
}

pub fn det_beta_identity(q: u64, betas: &[u64]) -> Result<DetIdentity> {
    if !is_prime_u64(q) {
        return Err(Error::invalid(format!("q = {q} is not prime")));
    }
    if betas.is_empty() {
        return Err(Error::invalid("need at least one beta"));
    }
    let b: Vec<u64> = betas.iter().map(|x| x % q).collect();
    let t = b.len();
    let matrix: Vec<Vec<u64>> = (1..=t as u64)
        .map(|u| b.iter().map(|&x| (pow_mod(x, u, q) + q - 1) % q).collect())
        .collect();
    let det = det_mod(&matrix, q);
    let mut product = 1u64;
    for i in 0..t {
        product = mul_mod(product, (b[i] + q - 1) % q, q);
        for j in i + 1..t {
            product = mul_mod(product, (b[i] + q - b[j]) % q, q);
        }
    }
    let neg = (q - product) % q;
    let sign = if det == 0 && product == 0 {
        0
    } else if det == product {
        1
    } else if det == neg {
        -1
    } else {
        0
    };
    Ok(DetIdentity {
        q,
        betas: b,
        det,
        product,
        sign,
        holds: det == product || det == neg,
    })
}
