//! Degeneracy: some ratio of distinct characteristic roots is a root of unity.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::{decimate, LrsSpec};
use crate::error::{Error, Result};
use crate::ntkernel::{cyclotomic_root_of_unity_test, ratio_bound, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyReport {
    pub degenerate: bool,
    /// Smallest root-of-unity order among ratios `alpha_i / alpha_j`, `i != j`.
    pub witness_order: Option<u64>,
    pub orders: Vec<u64>,
    /// Polynomial whose roots are the ratios of distinct roots.
    pub ratio_poly: Poly,
}

/// `Res_y(S(y), S(x y)) / (x - 1)^s` for the squarefree part `S` of the
/// characteristic polynomial, `s = deg S`. Its roots are the `alpha_j / alpha_i`
/// with `alpha_i != alpha_j`.
pub fn ratio_polynomial(spec: &LrsSpec) -> Poly {
    let s_poly = spec.char_poly().squarefree_part();
    let s = s_poly.degree().expect("non-zero");
    let points: Vec<(BigRational, BigRational)> = (2..=(s * s + 2) as i64)
        .map(|x0| {
            let x = BigRational::from_integer(x0.into());
            let mut scale = BigRational::one();
            let scaled: Vec<BigRational> = s_poly
                .coeffs()
                .iter()
                .map(|c| {
                    let v = c * &scale;
                    scale *= &x;
                    v
                })
                .collect();
            (x, s_poly.resultant(&Poly::from_coeffs(scaled)))
        })
        .collect();
    let r = Poly::interpolate(&points);
    let trivial = Poly::from_ints(&[-1, 1]).pow(s as u32);
    r.exact_div(&trivial).expect("each root is its own ratio exactly once")
}

/// Exact degeneracy test through cyclotomic factors of the ratio polynomial.
/// Order-1 recurrences have a single root and are never degenerate.
pub fn is_degenerate(spec: &LrsSpec) -> DegeneracyReport {
    let ratio_poly = ratio_polynomial(spec);
    if ratio_poly.degree() == Some(0) {
        return DegeneracyReport {
            degenerate: false,
            witness_order: None,
            orders: Vec::new(),
            ratio_poly,
        };
    }
    let t = cyclotomic_root_of_unity_test(&ratio_poly, ratio_bound(spec.order()));
    DegeneracyReport {
        degenerate: t.has_root_of_unity,
        witness_order: t.order,
        orders: t.all_orders,
        ratio_poly,
    }
}

/// `M` = lcm of the witness orders and the recurrence for `u_{M^2 n}`.
pub fn nondegenerate_reduction(spec: &LrsSpec) -> Result<(u64, LrsSpec)> {
    let report = is_degenerate(spec);
    if !report.degenerate {
        return Ok((1, spec.clone()));
    }
    let m = report.orders.iter().fold(1u64, |acc, &o| acc.lcm(&o));
    let reduced = decimate(spec, m * m)?;
    if reduced.order() > 1 && is_degenerate(&reduced).degenerate {
        return Err(Error::Internal(format!("decimation by {m}^2 left a degenerate recurrence")));
    }
    Ok((m, reduced))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures() {
        let alt = LrsSpec::from_i64(&[0, 1], &[0, 2]).unwrap();
        let r = is_degenerate(&alt);
        assert!(r.degenerate);
        assert_eq!(r.witness_order, Some(2));
        assert!(!is_degenerate(&LrsSpec::fibonacci()).degenerate);
        let gauss = LrsSpec::from_i64(&[2, -2], &[1, 3]).unwrap();
        let r = is_degenerate(&gauss);
        assert!(r.degenerate);
        assert_eq!(r.witness_order, Some(4));
    }

    #[test]
    fn ratio_poly_of_fibonacci() {
        // ratios -phi^2 and -phi^-2: x^2 + 3x + 1 up to scaling
        let r = ratio_polynomial(&LrsSpec::fibonacci());
        assert_eq!(r.monic(), Poly::from_ints(&[1, 3, 1]));
    }

    #[test]
    fn repeated_roots_are_not_ratios() {
        // (x - 2)^2: u_n = n 2^n
        let s = LrsSpec::from_i64(&[4, -4], &[2, 8]).unwrap();
        assert!(!is_degenerate(&s).degenerate);
        // (x - 1)^2 (x + 1)
        let s = LrsSpec::from_i64(&[1, 1, -1], &[1, 2, 3]).unwrap();
        assert_eq!(is_degenerate(&s).witness_order, Some(2));
    }

    #[test]
    fn reductions() {
        let (m, s) = nondegenerate_reduction(&LrsSpec::fibonacci()).unwrap();
        assert_eq!((m, s), (1, LrsSpec::fibonacci()));
        let (m, s) = nondegenerate_reduction(&LrsSpec::from_i64(&[0, 1], &[0, 2]).unwrap()).unwrap();
        assert_eq!(m, 2);
        assert_eq!(s, LrsSpec::from_i64(&[1], &[2]).unwrap());
        // third roots of unity times 2: x^2 + 2x + 4
        let (m, s) = nondegenerate_reduction(&LrsSpec::from_i64(&[-2, -4], &[1, 1]).unwrap()).unwrap();
        assert_eq!(m, 3);
        assert!(!is_degenerate(&s).degenerate);
    }
}
