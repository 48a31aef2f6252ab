//! Elliptic divisibility sequences, from multiples of a rational point or
//! from the bilinear (Ward) recurrences.

mod cache;
mod period;
mod zsigmondy;

pub use cache::SequenceCache;
pub use period::{
    eds_period_adaptive, eds_period_mod_p, prefix_residues, residues_mod_p, EdsPeriod, PeriodStatus,
};
pub use zsigmondy::{primitive_divisor_scan, PrimitiveReport};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::elliptic::{ln_big, CurveQ, PointQ};
use crate::error::{Error, Result};

/// Four initial values `w1..w4` with `w1 w2 w3 != 0` and `w2 | w4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WardSeed {
    #[serde(with = "crate::serde_big::ints")]
    w: Vec<BigInt>,
}

impl WardSeed {
    pub fn new(w1: BigInt, w2: BigInt, w3: BigInt, w4: BigInt) -> Result<Self> {
        if w1.is_zero() || w2.is_zero() || w3.is_zero() {
            return Err(Error::InvalidSeed("w1 w2 w3 must be non-zero".into()));
        }
        if !w4.is_multiple_of(&w2) {
            return Err(Error::InvalidSeed(format!("w2 = {w2} does not divide w4 = {w4}")));
        }
        Ok(WardSeed { w: vec![w1, w2, w3, w4] })
    }

    pub fn from_i64(w: [i64; 4]) -> Result<Self> {
        let [a, b, c, d] = w.map(BigInt::from);
        WardSeed::new(a, b, c, d)
    }

    /// `w_i` for `i = 1..=4`.
    pub fn get(&self, i: usize) -> &BigInt {
        &self.w[i - 1]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.w
    }

    /// Homogenized division values `W_n = psi_n(P) z^{n^2}` for `n = 1..=4`.
    pub fn division_values(curve: &CurveQ, point: &PointQ) -> Result<Self> {
        let (x, y, z) = point
            .coords()
            .ok_or_else(|| Error::invalid("the point at infinity has no division values"))?;
        let (a, b) = (curve.a(), curve.b());
        let z2 = z * z;
        let z4 = &z2 * &z2;
        let z6 = &z4 * &z2;
        let z8 = &z4 * &z4;
        let z10 = &z8 * &z2;
        let z12 = &z6 * &z6;
        let w1 = z.clone();
        let w2 = BigInt::from(2) * y * z;
        let w3 = z
            * (BigInt::from(3) * x.pow(4) + BigInt::from(6) * a * x * x * &z4
                + BigInt::from(12) * b * x * &z6
                - a * a * &z8);
        let w4 = BigInt::from(4)
            * y
            * z
            * (x.pow(6) + BigInt::from(5) * a * x.pow(4) * &z4 + BigInt::from(20) * b * x.pow(3) * &z6
                - BigInt::from(5) * a * a * x * x * &z8
                - BigInt::from(4) * a * b * x * &z10
                - (BigInt::from(8) * b * b + a.pow(3)) * &z12);
        WardSeed::new(w1, w2, w3, w4)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdsSource {
    Geometric { curve: CurveQ, point: PointQ },
    Ward(WardSeed),
}

/// Terms `z_1..z_N` of an elliptic divisibility sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdsSequence {
    source: EdsSource,
    terms: Vec<BigInt>,
    first_zero: Option<usize>,
}

impl EdsSequence {
    pub fn source(&self) -> &EdsSource {
        &self.source
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    /// `z_n`, 1-based.
    pub fn term(&self, n: usize) -> &BigInt {
        &self.terms[n - 1]
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// First index with `w_n = 0` (Ward sequences only; the sequence is
    /// degenerate from there on).
    pub fn first_zero(&self) -> Option<usize> {
        self.first_zero
    }

    /// The Ward seed driving this sequence mod p: the seed itself, or the
    /// division values of the point.
    pub fn ward_seed(&self) -> Result<WardSeed> {
        match &self.source {
            EdsSource::Ward(seed) => Ok(seed.clone()),
            EdsSource::Geometric { curve, point } => WardSeed::division_values(curve, point),
        }
    }

    /// `c_n = log |z_n| / n^2`; `None` for zero terms.
    pub fn growth_constants(&self) -> Vec<Option<f64>> {
        self.terms
            .iter()
            .enumerate()
            .map(|(i, z)| (!z.is_zero()).then(|| ln_big(z.magnitude()) / ((i + 1) * (i + 1)) as f64))
            .collect()
    }

    pub(crate) fn from_parts(source: EdsSource, terms: Vec<BigInt>) -> Self {
        let first_zero = terms.iter().position(Zero::is_zero).map(|i| i + 1);
        EdsSequence { source, terms, first_zero }
    }
}

/// `z_1..z_N` from exact multiples of a non-torsion point.
pub fn generate_geometric(curve: &CurveQ, point: &PointQ, n: usize) -> Result<EdsSequence> {
    if !curve.contains(point) {
        return Err(Error::NotOnCurve);
    }
    if let Some(order) = curve.torsion_order(point) {
        return Err(Error::TorsionPoint { order });
    }
    let mut terms = Vec::with_capacity(n);
    let mut acc = PointQ::Infinity;
    for _ in 0..n {
        acc = curve.add(&acc, point);
        let (_, _, z) = acc.coords().expect("non-torsion multiples are affine");
        terms.push(z.clone());
    }
    Ok(EdsSequence::from_parts(
        EdsSource::Geometric {
            curve: curve.clone(),
            point: point.clone(),
        },
        terms,
    ))
}

fn exact_div(num: BigInt, den: &BigInt, index: usize) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::InexactWardDivision { index });
    }
    Ok(q)
}

/// `w_1..w_N` from the Ward recurrences
/// `w_{2m+1} w_1^3 = w_{m+2} w_m^3 - w_{m+1}^3 w_{m-1}` and
/// `w_{2m} w_2 w_1^2 = w_{m+2} w_m w_{m-1}^2 - w_m w_{m-2} w_{m+1}^2`.
pub fn generate_ward(seed: &WardSeed, n: usize) -> Result<EdsSequence> {
    let mut w: Vec<BigInt> = Vec::with_capacity(n + 1);
    w.push(BigInt::zero());
    w.extend(seed.values().iter().take(n).cloned());
    let w1 = seed.get(1).clone();
    let odd_den = w1.pow(3);
    let even_den = seed.get(2) * &w1 * &w1;
    for idx in 5..=n {
        let m = idx / 2;
        let value = if idx % 2 == 1 {
            let num = &w[m + 2] * w[m].pow(3) - w[m + 1].pow(3) * &w[m - 1];
            exact_div(num, &odd_den, idx)?
        } else {
            let num = &w[m + 2] * &w[m] * &w[m - 1] * &w[m - 1]
                - &w[m] * &w[m - 2] * &w[m + 1] * &w[m + 1];
            exact_div(num, &even_den, idx)?
        };
        w.push(value);
    }
    w.remove(0);
    Ok(EdsSequence::from_parts(EdsSource::Ward(seed.clone()), w))
}

/// Find a Ward seed reproducing `z_{l n}` up to sign on the whole stored
/// prefix, trying the sign patterns of `z_{2l}, z_{3l}, z_{4l}`.
/// Returns the seed and the per-term signs relating it to the prefix.
pub fn ward_seed_for_stride(seq: &EdsSequence, stride: usize) -> Result<(WardSeed, Vec<i8>)> {
    if stride == 0 || seq.len() < 4 * stride {
        return Err(Error::invalid(format!(
            "need at least {} terms for stride {stride}",
            4 * stride.max(1)
        )));
    }
    let strided: Vec<BigInt> = (1..=seq.len() / stride).map(|n| seq.term(n * stride).clone()).collect();
    for mask in 0..8u8 {
        let sign = |bit: u8, v: &BigInt| if mask >> bit & 1 == 1 { -v } else { v.clone() };
        let Ok(seed) = WardSeed::new(
            strided[0].clone(),
            sign(0, &strided[1]),
            sign(1, &strided[2]),
            sign(2, &strided[3]),
        ) else {
            continue;
        };
        let Ok(gen) = generate_ward(&seed, strided.len()) else {
            continue;
        };
        if gen.terms().iter().zip(&strided).all(|(a, b)| a.abs() == b.abs()) {
            let signs = gen
                .terms()
                .iter()
                .zip(&strided)
                .map(|(a, b)| if a == b { 1 } else { -1 })
                .collect();
            return Ok((seed, signs));
        }
    }
    Err(Error::InvalidSeed(format!(
        "no sign pattern makes z_({stride} n) a Ward sequence on the stored prefix"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> (CurveQ, PointQ) {
        let e = CurveQ::from_i64(0, 3).unwrap();
        let p = e.point_i64(1, 2, 1).unwrap();
        (e, p)
    }

    #[test]
    fn geometric_first_terms() {
        let (e, p) = fixture();
        let s = generate_geometric(&e, &p, 8).unwrap();
        let expected: Vec<BigInt> = [1i64, 4, 39, 88, 64951, 10207860, 3850102481, 712815062608]
            .iter()
            .map(|&v| v.into())
            .collect();
        assert_eq!(s.terms(), &expected[..]);
        assert_eq!(s.term(2), &BigInt::from(4));
    }

    #[test]
    fn geometric_divisibility() {
        let (e, p) = fixture();
        let s = generate_geometric(&e, &p, 30).unwrap();
        for n in 1..=30 {
            for m in (1..=n).filter(|m| n % m == 0) {
                assert!(s.term(n).is_multiple_of(s.term(m)), "z_{m} | z_{n}");
            }
        }
    }

    #[test]
    fn growth_settles() {
        let (e, p) = fixture();
        let s = generate_geometric(&e, &p, 40).unwrap();
        let c: Vec<f64> = s.growth_constants().into_iter().map(Option::unwrap).collect();
        // the gap shrinks like 1/n^2 up to bounded local fluctuations
        for n in [5usize, 10, 20] {
            let gap = (c[2 * n - 1] - c[n - 1]).abs();
            assert!(gap * (n * n) as f64 <= 2.0, "n = {n}, gap = {gap}");
        }
    }

    #[test]
    fn rejects_torsion() {
        let e = CurveQ::from_i64(0, 1).unwrap();
        let p = e.point_i64(2, 3, 1).unwrap();
        assert!(matches!(generate_geometric(&e, &p, 5), Err(Error::TorsionPoint { order: 6 })));
    }

    #[test]
    fn ward_examples() {
        let s = generate_ward(&WardSeed::from_i64([1, 1, -1, 1]).unwrap(), 10).unwrap();
        assert_eq!(s.term(5), &BigInt::from(2));
        assert_eq!(s.term(6), &BigInt::from(-1));
        assert_eq!(s.first_zero(), None);
        let s = generate_ward(&WardSeed::from_i64([1, 1, 1, 1]).unwrap(), 8).unwrap();
        assert_eq!(s.term(5), &BigInt::from(0));
        assert_eq!(s.first_zero(), Some(5));
    }

    #[test]
    fn seed_validation() {
        assert!(matches!(WardSeed::from_i64([1, 2, 1, 3]), Err(Error::InvalidSeed(_))));
        assert!(matches!(WardSeed::from_i64([0, 1, 1, 1]), Err(Error::InvalidSeed(_))));
        // valid seed shape but not an EDS: w5 = (w4 w2^3 - w3^3 w1) / w1^3 with w1 = 2
        let bad = WardSeed::from_i64([2, 1, 1, 1]).unwrap();
        assert_eq!(generate_ward(&bad, 6), Err(Error::InexactWardDivision { index: 5 }));
    }

    #[test]
    fn division_values_match_geometric() {
        let (e, p) = fixture();
        let geo = generate_geometric(&e, &p, 30).unwrap();
        let seed = WardSeed::division_values(&e, &p).unwrap();
        let ward = generate_ward(&seed, 30).unwrap();
        for n in 1..=30 {
            assert_eq!(ward.term(n).abs(), *geo.term(n), "n = {n}");
        }
        let (stride_seed, signs) = ward_seed_for_stride(&geo, 1).unwrap();
        assert_eq!(signs.len(), 30);
        assert_eq!(stride_seed.get(1), &BigInt::from(1));
    }

    #[test]
    fn division_values_for_non_integral_point() {
        // 2P = (-23/16, -11/64) on y^2 = x^3 + 3 has z = 4; its EDS is z_{2n} of P
        let (e, p) = fixture();
        let q = e.double(&p);
        let geo_q = generate_geometric(&e, &q, 12).unwrap();
        let geo_p = generate_geometric(&e, &p, 24).unwrap();
        for n in 1..=12 {
            assert_eq!(geo_q.term(n), geo_p.term(2 * n));
        }
        let ward = generate_ward(&WardSeed::division_values(&e, &q).unwrap(), 12).unwrap();
        for n in 1..=12 {
            assert_eq!(ward.term(n).abs(), *geo_q.term(n), "n = {n}");
        }
    }

    #[test]
    fn stride_two_reproduces_even_terms() {
        let (e, p) = fixture();
        let geo = generate_geometric(&e, &p, 24).unwrap();
        let (seed, _) = ward_seed_for_stride(&geo, 2).unwrap();
        let ward = generate_ward(&seed, 12).unwrap();
        for n in 1..=12 {
            assert_eq!(ward.term(n).abs(), *geo.term(2 * n));
        }
    }
}
