//! Exact elliptic curve arithmetic over Q and over prime fields.

mod curve_q;
mod fp;

pub use curve_q::{ln_big, CurveQ, HeightEstimate, PointQ, TORSION_SEARCH_BOUND};
pub use fp::{CurveFp, PointCount, PointFp};

use crate::error::{Error, Result};

/// `#E(F_p)` and `a_p` for the reduction of `curve` at the odd prime `p`.
pub fn count_points(curve: &CurveQ, p: u64) -> Result<PointCount> {
    Ok(curve.reduce_mod(p)?.count_points())
}

/// Order of `point mod p` in `E(F_p)`; requires good reduction and `p` not
/// dividing the denominator of the point.
pub fn point_order_fp(curve: &CurveQ, point: &PointQ, p: u64) -> Result<u64> {
    let e = curve.reduce_mod(p)?;
    if !e.good_reduction() {
        return Err(Error::BadReduction { p });
    }
    e.point_order(curve.reduce_point(point, p))
}
