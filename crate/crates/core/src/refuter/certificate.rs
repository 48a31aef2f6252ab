//! Certificate data and the canonical JSON form.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::elliptic::{CurveQ, PointQ};
use crate::error::{Error, Result};
use crate::lrs::LrsSpec;
use crate::ntkernel::arith::next_prime;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    #[serde(with = "crate::serde_big::int")]
    pub x: BigInt,
    #[serde(with = "crate::serde_big::int")]
    pub y: BigInt,
    #[serde(with = "crate::serde_big::int")]
    pub z: BigInt,
}

impl PointRecord {
    pub fn from_point(p: &PointQ) -> Self {
        let (x, y, z) = p.coords().expect("affine point");
        PointRecord {
            x: x.clone(),
            y: y.clone(),
            z: z.clone(),
        }
    }

    pub fn to_point(&self, curve: &CurveQ) -> Result<PointQ> {
        curve.point(self.x.clone(), self.y.clone(), self.z.clone())
    }
}

/// Everything needed to re-check a witness prime from scratch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub schema_version: u32,
    pub curve: CurveQ,
    pub point: PointRecord,
    pub lrs: LrsSpec,
    pub a: u64,
    pub q: u64,
    pub p: u64,
    pub a_p: i64,
    pub group_order: u64,
    pub ord_p: u64,
    pub t_z: u64,
    pub t_z_window: u64,
    pub t_u: u64,
    pub t_u_window: u64,
    pub q_divides_tz: bool,
    pub q_divides_tu: bool,
    pub mismatch_indices: Vec<u64>,
}

impl WitnessCertificate {
    /// Pretty JSON with keys sorted at every level.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("certificate serializes");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("certificate: {e}")))
    }
}

/// Twelve single-field tamperings of a certificate, each of which a sound
/// verifier must reject. `agreeing_index` is an index with `z_n = +-u_{n^2}`.
pub fn single_field_mutations(cert: &WitnessCertificate, agreeing_index: u64) -> Vec<(&'static str, WitnessCertificate)> {
    let m = |name: &'static str, f: &dyn Fn(&mut WitnessCertificate)| {
        let mut c = cert.clone();
        f(&mut c);
        (name, c)
    };
    vec![
        m("p", &|c| c.p = next_prime(c.p)),
        m("q", &|c| c.q = next_prime(c.q)),
        m("a_p", &|c| c.a_p += c.q as i64),
        m("group_order", &|c| c.group_order += 1),
        m("ord_p", &|c| c.ord_p *= 2),
        m("t_z", &|c| c.t_z *= 2),
        m("t_z_window", &|c| c.t_z_window = c.t_z),
        m("t_u", &|c| c.t_u *= c.q),
        m("t_u_window", &|c| c.t_u_window = c.t_u),
        m("q_divides_tz", &|c| c.q_divides_tz = !c.q_divides_tz),
        m("q_divides_tu", &|c| c.q_divides_tu = !c.q_divides_tu),
        m("mismatch_indices", &|c| c.mismatch_indices[0] = agreeing_index),
    ]
}
