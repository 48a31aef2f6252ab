//! Independent re-derivation of every field of a certificate.
//!
//! Point counts use the Legendre-symbol route, `z_n mod p` comes from a Ward
//! recurrence seeded with the division values and is tied to the exact
//! denominators of `nP`, and `u_{n^2} mod p` is evaluated by companion-matrix
//! powers.

use num_bigint::BigInt;
use serde::Serialize;

use super::{exact_z_mod, WitnessCertificate, MIN_MISMATCHES, SCHEMA_VERSION};
use crate::elliptic::{PointFp, PointQ};
use crate::error::Result;
use crate::ntkernel::arith::{factor_u64, inv_mod, is_prime_u64, mul_mod, pow_mod, reduce};
use crate::period::is_verified_minimal_period;

/// Exact denominators compared against the recurrence.
const ANCHOR_TERMS: u64 = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldFailure {
    pub field: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub failures: Vec<FieldFailure>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, field: &str, reason: impl Into<String>) {
        self.failures.push(FieldFailure {
            field: field.into(),
            reason: reason.into(),
        });
    }

    pub fn failed_fields(&self) -> Vec<&str> {
        self.failures.iter().map(|f| f.field.as_str()).collect()
    }
}

pub fn verify_json(text: &str) -> Result<Verification> {
    Ok(verify_certificate(&WitnessCertificate::from_json(text)?))
}

/// `W_1..W_4` of `(x : y : z)` reduced mod `p`.
fn seed_mod_p(a: u64, b: u64, x: u64, y: u64, z: u64, p: u64) -> [u64; 4] {
    let m = |u: u64, v: u64| mul_mod(u, v, p);
    let s = |u: u64, v: u64| (u + p - v) % p;
    let zp = |e: u64| pow_mod(z, e, p);
    let xp = |e: u64| pow_mod(x, e, p);
    let w3_inner = s(
        (m(3, xp(4)) + m(6, m(a, m(xp(2), zp(4)))) + m(12, m(b, m(x, zp(6))))) % p,
        m(m(a, a), zp(8)),
    );
    let w4_pos = (xp(6) + m(5, m(a, m(xp(4), zp(4)))) + m(20, m(b, m(xp(3), zp(6))))) % p;
    let w4_neg = (m(5, m(m(a, a), m(xp(2), zp(8))))
        + m(4, m(m(a, b), m(x, zp(10))))
        + m((m(8, m(b, b)) + m(m(a, a), a)) % p, zp(12)))
        % p;
    [z % p, m(2, m(y, z)), m(z, w3_inner), m(4, m(m(y, z), s(w4_pos, w4_neg)))]
}

fn ward_residues(seed: [u64; 4], p: u64, count: usize) -> Option<Vec<u64>> {
    let m = |u: u64, v: u64| mul_mod(u, v, p);
    let s = |u: u64, v: u64| (u + p - v) % p;
    let odd = inv_mod(pow_mod(seed[0], 3, p), p)?;
    let even = inv_mod(m(seed[1], m(seed[0], seed[0])), p)?;
    let mut w = vec![0u64];
    w.extend_from_slice(&seed[..count.min(4)]);
    for n in 5..=count {
        let k = n / 2;
        let v = if n % 2 == 1 {
            m(s(m(w[k + 2], pow_mod(w[k], 3, p)), m(pow_mod(w[k + 1], 3, p), w[k - 1])), odd)
        } else {
            m(
                s(m(m(w[k + 2], w[k]), m(w[k - 1], w[k - 1])), m(m(w[k], w[k - 2]), m(w[k + 1], w[k + 1]))),
                even,
            )
        };
        w.push(v);
    }
    w.remove(0);
    Some(w)
}

fn fp_add(a: u64, p: u64, s: PointFp, t: PointFp) -> PointFp {
    use PointFp::*;
    let (x1, y1, x2, y2) = match (s, t) {
        (Infinity, o) | (o, Infinity) => return o,
        (Affine(x1, y1), Affine(x2, y2)) => (x1, y1, x2, y2),
    };
    let lambda = if x1 == x2 {
        if (y1 + y2) % p == 0 {
            return Infinity;
        }
        let num = (mul_mod(3, mul_mod(x1, x1, p), p) + a) % p;
        mul_mod(num, inv_mod(mul_mod(2, y1, p), p).expect("y != 0"), p)
    } else {
        mul_mod((y2 + p - y1) % p, inv_mod((x2 + p - x1) % p, p).expect("x1 != x2"), p)
    };
    let x3 = (mul_mod(lambda, lambda, p) + 2 * p - x1 - x2) % p;
    let y3 = (mul_mod(lambda, (x1 + p - x3) % p, p) + p - y1) % p;
    Affine(x3, y3)
}

fn fp_mul(a: u64, p: u64, mut n: u64, pt: PointFp) -> PointFp {
    let mut acc = PointFp::Infinity;
    let mut base = pt;
    while n > 0 {
        if n & 1 == 1 {
            acc = fp_add(a, p, acc, base);
        }
        base = fp_add(a, p, base, base);
        n >>= 1;
    }
    acc
}

/// Re-derive every certified fact; collects all failing fields.
pub fn verify_certificate(cert: &WitnessCertificate) -> Verification {
    let mut v = Verification::default();
    if cert.schema_version != SCHEMA_VERSION {
        v.fail("schema_version", format!("expected {SCHEMA_VERSION}"));
        return v;
    }
    let curve = &cert.curve;
    let (p, q) = (cert.p, cert.q);
    if curve.disc() == BigInt::from(0) {
        v.fail("curve", "singular");
        return v;
    }
    let point = match cert.point.to_point(curve) {
        Ok(pt) => pt,
        Err(e) => {
            v.fail("point", e.to_string());
            return v;
        }
    };
    if curve.is_torsion(&point) {
        v.fail("point", "torsion point");
    }
    if !is_prime_u64(q) {
        v.fail("q", "not prime");
    }
    if !(3..1 << 32).contains(&p) || !is_prime_u64(p) {
        v.fail("p", "not an odd prime below 2^32");
        return v;
    }
    if q == 0 || !v.passed() {
        return v;
    }
    if cert.a % q != cert.a || p % q != (cert.a + q - 1) % q {
        v.fail("q", format!("p = {p} is not {} - 1 mod q = {q}", cert.a));
    }
    let PointQ::Affine { x, y, z } = &point else {
        unreachable!("to_point returns affine points")
    };
    let (ar, br) = (reduce(curve.a(), p), reduce(curve.b(), p));
    let ck = cert.lrs.coeffs().last().expect("k >= 1");
    if !curve.has_good_reduction(p) || reduce(z, p) == 0 || reduce(y, p) == 0 || reduce(ck, p) == 0 {
        v.fail("p", "bad prime for this curve, point or recurrence");
        return v;
    }

    // a_p and #E(F_p) by Euler's criterion
    let count = match curve.reduce_mod(p) {
        Ok(e) => e.count_points_legendre(),
        Err(e) => {
            v.fail("p", e.to_string());
            return v;
        }
    };
    if count.trace != cert.a_p {
        v.fail("a_p", format!("recounted a_p = {}", count.trace));
    }
    if count.trace.rem_euclid(q as i64) as u64 != cert.a {
        v.fail("a_p", format!("a_p is not {} mod {q}", cert.a));
    }
    if count.group_order != cert.group_order {
        v.fail("group_order", format!("recounted #E = {}", count.group_order));
    }

    // ord_p: n P = O and (n / l) P != O for primes l | n, and n | #E
    let zi = inv_mod(reduce(z, p), p).expect("p does not divide z");
    let pt = PointFp::Affine(
        mul_mod(reduce(x, p), mul_mod(zi, zi, p), p),
        mul_mod(reduce(y, p), pow_mod(zi, 3, p), p),
    );
    let ord = cert.ord_p;
    let ord_ok = ord > 0
        && count.group_order % ord == 0
        && fp_mul(ar, p, ord, pt) == PointFp::Infinity
        && factor_u64(ord).iter().all(|&(l, _)| fp_mul(ar, p, ord / l, pt) != PointFp::Infinity);
    if !ord_ok {
        v.fail("ord_p", "not the order of P mod p");
    }
    if !ord.is_multiple_of(q) {
        v.fail("ord_p", "q does not divide ord_p");
    }

    // T_z over its window
    let Some(tz_len) = usize::try_from(cert.t_z_window).ok().filter(|&w| w <= 1 << 26) else {
        v.fail("t_z_window", "window too large to re-check");
        return v;
    };
    let need = tz_len.max(ANCHOR_TERMS as usize).max(*cert.mismatch_indices.iter().max().unwrap_or(&0) as usize);
    let seed = seed_mod_p(ar, br, reduce(x, p), reduce(y, p), reduce(z, p), p);
    let Some(zres) = ward_residues(seed, p, need) else {
        v.fail("p", "p divides 2yz");
        return v;
    };
    for n in 1..=ANCHOR_TERMS {
        let exact = exact_z_mod(curve, &point, n, p);
        let r = zres[n as usize - 1];
        if exact.is_none_or(|e| e != r && (e + r) % p != 0) {
            v.fail("point", format!("division values disagree with the denominator of {n}P"));
            break;
        }
    }
    if cert.t_z_window < 2 * cert.t_z {
        v.fail("t_z_window", "window shorter than two periods");
    } else if !is_verified_minimal_period(&zres[..tz_len], cert.t_z as usize) {
        v.fail("t_z", "not the minimal period of z_n mod p on the window");
    }
    if cert.t_z == 0 || !cert.t_z.is_multiple_of(ord.max(1)) {
        v.fail("t_z", "ord_p does not divide t_z");
    }
    if cert.q_divides_tz != cert.t_z.is_multiple_of(q) {
        v.fail("q_divides_tz", "claim disagrees with t_z");
    }
    if !cert.q_divides_tz {
        v.fail("q_divides_tz", "q must divide t_z");
    }

    // T_u over its window, by matrix evaluation of u_{n^2}
    if cert.t_u_window < 2 * cert.t_u || cert.t_u == 0 {
        v.fail("t_u_window", "window shorter than two periods");
    } else if cert.t_u_window > 1 << 22 {
        v.fail("t_u_window", "window too large to re-check");
    } else {
        let stream: Result<Vec<u64>> = (1..=cert.t_u_window).map(|n| cert.lrs.eval_mod(n * n, p)).collect();
        match stream {
            Ok(s) if is_verified_minimal_period(&s, cert.t_u as usize) => {}
            Ok(_) => v.fail("t_u", "not the minimal period of u_(n^2) mod p on the window"),
            Err(e) => v.fail("t_u", e.to_string()),
        }
    }
    if cert.q_divides_tu != cert.t_u.is_multiple_of(q) {
        v.fail("q_divides_tu", "claim disagrees with t_u");
    }
    if cert.q_divides_tu {
        v.fail("q_divides_tu", "q must not divide t_u");
    }

    // mismatches against exact denominators
    let mut idx = cert.mismatch_indices.clone();
    idx.sort_unstable();
    idx.dedup();
    if idx.len() != cert.mismatch_indices.len() || idx.len() < MIN_MISMATCHES {
        v.fail("mismatch_indices", format!("need {MIN_MISMATCHES} distinct indices"));
    }
    for &n in &cert.mismatch_indices {
        if n == 0 {
            v.fail("mismatch_indices", "index 0");
            continue;
        }
        let zn = zres[n as usize - 1];
        let un = match cert.lrs.eval_mod(n * n, p) {
            Ok(u) => u,
            Err(e) => {
                v.fail("mismatch_indices", e.to_string());
                continue;
            }
        };
        if zn == un || (zn + un) % p == 0 {
            v.fail("mismatch_indices", format!("z_{n} = +-u_{} mod p", n * n));
        }
    }
    v
}
