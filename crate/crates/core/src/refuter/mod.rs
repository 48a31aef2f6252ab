//! Witness primes at which the periods of `z_n mod p` and `u_{n^2} mod p`
//! are incompatible, with checkable certificates.

mod certificate;
mod verify;

pub use certificate::{single_field_mutations, PointRecord, WitnessCertificate, SCHEMA_VERSION};
pub use verify::{verify_certificate, verify_json, FieldFailure, Verification};

use serde::{Deserialize, Serialize};

use crate::eds::{eds_period_adaptive, generate_geometric, residues_mod_p, EdsSequence};
use crate::elliptic::{count_points, point_order_fp, CurveQ, PointQ};
use crate::error::{Error, Result};
use crate::lrs::{is_degenerate, square_sampled_period, LrsSpec};
use crate::ntkernel::arith::{is_prime_u64, next_prime, pow_mod, primes_up_to, reduce};
use crate::par::{self, Execution};

/// Exact terms kept for the division-value check.
const PREFIX: usize = 48;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinderConfig {
    /// Target trace residue; witnesses have `p = a - 1 (mod q)`.
    pub a: u64,
    pub p_max: u64,
    /// Largest window used when confirming `T_z`.
    pub max_horizon: usize,
    /// Mismatch indices to record (at least [`MIN_MISMATCHES`]).
    pub mismatch_count: usize,
    /// Indices `1..=mismatch_window` searched for mismatches.
    pub mismatch_window: usize,
    pub batch: usize,
    pub exclude: Vec<u64>,
    pub exec: Execution,
}

pub const MIN_MISMATCHES: usize = 10;

impl Default for FinderConfig {
    fn default() -> Self {
        FinderConfig {
            a: 3,
            p_max: 1_000_000,
            max_horizon: 1 << 24,
            mismatch_count: 16,
            mismatch_window: 200,
            batch: 64,
            exclude: Vec::new(),
            exec: Execution::default(),
        }
    }
}

/// How many scanned primes failed each condition, in checking order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanStats {
    pub scanned: u64,
    pub wrong_residue: u64,
    pub bad_prime: u64,
    pub wrong_trace: u64,
    pub q_not_dividing_order: u64,
    pub q_divides_tu: u64,
    pub tz_unconfirmed: u64,
    pub too_few_mismatches: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    Found { certificate: WitnessCertificate, stats: ScanStats },
    Exhausted { p_max: u64, stats: ScanStats },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rejection {
    WrongResidue,
    BadPrime,
    WrongTrace,
    QNotDividingOrder,
    QDividesTu,
    TzUnconfirmed,
    TooFewMismatches,
}

impl ScanStats {
    fn record(&mut self, r: Rejection) {
        self.scanned += 1;
        let slot = match r {
            Rejection::WrongResidue => &mut self.wrong_residue,
            Rejection::BadPrime => &mut self.bad_prime,
            Rejection::WrongTrace => &mut self.wrong_trace,
            Rejection::QNotDividingOrder => &mut self.q_not_dividing_order,
            Rejection::QDividesTu => &mut self.q_divides_tu,
            Rejection::TzUnconfirmed => &mut self.tz_unconfirmed,
            Rejection::TooFewMismatches => &mut self.too_few_mismatches,
        };
        *slot += 1;
    }
}

/// Default auxiliary prime: the smallest prime `q > k` with `q` not dividing
/// `c_k disc` or `(a-1)^j - 1` for `j <= k`, and not excluded.
pub fn default_q(curve: &CurveQ, spec: &LrsSpec, a: u64, exclude: &[u64]) -> u64 {
    let k = spec.order() as u64;
    let ck = spec.coeffs().last().expect("k >= 1");
    let disc = curve.disc();
    let mut q = next_prime(k);
    loop {
        let b = (a % q + q - 1) % q;
        let ok = b != 0
            && !exclude.contains(&q)
            && reduce(ck, q) != 0
            && reduce(&disc, q) != 0
            && (1..=k).all(|j| pow_mod(b, j, q) != 1);
        if ok {
            return q;
        }
        q = next_prime(q);
    }
}

struct Context<'a> {
    curve: &'a CurveQ,
    point: &'a PointQ,
    spec: &'a LrsSpec,
    seq: EdsSequence,
    q: u64,
    config: &'a FinderConfig,
}

/// Indices `n` in `range` with `z_n != +-u_{n^2} (mod p)`.
pub fn mismatches_mod_p(z: &[u64], u: &[u64], p: u64, first_index: usize) -> Vec<u64> {
    z.iter()
        .zip(u)
        .enumerate()
        .filter(|(_, (&a, &b))| a % p != b % p && (a + b) % p != 0)
        .map(|(i, _)| (i + first_index) as u64)
        .collect()
}

fn square_terms(spec: &LrsSpec, p: u64, from: u64, to: u64) -> Result<Vec<u64>> {
    (from..=to).map(|n| spec.eval_mod(n * n, p)).collect()
}

impl Context<'_> {
    fn evaluate(&self, p: u64) -> Result<std::result::Result<WitnessCertificate, Rejection>> {
        let (q, a) = (self.q, self.config.a);
        if p % q != (a % q + q - 1) % q {
            return Ok(Err(Rejection::WrongResidue));
        }
        let (_, y, z) = self.point.coords().expect("affine");
        let ck = self.spec.coeffs().last().expect("k >= 1");
        let bad = p == 2
            || p == q
            || self.config.exclude.contains(&p)
            || !self.curve.has_good_reduction(p)
            || reduce(z, p) == 0
            || reduce(y, p) == 0
            || reduce(ck, p) == 0;
        if bad {
            return Ok(Err(Rejection::BadPrime));
        }
        let count = count_points(self.curve, p)?;
        if count.trace.rem_euclid(q as i64) as u64 != a % q {
            return Ok(Err(Rejection::WrongTrace));
        }
        let ord = point_order_fp(self.curve, self.point, p)?;
        if ord % q != 0 {
            return Ok(Err(Rejection::QNotDividingOrder));
        }
        let tu = square_sampled_period(self.spec, p)?;
        if tu.period % q == 0 {
            return Ok(Err(Rejection::QDividesTu));
        }
        let tz = eds_period_adaptive(&self.seq, p, (4 * ord as usize).max(64), self.config.max_horizon)?;
        let Some(t_z) = tz.period() else {
            return Ok(Err(Rejection::TzUnconfirmed));
        };
        let w = self.config.mismatch_window;
        let zr: Vec<u64> = residues_mod_p(&self.seq, p, w)?.into_iter().map(u64::from).collect();
        let ur = square_terms(self.spec, p, 1, w as u64)?;
        let mut mism = mismatches_mod_p(&zr, &ur, p, 1);
        if mism.len() < MIN_MISMATCHES {
            return Ok(Err(Rejection::TooFewMismatches));
        }
        mism.truncate(self.config.mismatch_count.max(MIN_MISMATCHES));
        Ok(Ok(WitnessCertificate {
            schema_version: SCHEMA_VERSION,
            curve: self.curve.clone(),
            point: PointRecord::from_point(self.point),
            lrs: self.spec.clone(),
            a: a % q,
            q,
            p,
            a_p: count.trace,
            group_order: count.group_order,
            ord_p: ord,
            t_z,
            t_z_window: 2 * t_z,
            t_u: tu.period,
            t_u_window: 2 * tu.period,
            q_divides_tz: t_z % q == 0,
            q_divides_tu: false,
            mismatch_indices: mism,
        }))
    }
}

/// Scan primes `p <= p_max` in ascending batches; the smallest qualifying `p`
/// wins. Points with `x = 0` are replaced by `2P`.
pub fn find_witness(
    curve: &CurveQ,
    point: &PointQ,
    spec: &LrsSpec,
    q: Option<u64>,
    config: &FinderConfig,
) -> Result<WitnessOutcome> {
    if config.a < 2 {
        return Err(Error::invalid("a must be at least 2"));
    }
    let degeneracy = is_degenerate(spec);
    if degeneracy.degenerate {
        return Err(Error::Degenerate {
            order: degeneracy.witness_order.unwrap_or(0),
        });
    }
    let (base, _) = curve.prepare_base_point(point)?;
    let q = q.unwrap_or_else(|| default_q(curve, spec, config.a, &config.exclude));
    if !is_prime_u64(q) {
        return Err(Error::invalid(format!("q = {q} is not prime")));
    }
    if config.a % q == 1 {
        return Err(Error::invalid("a = 1 (mod q) forces p = 0 (mod q)"));
    }
    let ctx = Context {
        curve,
        point: &base,
        spec,
        seq: generate_geometric(curve, &base, PREFIX)?,
        q,
        config,
    };
    let primes = primes_up_to(config.p_max);
    let mut stats = ScanStats::default();
    for chunk in primes.chunks(config.batch.max(1)) {
        let results = par::map(config.exec, chunk, |&p| ctx.evaluate(p));
        for r in results {
            match r? {
                Ok(certificate) => {
                    stats.scanned += 1;
                    return Ok(WitnessOutcome::Found { certificate, stats });
                }
                Err(rej) => stats.record(rej),
            }
        }
    }
    Ok(WitnessOutcome::Exhausted {
        p_max: config.p_max,
        stats,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Falsification {
    pub p: u64,
    pub from: u64,
    pub to: u64,
    pub indices: Vec<u64>,
}

impl Falsification {
    pub fn message(&self) -> String {
        if self.indices.is_empty() {
            format!("no counterexample in window {}..={} mod {}", self.from, self.to, self.p)
        } else {
            format!("{} indices in {}..={} with z_n != +-u_(n^2) mod {}", self.indices.len(), self.from, self.to, self.p)
        }
    }
}

/// Indices `n` in `n_claim..n_claim + window` with `z_n != +-u_{n^2} (mod p)`.
pub fn direct_falsify(
    curve: &CurveQ,
    point: &PointQ,
    spec: &LrsSpec,
    n_claim: u64,
    p: u64,
    window: u64,
) -> Result<Falsification> {
    if n_claim == 0 || window == 0 {
        return Err(Error::invalid("threshold and window must be positive"));
    }
    let seq = generate_geometric(curve, point, PREFIX)?;
    let to = n_claim + window - 1;
    let z = residues_mod_p(&seq, p, to as usize)?;
    let z: Vec<u64> = z[(n_claim - 1) as usize..].iter().map(|&v| v as u64).collect();
    let u = square_terms(spec, p, n_claim, to)?;
    Ok(Falsification {
        p,
        from: n_claim,
        to,
        indices: mismatches_mod_p(&z, &u, p, n_claim as usize),
    })
}

/// Exact `z_n mod p` from the denominator of `nP` (used by the verifier).
pub(crate) fn exact_z_mod(curve: &CurveQ, point: &PointQ, n: u64, p: u64) -> Option<u64> {
    let m = curve.scalar_mul(n, point);
    m.coords().map(|(_, _, z)| reduce(z, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> (CurveQ, PointQ) {
        let e = CurveQ::from_i64(-1, 3).unwrap();
        let p = e.point_i64(2, 3, 1).unwrap();
        (e, p)
    }

    fn found(outcome: WitnessOutcome) -> WitnessCertificate {
        match outcome {
            WitnessOutcome::Found { certificate, .. } => certificate,
            WitnessOutcome::Exhausted { stats, .. } => panic!("exhausted: {stats:?}"),
        }
    }

    #[test]
    fn default_q_for_fibonacci() {
        let (e, _) = fixture();
        assert_eq!(default_q(&e, &LrsSpec::fibonacci(), 3, &[]), 5);
        assert_eq!(default_q(&e, &LrsSpec::fibonacci(), 3, &[5]), 7);
    }

    #[test]
    fn finds_and_verifies() {
        let (e, p) = fixture();
        let cfg = FinderConfig {
            p_max: 10_000,
            ..FinderConfig::default()
        };
        let cert = found(find_witness(&e, &p, &LrsSpec::fibonacci(), Some(5), &cfg).unwrap());
        assert_eq!(cert.p, 17);
        assert!(cert.q_divides_tz && !cert.q_divides_tu);
        assert!(cert.mismatch_indices.len() >= MIN_MISMATCHES);
        let v = verify_certificate(&cert);
        assert!(v.passed(), "{:?}", v.failures);
        let json = cert.to_canonical_json();
        assert_eq!(WitnessCertificate::from_json(&json).unwrap(), cert);
        assert!(verify_json(&json).unwrap().passed());
    }

    #[test]
    fn mutations_are_caught() {
        let (e, p) = fixture();
        let cfg = FinderConfig {
            p_max: 1_000,
            ..FinderConfig::default()
        };
        let cert = found(find_witness(&e, &p, &LrsSpec::fibonacci(), Some(5), &cfg).unwrap());
        let seq = generate_geometric(&e, &p, PREFIX).unwrap();
        let z = residues_mod_p(&seq, cert.p, 2000).unwrap();
        let agreeing = (1..=2000u64)
            .find(|&n| {
                let u = LrsSpec::fibonacci().eval_mod(n * n, cert.p).unwrap();
                let zn = z[n as usize - 1] as u64;
                zn == u || (zn + u).is_multiple_of(cert.p)
            })
            .expect("some agreeing index");
        let muts = single_field_mutations(&cert, agreeing);
        assert_eq!(muts.len(), 12);
        for (name, m) in muts {
            let v = verify_certificate(&m);
            assert!(!v.passed(), "mutation of {name} passed");
        }
    }

    #[test]
    fn deterministic_across_strategies() {
        let (e, p) = fixture();
        let mk = |exec| FinderConfig {
            p_max: 2_000,
            exec,
            batch: 7,
            ..FinderConfig::default()
        };
        let a = find_witness(&e, &p, &LrsSpec::fibonacci(), None, &mk(Execution::Parallel)).unwrap();
        let b = find_witness(&e, &p, &LrsSpec::fibonacci(), None, &mk(Execution::Sequential)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn exhaustion_is_reported() {
        let (e, p) = fixture();
        let cfg = FinderConfig {
            p_max: 16,
            ..FinderConfig::default()
        };
        let WitnessOutcome::Exhausted { stats, .. } = find_witness(&e, &p, &LrsSpec::fibonacci(), Some(5), &cfg).unwrap()
        else {
            panic!("no witness below 17 expected");
        };
        assert_eq!(stats.scanned, 6);
        assert_eq!(
            stats.scanned,
            stats.wrong_residue
                + stats.bad_prime
                + stats.wrong_trace
                + stats.q_not_dividing_order
                + stats.q_divides_tu
                + stats.tz_unconfirmed
                + stats.too_few_mismatches
        );
    }

    #[test]
    fn degenerate_spec_rejected() {
        let (e, p) = fixture();
        let spec = LrsSpec::from_i64(&[0, 1], &[0, 2]).unwrap();
        assert!(matches!(
            find_witness(&e, &p, &spec, Some(5), &FinderConfig::default()),
            Err(Error::Degenerate { order: 2 })
        ));
    }

    #[test]
    fn falsify_examples() {
        let e = CurveQ::from_i64(0, 3).unwrap();
        let pt = e.point_i64(1, 2, 1).unwrap();
        let f = direct_falsify(&e, &pt, &LrsSpec::fibonacci(), 1, 7, 50).unwrap();
        assert!(!f.indices.is_empty());
        let z = [1u64, 4, 0, 6];
        assert!(mismatches_mod_p(&z, &z, 7, 1).is_empty());
        let neg: Vec<u64> = z.iter().map(|v| (7 - v) % 7).collect();
        assert!(mismatches_mod_p(&z, &neg, 7, 1).is_empty());
    }
}
