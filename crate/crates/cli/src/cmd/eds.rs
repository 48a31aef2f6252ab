use num_bigint::BigInt;
use serde_json::json;

use edslab::eds::{
    eds_period_adaptive, generate_geometric, generate_ward, primitive_divisor_scan, ward_seed_for_stride,
    EdsSequence, SequenceCache, WardSeed,
};
use edslab::elliptic::CurveQ;

use super::{curve_point, opt};
use crate::args::EdsCmd;
use crate::error::CliError;
use crate::output::Report;

fn seed(v: &[BigInt]) -> Result<WardSeed, CliError> {
    Ok(WardSeed::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())?)
}

fn terms_report(seq: &EdsSequence) -> Report {
    let growth = seq.growth_constants();
    let terms: Vec<String> = seq.terms().iter().map(ToString::to_string).collect();
    let mut r = Report::new(json!({ "terms": terms, "growth": growth }), &["n", "z_n", "c_n"]);
    for (i, (z, c)) in terms.iter().zip(&growth).enumerate() {
        r.row(vec![(i + 1).to_string(), z.clone(), c.map_or("-".into(), |c| format!("{c:.6}"))]);
    }
    r
}

pub fn run(cmd: EdsCmd) -> Result<Report, CliError> {
    match cmd {
        EdsCmd::Gen { curve, n, cache_dir, no_cache } => {
            let (curve, point) = curve_point(&curve)?;
            let cache = if no_cache {
                None
            } else {
                cache_dir.map(SequenceCache::new).or_else(SequenceCache::from_env)
            };
            let seq = match cache {
                Some(c) => c.get_or_generate(&curve, &point, n)?,
                None => generate_geometric(&curve, &point, n)?,
            };
            Ok(terms_report(&seq))
        }
        EdsCmd::Ward { seed: s, n } => {
            let seq = generate_ward(&seed(&s)?, n)?;
            Ok(terms_report(&seq))
        }
        EdsCmd::Period { curve, point, seed: s, p, horizon, stride } => {
            let seq = match (curve, point, s) {
                (Some(c), Some(pt), None) => {
                    let curve = CurveQ::new(c[0].clone(), c[1].clone())?;
                    let point = curve.point(pt[0].clone(), pt[1].clone(), pt[2].clone())?;
                    let seq = generate_geometric(&curve, &point, 64.max(4 * stride.unwrap_or(1)))?;
                    match stride {
                        Some(l) => generate_ward(&ward_seed_for_stride(&seq, l)?.0, 8)?,
                        None => seq,
                    }
                }
                (None, None, Some(s)) => {
                    if stride.is_some() {
                        return Err(CliError::Validation("--stride needs --curve/--point".into()));
                    }
                    generate_ward(&seed(&s)?, 8)?
                }
                _ => return Err(CliError::Validation("give either --curve and --point, or --seed".into())),
            };
            let r = eds_period_adaptive(&seq, p, 1024, horizon)?;
            let json = serde_json::to_value(&r).expect("period serializes");
            let mut rep = Report::key_values(json);
            if r.period().is_none() {
                rep.note(format!("period not confirmed within {} terms", r.horizon));
            }
            rep.note(format!(
                "T | 2(p-2)#E: {}   T | (p-1)#E: {}",
                opt(r.divides_2_pm2_order),
                opt(r.divides_pm1_order)
            ));
            Ok(rep)
        }
        EdsCmd::Zsigmondy { curve, n, budget } => {
            let (curve, point) = curve_point(&curve)?;
            let seq = generate_geometric(&curve, &point, n)?;
            let scan = primitive_divisor_scan(&seq, budget);
            let json = serde_json::to_value(&scan).expect("scan serializes");
            let mut r = Report::new(json, &["n", "primitive", "primes", "complete"]);
            for s in &scan {
                let primes: Vec<String> = s.primes.iter().map(ToString::to_string).collect();
                r.row(vec![s.n.to_string(), s.has_primitive.to_string(), primes.join(" "), s.complete.to_string()]);
            }
            let missing: Vec<String> = scan.iter().filter(|s| !s.has_primitive).map(|s| s.n.to_string()).collect();
            r.note(format!("no primitive divisor: {}", if missing.is_empty() { "none".into() } else { missing.join(", ") }));
            Ok(r)
        }
    }
}
