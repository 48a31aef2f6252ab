use serde_json::json;

use edslab::galois_density::{count_affine_with, count_gl2_with, empirical_density_with, DensityReport};

use super::{curve_point, exec};
use crate::args::DensityCmd;
use crate::error::CliError;
use crate::output::Report;

fn report(d: &DensityReport) -> Report {
    let mut r = Report::new(
        serde_json::to_value(d).expect("density serializes"),
        &["q", "a", "b", "count", "group_order", "delta", "empirical", "hits", "scanned"],
    );
    let (freq, hits, scanned) = match &d.empirical {
        Some(e) if e.scanned > 0 => (format!("{:.6}", e.hits as f64 / e.scanned as f64), e.hits.to_string(), e.scanned.to_string()),
        Some(e) => ("-".into(), e.hits.to_string(), e.scanned.to_string()),
        None => ("-".into(), "-".into(), "-".into()),
    };
    r.row(vec![
        d.q.to_string(),
        d.a.to_string(),
        d.b.to_string(),
        d.numerator.to_string(),
        d.denominator.to_string(),
        format!("{}/{}", d.delta_num, d.delta_den),
        freq,
        hits,
        scanned,
    ]);
    if let Some(w) = d.empirical.as_ref().and_then(|e| e.warning.as_ref()) {
        r.note(format!("warning: {w}"));
    }
    r
}

pub fn run(cmd: DensityCmd) -> Result<Report, CliError> {
    let d = match cmd {
        DensityCmd::Gl2 { q, a, b, cap } => count_gl2_with(exec(), q, a, b, cap)?,
        DensityCmd::Affine { q, a, b, cap } => count_affine_with(exec(), q, a, b, cap)?,
        DensityCmd::Empirical { curve, q, a, x, exclude } => {
            let (curve, point) = curve_point(&curve)?;
            let d = empirical_density_with(exec(), &curve, &point, q, a, x, &exclude)?;
            let mut r = report(&d);
            if let Some(e) = &d.empirical {
                r.json["matching_primes_head"] = json!(e.matching_primes.iter().take(20).collect::<Vec<_>>());
            }
            return Ok(r);
        }
    };
    Ok(report(&d))
}
