use serde_json::json;

use edslab::refuter::{direct_falsify, find_witness, verify_json, FinderConfig, WitnessOutcome};

use super::{curve_point, exec, read, spec, Outcome};
use crate::args::{FalsifyArgs, RefuteArgs, VerifyArgs};
use crate::error::CliError;
use crate::output::Report;

pub fn refute(a: RefuteArgs) -> Result<Outcome, CliError> {
    let (curve, point) = curve_point(&a.curve)?;
    let s = spec(&a.spec)?;
    let config = FinderConfig {
        a: a.a,
        p_max: a.p_max,
        max_horizon: a.max_horizon,
        exclude: a.exclude,
        exec: exec(),
        ..FinderConfig::default()
    };
    match find_witness(&curve, &point, &s, a.q, &config)? {
        WitnessOutcome::Found { certificate, stats } => {
            let text = certificate.to_canonical_json();
            std::fs::write(&a.out, &text)?;
            let v = verify_json(&text)?;
            let mut r = Report::new(
                json!({
                    "p": certificate.p,
                    "q": certificate.q,
                    "certificate": a.out.display().to_string(),
                    "verified": v.passed(),
                    "stats": stats,
                }),
                &["p", "q", "a_p", "t_z", "t_u", "mismatches", "verified"],
            );
            r.row(vec![
                certificate.p.to_string(),
                certificate.q.to_string(),
                certificate.a_p.to_string(),
                certificate.t_z.to_string(),
                certificate.t_u.to_string(),
                certificate.mismatch_indices.len().to_string(),
                v.passed().to_string(),
            ]);
            r.note(format!("certificate written to {}", a.out.display()));
            let failure = (!v.passed()).then(|| {
                CliError::Verification(format!("fresh certificate failed fields: {}", v.failed_fields().join(", ")))
            });
            Ok(Outcome { report: r, failure })
        }
        WitnessOutcome::Exhausted { p_max, stats } => {
            let mut r = Report::key_values(serde_json::to_value(&stats).expect("stats serialize"));
            r.json = json!({ "p_max": p_max, "stats": stats });
            Ok(Outcome {
                report: r,
                failure: Some(CliError::Exhausted(format!("no witness prime up to {p_max}"))),
            })
        }
    }
}

pub fn verify(a: VerifyArgs) -> Result<Outcome, CliError> {
    let text = read(&a.certificate)?;
    let v = match verify_json(&text) {
        Ok(v) => v,
        Err(e) => return Err(CliError::Verification(format!("unreadable certificate: {e}"))),
    };
    let failures: Vec<_> = v
        .failures
        .iter()
        .map(|f| json!({ "field": f.field, "reason": f.reason }))
        .collect();
    let mut r = Report::new(json!({ "passed": v.passed(), "failures": failures }), &["field", "reason"]);
    for f in &v.failures {
        r.row(vec![f.field.to_string(), f.reason.clone()]);
    }
    r.note(if v.passed() { "certificate verified" } else { "certificate REJECTED" });
    let failure = (!v.passed()).then(|| CliError::Verification(format!("failed fields: {}", v.failed_fields().join(", "))));
    Ok(Outcome { report: r, failure })
}

pub fn falsify(a: FalsifyArgs) -> Result<Report, CliError> {
    let (curve, point) = curve_point(&a.curve)?;
    let s = spec(&a.spec)?;
    let f = direct_falsify(&curve, &point, &s, a.from, a.p, a.window)?;
    let mut r = Report::new(serde_json::to_value(&f).expect("falsification serializes"), &["n"]);
    for n in &f.indices {
        r.row(vec![n.to_string()]);
    }
    r.note(f.message());
    Ok(r)
}
