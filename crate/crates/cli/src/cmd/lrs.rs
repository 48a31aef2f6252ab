use serde_json::json;

use edslab::lrs::{
    decimate, fit_minimal_recurrence, is_degenerate, lrs_period_mod_p, nondegenerate_reduction, parse_terms,
    square_sampled_period, LrsSpec,
};

use super::{read, spec};
use crate::args::LrsCmd;
use crate::error::CliError;
use crate::output::Report;

fn spec_report(s: &LrsSpec) -> Report {
    let coeffs: Vec<String> = s.coeffs().iter().map(ToString::to_string).collect();
    let initial: Vec<String> = s.initial().iter().map(ToString::to_string).collect();
    let mut r = Report::new(
        json!({ "spec": s.to_string(), "order": s.order(), "coeffs": coeffs, "initial": initial }),
        &["spec"],
    );
    r.row(vec![s.to_string()]);
    r
}

pub fn run(cmd: LrsCmd) -> Result<Report, CliError> {
    match cmd {
        LrsCmd::Fit { terms, bound } => {
            let terms = parse_terms(&read(&terms)?)?;
            Ok(spec_report(&fit_minimal_recurrence(&terms, bound)?))
        }
        LrsCmd::Eval { spec: s, n, p } => {
            let s = spec(&s)?;
            let value = match p {
                Some(p) if p >= 2 => s.eval_mod(n, p)?.to_string(),
                Some(_) => return Err(CliError::Validation("modulus must be at least 2".into())),
                None => s.eval_matrix(n)?.to_string(),
            };
            let mut r = Report::new(json!({ "n": n, "p": p, "value": value }), &["n", "u_n"]);
            r.row(vec![n.to_string(), value]);
            Ok(r)
        }
        LrsCmd::Decimate { spec: s, m } => {
            if m == 0 {
                return Err(CliError::Validation("M must be positive".into()));
            }
            Ok(spec_report(&decimate(&spec(&s)?, m)?))
        }
        LrsCmd::Degenerate { spec: s, reduce } => {
            let s = spec(&s)?;
            let d = is_degenerate(&s);
            let mut json = json!({
                "degenerate": d.degenerate,
                "witness_order": d.witness_order,
                "orders": d.orders,
                "ratio_poly": d.ratio_poly.to_string(),
            });
            let mut r = Report::new(json.clone(), &["degenerate", "witness_order", "orders"]);
            let orders: Vec<String> = d.orders.iter().map(ToString::to_string).collect();
            r.row(vec![d.degenerate.to_string(), super::opt(d.witness_order), orders.join(" ")]);
            if reduce {
                let (m, reduced) = nondegenerate_reduction(&s)?;
                json["reduction"] = json!({ "m": m, "spec": reduced.to_string() });
                r.json = json;
                r.note(format!("u_(M^2 n) with M = {m}: {reduced}"));
            }
            Ok(r)
        }
        LrsCmd::Period { spec: s, p } => {
            let s = spec(&s)?;
            let base = lrs_period_mod_p(&s, p)?;
            let sq = square_sampled_period(&s, p)?;
            let mut r = Report::new(json!({ "base": base, "square": sq }), &["p", "period", "square_period", "order_bound"]);
            r.row(vec![p.to_string(), base.period.to_string(), sq.period.to_string(), base.order_bound.to_string()]);
            Ok(r)
        }
    }
}
