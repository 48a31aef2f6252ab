use num_rational::BigRational;
use serde_json::json;

use edslab::ntkernel::Poly;
use edslab::prooflab::{construct_ell, count_admissible_residues, det_beta_identity, expand_q, fixed_point_collision};

use super::read;
use crate::args::ProofCmd;
use crate::error::CliError;
use crate::output::Report;

fn rational(s: &str) -> Result<BigRational, CliError> {
    s.trim()
        .parse()
        .map_err(|e| CliError::Validation(format!("`{s}` is not a rational: {e}")))
}

/// Increasing `t`-subsets of `{2, .., q-1}`.
fn subsets(q: u64, t: usize) -> Vec<Vec<u64>> {
    fn go(start: u64, q: u64, t: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for b in start..q {
            cur.push(b);
            go(b + 1, q, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(2, q, t, &mut Vec::new(), &mut out);
    out
}

pub fn run(cmd: ProofCmd) -> Result<Report, CliError> {
    match cmd {
        ProofCmd::Qlemma { poly, alpha } => {
            let coeffs = poly.iter().map(|c| rational(c)).collect::<Result<Vec<_>, _>>()?;
            let x = expand_q(&Poly::from_coeffs(coeffs), &rational(&alpha)?)?;
            let mut r = Report::new(
                json!({
                    "q": x.q.to_string(),
                    "degree": x.degree,
                    "leading": x.leading.to_string(),
                    "predicted_degree": x.predicted_degree,
                    "predicted_leading": x.predicted_leading.to_string(),
                    "matches": x.matches(),
                }),
                &["degree", "leading", "predicted_degree", "predicted_leading", "matches"],
            );
            r.row(vec![
                x.degree.to_string(),
                x.leading.to_string(),
                x.predicted_degree.to_string(),
                x.predicted_leading.to_string(),
                x.matches().to_string(),
            ]);
            Ok(r)
        }
        ProofCmd::Det { q, betas, all } => {
            let cases = match all {
                Some(t) if q > 200 => return Err(CliError::Validation(format!("--all with t = {t} needs q <= 200"))),
                Some(t) => subsets(q, t),
                None if betas.is_empty() => return Err(CliError::Validation("give --betas or --all".into())),
                None => vec![betas],
            };
            let results = cases
                .iter()
                .map(|b| det_beta_identity(q, b))
                .collect::<Result<Vec<_>, _>>()?;
            let holding = results.iter().filter(|d| d.holds).count();
            let mut r = Report::new(
                json!({ "q": q, "cases": results.len(), "holding": holding, "results": results }),
                &["betas", "det", "product", "sign", "holds"],
            );
            for d in &results {
                let b: Vec<String> = d.betas.iter().map(ToString::to_string).collect();
                r.row(vec![b.join(" "), d.det.to_string(), d.product.to_string(), d.sign.to_string(), d.holds.to_string()]);
            }
            r.note(format!("{holding}/{} tuples satisfy the identity", results.len()));
            Ok(r)
        }
        ProofCmd::Resclass { r: modulus, t, c } => {
            let rc = count_admissible_residues(modulus, t, c)?;
            let mut json = serde_json::to_value(&rc).expect("count serializes");
            json["within_band"] = json!(rc.within_band());
            Ok(Report::key_values(json))
        }
        ProofCmd::Ell { r: modulus, e, n0, j, c } => {
            let ell = construct_ell(modulus, e, &n0, &j, &c)?;
            let mut rep = Report::new(json!({ "r": modulus, "e": e, "ell": ell.to_string() }), &["r", "e", "ell"]);
            rep.row(vec![modulus.to_string(), e.to_string(), ell.to_string()]);
            Ok(rep)
        }
        ProofCmd::Fixedpoint { matrix } => {
            let rows = read(&matrix)?
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| l.split_whitespace().map(rational).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            let v = fixed_point_collision(&rows)?;
            let basis: Vec<Vec<String>> = v.basis.iter().map(|b| b.iter().map(ToString::to_string).collect()).collect();
            let mut rep = Report::new(
                json!({
                    "dimension": v.dimension(),
                    "basis": basis,
                    "colliding_pairs": v.colliding_pairs,
                    "every_eigenvector_collides": v.every_eigenvector_collides(),
                }),
                &["i", "j"],
            );
            for (i, j) in &v.colliding_pairs {
                rep.row(vec![i.to_string(), j.to_string()]);
            }
            rep.note(format!(
                "dimension {}; every eigenvector has a repeated coordinate: {}",
                v.dimension(),
                v.every_eigenvector_collides()
            ));
            Ok(rep)
        }
    }
}
