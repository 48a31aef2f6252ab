mod density;
mod eds;
mod lrs;
mod prooflab;
mod refute;

use std::path::Path;

use edslab::elliptic::{CurveQ, PointQ};
use edslab::lrs::LrsSpec;
use edslab::par::Execution;

use crate::args::{Command, CurveArgs, SpecArgs};
use crate::error::CliError;
use crate::output::Report;

/// A report plus an optional failure that still sets the exit code after printing.
pub struct Outcome {
    pub report: Report,
    pub failure: Option<CliError>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, failure: None }
    }
}

pub fn dispatch(cmd: Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Eds(c) => eds::run(c).map(Into::into),
        Command::Lrs(c) => lrs::run(c).map(Into::into),
        Command::Density(c) => density::run(c).map(Into::into),
        Command::Refute(a) => refute::refute(a),
        Command::Verify(a) => refute::verify(a),
        Command::Falsify(a) => refute::falsify(a).map(Into::into),
        Command::Prooflab(c) => prooflab::run(c).map(Into::into),
    }
}

pub fn exec() -> Execution {
    Execution::default()
}

pub fn curve_point(c: &CurveArgs) -> Result<(CurveQ, PointQ), CliError> {
    let curve = CurveQ::new(c.curve[0].clone(), c.curve[1].clone())?;
    let point = curve.point(c.point[0].clone(), c.point[1].clone(), c.point[2].clone())?;
    Ok((curve, point))
}

pub fn spec(s: &SpecArgs) -> Result<LrsSpec, CliError> {
    let text = match (&s.spec, &s.spec_file) {
        (Some(t), None) => t.clone(),
        (None, Some(path)) => read(path)?,
        _ => return Err(CliError::Validation("give exactly one of --spec or --spec-file".into())),
    };
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    Ok(line.parse()?)
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

pub fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".into(), |x| x.to_string())
}
