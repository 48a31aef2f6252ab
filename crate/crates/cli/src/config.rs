//! `key = value` config files, merged under the command-line flags.

use std::ffi::OsString;
use std::path::Path;

use crate::error::CliError;

/// Parse `key = value` lines; `#` starts a comment. A double-quoted value
/// stays one argument, anything else is split on whitespace.
pub fn parse(text: &str) -> Result<Vec<(String, Vec<String>)>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Validation(format!("config line {}: expected key = value", i + 1)))?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() || key == "config" {
            return Err(CliError::Validation(format!("config line {}: bad key", i + 1)));
        }
        let v = v.trim();
        let values = match v.strip_prefix('"').and_then(|r| r.strip_suffix('"')) {
            Some(inner) => vec![inner.to_owned()],
            None => v.split_whitespace().map(str::to_owned).collect(),
        };
        out.push((key, values));
    }
    Ok(out)
}

fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(rest) = s.strip_prefix("--config=") {
            return Some(rest.into());
        }
    }
    None
}

/// Append config entries whose flag is absent from `args`.
pub fn merge(args: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(Path::new(&path))
        .map_err(|e| CliError::Validation(format!("config {}: {e}", path.to_string_lossy())))?;
    let present: Vec<String> = args
        .iter()
        .filter_map(|a| a.to_str())
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a).to_owned())
        .collect();
    let mut out = args;
    for (key, values) in parse(&text)? {
        if present.contains(&key) {
            continue;
        }
        if values.is_empty() || values == ["true"] {
            out.push(format!("--{key}").into());
        } else if values != ["false"] {
            out.push(format!("--{key}").into());
            out.extend(values.into_iter().map(OsString::from));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_missing_keys_only() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "# fixture\np_max = 500\nq=5\ncurve = -1 3\nspec = \"lrs 2 1 1 0 1\"\n").unwrap();
        let args: Vec<OsString> = ["edslab", "refute", "--q", "7", "--config"]
            .iter()
            .map(OsString::from)
            .chain([path.clone().into_os_string()])
            .collect();
        let merged = merge(args).unwrap();
        let tail: Vec<String> = merged[6..].iter().map(|s| s.to_string_lossy().into_owned()).collect();
        assert_eq!(tail, ["--p-max", "500", "--curve", "-1", "3", "--spec", "lrs 2 1 1 0 1"]);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse("just words").is_err());
        assert!(parse(" = 4").is_err());
    }
}
