//! `--config` support: values from the file's section for the chosen
//! subcommand are spliced in as flags ahead of the user's own, so with
//! `args_override_self` an explicit flag always wins.
//!
//! ```json
//! { "rankagg": { "n": 50, "p": [0.05, 0.07], "sequential": true },
//!   "spectral": { "eps": 0.1 } }
//! ```

use std::ffi::OsString;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::Value;

use crate::cli::Command;

/// Index of the subcommand token in `argv`, skipping global options.
fn subcommand_position(argv: &[OsString]) -> Option<usize> {
    let mut i = 1;
    while i < argv.len() {
        let arg = argv[i].to_string_lossy();
        if arg == "--config" || arg == "--manifest" {
            i += 2;
            continue;
        }
        if Command::NAMES.contains(&arg.as_ref()) {
            return Some(i);
        }
        i += 1;
    }
    None
}

fn flag_args(section: &serde_json::Map<String, Value>) -> Result<Vec<OsString>> {
    let mut out = Vec::new();
    for (key, value) in section {
        let flag = format!("--{}", key.replace('_', "-"));
        match value {
            Value::Bool(true) => out.push(flag.into()),
            Value::Bool(false) | Value::Null => {}
            Value::Number(n) => out.extend([flag.into(), n.to_string().into()]),
            Value::String(s) => out.extend([flag.into(), s.into()]),
            Value::Array(items) => {
                let joined: Vec<String> = items
                    .iter()
                    .map(|v| match v {
                        Value::String(s) => Ok(s.clone()),
                        Value::Number(n) => Ok(n.to_string()),
                        other => bail!("config key `{key}`: unsupported list item {other}"),
                    })
                    .collect::<Result<_>>()?;
                out.extend([flag.into(), joined.join(",").into()]);
            }
            Value::Object(_) => bail!("config key `{key}`: nested objects are not supported"),
        }
    }
    Ok(out)
}

/// `argv` with the config file's defaults for the chosen subcommand inserted.
pub fn merge(argv: Vec<OsString>, config: &Path) -> Result<Vec<OsString>> {
    let text = std::fs::read_to_string(config).with_context(|| format!("reading config {}", config.display()))?;
    let root: Value = serde_json::from_str(&text).with_context(|| format!("parsing config {}", config.display()))?;
    let Some(root) = root.as_object() else {
        bail!("config {} must be a JSON object", config.display());
    };
    let Some(pos) = subcommand_position(&argv) else {
        return Ok(argv);
    };
    let name = argv[pos].to_string_lossy().into_owned();
    let mut merged = argv[..=pos].to_vec();
    if let Some(section) = root.get(&name) {
        let Some(section) = section.as_object() else {
            bail!("config section `{name}` must be a JSON object");
        };
        merged.extend(flag_args(section)?);
    }
    merged.extend_from_slice(&argv[pos + 1..]);
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(args: &[&str]) -> Vec<OsString> {
        args.iter().map(OsString::from).collect()
    }

    #[test]
    fn splices_section_before_user_flags() {
        let dir = std::env::temp_dir().join(format!("hyperwalk-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cfg.json");
        std::fs::write(&path, r#"{"rankagg": {"n": 10, "p": [0.1, 0.2], "sequential": true, "dry": false}}"#).unwrap();
        let argv = os(&["hyperwalk", "--config", path.to_str().unwrap(), "rankagg", "--n", "20"]);
        let merged = merge(argv, &path).unwrap();
        let got: Vec<String> = merged.iter().map(|s| s.to_string_lossy().into_owned()).collect();
        assert_eq!(
            &got[3..],
            &["rankagg", "--n", "10", "--p", "0.1,0.2", "--sequential", "--n", "20"]
        );
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn finds_subcommand_after_globals() {
        assert_eq!(subcommand_position(&os(&["x", "--json", "--manifest", "demo", "demo"])), Some(4));
        assert_eq!(subcommand_position(&os(&["x", "--json"])), None);
    }
}
