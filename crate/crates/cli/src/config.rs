//! `--config FILE` expansion. The file holds a JSON object whose `command`
//! entry names the verbs and whose other entries are flags:
//! `{"command": "verify persistence", "M": 6, "N": 2, "n": 1, "t": 0.5}`.
//! Booleans become bare flags when true, arrays are joined with commas.
//! A flag given on the command line replaces the same entry of the file.

use std::fs;

use serde_json::Value;

use crate::output::CliError;

pub fn expand(argv: Vec<String>) -> Result<Vec<String>, CliError> {
    let mut path = None;
    let mut rest = Vec::new();
    let mut iter = argv.into_iter();
    let program = iter.next().unwrap_or_else(|| "xxpaths".to_string());
    while let Some(arg) = iter.next() {
        if arg == "--config" {
            path = Some(iter.next().ok_or_else(|| CliError::Usage("--config needs a file".into()))?);
        } else if let Some(p) = arg.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = path else {
        let mut out = vec![program];
        out.extend(rest);
        return Ok(out);
    };
    let text = fs::read_to_string(&path).map_err(|e| CliError::Io(format!("cannot read {path}: {e}")))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {path} is not valid JSON: {e}")))?;
    let Value::Object(map) = value else {
        return Err(CliError::Usage(format!("config {path} must be a JSON object")));
    };

    let split = rest.iter().position(|a| a.starts_with('-')).unwrap_or(rest.len());
    let cli_flags = rest.split_off(split);
    let mut verbs = rest;
    if let Some(command) = map.get("command") {
        if !verbs.is_empty() {
            return Err(CliError::Usage("command given both in the config file and on the command line".into()));
        }
        verbs = match command {
            Value::String(s) => s.split_whitespace().map(str::to_string).collect(),
            Value::Array(items) => items
                .iter()
                .map(|v| match v {
                    Value::String(s) => Ok(s.clone()),
                    _ => Err(CliError::Usage("config command entries must be strings".into())),
                })
                .collect::<Result<_, _>>()?,
            _ => return Err(CliError::Usage("config command must be a string or a list".into())),
        };
    }

    let overridden: Vec<&str> = cli_flags
        .iter()
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a))
        .collect();
    let mut out = vec![program];
    out.extend(verbs);
    for (key, value) in &map {
        if key == "command" || overridden.contains(&key.as_str()) {
            continue;
        }
        let flag = format!("--{key}");
        match value {
            Value::Bool(true) => out.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                out.push(flag);
                out.push(items.iter().map(scalar).collect::<Result<Vec<_>, _>>()?.join(","));
            }
            other => {
                out.push(flag);
                out.push(scalar(other)?);
            }
        }
    }
    out.extend(cli_flags);
    Ok(out)
}

fn scalar(v: &Value) -> Result<String, CliError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        _ => Err(CliError::Usage(format!("unsupported config value {v}"))),
    }
}
