//! Flat `key = value` experiment configs.
//!
//! ```text
//! # comment
//! experiment = walk
//! seed = 7
//! t_max = 40
//! p = 0.9
//! deltas = [0, 0.5, 1]
//! ```
//!
//! Scalars are integers, floats, `true`/`false`, bare words or quoted
//! strings. Lists hold scalars only. `experiment`, `seed`, `budget`, `out`
//! and `format` are reserved; every other key must be a parameter of the
//! chosen experiment.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::catalog::{find, ExperimentSchema, ParamKind, ParamSpec};
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    List(Vec<Value>),
}

impl fmt::Display for Value {
    /// Canonical text, also used for hashing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{b}"),
            Value::Int(i) => write!(f, "{i}"),
            Value::Float(x) => write!(f, "{x:?}"),
            Value::Str(s) => write!(f, "{}", serde_json::to_string(s).expect("strings serialize")),
            Value::List(items) => {
                write!(f, "[")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    JsonLines,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json-lines" => Ok(Format::JsonLines),
            other => Err(format!("unknown format `{other}` (expected csv or json-lines)")),
        }
    }
}

/// A validated config with every parameter resolved (defaults filled in).
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub params: BTreeMap<String, Value>,
    pub seed: u64,
    /// Work-unit cap; `None` runs to completion.
    pub budget: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    /// Source line of each key given explicitly.
    pub lines: BTreeMap<String, usize>,
}

const RESERVED: [&str; 5] = ["experiment", "seed", "budget", "out", "format"];

impl ExperimentConfig {
    /// Config with every parameter at its default.
    pub fn defaults(experiment: &str) -> Result<Self, CliError> {
        parse(&format!("experiment = {experiment}\n"))
    }

    /// Sets one parameter as if it had been written in the config file.
    pub fn set(&mut self, key: &str, value: Value) -> Result<(), CliError> {
        let schema = find(&self.experiment).expect("validated experiment");
        let spec = schema.param(key).ok_or_else(|| unknown_key(None, key, &self.experiment))?;
        let v = coerce(&value, spec).map_err(|msg| CliError::config(None, Some(key), msg))?;
        self.params.insert(key.to_string(), v);
        Ok(())
    }

    /// Text the hash is taken over: experiment, budget and resolved
    /// parameters in key order. Seed and output options are excluded.
    pub fn canonical(&self) -> String {
        let mut s = format!("experiment = {}\n", self.experiment);
        if let Some(b) = self.budget {
            s.push_str(&format!("budget = {b}\n"));
        }
        for (k, v) in &self.params {
            s.push_str(&format!("{k} = {v}\n"));
        }
        s
    }

    /// SHA-256 of [`canonical`](Self::canonical), hex encoded.
    pub fn hash(&self) -> String {
        Sha256::digest(self.canonical().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn line_of(&self, key: &str) -> Option<usize> {
        self.lines.get(key).copied()
    }
}

fn unknown_key(line: Option<usize>, key: &str, experiment: &str) -> CliError {
    CliError::config(line, Some(key), format!("unknown key for experiment `{experiment}`"))
}

/// Drops a trailing `#` comment that is not inside quotes.
fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

fn split_list(body: &str) -> Result<Vec<&str>, String> {
    let mut parts = Vec::new();
    let (mut quoted, mut start) = (false, 0);
    for (i, c) in body.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '[' | ']' if !quoted => return Err("lists cannot be nested".into()),
            ',' if !quoted => {
                parts.push(body[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if quoted {
        return Err("unterminated string".into());
    }
    let last = body[start..].trim();
    if !(last.is_empty() && !parts.is_empty()) {
        parts.push(last);
    }
    if parts.len() == 1 && parts[0].is_empty() {
        return Ok(Vec::new());
    }
    Ok(parts)
}

fn parse_scalar(s: &str) -> Result<Value, String> {
    if s.is_empty() {
        return Err("missing value".into());
    }
    if s.starts_with('"') {
        return serde_json::from_str::<String>(s).map(Value::Str).map_err(|_| format!("malformed string {s}"));
    }
    match s {
        "true" => return Ok(Value::Bool(true)),
        "false" => return Ok(Value::Bool(false)),
        _ => {}
    }
    if let Ok(i) = s.parse::<i64>() {
        return Ok(Value::Int(i));
    }
    let numeric_start = s.starts_with(|c: char| c.is_ascii_digit() || matches!(c, '-' | '+' | '.'));
    if numeric_start {
        return match s.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(Value::Float(x)),
            _ => Err(format!("malformed number `{s}`")),
        };
    }
    if s.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.' | '/')) {
        return Ok(Value::Str(s.to_string()));
    }
    Err(format!("cannot read `{s}` (quote strings containing spaces or symbols)"))
}

/// Parses the right-hand side of one line.
pub fn parse_value(s: &str) -> Result<Value, String> {
    let s = s.trim();
    if let Some(body) = s.strip_prefix('[') {
        let body = body.strip_suffix(']').ok_or("list is missing its closing `]`")?;
        return split_list(body)?.into_iter().map(parse_scalar).collect::<Result<Vec<_>, _>>().map(Value::List);
    }
    parse_scalar(s)
}

fn int_of(v: &Value) -> Option<i64> {
    match *v {
        Value::Int(i) => Some(i),
        // 1e6 and friends
        Value::Float(x) if x.fract() == 0.0 && x.abs() <= 9.007_199_254_740_992e15 => Some(x as i64),
        _ => None,
    }
}

fn float_of(v: &Value) -> Option<f64> {
    match *v {
        Value::Int(i) => Some(i as f64),
        Value::Float(x) => Some(x),
        _ => None,
    }
}

fn check_range(x: f64, spec: &ParamSpec) -> Result<(), String> {
    if let Some(lo) = spec.min {
        if x < lo {
            return Err(format!("{x} is below the minimum {lo}"));
        }
    }
    if let Some(hi) = spec.max {
        if x > hi {
            return Err(format!("{x} is above the maximum {hi}"));
        }
    }
    Ok(())
}

fn coerce_scalar(v: &Value, kind: ParamKind, spec: &ParamSpec) -> Result<Value, String> {
    let got = || format!("expected {}, got {v}", kind.describe());
    match kind {
        ParamKind::Int | ParamKind::IntList => {
            let i = int_of(v).ok_or_else(got)?;
            check_range(i as f64, spec)?;
            Ok(Value::Int(i))
        }
        ParamKind::Float | ParamKind::FloatList => {
            let x = float_of(v).ok_or_else(got)?;
            check_range(x, spec)?;
            Ok(Value::Float(x))
        }
        ParamKind::Bool => match v {
            Value::Bool(b) => Ok(Value::Bool(*b)),
            _ => Err(got()),
        },
        ParamKind::Str => match v {
            Value::Str(s) => {
                if let Some(choices) = &spec.choices {
                    if !choices.contains(s) {
                        return Err(format!("`{s}` is not one of {}", choices.join(", ")));
                    }
                }
                Ok(Value::Str(s.clone()))
            }
            _ => Err(got()),
        },
    }
}

/// Checks a value against its parameter spec and brings it to canonical
/// form (integers in float fields become floats, a scalar in a list field
/// becomes a one-element list).
pub fn coerce(v: &Value, spec: &ParamSpec) -> Result<Value, String> {
    match spec.kind {
        ParamKind::IntList | ParamKind::FloatList => {
            let items = match v {
                Value::List(items) => items.clone(),
                other => vec![other.clone()],
            };
            if items.is_empty() {
                return Err("list must not be empty".into());
            }
            items.iter().map(|x| coerce_scalar(x, spec.kind, spec)).collect::<Result<Vec<_>, _>>().map(Value::List)
        }
        kind => {
            if matches!(v, Value::List(_)) {
                return Err(format!("expected {}, got a list", kind.describe()));
            }
            coerce_scalar(v, kind, spec)
        }
    }
}

/// Checks that a parameter map is complete and valid for `schema`.
pub fn validate(schema: &ExperimentSchema, params: &BTreeMap<String, Value>) -> Result<(), CliError> {
    for k in params.keys() {
        if schema.param(k).is_none() {
            return Err(unknown_key(None, k, &schema.name));
        }
    }
    for spec in &schema.params {
        let v = params.get(&spec.name).ok_or_else(|| CliError::config(None, Some(&spec.name), "missing".into()))?;
        let c = coerce(v, spec).map_err(|msg| CliError::config(None, Some(&spec.name), msg))?;
        if &c != v {
            return Err(CliError::config(None, Some(&spec.name), format!("not in canonical form: {v}")));
        }
    }
    Ok(())
}

/// Parses and validates config text.
pub fn parse(text: &str) -> Result<ExperimentConfig, CliError> {
    let mut raw: Vec<(usize, String, Value, String)> = Vec::new();
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let n = i + 1;
        let body = strip_comment(line).trim();
        if body.is_empty() {
            continue;
        }
        let (key, rhs) = body
            .split_once('=')
            .ok_or_else(|| CliError::config(Some(n), None, format!("expected `key = value`, got `{body}`")))?;
        let key = key.trim();
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            return Err(CliError::config(Some(n), None, format!("invalid key `{key}`")));
        }
        if let Some(prev) = seen.insert(key.to_string(), n) {
            return Err(CliError::config(Some(n), Some(key), format!("duplicate key (first set on line {prev})")));
        }
        let value = parse_value(rhs).map_err(|msg| CliError::config(Some(n), Some(key), msg))?;
        raw.push((n, key.to_string(), value, rhs.trim().to_string()));
    }

    let get = |k: &str| raw.iter().find(|(_, key, _, _)| key == k);
    let (exp_line, experiment) = match get("experiment") {
        Some((n, _, Value::Str(s), _)) => (*n, s.clone()),
        Some((n, _, v, _)) => return Err(CliError::config(Some(*n), Some("experiment"), format!("expected a name, got {v}"))),
        None => return Err(CliError::config(None, Some("experiment"), "missing".into())),
    };
    let schema = find(&experiment).ok_or_else(|| {
        CliError::config(Some(exp_line), Some("experiment"), format!("unknown experiment `{experiment}` (see `loqc list`)"))
    })?;

    let mut cfg = ExperimentConfig {
        experiment: experiment.clone(),
        params: schema.params.iter().map(|p| (p.name.clone(), p.default.clone())).collect(),
        seed: 0,
        budget: None,
        out: None,
        format: None,
        lines: seen,
    };
    for (n, key, value, text) in &raw {
        let err = |msg: String| CliError::config(Some(*n), Some(key), msg);
        match key.as_str() {
            "experiment" => {}
            // Parsed from the text so the full u64 range is accepted.
            "seed" => cfg.seed = text.parse::<u64>().map_err(|_| err(format!("expected a non-negative integer, got {text}")))?,
            "budget" => match int_of(value) {
                Some(b) if b >= 1 => cfg.budget = Some(b as u64),
                _ => return Err(err(format!("expected a positive integer, got {value}"))),
            },
            "out" => match value {
                Value::Str(s) => cfg.out = Some(PathBuf::from(s)),
                _ => return Err(err(format!("expected a path, got {value}"))),
            },
            "format" => match value {
                Value::Str(s) => cfg.format = Some(s.parse().map_err(err)?),
                _ => return Err(err(format!("expected csv or json-lines, got {value}"))),
            },
            _ => {
                let spec = schema.param(key).ok_or_else(|| unknown_key(Some(*n), key, &experiment))?;
                cfg.params.insert(key.clone(), coerce(value, spec).map_err(err)?);
            }
        }
    }
    debug_assert!(RESERVED.iter().all(|r| schema.param(r).is_none()));
    Ok(cfg)
}
