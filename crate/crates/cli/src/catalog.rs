//! Machine-readable experiment schemas.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::config::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParamKind {
    Int,
    Float,
    Bool,
    Str,
    IntList,
    FloatList,
}

impl ParamKind {
    pub fn describe(self) -> &'static str {
        match self {
            ParamKind::Int | ParamKind::IntList => "an integer",
            ParamKind::Float | ParamKind::FloatList => "a number",
            ParamKind::Bool => "true or false",
            ParamKind::Str => "a name",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamSpec {
    pub name: String,
    pub kind: ParamKind,
    pub default: Value,
    pub unit: String,
    pub help: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub choices: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnSpec {
    pub name: String,
    pub unit: String,
}

impl ColumnSpec {
    /// `name[unit]`, as written in table headers.
    pub fn header(&self) -> String {
        format!("{}[{}]", self.name, self.unit)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSchema {
    pub name: String,
    pub summary: String,
    /// What one unit of `budget` pays for.
    pub cost_unit: String,
    pub params: Vec<ParamSpec>,
    pub columns: Vec<ColumnSpec>,
}

impl ExperimentSchema {
    pub fn param(&self, name: &str) -> Option<&ParamSpec> {
        self.params.iter().find(|p| p.name == name)
    }
}

// Builders used by the experiment definitions.

fn spec(name: &str, kind: ParamKind, default: Value, unit: &str, help: &str) -> ParamSpec {
    ParamSpec { name: name.into(), kind, default, unit: unit.into(), help: help.into(), min: None, max: None, choices: None }
}

pub(crate) fn int(name: &str, default: i64, range: (i64, i64), unit: &str, help: &str) -> ParamSpec {
    ParamSpec { min: Some(range.0 as f64), max: Some(range.1 as f64), ..spec(name, ParamKind::Int, Value::Int(default), unit, help) }
}

pub(crate) fn float(name: &str, default: f64, range: (f64, f64), unit: &str, help: &str) -> ParamSpec {
    ParamSpec { min: Some(range.0), max: Some(range.1), ..spec(name, ParamKind::Float, Value::Float(default), unit, help) }
}

pub(crate) fn boolean(name: &str, default: bool, help: &str) -> ParamSpec {
    spec(name, ParamKind::Bool, Value::Bool(default), "flag", help)
}

pub(crate) fn choice(name: &str, default: &str, choices: &[&str], help: &str) -> ParamSpec {
    ParamSpec {
        choices: Some(choices.iter().map(|c| c.to_string()).collect()),
        ..spec(name, ParamKind::Str, Value::Str(default.into()), "label", help)
    }
}

pub(crate) fn int_list(name: &str, default: &[i64], range: (i64, i64), unit: &str, help: &str) -> ParamSpec {
    let d = Value::List(default.iter().map(|&i| Value::Int(i)).collect());
    ParamSpec { min: Some(range.0 as f64), max: Some(range.1 as f64), ..spec(name, ParamKind::IntList, d, unit, help) }
}

pub(crate) fn float_list(name: &str, default: &[f64], range: (f64, f64), unit: &str, help: &str) -> ParamSpec {
    let d = Value::List(default.iter().map(|&x| Value::Float(x)).collect());
    ParamSpec { min: Some(range.0), max: Some(range.1), ..spec(name, ParamKind::FloatList, d, unit, help) }
}

pub(crate) fn col(name: &str, unit: &str) -> ColumnSpec {
    ColumnSpec { name: name.into(), unit: unit.into() }
}

/// Every experiment, in a fixed order.
pub fn catalog() -> &'static [ExperimentSchema] {
    static CATALOG: OnceLock<Vec<ExperimentSchema>> = OnceLock::new();
    CATALOG.get_or_init(crate::experiments::schemas)
}

pub fn find(name: &str) -> Option<&'static ExperimentSchema> {
    catalog().iter().find(|s| s.name == name)
}
