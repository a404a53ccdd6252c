//! Runs loqc experiments from flat config files and writes their tables as
//! CSV or JSON lines.
//!
//! Output depends only on the config and the seed: tasks draw from their own
//! counter-based streams, run in parallel and are written in plan order.

pub mod catalog;
pub mod config;
pub mod experiments;

use rayon::prelude::*;

pub use catalog::{catalog, find, ColumnSpec, ExperimentSchema, ParamKind, ParamSpec};
pub use config::{parse, ExperimentConfig, Format, Value};
pub use experiments::{Cell, Row};

/// `git describe`-style version written into every footer.
pub const VERSION: &str = concat!("v", env!("CARGO_PKG_VERSION"));

pub const EXIT_OK: u8 = 0;
pub const EXIT_IO: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}", config_message(*.line, .field.as_deref(), .msg))]
    Config { line: Option<usize>, field: Option<String>, msg: String },
    #[error("experiment `{experiment}` failed: {msg}")]
    Experiment { experiment: String, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn config_message(line: Option<usize>, field: Option<&str>, msg: &str) -> String {
    let mut s = "config error".to_string();
    if let Some(n) = line {
        s.push_str(&format!(" at line {n}"));
    }
    if let Some(k) = field {
        s.push_str(&format!(", field `{k}`"));
    }
    format!("{s}: {msg}")
}

impl CliError {
    pub fn config(line: Option<usize>, field: Option<&str>, msg: String) -> Self {
        CliError::Config { line, field: field.map(str::to_string), msg }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            // Parameter combinations the libraries reject are config errors too.
            CliError::Config { .. } | CliError::Experiment { .. } => EXIT_CONFIG,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Complete,
    /// The budget ran out; only the first `completed` of `total` tasks ran.
    BudgetExceeded { completed: usize, total: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub experiment: String,
    pub seed: u64,
    pub config_hash: String,
    pub columns: Vec<ColumnSpec>,
    pub rows: Vec<Row>,
    pub status: Status,
    pub work_units: u64,
}

impl RunOutput {
    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Complete => EXIT_OK,
            Status::BudgetExceeded { .. } => EXIT_BUDGET,
        }
    }

    /// Index of the column with the given name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }
}

/// Runs every task that fits in the budget, in parallel, and collects rows
/// in plan order.
pub fn execute(cfg: &ExperimentConfig) -> Result<RunOutput, CliError> {
    let schema = find(&cfg.experiment).ok_or_else(|| CliError::config(None, Some("experiment"), "unknown experiment".into()))?;
    let tasks = experiments::plan(cfg)?;
    let total = tasks.len();
    let mut spent = 0u64;
    let mut accepted = Vec::with_capacity(total);
    for t in tasks {
        if cfg.budget.is_some_and(|b| spent.saturating_add(t.cost) > b) {
            break;
        }
        spent += t.cost;
        accepted.push(t);
    }
    let completed = accepted.len();
    let results: Vec<Result<Vec<Row>, String>> = accepted.into_par_iter().map(|t| (t.run)()).collect();
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r.map_err(|msg| CliError::Experiment { experiment: cfg.experiment.clone(), msg })?);
    }
    let status = if completed == total { Status::Complete } else { Status::BudgetExceeded { completed, total } };
    Ok(RunOutput {
        experiment: cfg.experiment.clone(),
        seed: cfg.seed,
        config_hash: cfg.hash(),
        columns: schema.columns.clone(),
        rows,
        status,
        work_units: spent,
    })
}

/// Shortest round-trip decimal, switching to exponent form for very small
/// or very large magnitudes.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if (1e-4..1e15).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn csv_cell(c: &Cell) -> String {
    match c {
        Cell::Int(i) => i.to_string(),
        Cell::Float(x) => format_float(*x),
        Cell::Bool(b) => b.to_string(),
        Cell::Str(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Str(s) => s.clone(),
        Cell::Empty => String::new(),
    }
}

fn json_cell(c: &Cell) -> serde_json::Value {
    match c {
        Cell::Int(i) => (*i).into(),
        // -0 prints as 0, as in CSV
        Cell::Float(x) if *x == 0.0 => 0.0.into(),
        Cell::Float(x) if x.is_finite() => (*x).into(),
        Cell::Float(_) | Cell::Empty => serde_json::Value::Null,
        Cell::Bool(b) => (*b).into(),
        Cell::Str(s) => s.clone().into(),
    }
}

fn json(v: impl Into<serde_json::Value>) -> String {
    v.into().to_string()
}

fn status_fields(out: &RunOutput) -> Vec<(&'static str, String)> {
    let mut f = vec![
        ("seed", out.seed.to_string()),
        ("version", VERSION.to_string()),
        ("config_hash", out.config_hash.clone()),
        (
            "status",
            match out.status {
                Status::Complete => "complete".into(),
                Status::BudgetExceeded { .. } => "budget-exceeded".into(),
            },
        ),
    ];
    if let Status::BudgetExceeded { completed, total } = out.status {
        f.push(("completed_tasks", completed.to_string()));
        f.push(("total_tasks", total.to_string()));
    }
    f.push(("rows", out.rows.len().to_string()));
    f.push(("work_units", out.work_units.to_string()));
    f
}

/// Renders a run. `wall_time` (seconds) is only written when given, since
/// it breaks byte-for-byte reproducibility.
pub fn render(out: &RunOutput, format: Format, wall_time: Option<f64>) -> String {
    let mut footer = status_fields(out);
    let wall = wall_time.map(|w| format!("{w:.3}"));
    let mut s = String::new();
    match format {
        Format::Csv => {
            s.push_str(&format!("# loqc experiment={} seed={} config_hash={}\n", out.experiment, out.seed, out.config_hash));
            s.push_str(&out.columns.iter().map(ColumnSpec::header).collect::<Vec<_>>().join(","));
            s.push('\n');
            for row in &out.rows {
                s.push_str(&row.iter().map(csv_cell).collect::<Vec<_>>().join(","));
                s.push('\n');
            }
            if let Some(w) = wall {
                footer.push(("wall_time_s", w));
            }
            for (k, v) in footer {
                s.push_str(&format!("# {k}={v}\n"));
            }
        }
        Format::JsonLines => {
            let provenance = format!(
                "\"experiment\":{},\"seed\":{},\"config_hash\":{}",
                json(out.experiment.as_str()),
                out.seed,
                json(out.config_hash.as_str())
            );
            let headers: Vec<String> = out.columns.iter().map(ColumnSpec::header).collect();
            s.push_str(&format!("{{{provenance},\"columns\":{}}}\n", json(headers.clone())));
            for row in &out.rows {
                let cells: Vec<String> = headers.iter().zip(row).map(|(h, c)| format!("{}:{}", json(h.as_str()), json_cell(c))).collect();
                s.push_str(&format!("{{{provenance},{}}}\n", cells.join(",")));
            }
            let mut fields: Vec<String> = footer
                .into_iter()
                .map(|(k, v)| {
                    let value = match k {
                        "seed" | "rows" | "work_units" | "completed_tasks" | "total_tasks" => v,
                        _ => json(v),
                    };
                    format!("\"{k}\":{value}")
                })
                .collect();
            if let Some(w) = wall {
                fields.push(format!("\"wall_time_s\":{w}"));
            }
            s.push_str(&format!("{{\"footer\":{{{}}}}}\n", fields.join(",")));
        }
    }
    s
}

/// The catalog as JSON lines, one schema per line.
pub fn render_catalog() -> String {
    catalog().iter().map(|s| serde_json::to_string(s).expect("schemas serialize") + "\n").collect()
}
