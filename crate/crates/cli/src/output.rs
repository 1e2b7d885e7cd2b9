use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

use crate::args::{self, SchemaName};

/// Where a run's JSON report and CSV table go.
pub struct Output {
    out: Option<PathBuf>,
    csv: Option<PathBuf>,
}

impl From<args::Output> for Output {
    fn from(o: args::Output) -> Self {
        Output { out: o.out, csv: o.csv }
    }
}

impl Output {
    /// Writes the report (stdout unless `--out`) and, when requested, the CSV.
    pub fn emit(&self, report: &impl Serialize, csv: Option<String>) -> Result<()> {
        let text = serde_json::to_string_pretty(report)? + "\n";
        let csv_to_stdout = self.csv.as_deref() == Some(Path::new("-"));
        match &self.out {
            Some(path) => fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
            None if !csv_to_stdout => std::io::stdout().write_all(text.as_bytes())?,
            None => {}
        }
        if let Some(path) = &self.csv {
            let table = csv.context("this command has no CSV table")?;
            if csv_to_stdout {
                std::io::stdout().write_all(table.as_bytes())?;
            } else {
                fs::write(path, table).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        Ok(())
    }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(v)? + "\n").with_context(|| format!("writing {}", path.display()))
}

/// A CSV table from a header and string rows.
pub fn csv_rows<const N: usize>(header: [&str; N], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory CSV write");
    for r in rows {
        w.write_record(&r).expect("in-memory CSV write");
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV flush")).expect("CSV is UTF-8")
}

/// The serialized name of a unit enum variant.
pub fn enum_text(v: &impl Serialize) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => String::new(),
    }
}

pub fn schema(name: SchemaName) -> &'static str {
    match name {
        SchemaName::Enumerate => include_str!("../schemas/enumerate.schema.json"),
        SchemaName::Axioms => include_str!("../schemas/axioms.schema.json"),
        SchemaName::ControlCheck => include_str!("../schemas/control-check.schema.json"),
        SchemaName::RlbCheck => include_str!("../schemas/rlb-check.schema.json"),
        SchemaName::RightHanded => include_str!("../schemas/right-handed.schema.json"),
        SchemaName::Evolve => include_str!("../schemas/evolve.schema.json"),
        SchemaName::Character => include_str!("../schemas/character.schema.json"),
        SchemaName::Norm => include_str!("../schemas/norm.schema.json"),
        SchemaName::Series => include_str!("../schemas/series.schema.json"),
        SchemaName::Probe => include_str!("../schemas/probe.schema.json"),
        SchemaName::Counterexample => include_str!("../schemas/counterexample.schema.json"),
        SchemaName::GrowthCheck => include_str!("../schemas/growth-check.schema.json"),
    }
}
