//! History log: one JSON line per evaluated model, written as soon as the model
//! joins the history.
//!
//! ```text
//! {"id":0,"parent":null,"variant":"aging","accuracy":0.53,"genotype":"0110"}
//! ```

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use super::population::Individual;
use super::space::Genotype;
use super::Variant;

pub struct HistoryLog {
    out: Box<dyn Write + Send>,
}

impl HistoryLog {
    pub fn new(out: Box<dyn Write + Send>) -> Self {
        Self { out }
    }

    pub fn create(path: &Path) -> io::Result<Self> {
        Ok(Self::new(Box::new(BufWriter::new(File::create(path)?))))
    }

    pub fn write<G: Genotype>(&mut self, individual: &Individual<G>, variant: Variant) -> io::Result<()> {
        writeln!(self.out, "{}", format_line(individual, variant))?;
        self.out.flush()
    }
}

pub(crate) fn format_line<G: Genotype>(individual: &Individual<G>, variant: Variant) -> String {
    let parent = individual
        .parent_id
        .map_or_else(|| "null".to_string(), |p| p.to_string());
    format!(
        "{{\"id\":{},\"parent\":{},\"variant\":\"{}\",\"accuracy\":{},\"genotype\":{}}}",
        individual.id,
        parent,
        variant,
        format_accuracy(individual.accuracy),
        individual.genotype.document()
    )
}

fn format_accuracy(x: f64) -> String {
    if x.is_finite() {
        // Debug prints the shortest representation that round-trips.
        format!("{x:?}")
    } else {
        "null".into()
    }
}

/// A parsed log line. The genotype is kept as raw JSON.
#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct LogRecord {
    pub id: u64,
    pub parent: Option<u64>,
    pub variant: String,
    pub accuracy: f64,
    pub genotype: Value,
}

impl LogRecord {
    /// The genotype document as text (a bit string for the toy space).
    pub fn genotype_text(&self) -> String {
        match &self.genotype {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
}

pub fn parse_log_line(line: &str) -> Result<LogRecord, serde_json::Error> {
    serde_json::from_str(line)
}
