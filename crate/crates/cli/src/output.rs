use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::Format;

/// Flat view of a report for CSV output.
#[derive(Debug, Default)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Table {
            headers: headers.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// Every report carries the tool version, the configuration that produced it
/// and the seed. The worker count is left out so output does not depend on it.
#[derive(Debug, Serialize)]
pub struct Envelope {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: Value,
    pub seed: u64,
    pub passed: bool,
    pub failures: Vec<String>,
    pub report: Value,
    #[serde(skip)]
    pub table: Table,
}

impl Envelope {
    pub fn new(command: &str, config: Value, seed: u64, report: impl Serialize, table: Table) -> anyhow::Result<Self> {
        Ok(Envelope {
            tool: "profgen",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config,
            seed,
            passed: true,
            failures: Vec::new(),
            report: serde_json::to_value(report)?,
            table,
        })
    }

    pub fn fail_unless(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.passed = false;
            self.failures.push(what.into());
        }
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> anyhow::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(&self.table.headers)?;
                for row in &self.table.rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}
