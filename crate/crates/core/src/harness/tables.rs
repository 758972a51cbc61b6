//! Comma-separated output tables. Each has a fixed header row and is a pure
//! function of its input, so re-emitting from the same data is byte-identical.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::metrics::TrajectoryStat;
use super::sweep::{ComparisonReport, DimSweepReport, SweepResult};
use super::{ExperimentPlan, HarnessError, PlanReport};
use crate::engine::{parse_log_line, LogRecord};

fn opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

/// One row per repeat. Wall time lives in [`timings_csv`] so this table stays
/// reproducible.
pub fn summary_csv(plan: &ExperimentPlan, report: &PlanReport) -> String {
    let mut out = String::from(
        "repeat,seed,variant,population_size,sample_size,models,best_id,best_accuracy,best_true_quality,mva_top100,status\n",
    );
    let e = &plan.engine;
    for (repeat, row) in report.rows.iter().enumerate() {
        let seed = plan.seed(repeat);
        match row {
            Ok(s) => writeln!(
                out,
                "{repeat},{seed},{},{},{},{},{},{},{},{},ok",
                e.variant,
                e.population_size,
                e.sample_size,
                s.models,
                s.best_id,
                s.best_accuracy,
                opt(s.best_true_quality),
                s.mva
            ),
            Err(err) => writeln!(
                out,
                "{repeat},{seed},{},{},{},,,,,,\"failed: {}\"",
                e.variant,
                e.population_size,
                e.sample_size,
                err.to_string().replace('"', "'")
            ),
        }
        .unwrap();
    }
    out
}

pub fn timings_csv(report: &PlanReport) -> String {
    let mut out = String::from("repeat,wall_time_s\n");
    for (repeat, row) in report.rows.iter().enumerate() {
        if let Ok(s) = row {
            writeln!(out, "{repeat},{:.6}", s.wall_time.as_secs_f64()).unwrap();
        }
    }
    out
}

pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::from("variant,population_size,sample_size,n,mean,sem,best\n");
    for (i, p) in result.points.iter().enumerate() {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            result.variant,
            p.population_size,
            p.sample_size,
            p.summary.n,
            p.summary.mean,
            p.summary.sem,
            u8::from(i == result.best)
        )
        .unwrap();
    }
    out
}

/// Per-arm rows followed by per-pair rows, distinguished by the `kind` column.
pub fn comparison_csv(report: &ComparisonReport) -> String {
    let mut out = String::from("kind,arm,other,n,mean,sem,difference,p_value\n");
    for arm in &report.arms {
        writeln!(
            out,
            "arm,{},,{},{},{},,",
            arm.label, arm.summary.n, arm.summary.mean, arm.summary.sem
        )
        .unwrap();
    }
    for pair in &report.pairs {
        writeln!(
            out,
            "pair,{},{},,,,{},{}",
            report.arms[pair.a].label, report.arms[pair.b].label, pair.difference, pair.test.p_value
        )
        .unwrap();
    }
    out
}

pub fn dimsweep_csv(report: &DimSweepReport) -> String {
    let mut out = String::from("dimensions,variant,population_size,sample_size,n,mean,sem\n");
    for r in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.dimensions, r.variant, r.population_size, r.sample_size, r.summary.n, r.summary.mean, r.summary.sem
        )
        .unwrap();
    }
    out
}

pub fn trajectory_csv(stats: &[TrajectoryStat]) -> String {
    let mut out = String::from("model_index,value,sem\n");
    for s in stats {
        writeln!(out, "{},{},{}", s.model_index, s.value, s.sem).unwrap();
    }
    out
}

/// Reads a history log, checking that ids are contiguous from 0.
pub fn read_log(path: &Path) -> Result<Vec<LogRecord>, HarnessError> {
    let text = fs::read_to_string(path)?;
    let mut records = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record = parse_log_line(line).map_err(|e| HarnessError::Log {
            line: i + 1,
            message: e.to_string(),
        })?;
        if record.id != records.len() as u64 {
            return Err(HarnessError::Log {
                line: i + 1,
                message: format!("expected id {}, found {}", records.len(), record.id),
            });
        }
        records.push(record);
    }
    Ok(records)
}
