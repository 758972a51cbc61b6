//! Output fan-in of evolved architectures against random ones.

use std::sync::Arc;

use serde_json::Value;

use super::stats;
use super::HarnessError;
use crate::engine::LogRecord;
use crate::nasnet::{deserialize, output_fan_in, random_architecture, ArchitectureGenotype, SearchSpaceConfig};
use crate::rng::worker_stream;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FanInReport {
    pub evolved_n: usize,
    pub evolved_mean: f64,
    pub random_n: usize,
    pub random_mean: f64,
    pub random_std: f64,
    /// `(evolved_mean - random_mean) / random_std`.
    pub z: f64,
}

/// Mean output fan-in of the normal and reduction cells.
pub fn genotype_fan_in(arch: &ArchitectureGenotype) -> f64 {
    (output_fan_in(arch.normal()) + output_fan_in(arch.reduction())) as f64 / 2.0
}

pub fn fan_in_report(
    evolved: &[ArchitectureGenotype],
    space: &Arc<SearchSpaceConfig>,
    n_random: usize,
    seed: u64,
) -> Result<FanInReport, HarnessError> {
    if evolved.is_empty() {
        return Err(HarnessError::EmptyHistory);
    }
    if n_random < 2 {
        return Err(HarnessError::Plan("n_random must be >= 2".into()));
    }
    let evolved_values: Vec<f64> = evolved.iter().map(genotype_fan_in).collect();
    let mut rng = worker_stream(seed, 0);
    let random_values: Vec<f64> = (0..n_random)
        .map(|_| genotype_fan_in(&random_architecture(space, &mut rng)))
        .collect();
    let evolved_mean = stats::mean(&evolved_values);
    let random_mean = stats::mean(&random_values);
    let random_std = stats::sample_std(&random_values);
    Ok(FanInReport {
        evolved_n: evolved.len(),
        evolved_mean,
        random_n: n_random,
        random_mean,
        random_std,
        z: (evolved_mean - random_mean) / random_std,
    })
}

/// [`fan_in_report`] over the last `population_size` models of a history log,
/// which for aging evolution and random search is exactly the final population.
pub fn fan_in_report_from_log(
    records: &[LogRecord],
    population_size: usize,
    space: &Arc<SearchSpaceConfig>,
    n_random: usize,
    seed: u64,
) -> Result<FanInReport, HarnessError> {
    if records.is_empty() {
        return Err(HarnessError::EmptyHistory);
    }
    let start = records.len().saturating_sub(population_size.max(1));
    let evolved = records[start..]
        .iter()
        .map(|r| {
            if matches!(r.genotype, Value::String(_)) {
                return Err(HarnessError::ToyHistory);
            }
            deserialize(&r.genotype_text(), space).map_err(|e| HarnessError::Log {
                line: r.id as usize + 1,
                message: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    fan_in_report(&evolved, space, n_random, seed)
}
