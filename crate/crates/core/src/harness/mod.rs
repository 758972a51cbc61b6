//! Experiment orchestration: repeats, meta-parameter sweeps, variant
//! comparisons and the statistics reported for them.
//!
//! Every run is identified by its engine config and seed, so any table emitted
//! here can be regenerated from the plan, and trajectory statistics can be
//! recomputed from the persisted history logs alone.

mod fanin;
mod metrics;
mod plan;
pub mod stats;
mod sweep;
mod tables;

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use thiserror::Error;

pub use fanin::{fan_in_report, fan_in_report_from_log, genotype_fan_in, FanInReport};
pub use metrics::{time_to_accuracy, top_k_mean, top_k_trajectory, TrajectoryStat};
pub use plan::{
    ArmSpec, ComparePlan, DimSweepPlan, PlanDocument, SweepPlan, ENV_OUTPUT_DIR, ENV_WORKERS,
};
pub use sweep::{
    compare_variants, default_toy_grid, dimensionality_sweep, sweep, ArmResult, ComparisonReport,
    DimRow, DimSweepReport, PairTest, SweepPoint, SweepResult,
};
pub use tables::{
    comparison_csv, dimsweep_csv, read_log, summary_csv, sweep_csv, timings_csv, trajectory_csv,
};

use crate::engine::{
    EngineConfig, EngineError, Experiment, HistoryLog, NasnetSpace, RunOutcome, ToySpace,
};
use crate::evaluators::{
    surrogate_base, EvalError, EvaluatorSpec, ExternalEvaluator, SurrogateEvaluator, ToyEvaluator,
};
use crate::nasnet::{ArchitectureGenotype, SearchSpaceConfig};
use crate::toy::{true_quality, BitString, ToyConfig};

/// Top-k size of the MVA statistic.
pub const MVA_TOP_K: usize = 100;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("plan: {0}")]
    Plan(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Evaluator(#[from] EvalError),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("statistic needs at least one model")]
    EmptyHistory,
    #[error("history log line {line}: {message}")]
    Log { line: usize, message: String },
    #[error("operation needs a NASNet-genotype history, got a toy-space history")]
    ToyHistory,
}

impl HarnessError {
    /// Process exit code for the command-line runner.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Plan(_) => 2,
            HarnessError::Evaluator(_)
            | HarnessError::Engine(EngineError::Evaluation { .. })
            | HarnessError::Engine(EngineError::EvaluatorStart { .. }) => 4,
            HarnessError::Engine(EngineError::InvalidConfig(_)) => 2,
            _ => 3,
        }
    }
}

/// Genotype space of a problem.
#[derive(Clone, Debug, PartialEq)]
pub enum SpaceSpec {
    Toy { dimensions: usize },
    Nasnet(SearchSpaceConfig),
}

/// A search space paired with a compatible evaluator.
#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    space: SpaceSpec,
    evaluator: EvaluatorSpec,
}

impl Problem {
    pub fn new(space: SpaceSpec, evaluator: EvaluatorSpec) -> Result<Self, HarnessError> {
        evaluator.validate()?;
        match (&space, &evaluator) {
            (SpaceSpec::Toy { dimensions }, EvaluatorSpec::Toy(cfg)) if *dimensions != cfg.dimensions => {
                Err(HarnessError::Plan(format!(
                    "toy space has D={dimensions} but the evaluator expects D={}",
                    cfg.dimensions
                )))
            }
            (SpaceSpec::Toy { .. }, EvaluatorSpec::Toy(_) | EvaluatorSpec::External(_))
            | (SpaceSpec::Nasnet(_), EvaluatorSpec::Surrogate { .. } | EvaluatorSpec::External(_)) => {
                Ok(Self { space, evaluator })
            }
            (SpaceSpec::Toy { .. }, EvaluatorSpec::Surrogate { .. }) => Err(HarnessError::Plan(
                "the surrogate evaluator needs a NASNet space".into(),
            )),
            (SpaceSpec::Nasnet(_), EvaluatorSpec::Toy(_)) => Err(HarnessError::Plan(
                "the toy evaluator needs the toy space".into(),
            )),
        }
    }

    pub fn toy(dimensions: usize, noise_sigma: f64) -> Result<Self, HarnessError> {
        let cfg = ToyConfig::new(dimensions, noise_sigma).map_err(|e| HarnessError::Plan(e.to_string()))?;
        Self::new(SpaceSpec::Toy { dimensions }, EvaluatorSpec::Toy(cfg))
    }

    pub fn surrogate(space: SearchSpaceConfig, sigma: f64) -> Result<Self, HarnessError> {
        Self::new(SpaceSpec::Nasnet(space), EvaluatorSpec::Surrogate { sigma })
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn evaluator(&self) -> &EvaluatorSpec {
        &self.evaluator
    }

    /// Whether outcomes are labelled synthetic (surrogate evaluator).
    pub fn is_synthetic(&self) -> bool {
        matches!(self.evaluator, EvaluatorSpec::Surrogate { .. })
    }
}

/// Which number of a finished run a sweep or comparison optimizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    /// Noise-free quality of the returned (highest noisy accuracy) model.
    TrueQuality,
    /// Noisy accuracy of the returned model.
    FinalAccuracy,
    /// Mean accuracy of the top-100 models of the whole history.
    Mva,
}

impl std::str::FromStr for Objective {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "true-quality" | "true_quality" => Ok(Objective::TrueQuality),
            "final-accuracy" | "final_accuracy" | "accuracy" => Ok(Objective::FinalAccuracy),
            "mva" => Ok(Objective::Mva),
            other => Err(HarnessError::Plan(format!("unknown objective {other:?}"))),
        }
    }
}

impl std::fmt::Display for Objective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Objective::TrueQuality => "true-quality",
            Objective::FinalAccuracy => "final-accuracy",
            Objective::Mva => "mva",
        })
    }
}

/// Per-run numbers reported in summary tables.
#[derive(Clone, Debug, PartialEq)]
pub struct RunSummary {
    pub seed: u64,
    pub models: usize,
    pub best_id: u64,
    pub best_accuracy: f64,
    /// Noise-free quality of the best model: toy `true_quality`, or the
    /// surrogate base value. `None` for external evaluators.
    pub best_true_quality: Option<f64>,
    pub mva: f64,
    pub wall_time: Duration,
}

impl RunSummary {
    pub fn objective(&self, objective: Objective) -> Result<f64, HarnessError> {
        match objective {
            Objective::FinalAccuracy => Ok(self.best_accuracy),
            Objective::Mva => Ok(self.mva),
            Objective::TrueQuality => self.best_true_quality.ok_or_else(|| {
                HarnessError::Plan("true quality is unknown for external evaluators".into())
            }),
        }
    }
}

fn summarize<G>(
    outcome: &RunOutcome<G>,
    seed: u64,
    true_quality: Option<f64>,
    started: Instant,
) -> Result<RunSummary, HarnessError> {
    let accuracies = outcome.history.accuracies();
    Ok(RunSummary {
        seed,
        models: outcome.history.len(),
        best_id: outcome.best.id,
        best_accuracy: outcome.best.accuracy,
        best_true_quality: true_quality,
        mva: top_k_mean(&accuracies, MVA_TOP_K, accuracies.len())?.value,
        wall_time: started.elapsed(),
    })
}

fn execute<S, F>(
    config: &EngineConfig,
    space: &S,
    evaluators: &F,
    log: Option<HistoryLog>,
) -> Result<RunOutcome<S::Genotype>, HarnessError>
where
    S: crate::engine::SearchSpace,
    F: crate::evaluators::EvaluatorFactory<S::Genotype>,
{
    let mut experiment = Experiment::new(config.clone(), space, evaluators)?;
    if let Some(log) = log {
        experiment = experiment.with_log(log);
    }
    Ok(experiment.run()?)
}

/// Runs a toy-space experiment and returns the full outcome.
pub fn run_toy(
    problem: &Problem,
    config: &EngineConfig,
    log: Option<HistoryLog>,
) -> Result<RunOutcome<BitString>, HarnessError> {
    let SpaceSpec::Toy { dimensions } = problem.space else {
        return Err(HarnessError::Plan("not a toy-space problem".into()));
    };
    let space = ToySpace::new(dimensions);
    match &problem.evaluator {
        EvaluatorSpec::Toy(cfg) => execute(config, &space, &ToyEvaluator::new(*cfg), log),
        EvaluatorSpec::External(spec) => execute(config, &space, &ExternalEvaluator::new(spec.clone()), log),
        EvaluatorSpec::Surrogate { .. } => unreachable!("rejected by Problem::new"),
    }
}

/// Runs a NASNet-space experiment and returns the full outcome.
pub fn run_nasnet(
    problem: &Problem,
    config: &EngineConfig,
    log: Option<HistoryLog>,
) -> Result<RunOutcome<ArchitectureGenotype>, HarnessError> {
    let SpaceSpec::Nasnet(space_config) = &problem.space else {
        return Err(HarnessError::ToyHistory);
    };
    let space = NasnetSpace::new(space_config.clone());
    match &problem.evaluator {
        EvaluatorSpec::Surrogate { sigma } => execute(config, &space, &SurrogateEvaluator::new(*sigma), log),
        EvaluatorSpec::External(spec) => execute(config, &space, &ExternalEvaluator::new(spec.clone()), log),
        EvaluatorSpec::Toy(_) => unreachable!("rejected by Problem::new"),
    }
}

/// Runs one experiment and reduces it to its summary row.
pub fn run_once(
    problem: &Problem,
    config: &EngineConfig,
    log: Option<HistoryLog>,
) -> Result<RunSummary, HarnessError> {
    let started = Instant::now();
    match problem.space {
        SpaceSpec::Toy { .. } => {
            let outcome = run_toy(problem, config, log)?;
            let quality = match problem.evaluator {
                EvaluatorSpec::Toy(_) => Some(true_quality(&outcome.best.genotype)),
                _ => None,
            };
            summarize(&outcome, config.seed, quality, started)
        }
        SpaceSpec::Nasnet(_) => {
            let outcome = run_nasnet(problem, config, log)?;
            let quality = match problem.evaluator {
                EvaluatorSpec::Surrogate { .. } => Some(surrogate_base(&outcome.best.genotype)),
                _ => None,
            };
            summarize(&outcome, config.seed, quality, started)
        }
    }
}

/// A batch of independent repeats of one engine config.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentPlan {
    pub engine: EngineConfig,
    pub problem: Problem,
    pub repeats: usize,
    pub base_seed: u64,
    pub output_dir: Option<PathBuf>,
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.repeats < 1 {
            return Err(HarnessError::Plan("repeats must be >= 1".into()));
        }
        self.engine.validate()?;
        Ok(())
    }

    /// Seed of repeat `r`.
    pub fn seed(&self, repeat: usize) -> u64 {
        self.base_seed.wrapping_add(repeat as u64)
    }

    pub fn history_path(dir: &Path, repeat: usize) -> PathBuf {
        dir.join(format!("history_{repeat:03}.jsonl"))
    }
}

/// Outcome of every repeat of a plan; failed repeats keep their error.
#[derive(Debug)]
pub struct PlanReport {
    pub rows: Vec<Result<RunSummary, HarnessError>>,
}

impl PlanReport {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.is_err()).count()
    }

    pub fn first_failure(&self) -> Option<&HarnessError> {
        self.rows.iter().find_map(|r| r.as_ref().err())
    }
}

/// Runs all repeats, persisting one history log per repeat plus
/// `summary.csv` and `timings.csv` when the plan has an output directory.
/// A failing repeat is recorded and the remaining repeats still run.
pub fn run_plan(plan: &ExperimentPlan) -> Result<PlanReport, HarnessError> {
    plan.validate()?;
    if let Some(dir) = &plan.output_dir {
        fs::create_dir_all(dir)?;
    }
    let mut rows = Vec::with_capacity(plan.repeats);
    for repeat in 0..plan.repeats {
        let config = plan.engine.clone().with_seed(plan.seed(repeat));
        let log = match &plan.output_dir {
            Some(dir) => Some(HistoryLog::create(&ExperimentPlan::history_path(dir, repeat))?),
            None => None,
        };
        rows.push(run_once(&plan.problem, &config, log));
    }
    let report = PlanReport { rows };
    if let Some(dir) = &plan.output_dir {
        fs::write(dir.join("summary.csv"), summary_csv(plan, &report))?;
        fs::write(dir.join("timings.csv"), timings_csv(&report))?;
    }
    Ok(report)
}
