//! Plan files.
//!
//! One TOML document can describe a single experiment, a sweep, a variant
//! comparison and a dimensionality sweep; each subcommand reads the sections
//! it needs.
//!
//! ```toml
//! repeats = 5
//! base_seed = 0
//! output_dir = "out"
//!
//! [engine]
//! variant = "aging"
//! population_size = 64
//! sample_size = 16
//! cycles = 10000
//!
//! [space]
//! kind = "toy"
//! dimensions = 64
//!
//! [evaluator]
//! kind = "toy"
//! sigma = 0.01
//! ```

use std::path::PathBuf;
use std::time::Duration;

use serde::Deserialize;

use super::{ExperimentPlan, HarnessError, Objective, Problem, SpaceSpec};
use crate::engine::{EngineConfig, Variant};
use crate::evaluators::{EvaluatorSpec, ExternalSpec};
use crate::nasnet::{SearchSpaceConfig, SpaceVariant, DEFAULT_IDENTITY_PROB};
use crate::toy::{ToyConfig, DEFAULT_NOISE_SIGMA};

/// Overrides the plan's `output_dir`.
pub const ENV_OUTPUT_DIR: &str = "REGEVO_OUTPUT_DIR";
/// Overrides the engine's worker count.
pub const ENV_WORKERS: &str = "REGEVO_WORKERS";

const DEFAULT_TIMEOUT_SECS: f64 = 600.0;

/// A meta-parameter sweep of one variant over a `(P, S)` grid.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepPlan {
    pub variant: Variant,
    pub grid: Vec<(usize, usize)>,
    pub simulations_per_point: usize,
    pub objective: Objective,
    pub cycles: usize,
    pub identity_prob: f64,
    pub base_seed: u64,
}

impl SweepPlan {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.grid.is_empty() {
            return Err(HarnessError::Plan("sweep grid is empty".into()));
        }
        if self.simulations_per_point < 1 {
            return Err(HarnessError::Plan("simulations_per_point must be >= 1".into()));
        }
        for &(p, s) in &self.grid {
            self.engine(p, s, 0).validate()?;
        }
        Ok(())
    }

    /// Engine config of simulation `sim` at grid point `(p, s)`. Simulation
    /// `sim` uses the same seed at every point.
    pub fn engine(&self, p: usize, s: usize, sim: usize) -> EngineConfig {
        EngineConfig::new(self.variant, p, s, self.cycles)
            .with_identity_prob(self.identity_prob)
            .with_seed(self.base_seed.wrapping_add(sim as u64))
    }
}

/// One arm of a comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct ArmSpec {
    pub label: String,
    pub variant: Variant,
    pub population_size: usize,
    pub sample_size: usize,
}

impl ArmSpec {
    pub fn new(variant: Variant, population_size: usize, sample_size: usize) -> Self {
        Self {
            label: variant.name().to_string(),
            variant,
            population_size,
            sample_size,
        }
    }
}

/// Matched repeats of several arms: repeat `r` of every arm uses seed
/// `base_seed + r`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparePlan {
    pub arms: Vec<ArmSpec>,
    pub repeats: usize,
    pub cycles: usize,
    pub objective: Objective,
    pub identity_prob: f64,
    pub base_seed: u64,
}

impl ComparePlan {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.arms.len() < 2 {
            return Err(HarnessError::Plan("a comparison needs at least 2 arms".into()));
        }
        if self.repeats < 1 {
            return Err(HarnessError::Plan("repeats must be >= 1".into()));
        }
        for arm in &self.arms {
            self.engine(arm, 0).validate()?;
        }
        Ok(())
    }

    pub fn engine(&self, arm: &ArmSpec, repeat: usize) -> EngineConfig {
        EngineConfig::new(arm.variant, arm.population_size, arm.sample_size, self.cycles)
            .with_identity_prob(self.identity_prob)
            .with_seed(self.base_seed.wrapping_add(repeat as u64))
    }
}

/// Per-dimensionality AE and NAE sweeps on the toy space.
#[derive(Clone, Debug, PartialEq)]
pub struct DimSweepPlan {
    pub dimensions: Vec<usize>,
    pub noise_sigma: f64,
    pub grid: Vec<(usize, usize)>,
    pub simulations_per_point: usize,
    pub cycles: usize,
    pub identity_prob: f64,
    pub base_seed: u64,
}

impl DimSweepPlan {
    pub fn sweep_plan(&self, variant: Variant) -> SweepPlan {
        SweepPlan {
            variant,
            grid: self.grid.clone(),
            simulations_per_point: self.simulations_per_point,
            objective: Objective::TrueQuality,
            cycles: self.cycles,
            identity_prob: self.identity_prob,
            base_seed: self.base_seed,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.dimensions.is_empty() {
            return Err(HarnessError::Plan("dimensions list is empty".into()));
        }
        for &d in &self.dimensions {
            ToyConfig::new(d, self.noise_sigma).map_err(|e| HarnessError::Plan(e.to_string()))?;
        }
        self.sweep_plan(Variant::Aging).validate()
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlanFile {
    repeats: Option<usize>,
    base_seed: Option<u64>,
    output_dir: Option<PathBuf>,
    engine: Option<EngineSection>,
    space: Option<SpaceSection>,
    evaluator: Option<EvaluatorSection>,
    sweep: Option<SweepSection>,
    compare: Option<CompareSection>,
    dimsweep: Option<DimSweepSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EngineSection {
    variant: String,
    population_size: usize,
    sample_size: usize,
    cycles: usize,
    identity_prob: Option<f64>,
    workers: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceSection {
    kind: String,
    dimensions: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EvaluatorSection {
    kind: String,
    sigma: Option<f64>,
    command: Option<Vec<String>>,
    timeout_secs: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepSection {
    variant: String,
    grid: Option<Vec<[usize; 2]>>,
    simulations_per_point: Option<usize>,
    objective: Option<String>,
    cycles: usize,
    identity_prob: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CompareSection {
    arms: Vec<ArmSection>,
    repeats: Option<usize>,
    cycles: usize,
    objective: Option<String>,
    identity_prob: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArmSection {
    variant: String,
    population_size: usize,
    sample_size: usize,
    label: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DimSweepSection {
    dimensions: Vec<usize>,
    sigma: Option<f64>,
    grid: Option<Vec<[usize; 2]>>,
    simulations_per_point: Option<usize>,
    cycles: Option<usize>,
    identity_prob: Option<f64>,
}

/// A parsed plan file.
#[derive(Debug)]
pub struct PlanDocument {
    file: PlanFile,
}

fn plan_err(e: impl std::fmt::Display) -> HarnessError {
    HarnessError::Plan(e.to_string())
}

fn variant(name: &str) -> Result<Variant, HarnessError> {
    name.parse().map_err(plan_err)
}

fn grid(explicit: &Option<Vec<[usize; 2]>>) -> Vec<(usize, usize)> {
    match explicit {
        Some(points) => points.iter().map(|&[p, s]| (p, s)).collect(),
        None => super::default_toy_grid(),
    }
}

fn objective(name: &Option<String>, default: Objective) -> Result<Objective, HarnessError> {
    name.as_deref().map_or(Ok(default), str::parse)
}

impl PlanDocument {
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let file: PlanFile = toml::from_str(text).map_err(plan_err)?;
        Ok(Self { file })
    }

    pub fn output_dir(&self) -> Option<&PathBuf> {
        self.file.output_dir.as_ref()
    }

    pub fn base_seed(&self) -> u64 {
        self.file.base_seed.unwrap_or(0)
    }

    /// The problem from the `[space]` and `[evaluator]` sections. The
    /// evaluator defaults to the toy evaluator for the toy space and to the
    /// surrogate for NASNet spaces.
    pub fn problem(&self) -> Result<Problem, HarnessError> {
        let space = self
            .file
            .space
            .as_ref()
            .ok_or_else(|| HarnessError::Plan("missing [space] section".into()))?;
        let sigma = |s: Option<f64>| s.unwrap_or(DEFAULT_NOISE_SIGMA);
        let space_spec = if space.kind == "toy" {
            let dimensions = space
                .dimensions
                .ok_or_else(|| HarnessError::Plan("toy space needs `dimensions`".into()))?;
            SpaceSpec::Toy { dimensions }
        } else {
            if space.dimensions.is_some() {
                return Err(HarnessError::Plan("`dimensions` only applies to the toy space".into()));
            }
            let v: SpaceVariant = space.kind.parse().map_err(plan_err)?;
            SpaceSpec::Nasnet(SearchSpaceConfig::from_variant(v).map_err(plan_err)?)
        };
        let evaluator = match (&self.file.evaluator, &space_spec) {
            (None, SpaceSpec::Toy { dimensions }) => {
                EvaluatorSpec::Toy(ToyConfig::new(*dimensions, DEFAULT_NOISE_SIGMA).map_err(plan_err)?)
            }
            (None, SpaceSpec::Nasnet(_)) => EvaluatorSpec::Surrogate { sigma: DEFAULT_NOISE_SIGMA },
            (Some(e), _) => match e.kind.as_str() {
                "toy" => {
                    let SpaceSpec::Toy { dimensions } = space_spec else {
                        return Err(HarnessError::Plan("the toy evaluator needs the toy space".into()));
                    };
                    EvaluatorSpec::Toy(ToyConfig::new(dimensions, sigma(e.sigma)).map_err(plan_err)?)
                }
                "surrogate" => EvaluatorSpec::Surrogate { sigma: sigma(e.sigma) },
                "external" => {
                    let command = e
                        .command
                        .clone()
                        .ok_or_else(|| HarnessError::Plan("external evaluator needs `command`".into()))?;
                    let secs = e.timeout_secs.unwrap_or(DEFAULT_TIMEOUT_SECS);
                    if !(secs.is_finite() && secs > 0.0) {
                        return Err(HarnessError::Plan("timeout_secs must be positive".into()));
                    }
                    EvaluatorSpec::External(
                        ExternalSpec::new(command, Duration::from_secs_f64(secs)).map_err(plan_err)?,
                    )
                }
                other => return Err(HarnessError::Plan(format!("unknown evaluator kind {other:?}"))),
            },
        };
        Problem::new(space_spec, evaluator)
    }

    pub fn experiment_plan(&self) -> Result<ExperimentPlan, HarnessError> {
        let e = self
            .file
            .engine
            .as_ref()
            .ok_or_else(|| HarnessError::Plan("missing [engine] section".into()))?;
        let engine = EngineConfig::new(variant(&e.variant)?, e.population_size, e.sample_size, e.cycles)
            .with_identity_prob(e.identity_prob.unwrap_or(DEFAULT_IDENTITY_PROB))
            .with_workers(e.workers.unwrap_or(1));
        let plan = ExperimentPlan {
            engine,
            problem: self.problem()?,
            repeats: self.file.repeats.unwrap_or(1),
            base_seed: self.base_seed(),
            output_dir: self.file.output_dir.clone(),
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn sweep_plan(&self) -> Result<SweepPlan, HarnessError> {
        let s = self
            .file
            .sweep
            .as_ref()
            .ok_or_else(|| HarnessError::Plan("missing [sweep] section".into()))?;
        let plan = SweepPlan {
            variant: variant(&s.variant)?,
            grid: grid(&s.grid),
            simulations_per_point: s.simulations_per_point.unwrap_or(100),
            objective: objective(&s.objective, Objective::TrueQuality)?,
            cycles: s.cycles,
            identity_prob: s.identity_prob.unwrap_or(DEFAULT_IDENTITY_PROB),
            base_seed: self.base_seed(),
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn compare_plan(&self) -> Result<ComparePlan, HarnessError> {
        let c = self
            .file
            .compare
            .as_ref()
            .ok_or_else(|| HarnessError::Plan("missing [compare] section".into()))?;
        let arms = c
            .arms
            .iter()
            .map(|a| {
                let v = variant(&a.variant)?;
                let mut arm = ArmSpec::new(v, a.population_size, a.sample_size);
                if let Some(label) = &a.label {
                    arm.label = label.clone();
                }
                Ok(arm)
            })
            .collect::<Result<Vec<_>, HarnessError>>()?;
        let plan = ComparePlan {
            arms,
            repeats: c.repeats.or(self.file.repeats).unwrap_or(5),
            cycles: c.cycles,
            objective: objective(&c.objective, Objective::FinalAccuracy)?,
            identity_prob: c.identity_prob.unwrap_or(DEFAULT_IDENTITY_PROB),
            base_seed: self.base_seed(),
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn dimsweep_plan(&self) -> Result<DimSweepPlan, HarnessError> {
        let d = self
            .file
            .dimsweep
            .as_ref()
            .ok_or_else(|| HarnessError::Plan("missing [dimsweep] section".into()))?;
        let plan = DimSweepPlan {
            dimensions: d.dimensions.clone(),
            noise_sigma: d.sigma.unwrap_or(DEFAULT_NOISE_SIGMA),
            grid: grid(&d.grid),
            simulations_per_point: d.simulations_per_point.unwrap_or(100),
            cycles: d.cycles.unwrap_or(10_000),
            identity_prob: d.identity_prob.unwrap_or(DEFAULT_IDENTITY_PROB),
            base_seed: self.base_seed(),
        };
        plan.validate()?;
        Ok(plan)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const RUN: &str = r#"
repeats = 3
base_seed = 7

[engine]
variant = "aging"
population_size = 8
sample_size = 2
cycles = 40

[space]
kind = "toy"
dimensions = 12
"#;

    #[test]
    fn parses_experiment_plan() {
        let plan = PlanDocument::parse(RUN).unwrap().experiment_plan().unwrap();
        assert_eq!(plan.repeats, 3);
        assert_eq!(plan.seed(2), 9);
        assert_eq!(plan.engine.population_size, 8);
        assert_eq!(plan.engine.identity_prob, DEFAULT_IDENTITY_PROB);
        assert_eq!(plan.problem.space(), &SpaceSpec::Toy { dimensions: 12 });
    }

    #[test]
    fn unknown_key_is_a_plan_error() {
        let text = RUN.replace("cycles = 40", "cycles = 40\ncylces = 3");
        let err = PlanDocument::parse(&text).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn sample_larger_than_population_rejected() {
        let text = RUN.replace("sample_size = 2", "sample_size = 9");
        let err = PlanDocument::parse(&text).unwrap().experiment_plan().unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn surrogate_on_toy_rejected() {
        let text = format!("{RUN}\n[evaluator]\nkind = \"surrogate\"\n");
        assert!(PlanDocument::parse(&text).unwrap().problem().is_err());
    }

    #[test]
    fn nasnet_defaults_to_surrogate() {
        let text = RUN.replace("kind = \"toy\"\ndimensions = 12", "kind = \"SP-I\"");
        let problem = PlanDocument::parse(&text).unwrap().problem().unwrap();
        assert!(problem.is_synthetic());
    }

    #[test]
    fn sweep_defaults_to_toy_grid() {
        let text = format!("{RUN}\n[sweep]\nvariant = \"nae\"\ncycles = 10000\n");
        let plan = PlanDocument::parse(&text).unwrap().sweep_plan().unwrap();
        assert_eq!(plan.grid.len(), 17);
        assert_eq!(plan.objective, Objective::TrueQuality);
        assert_eq!(plan.variant, Variant::NonAging);
    }

    #[test]
    fn sweep_rejects_oversized_sample() {
        let text = format!("{RUN}\n[sweep]\nvariant = \"ae\"\ncycles = 100\ngrid = [[4, 8]]\n");
        assert!(PlanDocument::parse(&text).unwrap().sweep_plan().is_err());
    }
}
