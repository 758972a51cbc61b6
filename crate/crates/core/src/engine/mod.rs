//! Aging evolution, non-aging tournament selection and random search.
//!
//! All three variants share one loop. After `P` random individuals have been
//! evaluated, every cycle produces one child and removes one member so the
//! population stays at `P`:
//!
//! | variant         | child                         | removed                         |
//! |-----------------|-------------------------------|---------------------------------|
//! | aging           | mutation of the sample's best | oldest member                   |
//! | non-aging       | mutation of the sample's best | worst member of the same sample |
//! | random search   | fresh random genotype         | oldest member                   |
//!
//! The loop runs on `workers` threads. Sampling and the insert/remove step
//! are atomic; evaluation happens outside any lock.

mod log;
mod population;
mod run;
mod space;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use log::{parse_log_line, HistoryLog, LogRecord};
pub use population::{
    best_individual, sample_candidates, select_parent, select_victim, History, Individual,
    Population,
};
pub use run::{
    aging_cycle, init_population, nonaging_cycle, random_search_cycle, run_experiment, Experiment,
    Progress, RunOutcome, SearchState,
};
pub use space::{Genotype, NasnetSpace, SearchSpace, ToySpace};

use crate::evaluators::EvalError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Aging,
    NonAging,
    RandomSearch,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Aging, Variant::NonAging, Variant::RandomSearch];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Aging => "aging",
            Variant::NonAging => "non-aging",
            Variant::RandomSearch => "random-search",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "aging" | "ae" => Ok(Variant::Aging),
            "non-aging" | "nonaging" | "nae" => Ok(Variant::NonAging),
            "random-search" | "random" | "rs" => Ok(Variant::RandomSearch),
            other => Err(EngineError::InvalidConfig(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EngineConfig {
    pub variant: Variant,
    /// Population size `P`.
    pub population_size: usize,
    /// Tournament sample size `S`.
    pub sample_size: usize,
    /// Total number of evaluated models, initial population included.
    pub cycles: usize,
    pub identity_prob: f64,
    pub workers: usize,
    pub seed: u64,
}

impl EngineConfig {
    pub fn new(variant: Variant, population_size: usize, sample_size: usize, cycles: usize) -> Self {
        Self {
            variant,
            population_size,
            sample_size,
            cycles,
            identity_prob: crate::nasnet::DEFAULT_IDENTITY_PROB,
            workers: 1,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_identity_prob(mut self, identity_prob: f64) -> Self {
        self.identity_prob = identity_prob;
        self
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        let bad = |msg: String| Err(EngineError::InvalidConfig(msg));
        if self.sample_size < 1 {
            return bad("sample size S must be >= 1".into());
        }
        if self.sample_size > self.population_size {
            return bad(format!(
                "sample size S={} exceeds population size P={}",
                self.sample_size, self.population_size
            ));
        }
        if self.population_size > self.cycles {
            return bad(format!(
                "population size P={} exceeds the model budget {}",
                self.population_size, self.cycles
            ));
        }
        if self.workers < 1 {
            return bad("at least one worker is required".into());
        }
        if !(0.0..1.0).contains(&self.identity_prob) {
            return bad(format!("identity probability {} not in [0, 1)", self.identity_prob));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("invalid engine config: {0}")]
    InvalidConfig(String),
    #[error("evaluation of model {job} failed after {completed} models ({source}); genotype: {genotype}")]
    Evaluation {
        job: u64,
        completed: usize,
        genotype: String,
        #[source]
        source: EvalError,
    },
    #[error("could not start evaluator for worker {worker}: {source}")]
    EvaluatorStart {
        worker: usize,
        #[source]
        source: EvalError,
    },
    #[error("worker {0} panicked")]
    WorkerPanic(usize),
    #[error("history log: {0}")]
    Log(#[from] std::io::Error),
}
