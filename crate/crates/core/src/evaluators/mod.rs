//! Fitness functions.
//!
//! The engine talks to evaluators through two traits. An [`EvaluatorFactory`]
//! is shared by all workers and hands each worker its own [`Evaluator`], so an
//! evaluator that owns a resource (a child process) is never shared.

mod external;
mod spec;
mod surrogate;

use std::time::Duration;

use thiserror::Error;

pub use external::{ExternalEvaluator, ExternalSpec, ExternalWorker, READY_LINE};
pub use spec::{EvaluatorKind, EvaluatorSpec};
pub use surrogate::{evaluate_surrogate, fnv1a_64, surrogate_base, SurrogateEvaluator, SurrogateTerms};

use crate::rng::evaluation_stream;
use crate::toy::{simulated_accuracy, BitString, ToyConfig};

/// What the engine passes along with a genotype. `seed` fixes the noise of
/// this evaluation; `id` is echoed by external evaluators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalRequest {
    pub id: u64,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvaluationRecord {
    pub accuracy: f64,
    pub wall_time: Duration,
    pub evaluator_seed: u64,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("evaluation timed out after {0:?}")]
    Timeout(Duration),
    #[error("protocol error ({reason}): {raw:?}")]
    Protocol { reason: String, raw: String },
    #[error("evaluator process exited with {0}")]
    Process(String),
    #[error("evaluator reported failure: {0}")]
    Remote(String),
    #[error("could not start evaluator: {0}")]
    Spawn(String),
    #[error("evaluator i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Failed(String),
}

/// One worker's fitness function.
pub trait Evaluator<G>: Send {
    fn evaluate(&mut self, genotype: &G, request: EvalRequest) -> Result<EvaluationRecord, EvalError>;
}

/// Hands out per-worker evaluators.
pub trait EvaluatorFactory<G>: Sync {
    type Worker: Evaluator<G>;

    fn worker(&self, index: usize) -> Result<Self::Worker, EvalError>;
}

/// Simulated accuracy of a bit string.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ToyEvaluator {
    pub config: ToyConfig,
}

impl ToyEvaluator {
    pub fn new(config: ToyConfig) -> Self {
        Self { config }
    }
}

pub fn evaluate_toy(b: &BitString, config: &ToyConfig, seed: u64) -> f64 {
    simulated_accuracy(b, config, &mut evaluation_stream(seed))
}

impl Evaluator<BitString> for ToyEvaluator {
    fn evaluate(&mut self, genotype: &BitString, request: EvalRequest) -> Result<EvaluationRecord, EvalError> {
        Ok(EvaluationRecord {
            accuracy: evaluate_toy(genotype, &self.config, request.seed),
            wall_time: Duration::ZERO,
            evaluator_seed: request.seed,
        })
    }
}

impl EvaluatorFactory<BitString> for ToyEvaluator {
    type Worker = ToyEvaluator;

    fn worker(&self, _index: usize) -> Result<Self::Worker, EvalError> {
        Ok(*self)
    }
}

/// Wraps a closure as an evaluator. Handy for tests and ad hoc objectives.
#[derive(Clone)]
pub struct FnEvaluator<F>(pub F);

impl<G, F> Evaluator<G> for FnEvaluator<F>
where
    F: Fn(&G, EvalRequest) -> Result<f64, EvalError> + Send,
{
    fn evaluate(&mut self, genotype: &G, request: EvalRequest) -> Result<EvaluationRecord, EvalError> {
        Ok(EvaluationRecord {
            accuracy: (self.0)(genotype, request)?,
            wall_time: Duration::ZERO,
            evaluator_seed: request.seed,
        })
    }
}

impl<G, F> EvaluatorFactory<G> for FnEvaluator<F>
where
    F: Fn(&G, EvalRequest) -> Result<f64, EvalError> + Send + Sync + Clone,
{
    type Worker = FnEvaluator<F>;

    fn worker(&self, _index: usize) -> Result<Self::Worker, EvalError> {
        Ok(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toy::true_quality;

    #[test]
    fn toy_noise_free_optimum() {
        let mut eval = ToyEvaluator::new(ToyConfig::new(5, 0.0).unwrap());
        let record = eval
            .evaluate(&BitString::zeros(5), EvalRequest { id: 0, seed: 3 })
            .unwrap();
        assert_eq!(record.accuracy, 1.0);
        assert_eq!(record.evaluator_seed, 3);
    }

    #[test]
    fn toy_fresh_noise_per_call() {
        let cfg = ToyConfig::new(8, 0.01).unwrap();
        let b: BitString = "00110101".parse().unwrap();
        assert_ne!(evaluate_toy(&b, &cfg, 1), evaluate_toy(&b, &cfg, 2));
        assert_eq!(evaluate_toy(&b, &cfg, 1), evaluate_toy(&b, &cfg, 1));
    }

    #[test]
    fn toy_mean_and_serial_correlation() {
        let cfg = ToyConfig::new(8, 0.01).unwrap();
        let b: BitString = "00110111".parse().unwrap();
        let n = 10_000;
        let samples: Vec<f64> = (0..n).map(|i| evaluate_toy(&b, &cfg, 1000 + i)).collect();
        let mean = samples.iter().sum::<f64>() / n as f64;
        let sem = 0.01 / (n as f64).sqrt();
        assert!((mean - true_quality(&b)).abs() <= 3.0 * sem);

        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>();
        let lag1 = samples
            .windows(2)
            .map(|w| (w[0] - mean) * (w[1] - mean))
            .sum::<f64>();
        // Lag-1 autocorrelation of independent draws has sd ~ 1/sqrt(n).
        assert!((lag1 / var).abs() < 4.0 / (n as f64).sqrt());
    }
}
