//! Synthetic fitness for NASNet genotypes.
//!
//! ```text
//! base = 0.30
//!      + 0.04 * (fan_in(normal) + fan_in(reduction))
//!      + 0.10 * distinct_ops / |op set|
//!      + 0.05 * (fnv1a_64(document) mod 1024) / 1024
//! ```
//!
//! The last term is a deterministic jitter keyed on the canonical document so
//! that structurally different genotypes rarely tie. For 5-combination spaces
//! the base lies in (0.38, 0.93). This is not a model of real training.

use std::time::{Duration, Instant};

use rand::Rng;
use rand_distr::{Distribution, Normal};

use super::{EvalError, EvalRequest, EvaluationRecord, Evaluator, EvaluatorFactory};
use crate::nasnet::{distinct_ops, output_fan_in, serialize, ArchitectureGenotype};
use crate::rng::evaluation_stream;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

pub fn fnv1a_64(bytes: &[u8]) -> u64 {
    bytes.iter().fold(FNV_OFFSET, |h, b| {
        (h ^ u64::from(*b)).wrapping_mul(FNV_PRIME)
    })
}

/// The three inputs of the surrogate formula.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurrogateTerms {
    /// Output fan-in summed over both cells.
    pub fan_in: usize,
    /// Distinct ops used divided by the op-set size.
    pub op_diversity: f64,
    /// Hash jitter in [0, 1).
    pub jitter: f64,
}

impl SurrogateTerms {
    pub fn of(arch: &ArchitectureGenotype) -> Self {
        Self {
            fan_in: output_fan_in(arch.normal()) + output_fan_in(arch.reduction()),
            op_diversity: distinct_ops(arch) as f64 / arch.space().ops().len() as f64,
            jitter: (fnv1a_64(serialize(arch).as_bytes()) % 1024) as f64 / 1024.0,
        }
    }

    pub fn base(&self) -> f64 {
        0.30 + 0.04 * self.fan_in as f64 + 0.10 * self.op_diversity + 0.05 * self.jitter
    }
}

pub fn surrogate_base(arch: &ArchitectureGenotype) -> f64 {
    SurrogateTerms::of(arch).base()
}

pub fn evaluate_surrogate<R: Rng + ?Sized>(arch: &ArchitectureGenotype, sigma: f64, rng: &mut R) -> f64 {
    let base = surrogate_base(arch);
    if sigma == 0.0 {
        return base;
    }
    base + Normal::new(0.0, sigma).expect("sigma must be finite and >= 0").sample(rng)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurrogateEvaluator {
    pub sigma: f64,
}

impl SurrogateEvaluator {
    pub fn new(sigma: f64) -> Self {
        Self { sigma }
    }
}

impl Evaluator<ArchitectureGenotype> for SurrogateEvaluator {
    fn evaluate(
        &mut self,
        genotype: &ArchitectureGenotype,
        request: EvalRequest,
    ) -> Result<EvaluationRecord, EvalError> {
        let start = Instant::now();
        let accuracy = evaluate_surrogate(genotype, self.sigma, &mut evaluation_stream(request.seed));
        Ok(EvaluationRecord {
            accuracy,
            wall_time: start.elapsed().max(Duration::ZERO),
            evaluator_seed: request.seed,
        })
    }
}

impl EvaluatorFactory<ArchitectureGenotype> for SurrogateEvaluator {
    type Worker = SurrogateEvaluator;

    fn worker(&self, _index: usize) -> Result<Self::Worker, EvalError> {
        Ok(*self)
    }
}
