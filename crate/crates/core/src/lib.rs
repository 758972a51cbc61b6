//! Regularized (aging) evolution for architecture search, with the baselines
//! and the experiment harness needed to compare it against non-aging
//! tournament selection and random search.
//!
//! * [`nasnet`]: the NASNet cell genotype space and its mutations.
//! * [`toy`]: the noisy hypercube, where evaluation noise is the only difficulty.
//! * [`engine`]: the search loop, single- or multi-worker.
//! * [`evaluators`]: toy, surrogate and subprocess fitness functions.
//! * [`harness`]: repeats, sweeps, comparisons and the statistics behind them.
//!
//! ```
//! use regevo::engine::{run_experiment, EngineConfig, ToySpace, Variant};
//! use regevo::evaluators::ToyEvaluator;
//! use regevo::toy::{true_quality, ToyConfig};
//!
//! let space = ToySpace::new(16);
//! let evaluator = ToyEvaluator::new(ToyConfig::new(16, 0.01).unwrap());
//! let config = EngineConfig::new(Variant::Aging, 32, 8, 2_000).with_seed(1);
//! let outcome = run_experiment(&config, &space, &evaluator).unwrap();
//! assert_eq!(outcome.history.len(), 2_000);
//! assert!(true_quality(&outcome.best.genotype) > 0.8);
//! ```

pub mod engine;
pub mod evaluators;
pub mod harness;
pub mod nasnet;
pub mod rng;
pub mod toy;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/search-space.md")]
    mod search_space {}
    #[doc = include_str!("../../../book/src/mutations.md")]
    mod mutations {}
    #[doc = include_str!("../../../book/src/selection.md")]
    mod selection {}
    #[doc = include_str!("../../../book/src/toy-space.md")]
    mod toy_space {}
    #[doc = include_str!("../../../book/src/evaluators.md")]
    mod evaluators {}
    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}
}
