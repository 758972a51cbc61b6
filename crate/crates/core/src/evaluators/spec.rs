use std::fmt;

use super::{EvalError, ExternalSpec};
use crate::toy::ToyConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvaluatorKind {
    Toy,
    Surrogate,
    External,
}

impl fmt::Display for EvaluatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvaluatorKind::Toy => "toy",
            EvaluatorKind::Surrogate => "surrogate",
            EvaluatorKind::External => "external",
        })
    }
}

/// Which fitness function an experiment uses, with its settings.
#[derive(Clone, Debug, PartialEq)]
pub enum EvaluatorSpec {
    Toy(ToyConfig),
    Surrogate { sigma: f64 },
    External(ExternalSpec),
}

impl EvaluatorSpec {
    pub fn kind(&self) -> EvaluatorKind {
        match self {
            EvaluatorSpec::Toy(_) => EvaluatorKind::Toy,
            EvaluatorSpec::Surrogate { .. } => EvaluatorKind::Surrogate,
            EvaluatorSpec::External(_) => EvaluatorKind::External,
        }
    }

    pub fn validate(&self) -> Result<(), EvalError> {
        match self {
            EvaluatorSpec::Toy(cfg) => ToyConfig::new(cfg.dimensions, cfg.noise_sigma)
                .map(|_| ())
                .map_err(|e| EvalError::Failed(e.to_string())),
            EvaluatorSpec::Surrogate { sigma } if !(sigma.is_finite() && *sigma >= 0.0) => {
                Err(EvalError::Failed(format!("surrogate sigma must be >= 0, got {sigma}")))
            }
            EvaluatorSpec::Surrogate { .. } => Ok(()),
            EvaluatorSpec::External(spec) => {
                ExternalSpec::new(spec.command.clone(), spec.timeout).map(|_| ())
            }
        }
    }
}
