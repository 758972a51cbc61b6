use std::sync::Arc;

use crate::nasnet::{self, random_architecture, ArchitectureGenotype, SearchSpaceConfig};
use crate::rng::Stream;
use crate::toy::{self, BitString};

/// A searchable object with a canonical JSON form for logs and the external
/// evaluator protocol.
pub trait Genotype: Clone + Send + Sync + 'static {
    /// JSON value (object or string) embedded verbatim in log and request lines.
    fn document(&self) -> String;
}

impl Genotype for ArchitectureGenotype {
    fn document(&self) -> String {
        nasnet::serialize(self)
    }
}

impl Genotype for BitString {
    fn document(&self) -> String {
        format!("\"{self}\"")
    }
}

/// Random generation and mutation for one kind of genotype.
pub trait SearchSpace: Sync {
    type Genotype: Genotype;

    fn random(&self, rng: &mut Stream) -> Self::Genotype;

    /// A child of `parent`; with probability `identity_prob` an unchanged copy.
    fn mutate(&self, parent: &Self::Genotype, identity_prob: f64, rng: &mut Stream) -> Self::Genotype;
}

#[derive(Clone, Debug)]
pub struct NasnetSpace {
    pub config: Arc<SearchSpaceConfig>,
}

impl NasnetSpace {
    pub fn new(config: SearchSpaceConfig) -> Self {
        Self {
            config: Arc::new(config),
        }
    }
}

impl SearchSpace for NasnetSpace {
    type Genotype = ArchitectureGenotype;

    fn random(&self, rng: &mut Stream) -> ArchitectureGenotype {
        random_architecture(&self.config, rng)
    }

    fn mutate(&self, parent: &ArchitectureGenotype, identity_prob: f64, rng: &mut Stream) -> ArchitectureGenotype {
        nasnet::mutate(parent, rng, identity_prob)
    }
}

/// `D`-bit hypercube. A non-identity mutation flips one bit.
#[derive(Clone, Copy, Debug)]
pub struct ToySpace {
    pub dimensions: usize,
}

impl ToySpace {
    pub fn new(dimensions: usize) -> Self {
        assert!(dimensions >= 1);
        Self { dimensions }
    }
}

impl SearchSpace for ToySpace {
    type Genotype = BitString;

    fn random(&self, rng: &mut Stream) -> BitString {
        toy::random_bitstring(self.dimensions, rng)
    }

    fn mutate(&self, parent: &BitString, identity_prob: f64, rng: &mut Stream) -> BitString {
        use rand::Rng;
        if identity_prob > 0.0 && rng.random::<f64>() < identity_prob {
            parent.clone()
        } else {
            toy::flip_mutation(parent, rng)
        }
    }
}
