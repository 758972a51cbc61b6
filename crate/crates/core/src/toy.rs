//! Noisy hypercube toy space.
//!
//! Genotypes are the vertices of the `D`-dimensional unit cube, written as bit
//! strings. The quality of a vertex is the fraction of zero coordinates, so the
//! origin is the unique optimum. Each evaluation adds fresh Gaussian noise.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

/// Noise level of the simulated accuracy, in accuracy units.
pub const DEFAULT_NOISE_SIGMA: f64 = 0.01;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ToyError {
    #[error("bit string must have at least one coordinate")]
    Empty,
    #[error("invalid character {0:?} in bit string (expected '0' or '1')")]
    BadChar(char),
    #[error("noise sigma must be a finite non-negative number, got {0}")]
    BadSigma(f64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new(bits: Vec<bool>) -> Result<Self, ToyError> {
        if bits.is_empty() {
            return Err(ToyError::Empty);
        }
        Ok(Self { bits })
    }

    pub fn zeros(dimensions: usize) -> Self {
        assert!(dimensions >= 1);
        Self {
            bits: vec![false; dimensions],
        }
    }

    pub fn ones(dimensions: usize) -> Self {
        assert!(dimensions >= 1);
        Self {
            bits: vec![true; dimensions],
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn count_zeros(&self) -> usize {
        self.bits.iter().filter(|b| !**b).count()
    }

    pub fn hamming(&self, other: &BitString) -> usize {
        assert_eq!(self.len(), other.len());
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }
}

/// Most-significant coordinate first, one `'0'`/`'1'` per coordinate.
impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in &self.bits {
            f.write_str(if *bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = ToyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(ToyError::BadChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        BitString::new(bits)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ToyConfig {
    pub dimensions: usize,
    pub noise_sigma: f64,
}

impl ToyConfig {
    pub fn new(dimensions: usize, noise_sigma: f64) -> Result<Self, ToyError> {
        if dimensions == 0 {
            return Err(ToyError::Empty);
        }
        if !(noise_sigma.is_finite() && noise_sigma >= 0.0) {
            return Err(ToyError::BadSigma(noise_sigma));
        }
        Ok(Self {
            dimensions,
            noise_sigma,
        })
    }
}

pub fn random_bitstring<R: Rng + ?Sized>(dimensions: usize, rng: &mut R) -> BitString {
    assert!(dimensions >= 1, "bit strings need at least one coordinate");
    BitString {
        bits: (0..dimensions).map(|_| rng.random_bool(0.5)).collect(),
    }
}

/// Flips exactly one uniformly chosen coordinate.
pub fn flip_mutation<R: Rng + ?Sized>(b: &BitString, rng: &mut R) -> BitString {
    let mut child = b.clone();
    let i = rng.random_range(0..child.bits.len());
    child.bits[i] = !child.bits[i];
    child
}

/// Fraction of zero coordinates.
pub fn true_quality(b: &BitString) -> f64 {
    b.count_zeros() as f64 / b.len() as f64
}

/// `true_quality(b)` plus `Normal(0, sigma^2)` noise. Not clamped.
pub fn simulated_accuracy<R: Rng + ?Sized>(b: &BitString, config: &ToyConfig, rng: &mut R) -> f64 {
    let quality = true_quality(b);
    if config.noise_sigma == 0.0 {
        return quality;
    }
    let noise = Normal::new(0.0, config.noise_sigma).expect("sigma validated");
    quality + noise.sample(rng)
}
