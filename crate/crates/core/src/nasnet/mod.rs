//! The NASNet cell search space.
//!
//! An architecture is a normal cell and a reduction cell. Each cell starts from
//! hidden states 0 and 1 (the two cell inputs) and builds `C` further states
//! with pairwise combinations: combination `i` produces state `k = i + 2` as
//! `op_a(state_a) + op_b(state_b)` with `state_a, state_b < k`. States that no
//! combination consumes are concatenated into the cell output.
//!
//! Because every source index is smaller than the state it helps produce, a
//! cell can never contain a loop; validity is a per-field range check.

mod document;
mod genotype;
mod metrics;
mod mutation;
mod ops;
mod space;

pub use document::{deserialize, serialize};
pub use genotype::{
    random_architecture, random_cell, ArchitectureGenotype, CellGenotype, CellKind, Combination,
    PairElement,
};
pub use metrics::{distinct_ops, output_fan_in, space_size, unused_states};
pub use mutation::{
    apply_mutation, choose_mutation, mutate, mutate_hidden_state, mutate_op, EditSite,
    MutationKind, DEFAULT_IDENTITY_PROB,
};
pub use ops::{OpKind, ALL_OPS, SP1_OPS, SP2_OPS};
pub use space::{SearchSpaceConfig, SpaceVariant};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NasnetError {
    #[error("invalid search space: {0}")]
    InvalidConfig(String),
    #[error("{field}: unknown op name {name:?}")]
    UnknownOp { field: String, name: String },
    #[error("{field}: op {op} is not part of the {space} op set")]
    OpNotInSpace {
        field: String,
        op: OpKind,
        space: String,
    },
    #[error("{field}: source {value} out of range for hidden state {produces} (must be < {produces})")]
    SourceOutOfRange {
        field: String,
        value: i64,
        produces: usize,
    },
    #[error("{field}: expected {expected} combinations, found {found}")]
    CombinationCount {
        field: String,
        expected: usize,
        found: usize,
    },
    #[error("{field}: expected a pair of 2 elements, found {found}")]
    ElementCount { field: String, found: usize },
    #[error("space: document is for {found:?}, expected {expected:?}")]
    SpaceMismatch { expected: String, found: String },
    #[error("malformed genotype document: {0}")]
    Malformed(String),
}
