use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::genotype::{ArchitectureGenotype, CellGenotype};
use super::space::SearchSpaceConfig;
use super::ops::OpKind;

/// Hidden states that no combination reads. They are concatenated into the
/// cell output. The last produced state is always among them.
pub fn unused_states(cell: &CellGenotype) -> Vec<usize> {
    let mut used = vec![false; cell.num_states()];
    for combination in cell.combinations() {
        for element in combination.elements() {
            used[element.source] = true;
        }
    }
    used.iter()
        .enumerate()
        .filter(|(_, used)| !**used)
        .map(|(state, _)| state)
        .collect()
}

/// Number of edges into the cell's output vertex.
pub fn output_fan_in(cell: &CellGenotype) -> usize {
    unused_states(cell).len()
}

/// Distinct ops used anywhere in the architecture (both cells).
pub fn distinct_ops(arch: &ArchitectureGenotype) -> usize {
    arch.elements().map(|e| e.op).collect::<BTreeSet<OpKind>>().len()
}

/// Number of distinct architectures in a space. The combination producing
/// state `k` has `(k * ops)^2` choices; the two cells are independent.
pub fn space_size(space: &SearchSpaceConfig) -> BigUint {
    let ops = space.ops().len() as u64;
    let per_cell = (0..space.num_combinations())
        .map(|position| {
            let per_element = BigUint::from(CellGenotype::produces(position) as u64 * ops);
            &per_element * &per_element
        })
        .fold(BigUint::from(1u32), |acc, x| acc * x);
    &per_cell * &per_cell
}
