//! Hidden-state, op and identity mutations.
//!
//! Both non-identity mutations pick a cell, a combination and an element
//! uniformly, then redraw one field of that element uniformly from the values
//! it does not currently hold. A non-identity mutation therefore always changes
//! exactly one field.

use rand::Rng;

use super::genotype::{ArchitectureGenotype, CellGenotype, CellKind};

/// Probability of the identity mutation used by default.
pub const DEFAULT_IDENTITY_PROB: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MutationKind {
    Identity,
    HiddenState,
    Op,
}

/// Location of one pair element within an architecture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EditSite {
    pub cell: CellKind,
    pub combination: usize,
    pub element: usize,
}

impl EditSite {
    fn choose<R: Rng + ?Sized>(arch: &ArchitectureGenotype, rng: &mut R) -> Self {
        let cell = if rng.random_bool(0.5) {
            CellKind::Normal
        } else {
            CellKind::Reduction
        };
        let combination = rng.random_range(0..arch.cell(cell).combinations().len());
        let element = rng.random_range(0..2);
        Self {
            cell,
            combination,
            element,
        }
    }

    pub fn produces(&self) -> usize {
        CellGenotype::produces(self.combination)
    }
}

/// Uniform draw from `0..n` excluding `current`.
fn draw_other<R: Rng + ?Sized>(n: usize, current: usize, rng: &mut R) -> usize {
    debug_assert!(n >= 2 && current < n);
    let r = rng.random_range(0..n - 1);
    if r >= current {
        r + 1
    } else {
        r
    }
}

pub fn mutate_hidden_state<R: Rng + ?Sized>(
    arch: &ArchitectureGenotype,
    rng: &mut R,
) -> ArchitectureGenotype {
    let site = EditSite::choose(arch, rng);
    let mut child = arch.clone();
    let element = child.cell_mut(site.cell).combinations_mut()[site.combination]
        .element_mut(site.element);
    // produces >= 2, so there is always another state to pick.
    element.source = draw_other(site.produces(), element.source, rng);
    child
}

pub fn mutate_op<R: Rng + ?Sized>(
    arch: &ArchitectureGenotype,
    rng: &mut R,
) -> ArchitectureGenotype {
    let site = EditSite::choose(arch, rng);
    let ops = arch.space().ops();
    let mut child = arch.clone();
    if ops.len() < 2 {
        return child;
    }
    let element = child.cell_mut(site.cell).combinations_mut()[site.combination]
        .element_mut(site.element);
    let current = ops
        .iter()
        .position(|op| *op == element.op)
        .expect("genotype op outside its space");
    element.op = ops[draw_other(ops.len(), current, rng)];
    child
}

/// Identity with probability `identity_prob`, otherwise hidden-state or op
/// mutation with equal probability.
pub fn choose_mutation<R: Rng + ?Sized>(identity_prob: f64, rng: &mut R) -> MutationKind {
    if rng.random::<f64>() < identity_prob {
        MutationKind::Identity
    } else if rng.random_bool(0.5) {
        MutationKind::HiddenState
    } else {
        MutationKind::Op
    }
}

pub fn apply_mutation<R: Rng + ?Sized>(
    arch: &ArchitectureGenotype,
    kind: MutationKind,
    rng: &mut R,
) -> ArchitectureGenotype {
    match kind {
        MutationKind::Identity => arch.clone(),
        MutationKind::HiddenState => mutate_hidden_state(arch, rng),
        MutationKind::Op => mutate_op(arch, rng),
    }
}

pub fn mutate<R: Rng + ?Sized>(
    arch: &ArchitectureGenotype,
    rng: &mut R,
    identity_prob: f64,
) -> ArchitectureGenotype {
    let kind = choose_mutation(identity_prob, rng);
    apply_mutation(arch, kind, rng)
}
