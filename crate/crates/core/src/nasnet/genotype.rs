use std::sync::Arc;

use rand::Rng;

use super::ops::OpKind;
use super::space::SearchSpaceConfig;
use super::NasnetError;

/// One half of a pairwise combination: an op applied to an earlier hidden state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairElement {
    pub source: usize,
    pub op: OpKind,
}

impl PairElement {
    pub fn new(source: usize, op: OpKind) -> Self {
        Self { source, op }
    }
}

/// `left.op(left.source) + right.op(right.source)`. The state it produces is
/// implied by its position in the cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Combination {
    pub left: PairElement,
    pub right: PairElement,
}

impl Combination {
    pub fn new(left: PairElement, right: PairElement) -> Self {
        Self { left, right }
    }

    /// Element 0 is `left`, element 1 is `right`.
    pub fn element(&self, index: usize) -> &PairElement {
        match index {
            0 => &self.left,
            1 => &self.right,
            _ => panic!("combination element index {index} out of range"),
        }
    }

    pub fn element_mut(&mut self, index: usize) -> &mut PairElement {
        match index {
            0 => &mut self.left,
            1 => &mut self.right,
            _ => panic!("combination element index {index} out of range"),
        }
    }

    pub fn elements(&self) -> [&PairElement; 2] {
        [&self.left, &self.right]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellGenotype {
    combinations: Vec<Combination>,
}

impl CellGenotype {
    /// Builds a cell, checking every source against the state it feeds.
    pub fn new(
        combinations: Vec<Combination>,
        space: &SearchSpaceConfig,
    ) -> Result<Self, NasnetError> {
        let cell = Self { combinations };
        cell.validate(space, "cell")?;
        Ok(cell)
    }

    pub(crate) fn new_unchecked(combinations: Vec<Combination>) -> Self {
        Self { combinations }
    }

    pub fn combinations(&self) -> &[Combination] {
        &self.combinations
    }

    pub(crate) fn combinations_mut(&mut self) -> &mut [Combination] {
        &mut self.combinations
    }

    /// Hidden state produced by the combination at `position`.
    pub fn produces(position: usize) -> usize {
        position + 2
    }

    /// Number of hidden states, counting the two inputs but not the output.
    pub fn num_states(&self) -> usize {
        self.combinations.len() + 2
    }

    pub fn validate(&self, space: &SearchSpaceConfig, field: &str) -> Result<(), NasnetError> {
        if self.combinations.len() != space.num_combinations() {
            return Err(NasnetError::CombinationCount {
                field: field.to_string(),
                expected: space.num_combinations(),
                found: self.combinations.len(),
            });
        }
        for (position, combination) in self.combinations.iter().enumerate() {
            let produces = Self::produces(position);
            for (index, element) in combination.elements().into_iter().enumerate() {
                if element.source >= produces {
                    return Err(NasnetError::SourceOutOfRange {
                        field: format!("{field}[{position}][{index}].source"),
                        value: element.source as i64,
                        produces,
                    });
                }
                if !space.contains_op(element.op) {
                    return Err(NasnetError::OpNotInSpace {
                        field: format!("{field}[{position}][{index}].op"),
                        op: element.op,
                        space: space.variant().to_string(),
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellKind {
    Normal,
    Reduction,
}

impl CellKind {
    pub const BOTH: [CellKind; 2] = [CellKind::Normal, CellKind::Reduction];

    pub fn name(self) -> &'static str {
        match self {
            CellKind::Normal => "normal",
            CellKind::Reduction => "reduction",
        }
    }
}

/// A full architecture: two independent cells over the same search space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArchitectureGenotype {
    space: Arc<SearchSpaceConfig>,
    normal: CellGenotype,
    reduction: CellGenotype,
}

impl ArchitectureGenotype {
    pub fn new(
        space: Arc<SearchSpaceConfig>,
        normal: CellGenotype,
        reduction: CellGenotype,
    ) -> Result<Self, NasnetError> {
        normal.validate(&space, "normal")?;
        reduction.validate(&space, "reduction")?;
        Ok(Self {
            space,
            normal,
            reduction,
        })
    }

    pub fn space(&self) -> &Arc<SearchSpaceConfig> {
        &self.space
    }

    pub fn normal(&self) -> &CellGenotype {
        &self.normal
    }

    pub fn reduction(&self) -> &CellGenotype {
        &self.reduction
    }

    pub fn cell(&self, kind: CellKind) -> &CellGenotype {
        match kind {
            CellKind::Normal => &self.normal,
            CellKind::Reduction => &self.reduction,
        }
    }

    pub(crate) fn cell_mut(&mut self, kind: CellKind) -> &mut CellGenotype {
        match kind {
            CellKind::Normal => &mut self.normal,
            CellKind::Reduction => &mut self.reduction,
        }
    }

    pub fn validate(&self) -> Result<(), NasnetError> {
        self.normal.validate(&self.space, "normal")?;
        self.reduction.validate(&self.space, "reduction")
    }

    /// All elements in a fixed order: normal cell first, then by position, left before right.
    pub fn elements(&self) -> impl Iterator<Item = &PairElement> + '_ {
        CellKind::BOTH.into_iter().flat_map(move |kind| {
            self.cell(kind)
                .combinations()
                .iter()
                .flat_map(|c| c.elements().into_iter())
        })
    }
}

/// Draws a cell with every source uniform over the earlier states and every op
/// uniform over the op set, which makes every valid cell equally likely.
pub fn random_cell<R: Rng + ?Sized>(space: &SearchSpaceConfig, rng: &mut R) -> CellGenotype {
    let ops = space.ops();
    let combinations = (0..space.num_combinations())
        .map(|position| {
            let produces = CellGenotype::produces(position);
            let mut element = || PairElement {
                source: rng.random_range(0..produces),
                op: ops[rng.random_range(0..ops.len())],
            };
            let left = element();
            let right = element();
            Combination { left, right }
        })
        .collect();
    CellGenotype::new_unchecked(combinations)
}

pub fn random_architecture<R: Rng + ?Sized>(
    space: &Arc<SearchSpaceConfig>,
    rng: &mut R,
) -> ArchitectureGenotype {
    let normal = random_cell(space, rng);
    let reduction = random_cell(space, rng);
    ArchitectureGenotype {
        space: Arc::clone(space),
        normal,
        reduction,
    }
}
