use std::fmt;
use std::str::FromStr;

use super::ops::{OpKind, SP1_OPS, SP2_OPS};
use super::NasnetError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceVariant {
    /// 8 ops, 5 combinations per cell.
    Sp1,
    /// 19 ops, 5 combinations per cell.
    Sp2,
    /// 19 ops, 15 combinations per cell.
    Sp3,
    /// Any other op set / combination count. Used for small enumerable spaces.
    Custom,
}

impl SpaceVariant {
    pub fn name(self) -> &'static str {
        match self {
            SpaceVariant::Sp1 => "SP-I",
            SpaceVariant::Sp2 => "SP-II",
            SpaceVariant::Sp3 => "SP-III",
            SpaceVariant::Custom => "custom",
        }
    }
}

impl fmt::Display for SpaceVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpaceVariant {
    type Err = NasnetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "SP-I" | "sp1" => Ok(SpaceVariant::Sp1),
            "SP-II" | "sp2" => Ok(SpaceVariant::Sp2),
            "SP-III" | "sp3" => Ok(SpaceVariant::Sp3),
            "custom" => Ok(SpaceVariant::Custom),
            other => Err(NasnetError::InvalidConfig(format!(
                "unknown search space {other:?}"
            ))),
        }
    }
}

/// Shape of a cell search space: how many pairwise combinations each cell
/// has and which ops an element may use.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SearchSpaceConfig {
    variant: SpaceVariant,
    num_combinations: usize,
    ops: Vec<OpKind>,
}

impl SearchSpaceConfig {
    pub fn sp1() -> Self {
        Self {
            variant: SpaceVariant::Sp1,
            num_combinations: 5,
            ops: SP1_OPS.to_vec(),
        }
    }

    pub fn sp2() -> Self {
        Self {
            variant: SpaceVariant::Sp2,
            num_combinations: 5,
            ops: SP2_OPS.to_vec(),
        }
    }

    pub fn sp3() -> Self {
        Self {
            variant: SpaceVariant::Sp3,
            num_combinations: 15,
            ops: SP2_OPS.to_vec(),
        }
    }

    pub fn from_variant(variant: SpaceVariant) -> Result<Self, NasnetError> {
        match variant {
            SpaceVariant::Sp1 => Ok(Self::sp1()),
            SpaceVariant::Sp2 => Ok(Self::sp2()),
            SpaceVariant::Sp3 => Ok(Self::sp3()),
            SpaceVariant::Custom => Err(NasnetError::InvalidConfig(
                "custom spaces need an explicit op list".into(),
            )),
        }
    }

    /// A non-standard space, mostly useful for exhaustive tests.
    pub fn custom(num_combinations: usize, ops: Vec<OpKind>) -> Result<Self, NasnetError> {
        if num_combinations == 0 {
            return Err(NasnetError::InvalidConfig(
                "a cell needs at least one combination".into(),
            ));
        }
        if ops.is_empty() {
            return Err(NasnetError::InvalidConfig("empty op set".into()));
        }
        let mut sorted = ops.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != ops.len() {
            return Err(NasnetError::InvalidConfig("duplicate op in op set".into()));
        }
        Ok(Self {
            variant: SpaceVariant::Custom,
            num_combinations,
            ops,
        })
    }

    pub fn variant(&self) -> SpaceVariant {
        self.variant
    }

    pub fn num_combinations(&self) -> usize {
        self.num_combinations
    }

    pub fn ops(&self) -> &[OpKind] {
        &self.ops
    }

    pub fn contains_op(&self, op: OpKind) -> bool {
        self.ops.contains(&op)
    }

    /// Index of the cell output state (all hidden states come before it).
    pub fn output_state(&self) -> usize {
        self.num_combinations + 2
    }
}
