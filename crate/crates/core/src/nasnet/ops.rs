//! Convolutional ops available to pairwise combinations.

use std::fmt;
use std::str::FromStr;

use super::NasnetError;

/// A cell op. The discriminant is the stable integer code of the op.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum OpKind {
    None = 0,
    Identity = 1,
    Conv1x1 = 2,
    Conv3x3 = 3,
    Sep3x3 = 4,
    Sep5x5 = 5,
    Sep7x7 = 6,
    Avg2x2 = 7,
    Avg3x3 = 8,
    Min2x2 = 9,
    Max2x2 = 10,
    Max3x3 = 11,
    DilSep3x3 = 12,
    DilSep5x5 = 13,
    DilSep7x7 = 14,
    Conv1x3_3x1 = 15,
    Conv1x7_7x1 = 16,
    DilConv3x3R2 = 17,
    DilConv3x3R4 = 18,
    DilConv3x3R6 = 19,
}

/// Every op known to the crate, in code order.
pub const ALL_OPS: [OpKind; 20] = [
    OpKind::None,
    OpKind::Identity,
    OpKind::Conv1x1,
    OpKind::Conv3x3,
    OpKind::Sep3x3,
    OpKind::Sep5x5,
    OpKind::Sep7x7,
    OpKind::Avg2x2,
    OpKind::Avg3x3,
    OpKind::Min2x2,
    OpKind::Max2x2,
    OpKind::Max3x3,
    OpKind::DilSep3x3,
    OpKind::DilSep5x5,
    OpKind::DilSep7x7,
    OpKind::Conv1x3_3x1,
    OpKind::Conv1x7_7x1,
    OpKind::DilConv3x3R2,
    OpKind::DilConv3x3R4,
    OpKind::DilConv3x3R6,
];

/// The 8 ops of the original NASNet space.
pub const SP1_OPS: [OpKind; 8] = [
    OpKind::None,
    OpKind::Sep3x3,
    OpKind::Sep5x5,
    OpKind::Sep7x7,
    OpKind::Avg3x3,
    OpKind::Max3x3,
    OpKind::DilSep3x3,
    OpKind::Conv1x7_7x1,
];

/// The enlarged 19-op list.
pub const SP2_OPS: [OpKind; 19] = [
    OpKind::Identity,
    OpKind::Conv1x1,
    OpKind::Conv3x3,
    OpKind::Sep3x3,
    OpKind::Sep5x5,
    OpKind::Sep7x7,
    OpKind::Avg2x2,
    OpKind::Avg3x3,
    OpKind::Min2x2,
    OpKind::Max2x2,
    OpKind::Max3x3,
    OpKind::DilSep3x3,
    OpKind::DilSep5x5,
    OpKind::DilSep7x7,
    OpKind::Conv1x3_3x1,
    OpKind::Conv1x7_7x1,
    OpKind::DilConv3x3R2,
    OpKind::DilConv3x3R4,
    OpKind::DilConv3x3R6,
];

impl OpKind {
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<OpKind> {
        ALL_OPS.get(code as usize).copied()
    }

    /// Canonical name used in genotype documents.
    pub fn name(self) -> &'static str {
        match self {
            OpKind::None => "none",
            OpKind::Identity => "identity",
            OpKind::Conv1x1 => "conv1x1",
            OpKind::Conv3x3 => "conv3x3",
            OpKind::Sep3x3 => "sep3x3",
            OpKind::Sep5x5 => "sep5x5",
            OpKind::Sep7x7 => "sep7x7",
            OpKind::Avg2x2 => "avg2x2",
            OpKind::Avg3x3 => "avg3x3",
            OpKind::Min2x2 => "min2x2",
            OpKind::Max2x2 => "max2x2",
            OpKind::Max3x3 => "max3x3",
            OpKind::DilSep3x3 => "dilsep3x3",
            OpKind::DilSep5x5 => "dilsep5x5",
            OpKind::DilSep7x7 => "dilsep7x7",
            OpKind::Conv1x3_3x1 => "conv1x3_3x1",
            OpKind::Conv1x7_7x1 => "conv1x7_7x1",
            OpKind::DilConv3x3R2 => "dilconv3x3_r2",
            OpKind::DilConv3x3R4 => "dilconv3x3_r4",
            OpKind::DilConv3x3R6 => "dilconv3x3_r6",
        }
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OpKind {
    type Err = NasnetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_OPS
            .iter()
            .copied()
            .find(|op| op.name() == s)
            .ok_or_else(|| NasnetError::UnknownOp {
                field: String::new(),
                name: s.to_string(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn codes_and_names_are_bijective() {
        for (i, op) in ALL_OPS.iter().enumerate() {
            assert_eq!(op.code() as usize, i);
            assert_eq!(OpKind::from_code(op.code()), Some(*op));
            assert_eq!(op.name().parse::<OpKind>().unwrap(), *op);
        }
        let names: HashSet<_> = ALL_OPS.iter().map(|o| o.name()).collect();
        assert_eq!(names.len(), ALL_OPS.len());
    }

    #[test]
    fn op_set_sizes() {
        assert_eq!(SP1_OPS.len(), 8);
        assert_eq!(SP2_OPS.len(), 19);
        let sp1: HashSet<_> = SP1_OPS.iter().collect();
        let sp2: HashSet<_> = SP2_OPS.iter().collect();
        assert_eq!(sp1.len(), 8);
        assert_eq!(sp2.len(), 19);
        let names: Vec<_> = SP1_OPS.iter().map(|o| o.name()).collect();
        assert_eq!(
            names,
            ["none", "sep3x3", "sep5x5", "sep7x7", "avg3x3", "max3x3", "dilsep3x3", "conv1x7_7x1"]
        );
    }

    #[test]
    fn unknown_name_rejected() {
        assert!("sep9x9".parse::<OpKind>().is_err());
    }
}
