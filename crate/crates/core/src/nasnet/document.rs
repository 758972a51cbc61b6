//! Canonical text form of an architecture:
//!
//! ```text
//! {"space":"SP-I","normal":[[[0,"avg3x3"],[1,"max3x3"]],...],"reduction":[...]}
//! ```
//!
//! Fields appear in that order with no whitespace, so equal genotypes always
//! produce byte-identical documents.

use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::Value;

use super::genotype::{ArchitectureGenotype, CellGenotype, CellKind, Combination, PairElement};
use super::ops::OpKind;
use super::space::SearchSpaceConfig;
use super::NasnetError;

pub fn serialize(arch: &ArchitectureGenotype) -> String {
    let mut out = String::with_capacity(64 + 40 * arch.space().num_combinations());
    write!(out, "{{\"space\":\"{}\"", arch.space().variant()).unwrap();
    for kind in CellKind::BOTH {
        write!(out, ",\"{}\":[", kind.name()).unwrap();
        for (i, combination) in arch.cell(kind).combinations().iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let [l, r] = combination.elements();
            write!(
                out,
                "[[{},\"{}\"],[{},\"{}\"]]",
                l.source, l.op, r.source, r.op
            )
            .unwrap();
        }
        out.push(']');
    }
    out.push('}');
    out
}

pub fn deserialize(
    text: &str,
    space: &Arc<SearchSpaceConfig>,
) -> Result<ArchitectureGenotype, NasnetError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| NasnetError::Malformed(e.to_string()))?;
    let object = value
        .as_object()
        .ok_or_else(|| NasnetError::Malformed("expected a JSON object".into()))?;
    let declared = object
        .get("space")
        .and_then(Value::as_str)
        .ok_or_else(|| NasnetError::Malformed("missing string field \"space\"".into()))?;
    if declared != space.variant().name() {
        return Err(NasnetError::SpaceMismatch {
            expected: space.variant().name().to_string(),
            found: declared.to_string(),
        });
    }
    let normal = parse_cell(object.get("normal"), "normal", space)?;
    let reduction = parse_cell(object.get("reduction"), "reduction", space)?;
    ArchitectureGenotype::new(Arc::clone(space), normal, reduction)
}

fn parse_cell(
    value: Option<&Value>,
    field: &str,
    space: &SearchSpaceConfig,
) -> Result<CellGenotype, NasnetError> {
    let combos = value
        .and_then(Value::as_array)
        .ok_or_else(|| NasnetError::Malformed(format!("missing array field {field:?}")))?;
    if combos.len() != space.num_combinations() {
        return Err(NasnetError::CombinationCount {
            field: field.to_string(),
            expected: space.num_combinations(),
            found: combos.len(),
        });
    }
    let mut combinations = Vec::with_capacity(combos.len());
    for (position, combo) in combos.iter().enumerate() {
        let pair = combo.as_array().ok_or_else(|| {
            NasnetError::Malformed(format!("{field}[{position}]: expected an array"))
        })?;
        if pair.len() != 2 {
            return Err(NasnetError::ElementCount {
                field: format!("{field}[{position}]"),
                found: pair.len(),
            });
        }
        let produces = CellGenotype::produces(position);
        let left = parse_element(&pair[0], &format!("{field}[{position}][0]"), produces, space)?;
        let right = parse_element(&pair[1], &format!("{field}[{position}][1]"), produces, space)?;
        combinations.push(Combination::new(left, right));
    }
    CellGenotype::new(combinations, space)
}

fn parse_element(
    value: &Value,
    field: &str,
    produces: usize,
    space: &SearchSpaceConfig,
) -> Result<PairElement, NasnetError> {
    let malformed = || NasnetError::Malformed(format!("{field}: expected [source, \"op\"]"));
    let items = value.as_array().ok_or_else(malformed)?;
    if items.len() != 2 {
        return Err(malformed());
    }
    let source = items[0].as_i64().ok_or_else(malformed)?;
    let name = items[1].as_str().ok_or_else(malformed)?;
    if source < 0 || source as u64 >= produces as u64 {
        return Err(NasnetError::SourceOutOfRange {
            field: format!("{field}.source"),
            value: source,
            produces,
        });
    }
    let op: OpKind = name.parse().map_err(|_| NasnetError::UnknownOp {
        field: format!("{field}.op"),
        name: name.to_string(),
    })?;
    if !space.contains_op(op) {
        return Err(NasnetError::OpNotInSpace {
            field: format!("{field}.op"),
            op,
            space: space.variant().to_string(),
        });
    }
    Ok(PairElement::new(source as usize, op))
}
