//! Built-in families and published value tables.
//!
//! Type numbering follows the published tables. For the four line families
//! the types are, in order: `(open, open)`, `(in, open)`, `(out, open)`,
//! `(in, out)`, `(in, in)`, `(out, out)`. The cycle families use the last
//! three of those, renumbered 1 to 3.

use serde::Serialize;
use thiserror::Error;

use crate::dataio::{self, FixtureTable};
use crate::engine::{Engine, Nimber};
use crate::games::{Boundaries, BoundaryKind, RuleSet};
use crate::periodicity::{FamilySpec, InvalidPattern, Side, Splits};

pub const BUILTIN_NAMES: [&str; 4] =
    ["standard-line", "variant-line", "standard-cycle", "variant-cycle"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown family {name:?}; valid names: {}", BUILTIN_NAMES.join(", "))]
    UnknownFamily { name: String },
    #[error("embedded fixture for {name} is malformed: {reason}")]
    BadFixture { name: String, reason: String },
}

use BoundaryKind::{In, Open, Out};

const LINE_TYPES: [Boundaries; 6] = [
    Boundaries::new(Open, Open),
    Boundaries::new(In, Open),
    Boundaries::new(Out, Open),
    Boundaries::new(In, Out),
    Boundaries::new(In, In),
    Boundaries::new(Out, Out),
];

const LINE_SPLITS: [Splits; 6] = [
    Splits { forward: (3, 2), backward: (2, 3) },
    Splits { forward: (4, 2), backward: (5, 3) },
    Splits { forward: (6, 2), backward: (4, 3) },
    Splits { forward: (4, 4), backward: (5, 6) },
    Splits { forward: (4, 5), backward: (5, 4) },
    Splits { forward: (6, 4), backward: (4, 6) },
];

const CYCLE_TYPES: [Boundaries; 3] =
    [Boundaries::new(In, Out), Boundaries::new(In, In), Boundaries::new(Out, Out)];

const CYCLE_SPLITS: [Splits; 3] = [
    Splits { forward: (1, 1), backward: (2, 3) },
    Splits { forward: (1, 2), backward: (2, 1) },
    Splits { forward: (3, 1), backward: (1, 3) },
];

fn end_patterns(list: &[(usize, usize, usize, Side)]) -> Vec<InvalidPattern> {
    list.iter().map(|&(i, p, q, side)| InvalidPattern::new(i, p, q, side, 0)).collect()
}

fn variant_line() -> FamilySpec {
    use Side::*;
    FamilySpec {
        id: "variant-line".into(),
        rules: RuleSet::SourcesAllowed,
        types: LINE_TYPES.to_vec(),
        splits: LINE_SPLITS.to_vec(),
        invalid_patterns: end_patterns(&[
            // Marks pointing into an `in` end.
            (2, 5, 3, Left),
            (4, 5, 6, Left),
            (5, 5, 4, Left),
            (5, 4, 5, Right),
            // Marks pointing into an open end.
            (1, 2, 3, Left),
            (1, 3, 2, Right),
            (2, 4, 2, Right),
            (3, 6, 2, Right),
        ]),
        period: 17,
        window: 43,
        cycle_over: None,
    }
}

fn standard_line() -> FamilySpec {
    use Side::*;
    FamilySpec {
        id: "standard-line".into(),
        rules: RuleSet::Standard,
        types: LINE_TYPES.to_vec(),
        splits: LINE_SPLITS.to_vec(),
        invalid_patterns: end_patterns(&[
            (1, 3, 2, Left),
            (1, 2, 3, Left),
            (1, 3, 2, Right),
            (1, 2, 3, Right),
            (2, 5, 3, Left),
            (2, 4, 2, Right),
            (2, 5, 3, Right),
            (3, 6, 2, Left),
            (3, 6, 2, Right),
            (3, 4, 3, Right),
            (4, 5, 6, Left),
            (4, 5, 6, Right),
            (5, 5, 4, Left),
            (5, 4, 5, Right),
            (6, 6, 4, Left),
            (6, 4, 6, Right),
        ]),
        period: 2,
        window: 2,
        cycle_over: None,
    }
}

fn standard_cycle() -> FamilySpec {
    use Side::*;
    FamilySpec {
        id: "standard-cycle".into(),
        rules: RuleSet::Standard,
        types: CYCLE_TYPES.to_vec(),
        splits: CYCLE_SPLITS.to_vec(),
        invalid_patterns: end_patterns(&[
            (1, 2, 3, Left),
            (1, 2, 3, Right),
            (2, 2, 1, Left),
            (2, 1, 2, Right),
            (3, 3, 1, Left),
            (3, 1, 3, Right),
        ]),
        period: 2,
        window: 3,
        cycle_over: None,
    }
}

fn variant_cycle() -> FamilySpec {
    FamilySpec { id: "variant-cycle".into(), cycle_over: Some(4), ..variant_line() }
}

pub fn builtin(name: &str) -> Result<FamilySpec, CatalogError> {
    match name {
        "standard-line" => Ok(standard_line()),
        "variant-line" => Ok(variant_line()),
        "standard-cycle" => Ok(standard_cycle()),
        "variant-cycle" => Ok(variant_cycle()),
        _ => Err(CatalogError::UnknownFamily { name: name.to_string() }),
    }
}

fn fixture_text(name: &str) -> Option<&'static str> {
    match name {
        "standard-line" => Some(include_str!("../fixtures/standard-line.txt")),
        "variant-line" => Some(include_str!("../fixtures/variant-line.txt")),
        "standard-cycle" => Some(include_str!("../fixtures/standard-cycle.txt")),
        "variant-cycle" => Some(include_str!("../fixtures/variant-cycle.txt")),
        _ => None,
    }
}

pub fn fixtures(name: &str) -> Result<FixtureTable, CatalogError> {
    let text =
        fixture_text(name).ok_or_else(|| CatalogError::UnknownFamily { name: name.into() })?;
    dataio::parse_fixtures(text)
        .map_err(|e| CatalogError::BadFixture { name: name.into(), reason: e.to_string() })
}

/// Engine values of exposed type `i` (1-based) for `n` in `from..=to`.
/// For a cycle wrapper the single exposed type is the cycle itself and
/// `from` is raised to 2.
pub fn engine_values(
    spec: &FamilySpec,
    engine: &Engine,
    i: usize,
    from: usize,
    to: usize,
) -> Vec<(usize, Nimber)> {
    match spec.cycle_over {
        Some(_) => (from.max(2)..=to)
            .map(|n| (n, engine.grundy_cycle(n, spec.rules).expect("n >= 2")))
            .collect(),
        None => {
            let from = from.max(1);
            let values = engine.sequence(spec.types[i - 1], spec.rules, from, to);
            (from..=to).zip(values).collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: usize,
    pub engine: Nimber,
    pub published: Nimber,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeComparison {
    #[serde(rename = "type")]
    pub family_type: usize,
    pub published_len: usize,
    pub mismatches: Vec<Mismatch>,
}

impl TypeComparison {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    pub family: String,
    pub rules: RuleSet,
    pub start: usize,
    pub types: Vec<TypeComparison>,
}

impl CompareReport {
    pub fn all_match(&self) -> bool {
        self.types.iter().all(TypeComparison::matches)
    }

    pub fn get(&self, family_type: usize) -> Option<&TypeComparison> {
        self.types.iter().find(|t| t.family_type == family_type)
    }
}

/// Index-aligned comparison of every published table with the engine.
pub fn compare(spec: &FamilySpec, table: &FixtureTable, engine: &Engine) -> CompareReport {
    let types = table
        .types
        .iter()
        .map(|(i, published)| {
            let to = table.start + published.len() - 1;
            let engine_side = engine_values(spec, engine, *i, table.start, to);
            let mismatches = engine_side
                .iter()
                .zip(published)
                .filter(|((_, e), p)| e != *p)
                .map(|(&(n, engine), &published)| Mismatch { n, engine, published })
                .collect();
            TypeComparison { family_type: *i, published_len: published.len(), mismatches }
        })
        .collect();
    CompareReport { family: spec.id.clone(), rules: spec.rules, start: table.start, types }
}
