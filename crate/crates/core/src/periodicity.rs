//! Certified eventual periodicity for families of splitting games.
//!
//! A family is a list of segment types `g_1..g_k` under one rule set. Every
//! move on `g_i(n)` splits it into `g_p(a)` and `g_q(b)` with `a + b + 1 = n`,
//! where `(p, q)` depends only on `i` and the direction of the mark. Some
//! moves are unplayable; a family declares those as patterns that fix the
//! length of one side independently of `n`.
//!
//! If every pattern fixes a side shorter than `s - T`, the patterns really
//! are independent of `n`, and `Nim(g_i(n)) = Nim(g_i(n - T))` holds for all
//! `i` and all `n` in `[s + 1, 2s + 1]`, then it holds for every `n > s`.
//! The induction runs over the moves with one side of length at most `s`,
//! which reappear with the other side shifted by `T` in `g_i(n - T)`; every
//! move with both sides longer than `s` repeats the value of one of those.
//!
//! [`certify`] checks the three hypotheses mechanically. Independence from
//! `n` is checked against the engine's move generator up to a finite bound;
//! the certificate records that bound.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{mex, Engine, Nimber};
use crate::games::{Boundaries, Direction, Position, RuleSet, SegmentGame};

pub const CERT_SCHEMA: &str = "cycles-cert/1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PeriodicityError {
    #[error("certificate for {0} did not pass; refusing lookup")]
    NotCertified(String),
    #[error("type index {index} out of range 1..={k}")]
    TypeOutOfRange { index: usize, k: usize },
    #[error("length {n} out of range (minimum {min})")]
    LengthOutOfRange { n: usize, min: usize },
}

/// Type indices `(p, q)` of the left and right parts; 1-based.
pub type TypePair = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Splits {
    pub forward: TypePair,
    pub backward: TypePair,
}

impl Splits {
    pub fn for_direction(&self, dir: Direction) -> TypePair {
        match dir {
            Direction::Forward => self.forward,
            Direction::Backward => self.backward,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Move `(p, q, a, b)` on `g_i(n)` is unplayable for every `n` whenever the
/// named side has length `fixed_len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvalidPattern {
    #[serde(rename = "i")]
    pub family_type: usize,
    pub p: usize,
    pub q: usize,
    pub side: Side,
    pub fixed_len: usize,
}

impl InvalidPattern {
    pub const fn new(family_type: usize, p: usize, q: usize, side: Side, fixed_len: usize) -> Self {
        Self { family_type, p, q, side, fixed_len }
    }

    pub fn matches(&self, i: usize, mv: &SplitMove) -> bool {
        let len = match self.side {
            Side::Left => mv.a,
            Side::Right => mv.b,
        };
        self.family_type == i && self.p == mv.p && self.q == mv.q && self.fixed_len == len
    }
}

impl fmt::Display for InvalidPattern {
    /// `g2: (5,3,0,n-1)` style, the fixed side written out.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = self.fixed_len;
        match self.side {
            Side::Left => {
                write!(f, "g{}: ({},{},{len},n-{})", self.family_type, self.p, self.q, len + 1)
            }
            Side::Right => {
                write!(f, "g{}: ({},{},n-{},{len})", self.family_type, self.p, self.q, len + 1)
            }
        }
    }
}

/// The `(p, q, a, b)` view of a move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SplitMove {
    pub p: usize,
    pub q: usize,
    pub a: usize,
    pub b: usize,
}

impl fmt::Display for SplitMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.p, self.q, self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub id: String,
    pub rules: RuleSet,
    pub types: Vec<Boundaries>,
    pub splits: Vec<Splits>,
    pub invalid_patterns: Vec<InvalidPattern>,
    pub period: usize,
    pub window: usize,
    /// When set, the family stands for the simple cycle whose first move
    /// always leaves this (1-based) type; its value is the mex of that
    /// type's value at `n - 1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle_over: Option<usize>,
}

impl FamilySpec {
    pub fn k(&self) -> usize {
        self.types.len()
    }

    /// Number of types a caller can look up: 1 for a cycle wrapper.
    pub fn exposed_k(&self) -> usize {
        if self.cycle_over.is_some() {
            1
        } else {
            self.k()
        }
    }

    pub fn validate(&self) -> Result<(), Vec<String>> {
        let k = self.k();
        let in_range = |t: usize| (1..=k).contains(&t);
        let mut problems = Vec::new();
        if k == 0 {
            problems.push("family has no types".to_string());
        }
        if self.splits.len() != k {
            problems.push(format!("{} split entries for {k} types", self.splits.len()));
        }
        for (i, s) in self.splits.iter().enumerate() {
            for (p, q) in [s.forward, s.backward] {
                if !in_range(p) || !in_range(q) {
                    problems.push(format!("type {}: split ({p},{q}) outside [{k}]x[{k}]", i + 1));
                }
            }
        }
        for pat in &self.invalid_patterns {
            let i = pat.family_type;
            let pair = (pat.p, pat.q);
            let declared = in_range(i)
                && self.splits.get(i - 1).is_some_and(|s| s.forward == pair || s.backward == pair);
            if !declared {
                problems.push(format!("pattern {pat} is not a split of type {i}"));
            }
        }
        if self.period == 0 {
            problems.push("period must be at least 1".to_string());
        }
        if self.window < self.period {
            problems.push(format!("window {} is below period {}", self.window, self.period));
        }
        if let Some(t) = self.cycle_over {
            if !in_range(t) {
                problems.push(format!("cycle wrapper over type {t} outside 1..={k}"));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(problems)
        }
    }

    /// 1-based type index of a boundary pair, matching its mirror too.
    pub fn type_index_of(&self, b: Boundaries) -> Option<usize> {
        let exact = self.types.iter().position(|&t| t == b);
        exact.or_else(|| self.types.iter().position(|&t| t == b.mirror())).map(|i| i + 1)
    }

    pub fn is_invalid(&self, i: usize, mv: &SplitMove) -> bool {
        self.invalid_patterns.iter().any(|p| p.matches(i, mv))
    }

    /// Moves the declaration promises on `g_i(n)`.
    pub fn declared_moves(&self, i: usize, n: usize) -> BTreeSet<SplitMove> {
        let mut out = BTreeSet::new();
        if n == 0 {
            return out;
        }
        let splits = self.splits[i - 1];
        for dir in Direction::BOTH {
            let (p, q) = splits.for_direction(dir);
            for a in 0..n {
                let mv = SplitMove { p, q, a, b: n - 1 - a };
                if !self.is_invalid(i, &mv) {
                    out.insert(mv);
                }
            }
        }
        out
    }

    pub fn segment(&self, i: usize, n: usize) -> SegmentGame {
        SegmentGame::with_boundaries(self.types[i - 1], n)
    }

    pub fn default_faithfulness_bound(&self) -> usize {
        2 * self.window + 34
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MismatchKind {
    /// The declaration lists the move as playable, the engine rejects it.
    Missing,
    /// The engine plays a move the declaration does not list.
    Unexpected,
    /// The engine produced a part whose boundary type is not in the family.
    UnknownPart,
}

impl MismatchKind {
    pub fn name(&self) -> &'static str {
        match self {
            MismatchKind::Missing => "missing",
            MismatchKind::Unexpected => "unexpected",
            MismatchKind::UnknownPart => "unknown-part",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub family_type: usize,
    pub n: usize,
    pub kind: MismatchKind,
    pub detail: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}({}): {} {}", self.family_type, self.n, self.kind.name(), self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub pass: bool,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl Verdict {
    fn pass(detail: impl Into<String>) -> Self {
        Self { pass: true, detail: detail.into(), counterexample: None }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Self { pass: false, detail: detail.into(), counterexample: None }
    }
}

/// Every pattern must fix a side shorter than `s - T`, so that all moves
/// with both sides at least `s - T` are playable.
pub fn check_condition1(spec: &FamilySpec) -> Verdict {
    let limit = spec.window.saturating_sub(spec.period);
    match spec.invalid_patterns.iter().find(|p| p.fixed_len >= limit) {
        None => Verdict::pass(format!(
            "{} patterns, all fixed lengths below s - T = {limit}",
            spec.invalid_patterns.len()
        )),
        Some(p) => Verdict::fail(format!(
            "pattern {p} fixes length {} which is not below s - T = {limit}",
            p.fixed_len
        )),
    }
}

/// Moves the engine actually allows on `g_i(n)`, in `(p, q, a, b)` form.
fn engine_moves(
    spec: &FamilySpec,
    i: usize,
    n: usize,
) -> Result<BTreeSet<SplitMove>, Counterexample> {
    let seg = spec.segment(i, n);
    let line = seg.to_line().expect("n >= 1");
    let mut out = BTreeSet::new();
    for mv in line.legal_moves(spec.rules) {
        let (left, right) = seg.split(mv.edge, mv.direction);
        let lookup = |part: SegmentGame| {
            spec.type_index_of(part.boundaries()).ok_or_else(|| Counterexample {
                family_type: i,
                n,
                kind: MismatchKind::UnknownPart,
                detail: format!("move {mv} leaves part {part} outside the family"),
            })
        };
        let (p, q) = (lookup(left)?, lookup(right)?);
        out.insert(SplitMove { p, q, a: left.len, b: right.len });
    }
    Ok(out)
}

fn faithfulness_counterexample(spec: &FamilySpec, n_max: usize) -> Option<Counterexample> {
    for n in 1..=n_max {
        for i in 1..=spec.k() {
            let actual = match engine_moves(spec, i, n) {
                Ok(m) => m,
                Err(c) => return Some(c),
            };
            let declared = spec.declared_moves(i, n);
            if let Some(mv) = actual.difference(&declared).next() {
                return Some(Counterexample {
                    family_type: i,
                    n,
                    kind: MismatchKind::Unexpected,
                    detail: format!("engine allows {mv}, declaration does not"),
                });
            }
            if let Some(mv) = declared.difference(&actual).next() {
                return Some(Counterexample {
                    family_type: i,
                    n,
                    kind: MismatchKind::Missing,
                    detail: format!("declaration allows {mv}, engine does not"),
                });
            }
        }
    }
    None
}

/// Compares the declared move sets with the engine's legal moves for every
/// type and every `n <= n_max`.
pub fn check_pattern_faithfulness(spec: &FamilySpec, n_max: usize) -> Verdict {
    let needed = 2 * spec.window + 1;
    if n_max < needed {
        return Verdict::fail(format!("bound {n_max} is below 2s + 1 = {needed}"));
    }
    match faithfulness_counterexample(spec, n_max) {
        None => Verdict::pass(format!(
            "declared move sets equal engine move sets for n in [1, {n_max}]"
        )),
        Some(c) => Verdict {
            pass: false,
            detail: format!("first counterexample: {c}"),
            counterexample: Some(c),
        },
    }
}

/// `Nim(g_i(n)) = Nim(g_i(n - T))` for every type and `n` in `[s + 1, 2s + 1]`.
pub fn check_base_window(spec: &FamilySpec, engine: &Engine) -> Verdict {
    let (t, s) = (spec.period, spec.window);
    if t == 0 || t > s {
        return Verdict::fail(format!("need 1 <= T <= s, got T = {t}, s = {s}"));
    }
    for i in 1..=spec.k() {
        let values = engine.sequence(spec.types[i - 1], spec.rules, 0, 2 * s + 1);
        for n in s + 1..=2 * s + 1 {
            if values[n] != values[n - t] {
                return Verdict::fail(format!(
                    "g{i}({n}) = {} but g{i}({}) = {}",
                    values[n],
                    n - t,
                    values[n - t]
                ));
            }
        }
    }
    Verdict::pass(format!("equal for all {} types over n in [{}, {}]", spec.k(), s + 1, 2 * s + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeSequence {
    #[serde(rename = "type")]
    pub family_type: usize,
    pub boundaries: String,
    pub start: usize,
    pub values: Vec<Nimber>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSequence {
    pub over: usize,
    pub start: usize,
    pub values: Vec<Nimber>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub well_formed: Verdict,
    pub condition1: Verdict,
    pub faithfulness: Verdict,
    pub window: Verdict,
}

impl Verdicts {
    pub fn all_pass(&self) -> bool {
        [&self.well_formed, &self.condition1, &self.faithfulness, &self.window]
            .iter()
            .all(|v| v.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicityCertificate {
    pub schema: String,
    pub family: String,
    pub rules: RuleSet,
    pub k: usize,
    pub period: usize,
    pub window: usize,
    pub faithfulness_bound: usize,
    pub sequences: Vec<TypeSequence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle: Option<CycleSequence>,
    pub verdicts: Verdicts,
    pub residual_trust: String,
    pub pass: bool,
}

pub fn certify(spec: &FamilySpec, engine: &Engine) -> PeriodicityCertificate {
    certify_with_bound(spec, engine, spec.default_faithfulness_bound())
}

pub fn certify_with_bound(
    spec: &FamilySpec,
    engine: &Engine,
    n_max: usize,
) -> PeriodicityCertificate {
    let (t, s) = (spec.period, spec.window);
    let skipped = || Verdict::fail("not evaluated: family is not well formed");
    let (verdicts, sequences, cycle) = match spec.validate() {
        Err(problems) => (
            Verdicts {
                well_formed: Verdict::fail(problems.join("; ")),
                condition1: skipped(),
                faithfulness: skipped(),
                window: skipped(),
            },
            Vec::new(),
            None,
        ),
        Ok(()) => {
            let verdicts = Verdicts {
                well_formed: Verdict::pass(format!("{} types, T = {t}, s = {s}", spec.k())),
                condition1: check_condition1(spec),
                faithfulness: check_pattern_faithfulness(spec, n_max),
                window: check_base_window(spec, engine),
            };
            let sequences = spec
                .types
                .iter()
                .enumerate()
                .map(|(i, &b)| TypeSequence {
                    family_type: i + 1,
                    boundaries: b.to_string(),
                    start: 1,
                    values: engine.sequence(b, spec.rules, 1, 2 * s + 1),
                })
                .collect::<Vec<_>>();
            let cycle = spec.cycle_over.map(|over| CycleSequence {
                over,
                start: 2,
                values: sequences[over - 1].values.iter().map(|&v| mex([v])).collect(),
            });
            (verdicts, sequences, cycle)
        }
    };
    let pass = verdicts.all_pass();
    PeriodicityCertificate {
        schema: CERT_SCHEMA.to_string(),
        family: spec.id.clone(),
        rules: spec.rules,
        k: spec.exposed_k(),
        period: t,
        window: s,
        faithfulness_bound: n_max,
        sequences,
        cycle,
        verdicts,
        residual_trust: format!(
            "unplayable-move patterns were compared with the move generator for n <= {n_max} only"
        ),
        pass,
    }
}

impl PeriodicityCertificate {
    fn base_value(&self, i: usize, n: usize) -> Nimber {
        let values = &self.sequences[i - 1].values;
        let (t, s) = (self.period, self.window);
        let m = if n <= 2 * s + 1 { n } else { s + 1 + (n - s - 1) % t };
        values[m - 1]
    }
}

/// Value of type `i` (1-based) at length `n`, using only the certificate.
pub fn nimber_at(
    cert: &PeriodicityCertificate,
    i: usize,
    n: usize,
) -> Result<Nimber, PeriodicityError> {
    if !cert.pass {
        return Err(PeriodicityError::NotCertified(cert.family.clone()));
    }
    if i == 0 || i > cert.k {
        return Err(PeriodicityError::TypeOutOfRange { index: i, k: cert.k });
    }
    match &cert.cycle {
        Some(cycle) => {
            if n < 2 {
                return Err(PeriodicityError::LengthOutOfRange { n, min: 2 });
            }
            Ok(mex([cert.base_value(cycle.over, n - 1)]))
        }
        None => {
            if n == 0 {
                return Err(PeriodicityError::LengthOutOfRange { n, min: 1 });
            }
            Ok(cert.base_value(i, n))
        }
    }
}

/// Heuristic: the smallest `(T, s)` with `s >= T` such that `values`
/// (indexed from `n = 1`) is consistent with period `T` beyond `s` and is
/// long enough to cover the window `[s + 1, 2s + 1]`. Only a suggestion; it
/// proves nothing on its own.
pub fn suggest_period(values: &[Nimber], max_period: usize) -> Option<(usize, usize)> {
    let len = values.len();
    let at = |n: usize| values[n - 1];
    for t in 1..=max_period {
        let mut s = t;
        while 2 * s < len {
            if (s + 1..=len).all(|n| at(n) == at(n - t)) {
                return Some((t, s));
            }
            s += 1;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::BoundaryKind::*;

    fn tiny_family() -> FamilySpec {
        FamilySpec {
            id: "tiny".into(),
            rules: RuleSet::Standard,
            types: vec![Boundaries::new(In, In)],
            splits: vec![Splits { forward: (1, 1), backward: (1, 1) }],
            invalid_patterns: vec![],
            period: 1,
            window: 1,
            cycle_over: None,
        }
    }

    #[test]
    fn condition1_bounds() {
        let mut spec = tiny_family();
        spec.period = 2;
        spec.window = 5;
        spec.splits = vec![Splits { forward: (1, 1), backward: (1, 1) }];
        assert!(check_condition1(&spec).pass);
        spec.invalid_patterns.push(InvalidPattern::new(1, 1, 1, Side::Left, 3));
        assert!(!check_condition1(&spec).pass);
        spec.invalid_patterns[0].fixed_len = 2;
        assert!(check_condition1(&spec).pass);
    }

    #[test]
    fn emptiness_mismatch_fails_faithfulness() {
        let spec = tiny_family();
        let v = check_pattern_faithfulness(&spec, 3);
        assert!(!v.pass);
        let c = v.counterexample.unwrap();
        assert_eq!((c.family_type, c.n), (1, 1));
    }

    #[test]
    fn faithfulness_bound_must_cover_window() {
        let mut spec = tiny_family();
        spec.window = 4;
        assert!(!check_pattern_faithfulness(&spec, 8).pass);
    }

    #[test]
    fn validate_reports_bad_indices() {
        let mut spec = tiny_family();
        spec.splits[0].forward = (1, 2);
        spec.invalid_patterns.push(InvalidPattern::new(1, 2, 2, Side::Right, 0));
        spec.window = 0;
        let problems = spec.validate().unwrap_err();
        assert_eq!(problems.len(), 3);
        let cert = certify(&spec, &Engine::new());
        assert!(!cert.pass);
        assert!(cert.sequences.is_empty());
    }

    #[test]
    fn type_lookup_uses_mirror() {
        let spec = FamilySpec { types: vec![Boundaries::new(In, Out)], ..tiny_family() };
        assert_eq!(spec.type_index_of(Boundaries::new(Out, In)), Some(1));
        assert_eq!(spec.type_index_of(Boundaries::new(In, In)), None);
    }

    #[test]
    fn suggest_period_finds_parity() {
        let v: Vec<Nimber> = [0, 0, 1, 0, 1, 0, 1, 0, 1].iter().map(|&x| Nimber(x)).collect();
        assert_eq!(suggest_period(&v, 4), Some((2, 3)));
        let v: Vec<Nimber> = (0..12).map(Nimber).collect();
        assert_eq!(suggest_period(&v, 4), None);
    }
}
