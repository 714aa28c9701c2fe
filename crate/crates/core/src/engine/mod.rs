//! Grundy values for segments, lines and cycles.
//!
//! [`Engine`] owns one [`MemoTable`] per rule set behind a lock: lookups
//! that hit filled rows only take the read lock, extending a table takes the
//! write lock.

mod nimber;
mod oracle;
mod table;

use std::sync::RwLock;

use thiserror::Error;

use crate::games::{
    Boundaries, BoundaryKind, Components, LineState, Move, Position, RuleSet, SegmentGame,
};

pub use nimber::{mex, Nimber};
pub use oracle::{Oracle, DEFAULT_ORACLE_BOUND};
pub use table::{MemoTable, CANONICAL_PAIRS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("a cycle needs at least two edges, got {0}")]
    CycleTooShort(usize),
    #[error("position has {unmarked} unmarked edges, oracle bound is {bound}")]
    OracleBound { unmarked: usize, bound: usize },
}

#[derive(Debug)]
pub struct Engine {
    standard: RwLock<MemoTable>,
    sources_allowed: RwLock<MemoTable>,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        Self {
            standard: RwLock::new(MemoTable::new(RuleSet::Standard)),
            sources_allowed: RwLock::new(MemoTable::new(RuleSet::SourcesAllowed)),
        }
    }

    fn table(&self, rules: RuleSet) -> &RwLock<MemoTable> {
        match rules {
            RuleSet::Standard => &self.standard,
            RuleSet::SourcesAllowed => &self.sources_allowed,
        }
    }

    /// Fill the table for `rules` through segments of length `n`.
    pub fn fill(&self, rules: RuleSet, n: usize) {
        let lock = self.table(rules);
        if lock.read().unwrap().filled_to() >= n {
            return;
        }
        lock.write().unwrap().fill_to(n);
    }

    pub fn grundy_segment(&self, seg: SegmentGame, rules: RuleSet) -> Nimber {
        self.fill(rules, seg.len);
        let table = self.table(rules).read().unwrap();
        table.get(seg.boundaries(), seg.len).expect("row filled above")
    }

    /// Values of one boundary type for `n` in `from..=to`.
    pub fn sequence(&self, b: Boundaries, rules: RuleSet, from: usize, to: usize) -> Vec<Nimber> {
        if from > to {
            return Vec::new();
        }
        self.fill(rules, to);
        let table = self.table(rules).read().unwrap();
        (from..=to).map(|n| table.get(b, n).expect("row filled above")).collect()
    }

    pub fn grundy_segments(&self, segments: &[SegmentGame], rules: RuleSet) -> Nimber {
        if let Some(longest) = segments.iter().map(|s| s.len).max() {
            self.fill(rules, longest);
        }
        segments.iter().fold(Nimber::ZERO, |acc, &s| acc ^ self.grundy_segment(s, rules))
    }

    pub fn grundy_line(&self, state: &LineState, rules: RuleSet) -> Nimber {
        self.grundy_segments(&state.decompose(), rules)
    }

    /// Value of an unmarked simple cycle of `n` edges. Every first move
    /// leaves an `(In, Out, n - 1)` segment up to mirroring.
    pub fn grundy_cycle(&self, n: usize, rules: RuleSet) -> Result<Nimber, EngineError> {
        if n < 2 {
            return Err(EngineError::CycleTooShort(n));
        }
        let after_first = self
            .grundy_segment(SegmentGame::new(BoundaryKind::In, BoundaryKind::Out, n - 1), rules);
        Ok(mex([after_first]))
    }

    pub fn position_value<P: Position>(&self, position: &P, rules: RuleSet) -> Nimber {
        match position.components() {
            Components::Segments(segments) => self.grundy_segments(&segments, rules),
            Components::UnmarkedCycle(n) => {
                self.grundy_cycle(n, rules).expect("cycle states have at least two edges")
            }
        }
    }

    /// Legal moves whose successor has value zero, in move order.
    pub fn best_moves<P: Position>(&self, position: &P, rules: RuleSet) -> Vec<Move> {
        position
            .legal_moves(rules)
            .into_iter()
            .filter(|&mv| {
                let next = position.apply_move(mv, rules).expect("listed move is legal");
                self.position_value(&next, rules).is_zero()
            })
            .collect()
    }
}
