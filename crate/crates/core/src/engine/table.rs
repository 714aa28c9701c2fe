//! Bottom-up table of segment values, one table per rule set.
//!
//! Keys are mirror-canonical boundary pairs, so the nine boundary
//! combinations collapse to six columns. Row `n` holds the values of all
//! segments with `n` unmarked edges. Rows are filled in increasing `n`,
//! each from strictly shorter rows.

use crate::games::{induced_boundaries, Boundaries, BoundaryKind, Direction, RuleSet};

use super::nimber::{MexScratch, Nimber};

/// The six mirror-canonical boundary pairs, in column order.
pub const CANONICAL_PAIRS: [Boundaries; 6] = [
    Boundaries::new(BoundaryKind::Open, BoundaryKind::Open),
    Boundaries::new(BoundaryKind::Open, BoundaryKind::In),
    Boundaries::new(BoundaryKind::Open, BoundaryKind::Out),
    Boundaries::new(BoundaryKind::In, BoundaryKind::In),
    Boundaries::new(BoundaryKind::In, BoundaryKind::Out),
    Boundaries::new(BoundaryKind::Out, BoundaryKind::Out),
];

fn column(b: Boundaries) -> usize {
    use BoundaryKind::*;
    let c = b.canonical();
    match (c.left, c.right) {
        (Open, Open) => 0,
        (Open, In) => 1,
        (Open, Out) => 2,
        (In, In) => 3,
        (In, Out) => 4,
        (Out, Out) => 5,
        _ => unreachable!("non-canonical pair {c}"),
    }
}

/// Whether marking the end edge of a segment is allowed at that end vertex,
/// given the boundary there and whether the new mark points into the vertex.
/// Only called when the end vertex has no other unmarked edge.
fn end_vertex_allows(boundary: BoundaryKind, mark_points_in: bool, rules: RuleSet) -> bool {
    let (sink, source) = match boundary {
        BoundaryKind::Open => (mark_points_in, !mark_points_in),
        BoundaryKind::In => (mark_points_in, false),
        BoundaryKind::Out => (false, !mark_points_in),
    };
    !sink && !(source && rules.forbid_sources())
}

#[derive(Debug, Clone)]
pub struct MemoTable {
    rules: RuleSet,
    rows: Vec<[Nimber; 6]>,
    scratch_len: usize,
}

impl MemoTable {
    pub fn new(rules: RuleSet) -> Self {
        // Row 0: empty segments are terminal.
        Self { rules, rows: vec![[Nimber::ZERO; 6]], scratch_len: 0 }
    }

    pub fn rules(&self) -> RuleSet {
        self.rules
    }

    /// Largest `n` with a filled row.
    pub fn filled_to(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, b: Boundaries, n: usize) -> Option<Nimber> {
        self.rows.get(n).map(|row| row[column(b)])
    }

    pub fn fill_to(&mut self, n_max: usize) {
        let mut scratch = MexScratch::default();
        while self.rows.len() <= n_max {
            let n = self.rows.len();
            let mut row = [Nimber::ZERO; 6];
            for (c, &pair) in CANONICAL_PAIRS.iter().enumerate() {
                row[c] = self.segment_value(pair, n, &mut scratch);
            }
            self.rows.push(row);
        }
        self.scratch_len = self.scratch_len.max(n_max);
    }

    fn segment_value(&self, pair: Boundaries, n: usize, scratch: &mut MexScratch) -> Nimber {
        scratch.reset(2 * n);
        for edge in 0..n {
            let (a, b) = (edge, n - 1 - edge);
            for dir in Direction::BOTH {
                if a == 0 && !end_vertex_allows(pair.left, dir == Direction::Backward, self.rules) {
                    continue;
                }
                if b == 0 && !end_vertex_allows(pair.right, dir == Direction::Forward, self.rules) {
                    continue;
                }
                let (inner_left, inner_right) = induced_boundaries(dir);
                let left = self.rows[a][column(Boundaries::new(pair.left, inner_left))];
                let right = self.rows[b][column(Boundaries::new(inner_right, pair.right))];
                scratch.insert(left ^ right);
            }
        }
        let value = scratch.mex();
        debug_assert!(value.0 as usize <= n, "value {value} exceeds edge count {n}");
        value
    }
}
