//! Exhaustive game-tree evaluation on arbitrary small graphs.
//!
//! No decomposition or symmetry shortcuts: every reachable mark vector is
//! evaluated once and memoized. Used to cross-check the segment table.

use std::collections::HashMap;

use crate::games::{EdgeMark, GraphState, Move, RuleSet};

use super::nimber::{mex, Nimber};
use super::EngineError;

pub const DEFAULT_ORACLE_BOUND: usize = 14;

#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub bound: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Self { bound: DEFAULT_ORACLE_BOUND }
    }
}

struct Search<'a> {
    graph: &'a GraphState,
    rules: RuleSet,
    free: Vec<usize>,
    memo: HashMap<u64, Nimber>,
}

impl Search<'_> {
    fn key(&self, marks: &[EdgeMark]) -> u64 {
        self.free.iter().fold(0u64, |acc, &e| {
            acc * 3
                + match marks[e] {
                    EdgeMark::Unmarked => 0,
                    EdgeMark::Forward => 1,
                    EdgeMark::Backward => 2,
                }
        })
    }

    fn value(&mut self, marks: &mut Vec<EdgeMark>) -> Nimber {
        let key = self.key(marks);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let moves = self.graph.legal_moves_on(marks, self.rules);
        let mut options = Vec::with_capacity(moves.len());
        for mv in moves {
            marks[mv.edge] = mv.direction.into();
            options.push(self.value(marks));
            marks[mv.edge] = EdgeMark::Unmarked;
        }
        let v = mex(options);
        self.memo.insert(key, v);
        v
    }
}

impl Oracle {
    pub fn new(bound: usize) -> Self {
        Self { bound }
    }

    fn check_bound(&self, graph: &GraphState) -> Result<(), EngineError> {
        let unmarked = graph.unmarked_count();
        if unmarked > self.bound {
            return Err(EngineError::OracleBound { unmarked, bound: self.bound });
        }
        Ok(())
    }

    pub fn grundy(&self, graph: &GraphState, rules: RuleSet) -> Result<Nimber, EngineError> {
        self.check_bound(graph)?;
        let free = (0..graph.edge_count()).filter(|&e| !graph.marks()[e].is_marked()).collect();
        let mut search = Search { graph, rules, free, memo: HashMap::new() };
        let mut marks = graph.marks().to_vec();
        Ok(search.value(&mut marks))
    }

    /// Legal moves leading to a zero position.
    pub fn best_moves(&self, graph: &GraphState, rules: RuleSet) -> Result<Vec<Move>, EngineError> {
        self.check_bound(graph)?;
        let mut out = Vec::new();
        for mv in graph.legal_moves(rules) {
            let next = graph.apply_move(mv, rules).expect("listed move is legal");
            if self.grundy(&next, rules)?.is_zero() {
                out.push(mv);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn single_edge_path_is_zero() {
        let g = GraphState::new(2, vec![(0, 1, EdgeMark::Unmarked)], BTreeSet::new()).unwrap();
        assert_eq!(Oracle::default().grundy(&g, RuleSet::SourcesAllowed).unwrap(), Nimber(0));
    }

    #[test]
    fn four_cycle_standard_is_zero() {
        let g = GraphState::cycle(4).unwrap();
        assert_eq!(Oracle::default().grundy(&g, RuleSet::Standard).unwrap(), Nimber(0));
        let g = GraphState::cycle(5).unwrap();
        assert_eq!(Oracle::default().grundy(&g, RuleSet::Standard).unwrap(), Nimber(1));
    }

    #[test]
    fn refuses_oversize_input() {
        let g = GraphState::cycle(15).unwrap();
        let err = Oracle::default().grundy(&g, RuleSet::Standard).unwrap_err();
        assert_eq!(err, EngineError::OracleBound { unmarked: 15, bound: 14 });
        assert!(err.to_string().contains("14"));
    }

    #[test]
    fn star_graph() {
        // Centre 0 with three leaves: every leaf edge marked toward the leaf
        // sinks the leaf, so only moves toward the centre are possible and
        // the last of them sinks the centre.
        let edges = (1..4).map(|v| (0, v, EdgeMark::Unmarked)).collect();
        let g = GraphState::new(4, edges, BTreeSet::new()).unwrap();
        let oracle = Oracle::default();
        assert_eq!(oracle.grundy(&g, RuleSet::SourcesAllowed).unwrap(), Nimber(0));
        assert!(oracle.best_moves(&g, RuleSet::SourcesAllowed).unwrap().is_empty());
    }
}
