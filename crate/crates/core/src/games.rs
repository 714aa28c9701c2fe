//! Game states, rule sets and move legality for the Game of Cycles.
//!
//! Play is pure normal play: the player who cannot move loses. The
//! cycle-cell instant win of the original game is not modelled. On paths
//! no directed cycle can ever exist, and on a simple cycle the directed
//! cycle is completed exactly by the last move, so both conventions agree
//! on every graph this crate analyses.
//!
//! Two position shapes are supported natively:
//!
//! * [`LineState`]: a path whose two ends may carry a virtual, already
//!   marked edge ([`BoundaryKind::In`] / [`BoundaryKind::Out`]).
//! * [`CycleState`]: a simple cycle.
//!
//! Both lower to a [`GraphState`], which owns the only legality check.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("unknown vertex {vertex} (graph has {count} vertices)")]
    UnknownVertex { vertex: usize, count: usize },
    #[error("edge {edge} does not exist (position has {count} edges)")]
    UnknownEdge { edge: usize, count: usize },
    #[error("edge {edge} is already marked")]
    AlreadyMarked { edge: usize },
    #[error("marking edge {edge} creates a sink at vertex {vertex}")]
    SinkCreated { edge: usize, vertex: usize },
    #[error("marking edge {edge} creates a source at vertex {vertex}")]
    SourceCreated { edge: usize, vertex: usize },
    #[error("edge {edge} is a self-loop on vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },
    #[error("a line needs at least one edge")]
    EmptyLine,
    #[error("a cycle needs at least two edges, got {0}")]
    CycleTooShort(usize),
}

/// Which vertex configurations a move may not create. Sinks are always
/// forbidden.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleSet {
    /// Sources and sinks are both forbidden.
    Standard,
    /// "Cycles with Sources": only sinks are forbidden.
    SourcesAllowed,
}

impl RuleSet {
    pub const ALL: [RuleSet; 2] = [RuleSet::Standard, RuleSet::SourcesAllowed];

    pub fn forbid_sources(self) -> bool {
        matches!(self, RuleSet::Standard)
    }

    pub fn name(self) -> &'static str {
        match self {
            RuleSet::Standard => "standard",
            RuleSet::SourcesAllowed => "sources-allowed",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "standard" => Some(RuleSet::Standard),
            "sources-allowed" => Some(RuleSet::SourcesAllowed),
            _ => None,
        }
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Direction of a mark. `Forward` points from the lower-indexed endpoint to
/// the higher one on a line, clockwise on a cycle, and from `u` to `v` for a
/// graph edge `(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::Forward, Direction::Backward];

    pub fn reversed(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Direction::Forward => '>',
            Direction::Backward => '<',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum EdgeMark {
    #[default]
    Unmarked,
    Forward,
    Backward,
}

impl EdgeMark {
    pub fn direction(self) -> Option<Direction> {
        match self {
            EdgeMark::Unmarked => None,
            EdgeMark::Forward => Some(Direction::Forward),
            EdgeMark::Backward => Some(Direction::Backward),
        }
    }

    pub fn is_marked(self) -> bool {
        self != EdgeMark::Unmarked
    }

    pub fn reversed(self) -> Self {
        match self {
            EdgeMark::Unmarked => EdgeMark::Unmarked,
            EdgeMark::Forward => EdgeMark::Backward,
            EdgeMark::Backward => EdgeMark::Forward,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            EdgeMark::Unmarked => '-',
            EdgeMark::Forward => '>',
            EdgeMark::Backward => '<',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            '-' => Some(EdgeMark::Unmarked),
            '>' => Some(EdgeMark::Forward),
            '<' => Some(EdgeMark::Backward),
            _ => None,
        }
    }
}

impl From<Direction> for EdgeMark {
    fn from(d: Direction) -> Self {
        match d {
            Direction::Forward => EdgeMark::Forward,
            Direction::Backward => EdgeMark::Backward,
        }
    }
}

/// Context at one end of a run of unmarked edges.
///
/// `In` means a virtual marked edge points into the end vertex, `Out` means
/// it points away. The virtual edge's far vertex is never checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryKind {
    Open,
    In,
    Out,
}

impl BoundaryKind {
    pub const ALL: [BoundaryKind; 3] = [BoundaryKind::Open, BoundaryKind::In, BoundaryKind::Out];

    pub fn name(self) -> &'static str {
        match self {
            BoundaryKind::Open => "open",
            BoundaryKind::In => "in",
            BoundaryKind::Out => "out",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "open" => Some(BoundaryKind::Open),
            "in" => Some(BoundaryKind::In),
            "out" => Some(BoundaryKind::Out),
            _ => None,
        }
    }
}

impl fmt::Display for BoundaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Boundary pair of a segment, `(left, right)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Boundaries {
    pub left: BoundaryKind,
    pub right: BoundaryKind,
}

impl Boundaries {
    pub const fn new(left: BoundaryKind, right: BoundaryKind) -> Self {
        Self { left, right }
    }

    pub fn mirror(self) -> Self {
        Self::new(self.right, self.left)
    }

    /// The smaller of `self` and its mirror.
    pub fn canonical(self) -> Self {
        self.min(self.mirror())
    }
}

impl fmt::Display for Boundaries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.left, self.right)
    }
}

/// A run of `len` unmarked edges between two typed boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SegmentGame {
    pub left: BoundaryKind,
    pub right: BoundaryKind,
    pub len: usize,
}

impl SegmentGame {
    pub const fn new(left: BoundaryKind, right: BoundaryKind, len: usize) -> Self {
        Self { left, right, len }
    }

    pub fn with_boundaries(b: Boundaries, len: usize) -> Self {
        Self::new(b.left, b.right, len)
    }

    pub fn boundaries(&self) -> Boundaries {
        Boundaries::new(self.left, self.right)
    }

    pub fn mirror(&self) -> Self {
        Self::new(self.right, self.left, self.len)
    }

    pub fn to_line(&self) -> Result<LineState, GameError> {
        LineState::unmarked(self.len, self.left, self.right)
    }

    /// The two typed parts produced by marking edge `edge` in direction
    /// `dir`. Zero-length parts are kept, so this is the `(p, q, a, b)` view
    /// of the move.
    pub fn split(&self, edge: usize, dir: Direction) -> (SegmentGame, SegmentGame) {
        assert!(edge < self.len, "edge {edge} outside segment of length {}", self.len);
        let (inner_left, inner_right) = induced_boundaries(dir);
        (
            SegmentGame::new(self.left, inner_left, edge),
            SegmentGame::new(inner_right, self.right, self.len - edge - 1),
        )
    }
}

impl fmt::Display for SegmentGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.left, self.right, self.len)
    }
}

/// Boundaries a mark induces on the run ending just before it and the run
/// starting just after it.
pub fn induced_boundaries(dir: Direction) -> (BoundaryKind, BoundaryKind) {
    match dir {
        Direction::Forward => (BoundaryKind::Out, BoundaryKind::In),
        Direction::Backward => (BoundaryKind::In, BoundaryKind::Out),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub edge: usize,
    pub direction: Direction,
}

impl Move {
    pub fn new(edge: usize, direction: Direction) -> Self {
        Self { edge, direction }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.edge, self.direction.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VertexKind {
    Sink,
    Source,
    Neither,
}

/// An arbitrary multigraph with per-edge marks.
///
/// Exempt vertices are never sources or sinks; they stand in for the far
/// end of a virtual boundary edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphState {
    vertex_count: usize,
    endpoints: Vec<(usize, usize)>,
    marks: Vec<EdgeMark>,
    exempt: BTreeSet<usize>,
    incidence: Vec<Vec<usize>>,
}

impl GraphState {
    pub fn new(
        vertex_count: usize,
        edges: Vec<(usize, usize, EdgeMark)>,
        exempt: BTreeSet<usize>,
    ) -> Result<Self, GameError> {
        let mut incidence = vec![Vec::new(); vertex_count];
        let mut endpoints = Vec::with_capacity(edges.len());
        let mut marks = Vec::with_capacity(edges.len());
        for (i, &(u, v, mark)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(GameError::UnknownVertex { vertex: w, count: vertex_count });
                }
            }
            if u == v {
                return Err(GameError::SelfLoop { edge: i, vertex: u });
            }
            incidence[u].push(i);
            incidence[v].push(i);
            endpoints.push((u, v));
            marks.push(mark);
        }
        if let Some(&v) = exempt.iter().find(|&&v| v >= vertex_count) {
            return Err(GameError::UnknownVertex { vertex: v, count: vertex_count });
        }
        Ok(Self { vertex_count, endpoints, marks, exempt, incidence })
    }

    /// Simple cycle on `n` vertices; edge `i` joins `i` and `i + 1 mod n`.
    pub fn cycle(n: usize) -> Result<Self, GameError> {
        if n < 2 {
            return Err(GameError::CycleTooShort(n));
        }
        let edges = (0..n).map(|i| (i, (i + 1) % n, EdgeMark::Unmarked)).collect();
        Self::new(n, edges, BTreeSet::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn endpoints(&self) -> &[(usize, usize)] {
        &self.endpoints
    }

    pub fn marks(&self) -> &[EdgeMark] {
        &self.marks
    }

    pub fn exempt(&self) -> &BTreeSet<usize> {
        &self.exempt
    }

    pub fn unmarked_count(&self) -> usize {
        self.marks.iter().filter(|m| !m.is_marked()).count()
    }

    fn check_vertex(&self, v: usize) -> Result<(), GameError> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(GameError::UnknownVertex { vertex: v, count: self.vertex_count })
        }
    }

    fn classify(&self, marks: &[EdgeMark], v: usize) -> VertexKind {
        if self.exempt.contains(&v) || self.incidence[v].is_empty() {
            return VertexKind::Neither;
        }
        let (mut inward, mut outward) = (0, 0);
        for &e in &self.incidence[v] {
            let (u, w) = self.endpoints[e];
            let head = match marks[e] {
                EdgeMark::Unmarked => return VertexKind::Neither,
                EdgeMark::Forward => w,
                EdgeMark::Backward => u,
            };
            if head == v {
                inward += 1;
            } else {
                outward += 1;
            }
        }
        match (inward, outward) {
            (_, 0) => VertexKind::Sink,
            (0, _) => VertexKind::Source,
            _ => VertexKind::Neither,
        }
    }

    pub fn is_sink(&self, v: usize) -> Result<bool, GameError> {
        self.check_vertex(v)?;
        Ok(self.classify(&self.marks, v) == VertexKind::Sink)
    }

    pub fn is_source(&self, v: usize) -> Result<bool, GameError> {
        self.check_vertex(v)?;
        Ok(self.classify(&self.marks, v) == VertexKind::Source)
    }

    /// Checks a move against an arbitrary mark vector of this graph's shape.
    /// `marks` is restored before returning.
    pub(crate) fn check_move_on(
        &self,
        marks: &mut [EdgeMark],
        mv: Move,
        rules: RuleSet,
    ) -> Result<(), GameError> {
        let count = self.edge_count();
        if mv.edge >= count {
            return Err(GameError::UnknownEdge { edge: mv.edge, count });
        }
        if marks[mv.edge].is_marked() {
            return Err(GameError::AlreadyMarked { edge: mv.edge });
        }
        marks[mv.edge] = mv.direction.into();
        let (u, v) = self.endpoints[mv.edge];
        let mut verdict = Ok(());
        for w in [u, v] {
            match self.classify(marks, w) {
                VertexKind::Sink => {
                    verdict = Err(GameError::SinkCreated { edge: mv.edge, vertex: w });
                    break;
                }
                VertexKind::Source if rules.forbid_sources() => {
                    verdict = Err(GameError::SourceCreated { edge: mv.edge, vertex: w });
                    break;
                }
                _ => {}
            }
        }
        marks[mv.edge] = EdgeMark::Unmarked;
        verdict
    }

    pub(crate) fn legal_moves_on(&self, marks: &mut [EdgeMark], rules: RuleSet) -> Vec<Move> {
        let mut moves = Vec::new();
        for edge in 0..self.edge_count() {
            if marks[edge].is_marked() {
                continue;
            }
            for dir in Direction::BOTH {
                let mv = Move::new(edge, dir);
                if self.check_move_on(marks, mv, rules).is_ok() {
                    moves.push(mv);
                }
            }
        }
        moves
    }

    pub fn check_move(&self, mv: Move, rules: RuleSet) -> Result<(), GameError> {
        let mut marks = self.marks.clone();
        self.check_move_on(&mut marks, mv, rules)
    }

    /// Legal moves in ascending edge order, `Forward` before `Backward`.
    pub fn legal_moves(&self, rules: RuleSet) -> Vec<Move> {
        let mut marks = self.marks.clone();
        self.legal_moves_on(&mut marks, rules)
    }

    pub fn apply_move(&self, mv: Move, rules: RuleSet) -> Result<Self, GameError> {
        self.check_move(mv, rules)?;
        let mut next = self.clone();
        next.marks[mv.edge] = mv.direction.into();
        Ok(next)
    }

    /// Every mark reversed.
    pub fn reversed(&self) -> Self {
        let mut out = self.clone();
        for m in &mut out.marks {
            *m = m.reversed();
        }
        out
    }
}

/// What a position decomposes into for evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Components {
    /// Independent segments whose values combine by xor.
    Segments(Vec<SegmentGame>),
    /// A cycle with no marks yet; its first move breaks the symmetry.
    UnmarkedCycle(usize),
}

/// A position on a path or a cycle.
pub trait Position: Clone {
    fn marks(&self) -> &[EdgeMark];

    /// Graph realization; the first `marks().len()` edges correspond
    /// one-to-one with the position's edges.
    fn to_graph(&self) -> GraphState;

    fn components(&self) -> Components;

    /// Copy with one edge overwritten, without any legality check.
    fn with_mark(&self, edge: usize, mark: EdgeMark) -> Self;

    fn legal_moves(&self, rules: RuleSet) -> Vec<Move> {
        self.to_graph().legal_moves(rules)
    }

    fn apply_move(&self, mv: Move, rules: RuleSet) -> Result<Self, GameError> {
        let count = self.marks().len();
        if mv.edge >= count {
            return Err(GameError::UnknownEdge { edge: mv.edge, count });
        }
        self.to_graph().check_move(mv, rules)?;
        Ok(self.with_mark(mv.edge, mv.direction.into()))
    }

    fn unmarked_count(&self) -> usize {
        self.marks().iter().filter(|m| !m.is_marked()).count()
    }
}

/// A path of edges with typed ends. Edge `i` joins vertices `i` and `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LineState {
    edges: Vec<EdgeMark>,
    pub left: BoundaryKind,
    pub right: BoundaryKind,
}

impl LineState {
    pub fn new(
        edges: Vec<EdgeMark>,
        left: BoundaryKind,
        right: BoundaryKind,
    ) -> Result<Self, GameError> {
        if edges.is_empty() {
            return Err(GameError::EmptyLine);
        }
        Ok(Self { edges, left, right })
    }

    pub fn unmarked(n: usize, left: BoundaryKind, right: BoundaryKind) -> Result<Self, GameError> {
        Self::new(vec![EdgeMark::Unmarked; n], left, right)
    }

    pub fn edges(&self) -> &[EdgeMark] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Maximal runs of unmarked edges, left to right.
    pub fn decompose(&self) -> Vec<SegmentGame> {
        let n = self.edges.len();
        let mut out = Vec::new();
        let mut i = 0;
        while i < n {
            if self.edges[i].is_marked() {
                i += 1;
                continue;
            }
            let start = i;
            while i < n && !self.edges[i].is_marked() {
                i += 1;
            }
            let left = match start.checked_sub(1) {
                None => self.left,
                Some(p) => boundary_after(self.edges[p]),
            };
            let right = if i == n { self.right } else { boundary_before(self.edges[i]) };
            out.push(SegmentGame::new(left, right, i - start));
        }
        out
    }

    pub fn mirror(&self) -> Self {
        Self {
            edges: self.edges.iter().rev().map(|m| m.reversed()).collect(),
            left: self.right,
            right: self.left,
        }
    }
}

/// Boundary seen by a run that starts right after a marked edge.
fn boundary_after(mark: EdgeMark) -> BoundaryKind {
    match mark {
        EdgeMark::Forward => BoundaryKind::In,
        EdgeMark::Backward => BoundaryKind::Out,
        EdgeMark::Unmarked => unreachable!("boundary of an unmarked edge"),
    }
}

/// Boundary seen by a run that ends right before a marked edge.
fn boundary_before(mark: EdgeMark) -> BoundaryKind {
    match mark {
        EdgeMark::Forward => BoundaryKind::Out,
        EdgeMark::Backward => BoundaryKind::In,
        EdgeMark::Unmarked => unreachable!("boundary of an unmarked edge"),
    }
}

impl Position for LineState {
    fn marks(&self) -> &[EdgeMark] {
        &self.edges
    }

    fn to_graph(&self) -> GraphState {
        let n = self.edges.len();
        let mut vertex_count = n + 1;
        let mut edges: Vec<_> = (0..n).map(|i| (i, i + 1, self.edges[i])).collect();
        let mut exempt = BTreeSet::new();
        // Virtual edges go after the real ones and are oriented outer -> end.
        for (kind, end) in [(self.left, 0), (self.right, n)] {
            let mark = match kind {
                BoundaryKind::Open => continue,
                BoundaryKind::In => EdgeMark::Forward,
                BoundaryKind::Out => EdgeMark::Backward,
            };
            let outer = vertex_count;
            vertex_count += 1;
            exempt.insert(outer);
            edges.push((outer, end, mark));
        }
        GraphState::new(vertex_count, edges, exempt).expect("line graph is well formed")
    }

    fn components(&self) -> Components {
        Components::Segments(self.decompose())
    }

    fn with_mark(&self, edge: usize, mark: EdgeMark) -> Self {
        let mut next = self.clone();
        next.edges[edge] = mark;
        next
    }
}

/// A simple cycle; edge `i` joins vertices `i` and `i + 1 mod n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleState {
    edges: Vec<EdgeMark>,
}

impl CycleState {
    pub fn new(edges: Vec<EdgeMark>) -> Result<Self, GameError> {
        if edges.len() < 2 {
            return Err(GameError::CycleTooShort(edges.len()));
        }
        Ok(Self { edges })
    }

    pub fn unmarked(n: usize) -> Result<Self, GameError> {
        Self::new(vec![EdgeMark::Unmarked; n])
    }

    pub fn edges(&self) -> &[EdgeMark] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Runs of unmarked edges between marks, or `None` when nothing is
    /// marked yet.
    pub fn decompose(&self) -> Option<Vec<SegmentGame>> {
        let n = self.edges.len();
        let first = self.edges.iter().position(|m| m.is_marked())?;
        let mut out = Vec::new();
        let mut run = 0;
        let mut prev = self.edges[first];
        for step in 1..=n {
            let mark = self.edges[(first + step) % n];
            if mark.is_marked() {
                if run > 0 {
                    out.push(SegmentGame::new(boundary_after(prev), boundary_before(mark), run));
                }
                run = 0;
                prev = mark;
            } else {
                run += 1;
            }
        }
        Some(out)
    }
}

impl Position for CycleState {
    fn marks(&self) -> &[EdgeMark] {
        &self.edges
    }

    fn to_graph(&self) -> GraphState {
        let n = self.edges.len();
        let edges = (0..n).map(|i| (i, (i + 1) % n, self.edges[i])).collect();
        GraphState::new(n, edges, BTreeSet::new()).expect("cycle graph is well formed")
    }

    fn components(&self) -> Components {
        match self.decompose() {
            Some(segments) => Components::Segments(segments),
            None => Components::UnmarkedCycle(self.edges.len()),
        }
    }

    fn with_mark(&self, edge: usize, mark: EdgeMark) -> Self {
        let mut next = self.clone();
        next.edges[edge] = mark;
        next
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BoundaryKind::*;
    use Direction::*;

    fn line(s: &str, left: BoundaryKind, right: BoundaryKind) -> LineState {
        let edges = s.chars().map(|c| EdgeMark::from_symbol(c).unwrap()).collect();
        LineState::new(edges, left, right).unwrap()
    }

    fn single_edge(mark: EdgeMark) -> GraphState {
        GraphState::new(2, vec![(0, 1, mark)], BTreeSet::new()).unwrap()
    }

    #[test]
    fn sink_and_source_on_single_edge() {
        let g = single_edge(EdgeMark::Forward);
        assert!(g.is_sink(1).unwrap());
        assert!(g.is_source(0).unwrap());
        assert!(!g.is_sink(0).unwrap());
        assert_eq!(g.is_sink(2), Err(GameError::UnknownVertex { vertex: 2, count: 2 }));
    }

    #[test]
    fn unmarked_incident_edge_blocks_sink() {
        let g = GraphState::new(
            3,
            vec![(0, 1, EdgeMark::Forward), (1, 2, EdgeMark::Unmarked)],
            BTreeSet::new(),
        )
        .unwrap();
        assert!(!g.is_sink(1).unwrap());
        assert!(!g.is_source(1).unwrap());
    }

    #[test]
    fn exempt_vertex_is_never_source() {
        let g = GraphState::new(2, vec![(0, 1, EdgeMark::Forward)], [0].into()).unwrap();
        assert!(!g.is_source(0).unwrap());
        assert!(g.is_sink(1).unwrap());
    }

    #[test]
    fn in_boundary_end_vertex_becomes_sink() {
        let g = line("<", In, Open).to_graph();
        assert!(g.is_sink(0).unwrap());
    }

    #[test]
    fn out_out_forward_makes_left_end_a_source() {
        let g = line(">", Out, Out).to_graph();
        assert!(g.is_source(0).unwrap());
        let s = LineState::unmarked(1, Out, Out).unwrap();
        assert!(s.legal_moves(RuleSet::SourcesAllowed).contains(&Move::new(0, Forward)));
        assert!(!s.legal_moves(RuleSet::Standard).contains(&Move::new(0, Forward)));
    }

    #[test]
    fn legal_moves_examples() {
        let s = LineState::unmarked(1, Open, Open).unwrap();
        assert!(s.legal_moves(RuleSet::SourcesAllowed).is_empty());
        let s = LineState::unmarked(1, Out, Open).unwrap();
        assert_eq!(s.legal_moves(RuleSet::SourcesAllowed), vec![Move::new(0, Backward)]);
        let s = LineState::unmarked(5, Open, Open).unwrap();
        for rules in RuleSet::ALL {
            let moves = s.legal_moves(rules);
            for e in 1..4 {
                assert!(moves.contains(&Move::new(e, Forward)));
                assert!(moves.contains(&Move::new(e, Backward)));
            }
        }
    }

    #[test]
    fn legal_moves_are_ordered() {
        let s = LineState::unmarked(4, Out, Out).unwrap();
        let moves = s.legal_moves(RuleSet::SourcesAllowed);
        let mut sorted = moves.clone();
        sorted.sort();
        assert_eq!(moves, sorted);
        assert_eq!(moves[0], Move::new(0, Forward));
    }

    #[test]
    fn apply_move_marks_one_edge() {
        let s = LineState::unmarked(5, Open, Open).unwrap();
        let next = s.apply_move(Move::new(2, Forward), RuleSet::Standard).unwrap();
        assert_eq!(next, line("-->--", Open, Open));
        assert_eq!(
            next.apply_move(Move::new(2, Backward), RuleSet::Standard),
            Err(GameError::AlreadyMarked { edge: 2 })
        );
    }

    #[test]
    fn apply_move_rejects_sink() {
        let s = LineState::unmarked(3, In, Open).unwrap();
        assert_eq!(
            s.apply_move(Move::new(0, Backward), RuleSet::SourcesAllowed),
            Err(GameError::SinkCreated { edge: 0, vertex: 0 })
        );
        let s = LineState::unmarked(3, Open, Open).unwrap();
        assert_eq!(
            s.apply_move(Move::new(0, Forward), RuleSet::Standard),
            Err(GameError::SourceCreated { edge: 0, vertex: 0 })
        );
        assert_eq!(
            s.apply_move(Move::new(3, Forward), RuleSet::Standard),
            Err(GameError::UnknownEdge { edge: 3, count: 3 })
        );
    }

    #[test]
    fn decompose_examples() {
        let s = LineState::unmarked(7, Open, Open).unwrap();
        assert_eq!(s.decompose(), vec![SegmentGame::new(Open, Open, 7)]);
        let s = line("--->---", Open, Open);
        assert_eq!(
            s.decompose(),
            vec![SegmentGame::new(Open, Out, 3), SegmentGame::new(In, Open, 3)]
        );
        let s = line(">----", In, In);
        assert_eq!(s.decompose(), vec![SegmentGame::new(In, In, 4)]);
        assert!(line("<><", Open, Open).decompose().is_empty());
    }

    #[test]
    fn mirror_segments() {
        assert_eq!(SegmentGame::new(In, Open, 4).mirror(), SegmentGame::new(Open, In, 4));
        assert_eq!(SegmentGame::new(In, Out, 9).mirror(), SegmentGame::new(Out, In, 9));
        let s = SegmentGame::new(Open, Open, 3);
        assert_eq!(s.mirror(), s);
    }

    #[test]
    fn split_keeps_empty_parts() {
        let s = SegmentGame::new(In, Open, 4);
        assert_eq!(
            s.split(0, Backward),
            (SegmentGame::new(In, In, 0), SegmentGame::new(Out, Open, 3))
        );
        assert_eq!(
            s.split(3, Forward),
            (SegmentGame::new(In, Out, 3), SegmentGame::new(In, Open, 0))
        );
    }

    #[test]
    fn cycle_decomposition() {
        let c = CycleState::unmarked(5).unwrap();
        assert_eq!(c.decompose(), None);
        let c = c.apply_move(Move::new(2, Forward), RuleSet::Standard).unwrap();
        assert_eq!(c.decompose(), Some(vec![SegmentGame::new(In, Out, 4)]));
        let c = CycleState::unmarked(6)
            .unwrap()
            .with_mark(1, EdgeMark::Backward)
            .with_mark(4, EdgeMark::Forward);
        assert_eq!(
            c.decompose(),
            Some(vec![SegmentGame::new(Out, Out, 2), SegmentGame::new(In, In, 2)])
        );
        assert_eq!(CycleState::unmarked(1), Err(GameError::CycleTooShort(1)));
    }

    #[test]
    fn every_first_move_on_a_cycle_is_legal() {
        for n in 2..8 {
            let c = CycleState::unmarked(n).unwrap();
            assert_eq!(c.legal_moves(RuleSet::Standard).len(), 2 * n);
        }
    }

    #[test]
    fn graph_rejects_self_loops() {
        let err = GraphState::new(2, vec![(1, 1, EdgeMark::Unmarked)], BTreeSet::new());
        assert_eq!(err, Err(GameError::SelfLoop { edge: 0, vertex: 1 }));
    }
}
