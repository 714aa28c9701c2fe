//! Sprague-Grundy analysis of the Game of Cycles on paths and simple
//! cycles, under the standard rules and the sources-allowed variant.
//!
//! * [`games`]: positions, rule sets, legality and decomposition.
//! * [`engine`]: segment value table, exhaustive oracle, optimal moves.
//! * [`periodicity`]: certificates of eventual periodicity for families of
//!   segment games whose moves split them into two typed parts.
//! * [`catalog`]: built-in families and the published value tables.
//! * [`dataio`]: text formats for states, sequences and reports.

pub mod catalog;
pub mod dataio;
pub mod engine;
pub mod games;
pub mod periodicity;

pub use engine::{Engine, Nimber};
pub use games::{BoundaryKind, Direction, EdgeMark, LineState, Move, RuleSet, SegmentGame};
