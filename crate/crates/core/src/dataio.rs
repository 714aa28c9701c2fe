//! Text formats: line states, graph files, value sequences, fixture tables,
//! family declarations and certificates.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::engine::Nimber;
use crate::games::{
    BoundaryKind, CycleState, Direction, EdgeMark, GameError, GraphState, LineState, Move, RuleSet,
};
use crate::periodicity::{FamilySpec, PeriodicityCertificate};

pub const FIXTURE_SCHEMA: &str = "cycles-fixtures/1";

#[derive(Debug, Error)]
pub enum DataError {
    #[error("bad character {found:?} at position {position}; expected one of '-', '<', '>'")]
    BadEdgeChar { position: usize, found: char },
    #[error("empty edge string")]
    EmptyEdges,
    #[error("bad boundary token {0:?}; expected open, in or out")]
    BadBoundary(String),
    #[error("bad move {0:?}; expected an edge index followed by '>' or '<', e.g. 3>")]
    BadMove(String),
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn syntax(line: usize, reason: impl Into<String>) -> DataError {
    DataError::Syntax { line, reason: reason.into() }
}

pub fn parse_edges(edges: &str) -> Result<Vec<EdgeMark>, DataError> {
    if edges.is_empty() {
        return Err(DataError::EmptyEdges);
    }
    edges
        .chars()
        .enumerate()
        .map(|(position, c)| {
            EdgeMark::from_symbol(c).ok_or(DataError::BadEdgeChar { position, found: c })
        })
        .collect()
}

pub fn parse_boundary(token: &str) -> Result<BoundaryKind, DataError> {
    BoundaryKind::from_name(token).ok_or_else(|| DataError::BadBoundary(token.to_string()))
}

pub fn parse_line_state(edges: &str, left: &str, right: &str) -> Result<LineState, DataError> {
    let marks = parse_edges(edges)?;
    Ok(LineState::new(marks, parse_boundary(left)?, parse_boundary(right)?)?)
}

pub fn parse_cycle_state(edges: &str) -> Result<CycleState, DataError> {
    Ok(CycleState::new(parse_edges(edges)?)?)
}

/// A move written as `<edge><dir>`, e.g. `3>`; whitespace is ignored.
pub fn parse_move(text: &str) -> Result<Move, DataError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || DataError::BadMove(text.trim().to_string());
    let (digits, dir) = match compact.char_indices().last() {
        Some((i, '>')) => (&compact[..i], Direction::Forward),
        Some((i, '<')) => (&compact[..i], Direction::Backward),
        _ => return Err(bad()),
    };
    let edge = digits.parse().map_err(|_| bad())?;
    Ok(Move::new(edge, dir))
}

pub fn render_edges(marks: &[EdgeMark]) -> String {
    marks.iter().map(|m| m.symbol()).collect()
}

/// `(edges, left, right)`, the inverse of [`parse_line_state`].
pub fn render_line_state(state: &LineState) -> (String, &'static str, &'static str) {
    (render_edges(state.edges()), state.left.name(), state.right.name())
}

/// Graph file: one edge per line, `u v` optionally followed by `>` (u to v)
/// or `<` (v to u). An optional first line `exempt: id id ...`. Blank lines
/// and `#` comments are ignored.
pub fn parse_graph(text: &str) -> Result<GraphState, DataError> {
    let mut edges = Vec::new();
    let mut exempt = BTreeSet::new();
    let mut max_vertex = None::<usize>;
    let mut seen_edge = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("exempt:") {
            if seen_edge || !exempt.is_empty() {
                return Err(syntax(line_no, "exempt header must come before any edge"));
            }
            for tok in rest.split_whitespace() {
                let v: usize =
                    tok.parse().map_err(|_| syntax(line_no, format!("bad vertex id {tok:?}")))?;
                max_vertex = max_vertex.max(Some(v));
                exempt.insert(v);
            }
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if !(2..=3).contains(&toks.len()) {
            return Err(syntax(line_no, "expected \"u v [<|>]\""));
        }
        let vertex = |tok: &str| {
            tok.parse::<usize>().map_err(|_| syntax(line_no, format!("bad vertex id {tok:?}")))
        };
        let (u, v) = (vertex(toks[0])?, vertex(toks[1])?);
        let mark = match toks.get(2) {
            None => EdgeMark::Unmarked,
            Some(&">") => EdgeMark::Forward,
            Some(&"<") => EdgeMark::Backward,
            Some(other) => return Err(syntax(line_no, format!("bad direction {other:?}"))),
        };
        max_vertex = max_vertex.max(Some(u.max(v)));
        edges.push((u, v, mark));
        seen_edge = true;
    }
    let count = max_vertex.map_or(0, |m| m + 1);
    Ok(GraphState::new(count, edges, exempt)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

/// Values of one family type over a contiguous range of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceReport {
    pub family: String,
    pub rules: RuleSet,
    pub family_type: usize,
    pub start: usize,
    pub values: Vec<Nimber>,
    /// Same length as `values`; `None` entries have no published value.
    pub expected: Option<Vec<Option<Nimber>>>,
}

impl SequenceReport {
    pub fn new(
        family: impl Into<String>,
        rules: RuleSet,
        family_type: usize,
        start: usize,
        values: Vec<Nimber>,
    ) -> Self {
        Self { family: family.into(), rules, family_type, start, values, expected: None }
    }

    /// Attach published values aligned so that `published[0]` is at
    /// `published_start`.
    pub fn with_expected(mut self, published_start: usize, published: &[Nimber]) -> Self {
        let expected = (0..self.values.len())
            .map(|k| {
                (self.start + k)
                    .checked_sub(published_start)
                    .and_then(|idx| published.get(idx).copied())
            })
            .collect();
        self.expected = Some(expected);
        self
    }

    pub fn end(&self) -> Option<usize> {
        (!self.values.is_empty()).then(|| self.start + self.values.len() - 1)
    }

    fn rows(&self) -> Vec<Row> {
        self.values
            .iter()
            .enumerate()
            .map(|(k, &value)| {
                let expected = self.expected.as_ref().map(|e| e[k]);
                Row {
                    n: self.start + k,
                    value,
                    expected: expected.flatten(),
                    matches: expected.and_then(|e| e.map(|e| e == value)),
                    with_expected: expected.is_some(),
                }
            })
            .collect()
    }

    pub fn all_match(&self) -> bool {
        self.rows().iter().all(|r| r.matches != Some(false))
    }
}

struct Row {
    n: usize,
    value: Nimber,
    expected: Option<Nimber>,
    matches: Option<bool>,
    with_expected: bool,
}

#[derive(Serialize)]
struct JsonRow {
    n: usize,
    value: Nimber,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected: Option<Option<Nimber>>,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    matches: Option<Option<bool>>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    family: &'a str,
    rules: RuleSet,
    #[serde(rename = "type")]
    family_type: usize,
    start: usize,
    end: Option<usize>,
    rows: Vec<JsonRow>,
}

pub fn emit_sequence(report: &SequenceReport, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::new();
            let with_expected = report.expected.is_some();
            out.push_str(if with_expected { "n,value,expected,match\n" } else { "n,value\n" });
            for row in report.rows() {
                write!(out, "{},{}", row.n, row.value).unwrap();
                if row.with_expected {
                    let e = row.expected.map(|v| v.to_string()).unwrap_or_default();
                    let m = row.matches.map(|m| m.to_string()).unwrap_or_default();
                    write!(out, ",{e},{m}").unwrap();
                }
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let rows = report
                .rows()
                .into_iter()
                .map(|r| JsonRow {
                    n: r.n,
                    value: r.value,
                    expected: r.with_expected.then_some(r.expected),
                    matches: r.with_expected.then_some(r.matches),
                })
                .collect();
            let doc = JsonReport {
                family: &report.family,
                rules: report.rules,
                family_type: report.family_type,
                start: report.start,
                end: report.end(),
                rows,
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

/// Published value tables for one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureTable {
    pub family: String,
    pub rules: RuleSet,
    pub start: usize,
    pub notes: Vec<String>,
    /// `(type index, values from n = start)`.
    pub types: Vec<(usize, Vec<Nimber>)>,
}

impl FixtureTable {
    pub fn values(&self, family_type: usize) -> Option<&[Nimber]> {
        self.types.iter().find(|(i, _)| *i == family_type).map(|(_, v)| v.as_slice())
    }
}

pub fn parse_fixtures(text: &str) -> Result<FixtureTable, DataError> {
    let mut schema = None;
    let mut family = None;
    let mut rules = None;
    let mut start = 1;
    let mut notes = Vec::new();
    let mut types = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) =
            line.split_once(':').ok_or_else(|| syntax(line_no, "expected \"key: value\""))?;
        let value = value.trim();
        match key.trim() {
            "schema" => schema = Some(value.to_string()),
            "family" => family = Some(value.to_string()),
            "rules" => {
                rules = Some(
                    RuleSet::from_name(value)
                        .ok_or_else(|| syntax(line_no, format!("unknown rules {value:?}")))?,
                )
            }
            "start" => {
                start = value.parse().map_err(|_| syntax(line_no, "bad start index"))?;
            }
            "note" => notes.push(value.to_string()),
            k if k.starts_with("type ") => {
                let i: usize = k[5..]
                    .trim()
                    .parse()
                    .map_err(|_| syntax(line_no, format!("bad type index in {k:?}")))?;
                let values = value
                    .split(',')
                    .map(|v| v.trim().parse::<u32>().map(Nimber))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| syntax(line_no, "bad value list"))?;
                types.push((i, values));
            }
            other => return Err(syntax(line_no, format!("unknown key {other:?}"))),
        }
    }
    match schema.as_deref() {
        Some(FIXTURE_SCHEMA) => {}
        other => return Err(syntax(1, format!("expected schema {FIXTURE_SCHEMA}, got {other:?}"))),
    }
    Ok(FixtureTable {
        family: family.ok_or_else(|| syntax(0, "missing family"))?,
        rules: rules.ok_or_else(|| syntax(0, "missing rules"))?,
        start,
        notes,
        types,
    })
}

pub fn emit_fixtures(table: &FixtureTable) -> String {
    let mut out = String::new();
    writeln!(out, "schema: {FIXTURE_SCHEMA}").unwrap();
    writeln!(out, "family: {}", table.family).unwrap();
    writeln!(out, "rules: {}", table.rules).unwrap();
    writeln!(out, "start: {}", table.start).unwrap();
    for note in &table.notes {
        writeln!(out, "note: {note}").unwrap();
    }
    for (i, values) in &table.types {
        let list: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        writeln!(out, "type {i}: {}", list.join(",")).unwrap();
    }
    out
}

pub fn parse_family_spec(text: &str) -> Result<FamilySpec, DataError> {
    Ok(serde_json::from_str(text)?)
}

pub fn emit_family_spec(spec: &FamilySpec) -> String {
    let mut s = serde_json::to_string_pretty(spec).expect("spec serializes");
    s.push('\n');
    s
}

pub fn emit_certificate(cert: &PeriodicityCertificate) -> String {
    let mut s = serde_json::to_string_pretty(cert).expect("certificate serializes");
    s.push('\n');
    s
}

pub fn parse_certificate(text: &str) -> Result<PeriodicityCertificate, DataError> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use proptest::prelude::*;

    fn nims(v: &[u32]) -> Vec<Nimber> {
        v.iter().copied().map(Nimber).collect()
    }

    #[test]
    fn parse_line_examples() {
        let s = parse_line_state("-----", "open", "open").unwrap();
        assert_eq!(s, LineState::unmarked(5, BoundaryKind::Open, BoundaryKind::Open).unwrap());
        let s = parse_line_state("->--", "in", "open").unwrap();
        assert_eq!(s.edges()[1], EdgeMark::Forward);
        assert_eq!(s.left, BoundaryKind::In);
        let err = parse_line_state("x", "open", "open").unwrap_err();
        assert!(matches!(err, DataError::BadEdgeChar { position: 0, found: 'x' }));
        let err = parse_line_state("--x", "open", "open").unwrap_err();
        assert!(matches!(err, DataError::BadEdgeChar { position: 2, .. }));
        assert!(matches!(
            parse_line_state("-", "sideways", "open"),
            Err(DataError::BadBoundary(_))
        ));
        assert!(matches!(parse_line_state("", "open", "open"), Err(DataError::EmptyEdges)));
    }

    #[test]
    fn parse_move_examples() {
        assert_eq!(parse_move("3>").unwrap(), Move::new(3, Direction::Forward));
        assert_eq!(parse_move(" 12 < ").unwrap(), Move::new(12, Direction::Backward));
        for bad in ["", ">", "3", "x>", "-1<", "3>>"] {
            assert!(matches!(parse_move(bad), Err(DataError::BadMove(_))), "{bad:?}");
        }
        let mv = Move::new(7, Direction::Backward);
        assert_eq!(parse_move(&mv.to_string()).unwrap(), mv);
    }

    #[test]
    fn csv_examples() {
        let r = SequenceReport::new(
            "variant-line",
            RuleSet::SourcesAllowed,
            1,
            1,
            nims(&[0, 1, 0, 1, 0]),
        );
        assert_eq!(emit_sequence(&r, Format::Csv), "n,value\n1,0\n2,1\n3,0\n4,1\n5,0\n");
        let empty = SequenceReport::new("variant-line", RuleSet::SourcesAllowed, 1, 1, vec![]);
        assert_eq!(emit_sequence(&empty, Format::Csv), "n,value\n");
        let json = emit_sequence(&empty, Format::Json);
        assert!(json.ends_with("}\n"));
    }

    #[test]
    fn csv_with_expected() {
        let r = SequenceReport::new("f", RuleSet::Standard, 1, 1, nims(&[0, 1, 2]))
            .with_expected(1, &nims(&[0, 2]));
        assert_eq!(
            emit_sequence(&r, Format::Csv),
            "n,value,expected,match\n1,0,0,true\n2,1,2,false\n3,2,,\n"
        );
        assert!(!r.all_match());
        let json: serde_json::Value =
            serde_json::from_str(&emit_sequence(&r, Format::Json)).unwrap();
        assert_eq!(json["rows"][1]["match"], false);
        assert_eq!(json["rows"][2]["expected"], serde_json::Value::Null);
        assert_eq!(json["end"], 3);
    }

    #[test]
    fn graph_file() {
        let g = parse_graph("exempt: 3\n# a path\n0 1 >\n1 2\n2 3 <\n").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.marks(), &[EdgeMark::Forward, EdgeMark::Unmarked, EdgeMark::Backward]);
        assert!(g.exempt().contains(&3));
        assert!(matches!(parse_graph("0 1 ^"), Err(DataError::Syntax { line: 1, .. })));
        assert!(matches!(parse_graph("0 0"), Err(DataError::Game(GameError::SelfLoop { .. }))));
        assert!(parse_graph("0 1\nexempt: 0").is_err());
    }

    #[test]
    fn fixtures_round_trip() {
        for name in catalog::BUILTIN_NAMES {
            let t = catalog::fixtures(name).unwrap();
            assert_eq!(parse_fixtures(&emit_fixtures(&t)).unwrap(), t);
        }
        assert!(parse_fixtures("family: x\nrules: standard\n").is_err());
    }

    #[test]
    fn family_spec_round_trip() {
        for name in catalog::BUILTIN_NAMES {
            let spec = catalog::builtin(name).unwrap();
            assert_eq!(parse_family_spec(&emit_family_spec(&spec)).unwrap(), spec);
        }
        assert!(parse_family_spec("{\"id\": 3}").is_err());
    }

    fn edge_string() -> impl Strategy<Value = String> {
        proptest::collection::vec(prop_oneof![Just('-'), Just('<'), Just('>')], 1..20)
            .prop_map(|v| v.into_iter().collect())
    }

    fn boundary() -> impl Strategy<Value = &'static str> {
        prop_oneof![Just("open"), Just("in"), Just("out")]
    }

    proptest! {
        #[test]
        fn render_parse_identity(edges in edge_string(), l in boundary(), r in boundary()) {
            let state = parse_line_state(&edges, l, r).unwrap();
            let (e2, l2, r2) = render_line_state(&state);
            prop_assert_eq!(&e2, &edges);
            prop_assert_eq!((l2, r2), (l, r));
            prop_assert_eq!(parse_line_state(&e2, l2, r2).unwrap(), state);
        }
    }
}
