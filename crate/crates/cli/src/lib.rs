//! Command-line front end for the Game of Cycles engine.
//!
//! Exit codes: 0 success or pass, 1 analysis-level failure, 2 usage or
//! parse error.

mod play;

pub use play::Outcome;

pub const SUCCESS: u8 = 0;
pub const FAILURE: u8 = 1;
pub const USAGE: u8 = 2;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use cycles_core::catalog;
use cycles_core::dataio::{self, Format};
use cycles_core::engine::{Engine, Nimber, Oracle, DEFAULT_ORACLE_BOUND};
use cycles_core::games::{BoundaryKind, CycleState, LineState, Position, RuleSet};
use cycles_core::periodicity::{certify_with_bound, FamilySpec};

#[derive(Debug, Parser)]
#[command(name = "cycles", version, about = "Sprague-Grundy analysis of the Game of Cycles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphKind {
    Path,
    Cycle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Rules {
    Standard,
    SourcesAllowed,
}

impl From<Rules> for RuleSet {
    fn from(r: Rules) -> Self {
        match r {
            Rules::Standard => RuleSet::Standard,
            Rules::SourcesAllowed => RuleSet::SourcesAllowed,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Boundary {
    Open,
    In,
    Out,
}

impl From<Boundary> for BoundaryKind {
    fn from(b: Boundary) -> Self {
        match b {
            Boundary::Open => BoundaryKind::Open,
            Boundary::In => BoundaryKind::In,
            Boundary::Out => BoundaryKind::Out,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }
}

/// End types of a path; rejected for cycles.
#[derive(Debug, clap::Args)]
struct Ends {
    /// Left end of a path
    #[arg(long, value_enum)]
    left: Option<Boundary>,
    /// Right end of a path
    #[arg(long, value_enum)]
    right: Option<Boundary>,
}

impl Ends {
    fn resolve(&self, graph: GraphKind) -> Result<(BoundaryKind, BoundaryKind), CliError> {
        if graph == GraphKind::Cycle && (self.left.is_some() || self.right.is_some()) {
            return Err(CliError::Usage("--left/--right apply to paths only".into()));
        }
        let get = |b: Option<Boundary>| b.map_or(BoundaryKind::Open, Into::into);
        Ok((get(self.left), get(self.right)))
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Value of an unmarked path or cycle
    Nimber {
        #[arg(long, value_enum)]
        graph: GraphKind,
        /// Number of edges
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "standard")]
        rules: Rules,
        #[command(flatten)]
        ends: Ends,
    },
    /// Values of one type of a builtin family for n = 1..=max
    Sequence {
        #[arg(long)]
        family: String,
        /// 1-based type index
        #[arg(long = "type")]
        family_type: usize,
        #[arg(long)]
        max: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        /// Add the published values alongside
        #[arg(long)]
        expected: bool,
    },
    /// Certify eventual periodicity and print the certificate
    Verify {
        #[arg(long, required_unless_present = "spec_file")]
        family: Option<String>,
        /// JSON family declaration; takes precedence over --family
        #[arg(long)]
        spec_file: Option<PathBuf>,
        /// Largest n for the pattern check
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Winning moves from a partly marked position
    BestMove {
        /// Marks, one character per edge: '-', '>' or '<'
        #[arg(long, allow_hyphen_values = true)]
        edges: String,
        #[arg(long, value_enum, default_value = "path")]
        graph: GraphKind,
        #[arg(long, value_enum, default_value = "standard")]
        rules: Rules,
        #[command(flatten)]
        ends: Ends,
    },
    /// Exhaustive search on an arbitrary graph file
    Oracle {
        /// Graph file, one "u v [<|>]" edge per line
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum, default_value = "standard")]
        rules: Rules,
        /// Largest number of unmarked edges searched
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        bound: usize,
    },
    /// Compare a family's published tables with the engine
    Compare {
        #[arg(long)]
        family: String,
    },
    /// Play against the engine on stdin/stdout
    Play {
        #[arg(long, value_enum)]
        graph: GraphKind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "standard")]
        rules: Rules,
        #[command(flatten)]
        ends: Ends,
        /// Let the engine move first
        #[arg(long)]
        engine_first: bool,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn verdict(v: Nimber) -> &'static str {
    if v.is_zero() {
        "second player wins"
    } else {
        "first player wins"
    }
}

fn family(name: &str) -> Result<FamilySpec, CliError> {
    catalog::builtin(name).map_err(usage)
}

fn cmd_nimber(
    graph: GraphKind,
    n: usize,
    rules: RuleSet,
    ends: &Ends,
    out: &mut impl Write,
) -> Result<u8, CliError> {
    let (left, right) = ends.resolve(graph)?;
    let engine = Engine::new();
    let value = match graph {
        GraphKind::Path => {
            let state = LineState::unmarked(n, left, right).map_err(usage)?;
            engine.grundy_line(&state, rules)
        }
        GraphKind::Cycle => engine.grundy_cycle(n, rules).map_err(usage)?,
    };
    writeln!(out, "nimber: {value}")?;
    writeln!(out, "{}", verdict(value))?;
    Ok(SUCCESS)
}

fn cmd_sequence(
    name: &str,
    family_type: usize,
    max: usize,
    format: Format,
    expected: bool,
    out: &mut impl Write,
) -> Result<u8, CliError> {
    let spec = family(name)?;
    let k = spec.exposed_k();
    if !(1..=k).contains(&family_type) {
        return Err(CliError::Usage(format!("type {family_type} out of range 1..={k} for {name}")));
    }
    let engine = Engine::new();
    let start = if spec.cycle_over.is_some() { 2 } else { 1 };
    let values = catalog::engine_values(&spec, &engine, family_type, start, max)
        .into_iter()
        .map(|(_, v)| v)
        .collect();
    let mut report = dataio::SequenceReport::new(&spec.id, spec.rules, family_type, start, values);
    if expected {
        let table = catalog::fixtures(name).map_err(usage)?;
        let published = table.values(family_type).unwrap_or(&[]);
        report = report.with_expected(table.start, published);
    }
    out.write_all(dataio::emit_sequence(&report, format).as_bytes())?;
    Ok(SUCCESS)
}

fn cmd_verify(
    name: Option<&str>,
    spec_file: Option<&PathBuf>,
    nmax: Option<usize>,
    out: &mut impl Write,
) -> Result<u8, CliError> {
    let spec = match (spec_file, name) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            dataio::parse_family_spec(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        }
        (None, Some(name)) => family(name)?,
        (None, None) => return Err(usage("one of --family or --spec-file is required")),
    };
    let bound = nmax.unwrap_or_else(|| spec.default_faithfulness_bound());
    let cert = certify_with_bound(&spec, &Engine::new(), bound);
    out.write_all(dataio::emit_certificate(&cert).as_bytes())?;
    Ok(if cert.pass { SUCCESS } else { FAILURE })
}

fn describe_best<P: Position>(
    engine: &Engine,
    position: &P,
    rules: RuleSet,
    out: &mut impl Write,
) -> io::Result<()> {
    let value = engine.position_value(position, rules);
    writeln!(out, "nimber: {value}")?;
    let best = engine.best_moves(position, rules);
    if best.is_empty() {
        writeln!(out, "no winning move")?;
    } else {
        let list: Vec<String> = best.iter().map(ToString::to_string).collect();
        writeln!(out, "best moves: {}", list.join(" "))?;
    }
    Ok(())
}

fn cmd_best_move(
    edges: &str,
    graph: GraphKind,
    rules: RuleSet,
    ends: &Ends,
    out: &mut impl Write,
) -> Result<u8, CliError> {
    let (left, right) = ends.resolve(graph)?;
    let engine = Engine::new();
    match graph {
        GraphKind::Path => {
            let state =
                dataio::parse_line_state(edges, left.name(), right.name()).map_err(usage)?;
            describe_best(&engine, &state, rules, out)?;
        }
        GraphKind::Cycle => {
            let state = dataio::parse_cycle_state(edges).map_err(usage)?;
            describe_best(&engine, &state, rules, out)?;
        }
    }
    Ok(SUCCESS)
}

fn cmd_oracle(
    file: &PathBuf,
    rules: RuleSet,
    bound: usize,
    out: &mut impl Write,
    err: &mut impl Write,
) -> Result<u8, CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::Usage(format!("{}: {e}", file.display())))?;
    let graph = dataio::parse_graph(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", file.display())))?;
    match Oracle::new(bound).grundy(&graph, rules) {
        Ok(value) => {
            writeln!(out, "nimber: {value}")?;
            writeln!(out, "{}", verdict(value))?;
            Ok(SUCCESS)
        }
        Err(e) => {
            writeln!(err, "error: {e}")?;
            Ok(FAILURE)
        }
    }
}

fn cmd_compare(name: &str, out: &mut impl Write) -> Result<u8, CliError> {
    let spec = family(name)?;
    let table = catalog::fixtures(name).map_err(usage)?;
    let report = catalog::compare(&spec, &table, &Engine::new());
    let mut text = String::new();
    writeln!(text, "family: {} ({})", report.family, report.rules).unwrap();
    for t in &report.types {
        let matched = t.published_len - t.mismatches.len();
        let status = if t.matches() { "match" } else { "MISMATCH" };
        writeln!(
            text,
            "type {}: {status} {matched}/{} from n={}",
            t.family_type, t.published_len, report.start
        )
        .unwrap();
        for m in &t.mismatches {
            writeln!(text, "  n={}: engine {} published {}", m.n, m.engine, m.published).unwrap();
        }
    }
    out.write_all(text.as_bytes())?;
    Ok(if report.all_match() { SUCCESS } else { FAILURE })
}

fn cmd_play(
    graph: GraphKind,
    n: usize,
    rules: RuleSet,
    ends: &Ends,
    engine_first: bool,
    input: impl BufRead,
    out: &mut impl Write,
) -> Result<u8, CliError> {
    let (left, right) = ends.resolve(graph)?;
    let engine = Engine::new();
    match graph {
        GraphKind::Path => {
            let state = LineState::unmarked(n, left, right).map_err(usage)?;
            play::run(&engine, state, rules, engine_first, input, out)?;
        }
        GraphKind::Cycle => {
            let state = CycleState::unmarked(n).map_err(usage)?;
            play::run(&engine, state, rules, engine_first, input, out)?;
        }
    }
    Ok(SUCCESS)
}

fn dispatch(
    cli: Cli,
    input: impl BufRead,
    out: &mut impl Write,
    err: &mut impl Write,
) -> Result<u8, CliError> {
    match cli.command {
        Command::Nimber { graph, n, rules, ends } => cmd_nimber(graph, n, rules.into(), &ends, out),
        Command::Sequence { family, family_type, max, format, expected } => {
            cmd_sequence(&family, family_type, max, format.into(), expected, out)
        }
        Command::Verify { family, spec_file, nmax } => {
            cmd_verify(family.as_deref(), spec_file.as_ref(), nmax, out)
        }
        Command::BestMove { edges, graph, rules, ends } => {
            cmd_best_move(&edges, graph, rules.into(), &ends, out)
        }
        Command::Oracle { file, rules, bound } => cmd_oracle(&file, rules.into(), bound, out, err),
        Command::Compare { family } => cmd_compare(&family, out),
        Command::Play { graph, n, rules, ends, engine_first } => {
            cmd_play(graph, n, rules.into(), &ends, engine_first, input, out)
        }
    }
}

/// Parse `args` (program name first) and run the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, input: impl BufRead, mut out: impl Write, mut err: impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { &mut err } else { &mut out };
            let _ = sink.write_all(text.as_bytes());
            return if e.use_stderr() { USAGE } else { SUCCESS };
        }
    };
    let code = match dispatch(cli, input, &mut out, &mut err) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            USAGE
        }
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => SUCCESS,
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            USAGE
        }
    };
    let _ = out.flush();
    code
}
