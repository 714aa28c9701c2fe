//! Text play loop: the human types moves such as `3>`, the engine replies
//! with its first winning move, or its first legal move when it has none.

use std::io::{self, BufRead, Write};

use cycles_core::dataio::{parse_move, render_edges};
use cycles_core::engine::Engine;
use cycles_core::games::{Move, Position, RuleSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    HumanWins,
    EngineWins,
    Quit,
}

fn engine_reply<P: Position>(engine: &Engine, position: &P, rules: RuleSet) -> Option<Move> {
    engine
        .best_moves(position, rules)
        .first()
        .copied()
        .or_else(|| position.legal_moves(rules).first().copied())
}

fn show<P: Position>(out: &mut impl Write, position: &P) -> io::Result<()> {
    writeln!(out, "board: {}", render_edges(position.marks()))
}

pub fn run<P: Position>(
    engine: &Engine,
    mut position: P,
    rules: RuleSet,
    engine_first: bool,
    mut input: impl BufRead,
    mut out: impl Write,
) -> io::Result<Outcome> {
    let mut human_to_move = !engine_first;
    let mut line = String::new();
    loop {
        show(&mut out, &position)?;
        if position.legal_moves(rules).is_empty() {
            let outcome = if human_to_move {
                writeln!(out, "you have no legal move; you lose")?;
                Outcome::EngineWins
            } else {
                writeln!(out, "engine has no legal move; engine loses")?;
                Outcome::HumanWins
            };
            return Ok(outcome);
        }
        if !human_to_move {
            let mv = engine_reply(engine, &position, rules).expect("a legal move exists");
            writeln!(out, "engine plays {mv}")?;
            position = position.apply_move(mv, rules).expect("engine move is legal");
            human_to_move = true;
            continue;
        }
        loop {
            write!(out, "your move> ")?;
            out.flush()?;
            line.clear();
            if input.read_line(&mut line)? == 0 || line.trim() == "quit" {
                writeln!(out)?;
                return Ok(Outcome::Quit);
            }
            let attempt = parse_move(&line)
                .map_err(|e| e.to_string())
                .and_then(|mv| position.apply_move(mv, rules).map_err(|e| e.to_string()));
            match attempt {
                Ok(next) => {
                    position = next;
                    break;
                }
                Err(reason) => writeln!(out, "illegal: {reason}")?,
            }
        }
        human_to_move = false;
    }
}
