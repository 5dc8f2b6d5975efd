//! Text serialization (`.ntw`) and DOT export.
//!
//! ```text
//! ntwfsm 1
//! arity 2
//! semiring tropical
//! state 0 initial 0
//! state 1 final 0
//! trans 0 1 3 a b
//! ```
//!
//! One item per line; lines starting with `#` are comments. `<eps>` spells ε.
//! Serialization is canonical: states ascending, transitions sorted by
//! (src, dst, label, weight), weights as shortest round-trip decimals
//! (`1`/`0` for boolean).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::machine::{LabelTuple, Machine, StateId, Token, Transition};
use crate::semiring::{Semiring, SemiringKind};

pub const FORMAT_VERSION: &str = "1";

/// Canonical text of `m`.
pub fn serialize<W: Semiring>(m: &Machine<W>) -> String {
    let m = m.canonical();
    let mut out = String::new();
    writeln!(out, "ntwfsm {FORMAT_VERSION}").unwrap();
    writeln!(out, "arity {}", m.arity()).unwrap();
    writeln!(out, "semiring {}", W::NAME).unwrap();
    for q in m.states() {
        write!(out, "state {q}").unwrap();
        if let Some(w) = m.initial_weights().get(&q) {
            write!(out, " initial {w}").unwrap();
        }
        if let Some(w) = m.final_weights().get(&q) {
            write!(out, " final {w}").unwrap();
        }
        out.push('\n');
    }
    for t in m.transitions() {
        write!(out, "trans {} {} {}", t.src, t.dst, t.weight).unwrap();
        for tok in t.label.tokens() {
            write!(out, " {tok}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// How strictly [`parse_with`] reads its input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseMode {
    /// The interchange format: full header, every state declared exactly once
    /// with ids `0..k`, transitions only between declared states.
    Strict,
    /// Source files for `compile`: the `ntwfsm` and `semiring` lines may be
    /// omitted, and states are implied by the largest id mentioned.
    Lenient,
}

/// Reads the `semiring` header line, if any, without parsing the rest.
pub fn peek_semiring(text: &str) -> Result<Option<SemiringKind>> {
    for (n, line) in items(text) {
        let mut words = line.split_whitespace();
        if words.next() == Some("semiring") {
            let name = words
                .next()
                .ok_or_else(|| parse_err(n, "missing semiring name"))?;
            return name
                .parse()
                .map(Some)
                .map_err(|e: Error| parse_err(n, &e.to_string()));
        }
    }
    Ok(None)
}

/// Parses the interchange format.
pub fn parse<W: Semiring>(text: &str) -> Result<Machine<W>> {
    parse_with(text, ParseMode::Strict)
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

/// Non-blank, non-comment lines with 1-based line numbers.
fn items(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_weight<W: Semiring>(line: usize, text: Option<&str>) -> Result<W> {
    let text = text.ok_or_else(|| parse_err(line, "missing weight"))?;
    W::parse_weight(text)
        .ok_or_else(|| parse_err(line, &format!("invalid {} weight {text:?}", W::NAME)))
}

fn parse_id(line: usize, what: &str, text: Option<&str>) -> Result<usize> {
    let text = text.ok_or_else(|| parse_err(line, &format!("missing {what}")))?;
    text.parse()
        .map_err(|_| parse_err(line, &format!("invalid {what} {text:?}")))
}

pub fn parse_with<W: Semiring>(text: &str, mode: ParseMode) -> Result<Machine<W>> {
    let strict = mode == ParseMode::Strict;
    let mut lines = items(text).peekable();
    let mut arity = None;
    let mut seen_semiring = false;
    let mut declared: BTreeMap<StateId, usize> = BTreeMap::new();
    let mut initial = BTreeMap::new();
    let mut finals = BTreeMap::new();
    let mut transitions = Vec::new();
    let mut trans_lines = Vec::new();
    let mut max_state: Option<StateId> = None;

    match lines.peek() {
        Some((n, l)) if l.starts_with("ntwfsm") => {
            let n = *n;
            let version = l.split_whitespace().nth(1);
            if version != Some(FORMAT_VERSION) {
                return Err(parse_err(
                    n,
                    &format!("unsupported format version {version:?}"),
                ));
            }
            lines.next();
        }
        Some((n, _)) if strict => return Err(parse_err(*n, "expected `ntwfsm 1` header")),
        None if strict => return Err(parse_err(1, "empty input")),
        _ => {}
    }

    for (n, line) in lines {
        let mut words = line.split_whitespace();
        let keyword = words.next().unwrap_or_default();
        match keyword {
            "arity" => {
                if arity.is_some() {
                    return Err(parse_err(n, "duplicate arity line"));
                }
                let a = parse_id(n, "arity", words.next())?;
                if a == 0 {
                    return Err(parse_err(n, "arity must be at least 1"));
                }
                arity = Some(a);
            }
            "semiring" => {
                let name = words
                    .next()
                    .ok_or_else(|| parse_err(n, "missing semiring name"))?;
                if name != W::NAME {
                    return Err(Error::SemiringMismatch {
                        expected: W::NAME.into(),
                        found: name.into(),
                    });
                }
                seen_semiring = true;
            }
            "state" => {
                let q = parse_id(n, "state id", words.next())?;
                if declared.insert(q, n).is_some() {
                    return Err(parse_err(n, &format!("state {q} declared twice")));
                }
                max_state = max_state.max(Some(q));
                while let Some(attr) = words.next() {
                    // a missing weight defaults to 1̄
                    let explicit = words
                        .clone()
                        .next()
                        .filter(|w| *w != "initial" && *w != "final");
                    let w: W = match explicit {
                        Some(text) => {
                            words.next();
                            parse_weight(n, Some(text))?
                        }
                        None => W::one(),
                    };
                    let target = match attr {
                        "initial" => &mut initial,
                        "final" => &mut finals,
                        other => {
                            return Err(parse_err(n, &format!("unknown state attribute {other:?}")))
                        }
                    };
                    if target.insert(q, w).is_some() {
                        return Err(parse_err(n, &format!("repeated {attr} weight")));
                    }
                }
            }
            "trans" => {
                let arity = arity.ok_or_else(|| parse_err(n, "transition before arity line"))?;
                let src = parse_id(n, "source state", words.next())?;
                let dst = parse_id(n, "target state", words.next())?;
                let weight: W = parse_weight(n, words.next())?;
                let tokens: Vec<Token> = words.map(Token::from_text).collect();
                if tokens.len() != arity {
                    return Err(parse_err(
                        n,
                        &format!("expected {arity} tokens, found {}", tokens.len()),
                    ));
                }
                max_state = max_state.max(Some(src)).max(Some(dst));
                transitions.push(Transition {
                    src,
                    dst,
                    label: LabelTuple(tokens),
                    weight,
                });
                trans_lines.push(n);
            }
            "ntwfsm" => return Err(parse_err(n, "header must be the first line")),
            other => return Err(parse_err(n, &format!("unknown item {other:?}"))),
        }
    }

    let arity = arity.ok_or_else(|| parse_err(1, "missing arity line"))?;
    let num_states = if strict {
        if !seen_semiring {
            return Err(parse_err(1, "missing semiring line"));
        }
        if let Some((&q, &line)) = declared
            .iter()
            .enumerate()
            .find(|(k, (q, _))| k != *q)
            .map(|(_, e)| e)
        {
            return Err(parse_err(
                line,
                &format!("state ids must be dense from 0; found {q}"),
            ));
        }
        for (t, &line) in transitions.iter().zip(&trans_lines) {
            for q in [t.src, t.dst] {
                if !declared.contains_key(&q) {
                    return Err(parse_err(
                        line,
                        &format!("transition references missing state {q}"),
                    ));
                }
            }
        }
        declared.len()
    } else {
        max_state.map_or(0, |q| q + 1)
    };
    Machine::from_parts_checked(arity, num_states, transitions, initial, finals)
}

/// Graphviz rendering: one node per state, one edge per transition labelled
/// `t1:…:tn/w`. Initial states get an entry arrow from an invisible point
/// node; final states are double circles labelled `q/ρ`.
pub fn to_dot<W: Semiring>(m: &Machine<W>) -> String {
    let m = m.canonical();
    let mut out = String::from("digraph ntwfsm {\n  rankdir=LR;\n");
    for q in m.states() {
        match m.final_weights().get(&q) {
            Some(rho) => writeln!(out, "  {q} [shape=doublecircle, label=\"{q}/{rho}\"];").unwrap(),
            None => writeln!(out, "  {q} [shape=circle, label=\"{q}\"];").unwrap(),
        }
    }
    for (q, lambda) in m.initial_weights() {
        writeln!(out, "  start{q} [shape=point];").unwrap();
        writeln!(out, "  start{q} -> {q} [label=\"{lambda}\"];").unwrap();
    }
    for t in m.transitions() {
        let label = dot_escape(&format!("{}/{}", t.label, t.weight));
        writeln!(out, "  {} -> {} [label=\"{label}\"];", t.src, t.dst).unwrap();
    }
    out.push_str("}\n");
    out
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
