//! One adapter per subcommand. Each reads its operands, makes a single
//! library call and renders the result; nothing here transforms machines.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use ntwfsm::io::{self, ParseMode};
use ntwfsm::{
    AutoIntersectionConfig, AutoIntersectionResult, BooleanWeight, Error, LogWeight, Machine,
    RealWeight, Semiring, SemiringKind, StringTuple, TropicalWeight, WeightedTupleSet,
};

use crate::args::Command;

/// What to print and which status to exit with.
pub struct Outcome {
    pub stdout: String,
    pub status: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, status: 0 }
    }
}

/// Status for a possibly incomplete result under `--strict`.
pub const EXIT_INCOMPLETE: u8 = 2;

pub fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).context("reading standard input")
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

macro_rules! dispatch {
    ($kind:expr, $f:ident($($arg:expr),*)) => {
        match $kind {
            SemiringKind::Boolean => $f::<BooleanWeight>($($arg),*),
            SemiringKind::Tropical => $f::<TropicalWeight>($($arg),*),
            SemiringKind::Real => $f::<RealWeight>($($arg),*),
            SemiringKind::Log => $f::<LogWeight>($($arg),*),
        }
    };
}

pub fn run(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Compile {
            input,
            semiring,
            tuples,
            arity,
        } => {
            let text = read_input(input)?;
            let declared = if *tuples {
                None
            } else {
                io::peek_semiring(&text)?
            };
            let kind = match (semiring, declared) {
                (Some(flag), Some(header)) if *flag != header => {
                    bail!(
                        "--semiring {} disagrees with the file header ({})",
                        flag.name(),
                        header.name()
                    )
                }
                (flag, header) => flag.or(header).unwrap_or_default(),
            };
            if *tuples {
                dispatch!(kind, compile_tuples(&text, *arity))
            } else {
                dispatch!(kind, compile(&text))
            }
        }
        Command::Align { strings, costs } => {
            let refs: Vec<&str> = strings.iter().map(String::as_str).collect();
            let alignment = ntwfsm::align(&refs, &costs.model())?;
            let mut out = format!("{}\n", TropicalWeight(alignment.weight));
            for row in alignment.rows(strings.len(), "-") {
                writeln!(out, "{row}")?;
            }
            Ok(Outcome::ok(out))
        }
        Command::Cognates {
            list1,
            list2,
            top,
            costs,
        } => {
            let words = |p: &Path| -> Result<Vec<String>> {
                Ok(read_input(p)?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty())
                    .map(String::from)
                    .collect())
            };
            let ranked =
                ntwfsm::cognate_pairs(&words(list1)?, &words(list2)?, &costs.model(), *top)?;
            let mut out = String::new();
            for p in ranked {
                writeln!(out, "{}\t{}\t{}", p.left, p.right, TropicalWeight(p.weight))?;
            }
            Ok(Outcome::ok(out))
        }
        other => {
            let first = match other {
                Command::Print { input }
                | Command::Dot { input }
                | Command::Closure { input }
                | Command::Project { input, .. }
                | Command::Coproject { input, .. }
                | Command::Rmeps { input }
                | Command::Autointersect { input, .. }
                | Command::Bestpath { input }
                | Command::Enumerate { input, .. } => input,
                Command::Union { a, .. }
                | Command::Concat { a, .. }
                | Command::Cross { a, .. }
                | Command::Join { a, .. } => a,
                Command::Compose { t1, .. } => t1,
                Command::Cascade { transducers } => &transducers[0],
                Command::Compile { .. } | Command::Align { .. } | Command::Cognates { .. } => {
                    unreachable!()
                }
            };
            // Read the first operand once so `-` works for it.
            let text = read_input(first)?;
            let kind = io::peek_semiring(&text)?.unwrap_or_default();
            dispatch!(kind, machine_command(other, text))
        }
    }
}

fn compile<W: Semiring>(text: &str) -> Result<Outcome> {
    let m: Machine<W> = io::parse_with(text, ParseMode::Lenient)?;
    Ok(Outcome::ok(io::serialize(&m)))
}

fn compile_tuples<W: Semiring>(text: &str, arity: Option<usize>) -> Result<Outcome> {
    let mut rows = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t');
        let w = fields.next().unwrap_or_default().trim();
        let w = W::parse_weight(w)
            .with_context(|| format!("line {}: invalid {} weight {w:?}", n + 1, W::NAME))?;
        let tuple: StringTuple = fields.map(ntwfsm::chars).collect();
        rows.push((n + 1, tuple, w));
    }
    let arity = match arity.or_else(|| rows.first().map(|r| r.1.len())) {
        Some(a) => a,
        None => bail!("no tuples and no --arity given"),
    };
    if let Some((n, t, _)) = rows.iter().find(|r| r.1.len() != arity) {
        bail!("line {n}: expected {arity} tapes, found {}", t.len());
    }
    let m = Machine::from_tuples(arity, rows.into_iter().map(|(_, t, w)| (t, w)))?;
    Ok(Outcome::ok(io::serialize(&m)))
}

fn load<W: Semiring>(path: &Path) -> Result<Machine<W>> {
    io::parse(&read_input(path)?).with_context(|| format!("in {}", path.display()))
}

fn with_header<W: Semiring>(complete: bool, m: &Machine<W>) -> String {
    format!("# complete {complete}\n{}", io::serialize(m))
}

fn flagged<W: Semiring>(r: &AutoIntersectionResult<W>, strict: bool) -> Outcome {
    let status = if strict && !r.complete {
        EXIT_INCOMPLETE
    } else {
        0
    };
    Outcome {
        stdout: with_header(r.complete, &r.machine),
        status,
    }
}

/// `WEIGHT<TAB>TAPE1<TAB>…<TAB>TAPEn` for each entry, in tuple order.
pub fn tuple_rows<W: Semiring>(ts: &WeightedTupleSet<W>) -> String {
    let mut out = String::new();
    for (t, w) in ts.iter() {
        out.push_str(&w.to_string());
        for tape in t {
            out.push('\t');
            out.push_str(&ntwfsm::tape_string(tape));
        }
        out.push('\n');
    }
    out
}

fn machine_command<W: Semiring>(cmd: &Command, first: String) -> Result<Outcome> {
    let a: Machine<W> = io::parse(&first).context("in first operand")?;
    let text = |m: Machine<W>| Ok(Outcome::ok(io::serialize(&m)));
    match cmd {
        Command::Print { .. } => text(a),
        Command::Dot { .. } => Ok(Outcome::ok(io::to_dot(&a))),
        Command::Union { b, .. } => text(ntwfsm::union(&a, &load(b)?)?),
        Command::Concat { b, .. } => text(ntwfsm::concat(&a, &load(b)?)?),
        Command::Closure { .. } => text(ntwfsm::closure(&a)?),
        Command::Cross { b, .. } => text(ntwfsm::cross_product(&a, &load(b)?)?),
        Command::Project { tapes, .. } => text(ntwfsm::project(&a, tapes)?),
        Command::Coproject { tapes, .. } => text(ntwfsm::coproject(&a, tapes)?),
        Command::Rmeps { .. } => text(ntwfsm::remove_epsilon_tuples(&a)?),
        Command::Autointersect {
            tape_i,
            tape_j,
            delta_max,
            strict,
            ..
        } => {
            let cfg = AutoIntersectionConfig {
                delta_max: *delta_max,
                ..Default::default()
            };
            Ok(flagged(
                &ntwfsm::auto_intersect(&a, *tape_i, *tape_j, &cfg)?,
                strict.strict,
            ))
        }
        Command::Join {
            b,
            pairs,
            direct,
            via_sigma,
            strict,
            ..
        } => {
            let b = load(b)?;
            if *via_sigma {
                return Ok(flagged(
                    &ntwfsm::join_via_sigma(&a, pairs, &b)?,
                    strict.strict,
                ));
            }
            match ntwfsm::join_direct(&a, pairs, &b) {
                Ok(m) => Ok(Outcome::ok(with_header(true, &m))),
                Err(Error::JoinGuard(_)) if !direct => Ok(flagged(
                    &ntwfsm::join_via_sigma(&a, pairs, &b)?,
                    strict.strict,
                )),
                Err(e) => Err(e.into()),
            }
        }
        Command::Compose {
            t2,
            keep_intermediate,
            ..
        } => text(ntwfsm::compose(&a, &load(t2)?, *keep_intermediate)?),
        Command::Bestpath { .. } => {
            let Some(p) = ntwfsm::best_path(&a)? else {
                return Ok(Outcome::ok(String::new()));
            };
            let mut row = WeightedTupleSet::new(a.arity());
            row.add(p.tuple(a.arity()), p.weight);
            Ok(Outcome::ok(tuple_rows(&row)))
        }
        Command::Enumerate {
            hop_limit, budget, ..
        } => Ok(Outcome::ok(tuple_rows(
            &a.enumerate_tuples_with_budget(*hop_limit, *budget)?,
        ))),
        Command::Cascade { transducers } => {
            let mut all = vec![a];
            for p in &transducers[1..] {
                all.push(load(p)?);
            }
            text(ntwfsm::cascade_with_intermediates(&all)?)
        }
        Command::Compile { .. } | Command::Align { .. } | Command::Cognates { .. } => {
            unreachable!()
        }
    }
}
