//! The n-tape weighted finite-state machine.
//!
//! A [`Machine`] over a semiring `W` has a fixed arity `n`, dense state ids
//! `0..num_states`, a multiset of transitions labelled with n-tuples of
//! [`Token`]s, and sparse initial/final weight maps. Labels are kept in normal
//! form: every component is one symbol or ε. Zero weights never appear on
//! transitions or in the initial/final maps.

mod eval;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::semiring::Semiring;

pub use eval::{WeightedTupleSet, DEFAULT_BUDGET};

pub type StateId = usize;

/// An atomic symbol. Any non-empty string without whitespace other than `<eps>`.
pub type Symbol = Arc<str>;

/// The contents of one tape: a sequence of symbols.
pub type Tape = Vec<Symbol>;

/// An n-tuple of tape strings.
pub type StringTuple = Vec<Tape>;

/// Text spelling of ε in files and labels.
pub const EPSILON: &str = "<eps>";

/// One component of a label: a symbol or ε.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Token {
    Eps,
    Sym(Symbol),
}

impl Token {
    pub fn sym(s: &str) -> Token {
        Token::Sym(Arc::from(s))
    }

    /// Parses `<eps>` as ε and anything else as a symbol.
    pub fn from_text(s: &str) -> Token {
        if s == EPSILON {
            Token::Eps
        } else {
            Token::sym(s)
        }
    }

    pub fn is_eps(&self) -> bool {
        matches!(self, Token::Eps)
    }

    pub fn symbol(&self) -> Option<&Symbol> {
        match self {
            Token::Eps => None,
            Token::Sym(s) => Some(s),
        }
    }

    /// 0 for ε, 1 for a symbol.
    pub fn len(&self) -> usize {
        usize::from(!self.is_eps())
    }

    pub fn is_empty(&self) -> bool {
        self.is_eps()
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Eps => f.write_str(EPSILON),
            Token::Sym(s) => f.write_str(s),
        }
    }
}

/// A transition label: one token per tape.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LabelTuple(pub Vec<Token>);

impl LabelTuple {
    pub fn new(tokens: Vec<Token>) -> Self {
        LabelTuple(tokens)
    }

    /// Builds a label from text tokens (`<eps>` for ε).
    pub fn from_texts(tokens: &[&str]) -> Self {
        LabelTuple(tokens.iter().map(|t| Token::from_text(t)).collect())
    }

    pub fn epsilon(arity: usize) -> Self {
        LabelTuple(vec![Token::Eps; arity])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn tokens(&self) -> &[Token] {
        &self.0
    }

    /// True when every component is ε.
    pub fn is_epsilon(&self) -> bool {
        self.0.iter().all(Token::is_eps)
    }

    /// Token on a 0-based tape.
    pub fn get(&self, tape: usize) -> &Token {
        &self.0[tape]
    }
}

impl fmt::Display for LabelTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(":")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Transition<W> {
    pub src: StateId,
    pub dst: StateId,
    pub label: LabelTuple,
    pub weight: W,
}

/// A breach of a machine invariant, as reported by [`Machine::validate`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    MissingState {
        transition: usize,
        state: StateId,
    },
    LabelArity {
        transition: usize,
        expected: usize,
        found: usize,
    },
    ZeroWeightTransition {
        transition: usize,
    },
    InvalidSymbol {
        transition: usize,
        symbol: String,
    },
    InitialOutOfRange {
        state: StateId,
    },
    FinalOutOfRange {
        state: StateId,
    },
    ZeroInitial {
        state: StateId,
    },
    ZeroFinal {
        state: StateId,
    },
    ZeroArity,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingState { transition, state } => {
                write!(
                    f,
                    "transition {transition} references missing state {state}"
                )
            }
            Violation::LabelArity {
                transition,
                expected,
                found,
            } => write!(
                f,
                "transition {transition} has a label of arity {found}, machine arity is {expected}"
            ),
            Violation::ZeroWeightTransition { transition } => {
                write!(f, "transition {transition} has zero weight")
            }
            Violation::InvalidSymbol { transition, symbol } => {
                write!(
                    f,
                    "transition {transition} carries invalid symbol {symbol:?}"
                )
            }
            Violation::InitialOutOfRange { state } => {
                write!(f, "initial weight on missing state {state}")
            }
            Violation::FinalOutOfRange { state } => {
                write!(f, "final weight on missing state {state}")
            }
            Violation::ZeroInitial { state } => {
                write!(f, "explicit zero initial weight on state {state}")
            }
            Violation::ZeroFinal { state } => {
                write!(f, "explicit zero final weight on state {state}")
            }
            Violation::ZeroArity => f.write_str("arity must be at least 1"),
        }
    }
}

fn valid_symbol(s: &str) -> bool {
    !s.is_empty() && s != EPSILON && !s.chars().any(char::is_whitespace)
}

/// A weighted n-tape finite-state machine over the semiring `W`.
#[derive(Clone, PartialEq, Debug)]
pub struct Machine<W> {
    arity: usize,
    num_states: usize,
    transitions: Vec<Transition<W>>,
    initial: BTreeMap<StateId, W>,
    finals: BTreeMap<StateId, W>,
}

impl<W: Semiring> Machine<W> {
    /// An empty machine (no states) of the given arity.
    pub fn new(arity: usize) -> Self {
        assert!(arity >= 1, "arity must be at least 1");
        Machine {
            arity,
            num_states: 0,
            transitions: Vec::new(),
            initial: BTreeMap::new(),
            finals: BTreeMap::new(),
        }
    }

    /// Assembles a machine without checking any invariant. Pair with
    /// [`Machine::validate`] or use [`Machine::from_parts_checked`].
    pub fn from_parts(
        arity: usize,
        num_states: usize,
        transitions: Vec<Transition<W>>,
        initial: BTreeMap<StateId, W>,
        finals: BTreeMap<StateId, W>,
    ) -> Self {
        Machine {
            arity,
            num_states,
            transitions,
            initial,
            finals,
        }
    }

    /// Like [`Machine::from_parts`], normalising zero weights away and then
    /// rejecting any remaining violation.
    pub fn from_parts_checked(
        arity: usize,
        num_states: usize,
        transitions: Vec<Transition<W>>,
        initial: BTreeMap<StateId, W>,
        finals: BTreeMap<StateId, W>,
    ) -> Result<Self> {
        let m = Machine {
            arity,
            num_states,
            transitions: transitions
                .into_iter()
                .filter(|t| !t.weight.is_zero())
                .collect(),
            initial: initial.into_iter().filter(|(_, w)| !w.is_zero()).collect(),
            finals: finals.into_iter().filter(|(_, w)| !w.is_zero()).collect(),
        };
        let violations = m.validate();
        if violations.is_empty() {
            Ok(m)
        } else {
            Err(Error::InvalidMachine(violations))
        }
    }

    /// A machine denoting the finite relation given as `(tuple, weight)` pairs.
    pub fn from_tuples<I>(arity: usize, tuples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (StringTuple, W)>,
    {
        let mut m = Machine::new(arity);
        let start = m.add_state();
        m.set_initial(start, W::one());
        for (tuple, w) in tuples {
            if tuple.iter().all(Vec::is_empty) {
                if tuple.len() != arity {
                    return Err(Error::ArityMismatch {
                        expected: arity,
                        found: tuple.len(),
                    });
                }
                let rho = m.final_weight(start).plus(&w);
                m.set_final(start, rho);
                continue;
            }
            let end = m.add_state();
            m.set_final(end, W::one());
            m.add_string_transition(start, end, &tuple, w)?;
        }
        Ok(m)
    }

    /// Convenience for tests and demos: each tape string is split into one
    /// symbol per character.
    pub fn from_char_tuples(arity: usize, tuples: &[(&[&str], W)]) -> Result<Self> {
        Machine::from_tuples(
            arity,
            tuples
                .iter()
                .map(|(t, w)| (t.iter().map(|s| chars(s)).collect(), *w)),
        )
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn is_empty(&self) -> bool {
        self.num_states == 0
    }

    pub fn states(&self) -> std::ops::Range<StateId> {
        0..self.num_states
    }

    pub fn transitions(&self) -> &[Transition<W>] {
        &self.transitions
    }

    pub fn initial_weights(&self) -> &BTreeMap<StateId, W> {
        &self.initial
    }

    pub fn final_weights(&self) -> &BTreeMap<StateId, W> {
        &self.finals
    }

    pub fn initial_weight(&self, q: StateId) -> W {
        self.initial.get(&q).copied().unwrap_or_else(W::zero)
    }

    pub fn final_weight(&self, q: StateId) -> W {
        self.finals.get(&q).copied().unwrap_or_else(W::zero)
    }

    /// The symbols occurring on any label.
    pub fn alphabet(&self) -> BTreeSet<Symbol> {
        self.transitions
            .iter()
            .flat_map(|t| t.label.tokens().iter().filter_map(Token::symbol).cloned())
            .collect()
    }

    pub fn add_state(&mut self) -> StateId {
        self.num_states += 1;
        self.num_states - 1
    }

    pub fn add_states(&mut self, n: usize) -> std::ops::Range<StateId> {
        let first = self.num_states;
        self.num_states += n;
        first..self.num_states
    }

    /// Sets λ(q); a zero weight removes the entry.
    pub fn set_initial(&mut self, q: StateId, w: W) {
        assert!(q < self.num_states, "state {q} out of range");
        if w.is_zero() {
            self.initial.remove(&q);
        } else {
            self.initial.insert(q, w);
        }
    }

    /// Sets ρ(q); a zero weight removes the entry.
    pub fn set_final(&mut self, q: StateId, w: W) {
        assert!(q < self.num_states, "state {q} out of range");
        if w.is_zero() {
            self.finals.remove(&q);
        } else {
            self.finals.insert(q, w);
        }
    }

    /// Adds a normal-form transition. Zero-weight transitions are dropped.
    pub fn add_transition(
        &mut self,
        src: StateId,
        dst: StateId,
        label: LabelTuple,
        weight: W,
    ) -> Result<()> {
        if label.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: label.arity(),
            });
        }
        for q in [src, dst] {
            if q >= self.num_states {
                return Err(Error::MissingState {
                    state: q,
                    num_states: self.num_states,
                });
            }
        }
        if let Some(bad) = label
            .tokens()
            .iter()
            .filter_map(Token::symbol)
            .find(|s| !valid_symbol(s))
        {
            return Err(Error::InvalidArgument(format!("invalid symbol {bad:?}")));
        }
        if !weight.is_zero() {
            self.transitions.push(Transition {
                src,
                dst,
                label,
                weight,
            });
        }
        Ok(())
    }

    /// Adds a path from `src` to `dst` reading a whole string on each tape.
    ///
    /// Multi-symbol components are expanded into a chain of normal-form
    /// transitions through fresh states; the weight sits on the first link.
    /// An all-empty tuple becomes a single ε-tuple transition.
    pub fn add_string_transition(
        &mut self,
        src: StateId,
        dst: StateId,
        tapes: &[Tape],
        weight: W,
    ) -> Result<()> {
        if tapes.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: tapes.len(),
            });
        }
        if weight.is_zero() {
            return Ok(());
        }
        let len = tapes.iter().map(Vec::len).max().unwrap_or(0).max(1);
        let mut from = src;
        for k in 0..len {
            let to = if k + 1 == len { dst } else { self.add_state() };
            let label = LabelTuple(
                tapes
                    .iter()
                    .map(|tape| tape.get(k).map_or(Token::Eps, |s| Token::Sym(s.clone())))
                    .collect(),
            );
            let w = if k == 0 { weight } else { W::one() };
            self.add_transition(from, to, label, w)?;
            from = to;
        }
        Ok(())
    }

    /// Every invariant breach; empty for a well-formed machine.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.arity == 0 {
            out.push(Violation::ZeroArity);
        }
        for (k, t) in self.transitions.iter().enumerate() {
            for q in [t.src, t.dst] {
                if q >= self.num_states {
                    out.push(Violation::MissingState {
                        transition: k,
                        state: q,
                    });
                }
            }
            if t.label.arity() != self.arity {
                out.push(Violation::LabelArity {
                    transition: k,
                    expected: self.arity,
                    found: t.label.arity(),
                });
            }
            if t.weight.is_zero() {
                out.push(Violation::ZeroWeightTransition { transition: k });
            }
            for s in t.label.tokens().iter().filter_map(Token::symbol) {
                if !valid_symbol(s) {
                    out.push(Violation::InvalidSymbol {
                        transition: k,
                        symbol: s.to_string(),
                    });
                }
            }
        }
        for (&q, w) in &self.initial {
            if q >= self.num_states {
                out.push(Violation::InitialOutOfRange { state: q });
            }
            if w.is_zero() {
                out.push(Violation::ZeroInitial { state: q });
            }
        }
        for (&q, w) in &self.finals {
            if q >= self.num_states {
                out.push(Violation::FinalOutOfRange { state: q });
            }
            if w.is_zero() {
                out.push(Violation::ZeroFinal { state: q });
            }
        }
        out
    }

    /// Outgoing transition indices per state.
    pub fn out_index(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_states];
        for (k, t) in self.transitions.iter().enumerate() {
            out[t.src].push(k);
        }
        out
    }

    /// Removes every state not on a path from an initial to a final state.
    pub fn trim(&self) -> Machine<W> {
        self.trim_with_map().0
    }

    /// [`Machine::trim`] plus the old-to-new state mapping.
    pub(crate) fn trim_with_map(&self) -> (Machine<W>, Vec<Option<StateId>>) {
        let n = self.num_states;
        let mut fwd = vec![Vec::new(); n];
        let mut bwd = vec![Vec::new(); n];
        for t in &self.transitions {
            fwd[t.src].push(t.dst);
            bwd[t.dst].push(t.src);
        }
        let reach = |seeds: Vec<StateId>, adj: &[Vec<StateId>]| {
            let mut seen = vec![false; n];
            let mut stack = seeds;
            for &q in &stack {
                seen[q] = true;
            }
            while let Some(q) = stack.pop() {
                for &r in &adj[q] {
                    if !seen[r] {
                        seen[r] = true;
                        stack.push(r);
                    }
                }
            }
            seen
        };
        let acc = reach(self.initial.keys().copied().collect(), &fwd);
        let coacc = reach(self.finals.keys().copied().collect(), &bwd);

        let mut map = vec![None; n];
        let mut next = 0;
        for q in 0..n {
            if acc[q] && coacc[q] {
                map[q] = Some(next);
                next += 1;
            }
        }
        let transitions = self
            .transitions
            .iter()
            .filter_map(|t| {
                Some(Transition {
                    src: map[t.src]?,
                    dst: map[t.dst]?,
                    label: t.label.clone(),
                    weight: t.weight,
                })
            })
            .collect();
        let remap =
            |m: &BTreeMap<StateId, W>| m.iter().filter_map(|(q, w)| Some((map[*q]?, *w))).collect();
        let trimmed = Machine {
            arity: self.arity,
            num_states: next,
            transitions,
            initial: remap(&self.initial),
            finals: remap(&self.finals),
        };
        (trimmed, map)
    }

    /// Same machine with transitions sorted by (src, dst, label, weight).
    pub fn canonical(&self) -> Machine<W> {
        let mut m = self.clone();
        m.transitions.sort_by(|a, b| {
            (a.src, a.dst, &a.label)
                .cmp(&(b.src, b.dst, &b.label))
                .then_with(|| a.weight.sort_cmp(&b.weight))
        });
        m
    }

    /// Equality up to transition order.
    pub fn same_structure(&self, other: &Machine<W>) -> bool {
        self.canonical() == other.canonical()
    }

    /// True when some label is ε on every tape.
    pub fn has_epsilon_tuples(&self) -> bool {
        self.transitions.iter().any(|t| t.label.is_epsilon())
    }

    /// Checks that `other` has this machine's arity.
    pub(crate) fn check_arity(&self, other: &Machine<W>) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(())
    }

    /// Appends a copy of `other`'s states and transitions, returning the
    /// state offset. Initial/final weights are not copied.
    pub(crate) fn absorb(
        &mut self,
        other: &Machine<W>,
        relabel: impl Fn(&LabelTuple) -> LabelTuple,
    ) -> StateId {
        let offset = self.num_states;
        self.num_states += other.num_states;
        self.transitions
            .extend(other.transitions.iter().map(|t| Transition {
                src: t.src + offset,
                dst: t.dst + offset,
                label: relabel(&t.label),
                weight: t.weight,
            }));
        offset
    }

    pub(crate) fn push_transition(&mut self, t: Transition<W>) {
        debug_assert_eq!(t.label.arity(), self.arity);
        if !t.weight.is_zero() {
            self.transitions.push(t);
        }
    }

    pub(crate) fn map_labels(
        &self,
        arity: usize,
        relabel: impl Fn(&LabelTuple) -> LabelTuple,
    ) -> Machine<W> {
        Machine {
            arity,
            num_states: self.num_states,
            transitions: self
                .transitions
                .iter()
                .map(|t| Transition {
                    label: relabel(&t.label),
                    ..t.clone()
                })
                .collect(),
            initial: self.initial.clone(),
            finals: self.finals.clone(),
        }
    }
}

/// Splits a string into one symbol per character.
pub fn chars(s: &str) -> Tape {
    s.chars().map(|c| Symbol::from(c.to_string())).collect()
}

/// Concatenates the symbols of a tape.
pub fn tape_string(tape: &[Symbol]) -> String {
    tape.concat()
}
