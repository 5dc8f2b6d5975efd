//! Evaluating the weighted relation a machine denotes.
//!
//! `enumerate_tuples` and `tuple_weight` are two independent routes to the
//! same numbers: the first grows every path forward and aggregates by
//! `(state, tuple)`, the second walks only paths consistent with one given
//! tuple. Both count paths of at most `hop_limit` transitions.

use std::collections::{BTreeMap, HashMap};

use super::{Machine, StateId, StringTuple, Token};
use crate::error::{Error, Result};
use crate::semiring::Semiring;

/// Default cap on path expansions during enumeration.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// A finite weighted relation: n-tuples of strings mapped to non-zero weights.
#[derive(Clone, PartialEq, Debug)]
pub struct WeightedTupleSet<W> {
    arity: usize,
    entries: BTreeMap<StringTuple, W>,
}

impl<W: Semiring> WeightedTupleSet<W> {
    pub fn new(arity: usize) -> Self {
        WeightedTupleSet {
            arity,
            entries: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// ⊕-accumulates `w` into the entry for `tuple`; zero sums are removed.
    pub fn add(&mut self, tuple: StringTuple, w: W) {
        assert_eq!(tuple.len(), self.arity, "tuple arity");
        let sum = match self.entries.get(&tuple) {
            Some(old) => old.plus(&w),
            None => w,
        };
        if sum.is_zero() {
            self.entries.remove(&tuple);
        } else {
            self.entries.insert(tuple, sum);
        }
    }

    /// The weight of `tuple`, 0̄ when absent.
    pub fn get(&self, tuple: &[Vec<super::Symbol>]) -> W {
        self.entries.get(tuple).copied().unwrap_or_else(W::zero)
    }

    pub fn contains(&self, tuple: &[Vec<super::Symbol>]) -> bool {
        self.entries.contains_key(tuple)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&StringTuple, &W)> {
        self.entries.iter()
    }

    /// Keeps only entries satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&StringTuple) -> bool) -> Self {
        WeightedTupleSet {
            arity: self.arity,
            entries: self
                .entries
                .iter()
                .filter(|(t, _)| keep(t))
                .map(|(t, w)| (t.clone(), *w))
                .collect(),
        }
    }

    /// Same keys, and weights equal under [`Semiring::approx_eq`].
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.arity == other.arity
            && self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|((ta, wa), (tb, wb))| ta == tb && wa.approx_eq(wb))
    }

    /// Every entry of `self` is in `other` with an equal weight.
    pub fn is_weighted_subset_of(&self, other: &Self) -> bool {
        self.entries
            .iter()
            .all(|(t, w)| other.entries.get(t).is_some_and(|v| v.approx_eq(w)))
    }
}

impl<W: Semiring> FromIterator<(StringTuple, W)> for WeightedTupleSet<W> {
    /// Arity is taken from the first tuple; an empty iterator gives arity 0.
    fn from_iter<I: IntoIterator<Item = (StringTuple, W)>>(iter: I) -> Self {
        let mut set: Option<WeightedTupleSet<W>> = None;
        for (t, w) in iter {
            set.get_or_insert_with(|| WeightedTupleSet::new(t.len()))
                .add(t, w);
        }
        set.unwrap_or_else(|| WeightedTupleSet::new(0))
    }
}

impl<W: Semiring> Machine<W> {
    /// Every tuple readable along an accepting path of at most `hop_limit`
    /// transitions, with its ⊕-aggregated weight.
    pub fn enumerate_tuples(&self, hop_limit: usize) -> Result<WeightedTupleSet<W>> {
        self.enumerate_tuples_with_budget(hop_limit, DEFAULT_BUDGET)
    }

    pub fn enumerate_tuples_with_budget(
        &self,
        hop_limit: usize,
        budget: usize,
    ) -> Result<WeightedTupleSet<W>> {
        let out_index = self.out_index();
        let mut result = WeightedTupleSet::new(self.arity());
        let mut frontier: HashMap<(StateId, StringTuple), W> = HashMap::new();
        for (&q, &w) in self.initial_weights() {
            frontier.insert((q, vec![Vec::new(); self.arity()]), w);
        }
        let mut work = 0usize;
        for hop in 0..=hop_limit {
            for ((q, tuple), w) in &frontier {
                let rho = self.final_weight(*q);
                if !rho.is_zero() {
                    result.add(tuple.clone(), w.times(&rho));
                }
            }
            if hop == hop_limit || frontier.is_empty() {
                break;
            }
            let mut next: HashMap<(StateId, StringTuple), W> = HashMap::new();
            for ((q, tuple), w) in &frontier {
                for &k in &out_index[*q] {
                    work += 1;
                    if work > budget {
                        return Err(Error::BudgetExceeded { budget });
                    }
                    let t = &self.transitions()[k];
                    let mut extended = tuple.clone();
                    for (tape, tok) in extended.iter_mut().zip(t.label.tokens()) {
                        if let Token::Sym(s) = tok {
                            tape.push(s.clone());
                        }
                    }
                    let w = w.times(&t.weight);
                    next.entry((t.dst, extended))
                        .and_modify(|acc| *acc = acc.plus(&w))
                        .or_insert(w);
                }
            }
            frontier = next;
        }
        Ok(result)
    }

    /// ⊕-sum over accepting paths of at most `hop_limit` transitions that
    /// read exactly `tuple`.
    pub fn tuple_weight(&self, tuple: &[Vec<super::Symbol>], hop_limit: usize) -> Result<W> {
        if tuple.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: tuple.len(),
            });
        }
        let out_index = self.out_index();
        let mut total = W::zero();
        let mut layer: HashMap<(StateId, Vec<usize>), W> = HashMap::new();
        for (&q, &w) in self.initial_weights() {
            layer.insert((q, vec![0; self.arity()]), w);
        }
        let done = |pos: &[usize]| pos.iter().zip(tuple).all(|(p, t)| *p == t.len());
        for hop in 0..=hop_limit {
            for ((q, pos), w) in &layer {
                if done(pos) {
                    total = total.plus(&w.times(&self.final_weight(*q)));
                }
            }
            if hop == hop_limit || layer.is_empty() {
                break;
            }
            let mut next: HashMap<(StateId, Vec<usize>), W> = HashMap::new();
            for ((q, pos), w) in &layer {
                'arcs: for &k in &out_index[*q] {
                    let t = &self.transitions()[k];
                    let mut advanced = pos.clone();
                    for (tape, tok) in t.label.tokens().iter().enumerate() {
                        if let Token::Sym(s) = tok {
                            match tuple[tape].get(pos[tape]) {
                                Some(expected) if expected == s => advanced[tape] += 1,
                                _ => continue 'arcs,
                            }
                        }
                    }
                    let w = w.times(&t.weight);
                    next.entry((t.dst, advanced))
                        .and_modify(|acc| *acc = acc.plus(&w))
                        .or_insert(w);
                }
            }
            layer = next;
        }
        Ok(total)
    }
}
