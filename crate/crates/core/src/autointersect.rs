//! Auto-intersection σ_{i,j}: restricting a relation to the tuples whose
//! tapes `i` and `j` are equal.
//!
//! States of the result pair a state of the operand with the *leftover*: the
//! part of one tape's output that the other tape has not matched yet. After
//! stripping the common prefix at most one side can be non-empty; if both
//! are, the tapes have diverged and the branch is dropped. A leftover longer
//! than the delay bound is also dropped, and that is the only way the result
//! can miss tuples, so any such discard clears the `complete` flag.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::machine::{Machine, StateId, Symbol, Token, Transition, WeightedTupleSet};
use crate::semiring::Semiring;

/// A state of the auto-intersection construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LeftoverState {
    pub base: StateId,
    /// Output of tape i not yet matched on tape j.
    pub residual_i: Vec<Symbol>,
    /// Output of tape j not yet matched on tape i.
    pub residual_j: Vec<Symbol>,
}

impl LeftoverState {
    pub fn delay(&self) -> usize {
        self.residual_i.len() + self.residual_j.len()
    }
}

/// What to do when a leftover exceeds the bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FlagPolicy {
    /// Any discard clears `complete`, even on branches that could never
    /// reach a final state.
    #[default]
    FlagOnAnyBoundDiscard,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AutoIntersectionConfig {
    /// Delay bound; [`default_delta_max`] when `None`.
    pub delta_max: Option<usize>,
    pub flag_policy: FlagPolicy,
}

impl AutoIntersectionConfig {
    pub fn with_delta_max(delta_max: usize) -> Self {
        AutoIntersectionConfig {
            delta_max: Some(delta_max),
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug)]
pub struct AutoIntersectionResult<W> {
    pub machine: Machine<W>,
    /// When true, `machine` denotes exactly σ_{i,j} of the operand.
    pub complete: bool,
    /// The bound that was applied.
    pub delta_max: usize,
    /// The leftover state behind each state of `machine`, by state id. Empty
    /// for results of a join, whose states no longer correspond to leftovers.
    pub leftovers: Vec<LeftoverState>,
}

fn check_pair(arity: usize, i: usize, j: usize) -> Result<()> {
    for index in [i, j] {
        if index == 0 || index > arity {
            return Err(Error::TapeIndex { index, arity });
        }
    }
    if i == j {
        return Err(Error::SameTape(i));
    }
    Ok(())
}

/// `|label[i]| − |label[j]|` for 1-based tapes `i` and `j`.
pub fn transition_delay<W: Semiring>(t: &Transition<W>, i: usize, j: usize) -> Result<i64> {
    check_pair(t.label.arity(), i, j)?;
    Ok(t.label.get(i - 1).len() as i64 - t.label.get(j - 1).len() as i64)
}

/// `(|Q| + 1) · d_max`, where `d_max` is the largest absolute transition delay.
pub fn default_delta_max<W: Semiring>(a: &Machine<W>, i: usize, j: usize) -> Result<usize> {
    check_pair(a.arity(), i, j)?;
    let mut d_max = 0;
    for t in a.transitions() {
        d_max = d_max.max(transition_delay(t, i, j)?.unsigned_abs() as usize);
    }
    Ok((a.num_states() + 1) * d_max)
}

/// Computes σ_{i,j}(a) with tapes numbered from 1.
///
/// The operand is trimmed first and the default bound is taken on the
/// trimmed machine. Output labels and weights are copied from the operand, so
/// tapes `i` and `j` both survive; drop one with
/// [`coproject`](crate::ops::coproject).
pub fn auto_intersect<W: Semiring>(
    a: &Machine<W>,
    i: usize,
    j: usize,
    cfg: &AutoIntersectionConfig,
) -> Result<AutoIntersectionResult<W>> {
    check_pair(a.arity(), i, j)?;
    let a = a.trim();
    let delta_max = match cfg.delta_max {
        Some(d) => d,
        None => default_delta_max(&a, i, j)?,
    };
    let (ti, tj) = (i - 1, j - 1);
    let out_index = a.out_index();

    let mut out = Machine::new(a.arity());
    let mut ids: HashMap<LeftoverState, StateId> = HashMap::new();
    let mut leftovers: Vec<LeftoverState> = Vec::new();
    let mut queue = VecDeque::new();
    let mut complete = true;

    let mut intern = |state: LeftoverState,
                      out: &mut Machine<W>,
                      queue: &mut VecDeque<StateId>,
                      leftovers: &mut Vec<LeftoverState>| {
        *ids.entry(state.clone()).or_insert_with(|| {
            let id = out.add_state();
            leftovers.push(state);
            queue.push_back(id);
            id
        })
    };

    for (&q, &w) in a.initial_weights() {
        let start = LeftoverState {
            base: q,
            residual_i: Vec::new(),
            residual_j: Vec::new(),
        };
        let id = intern(start, &mut out, &mut queue, &mut leftovers);
        out.set_initial(id, w);
    }

    while let Some(id) = queue.pop_front() {
        let state = leftovers[id].clone();
        if state.delay() == 0 {
            out.set_final(id, a.final_weight(state.base));
        }
        for &k in &out_index[state.base] {
            let t = &a.transitions()[k];
            let mut u = state.residual_i.clone();
            let mut v = state.residual_j.clone();
            if let Token::Sym(s) = t.label.get(ti) {
                u.push(s.clone());
            }
            if let Token::Sym(s) = t.label.get(tj) {
                v.push(s.clone());
            }
            let common = u.iter().zip(&v).take_while(|(x, y)| x == y).count();
            u.drain(..common);
            v.drain(..common);
            if !u.is_empty() && !v.is_empty() {
                continue;
            }
            if u.len() + v.len() > delta_max {
                complete = false;
                continue;
            }
            let next = LeftoverState {
                base: t.dst,
                residual_i: u,
                residual_j: v,
            };
            let dst = intern(next, &mut out, &mut queue, &mut leftovers);
            out.add_transition(id, dst, t.label.clone(), t.weight)?;
        }
    }

    let (machine, map) = out.trim_with_map();
    let mut kept = vec![None; machine.num_states()];
    for (old, new) in map.into_iter().enumerate() {
        if let Some(new) = new {
            kept[new] = Some(leftovers[old].clone());
        }
    }
    Ok(AutoIntersectionResult {
        machine,
        complete,
        delta_max,
        leftovers: kept
            .into_iter()
            .map(|s| s.expect("every kept state has a leftover"))
            .collect(),
    })
}

/// Relation-level σ_{i,j}: the entries whose tapes `i` and `j` are equal.
pub fn equal_tapes_filter<W: Semiring>(
    ts: &WeightedTupleSet<W>,
    i: usize,
    j: usize,
) -> Result<WeightedTupleSet<W>> {
    let arity = ts.arity();
    for index in [i, j] {
        if index == 0 || index > arity {
            return Err(Error::TapeIndex { index, arity });
        }
    }
    Ok(ts.filter(|t| t[i - 1] == t[j - 1]))
}
