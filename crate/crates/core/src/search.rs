//! Shortest distance and best path for semirings with a selective ⊕ and a
//! natural order (boolean, tropical).

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::machine::{LabelTuple, Machine, StateId, StringTuple, Token};
use crate::semiring::Semiring;

fn check_supported<W: Semiring>(m: &Machine<W>, operation: &'static str) -> Result<()> {
    if !W::NATURALLY_ORDERED {
        return Err(Error::UnsupportedSemiring {
            operation,
            semiring: W::NAME,
        });
    }
    // every step must be no better than 1̄ for label-setting search to be exact
    if let Some(t) = m
        .transitions()
        .iter()
        .find(|t| t.weight.natural_cmp(&W::one()) == Some(Ordering::Less))
    {
        return Err(Error::NegativeWeight {
            operation,
            weight: t.weight.to_string(),
        });
    }
    Ok(())
}

/// Ordering key used by the label-setting loop: weight first, then hop count.
fn key_cmp<W: Semiring>(a: &(W, usize), b: &(W, usize)) -> Ordering {
    a.0.natural_cmp(&b.0)
        .unwrap_or(Ordering::Equal)
        .then(a.1.cmp(&b.1))
}

/// Dijkstra-style label setting over an adjacency list of `(next, weight)`.
/// Returns, per state, the best weight and the fewest hops achieving it.
fn settle<W: Semiring>(
    n: usize,
    seeds: &BTreeMap<StateId, W>,
    adj: &[Vec<(StateId, W)>],
) -> Vec<(W, usize)> {
    let mut best: Vec<(W, usize)> = vec![(W::zero(), usize::MAX); n];
    for (&q, &w) in seeds {
        best[q] = (w, 0);
    }
    let mut done = vec![false; n];
    loop {
        let next = (0..n)
            .filter(|&q| !done[q] && !best[q].0.is_zero())
            .min_by(|&p, &q| key_cmp(&best[p], &best[q]).then(p.cmp(&q)));
        let Some(q) = next else { break };
        done[q] = true;
        let (wq, hq) = best[q];
        for &(r, w) in &adj[q] {
            if done[r] {
                continue;
            }
            let cand = (wq.times(&w), hq + 1);
            if !cand.0.is_zero()
                && (best[r].0.is_zero() || key_cmp(&cand, &best[r]) == Ordering::Less)
            {
                best[r] = cand;
            }
        }
    }
    best
}

/// For every state, the ⊕ over paths from the initial states (seeded with λ)
/// of their weights. Unreachable states are absent from the map.
pub fn shortest_distance<W: Semiring>(m: &Machine<W>) -> Result<BTreeMap<StateId, W>> {
    check_supported(m, "shortest_distance")?;
    let mut adj = vec![Vec::new(); m.num_states()];
    for t in m.transitions() {
        adj[t.src].push((t.dst, t.weight));
    }
    Ok(settle(m.num_states(), m.initial_weights(), &adj)
        .into_iter()
        .enumerate()
        .filter(|(_, (w, _))| !w.is_zero())
        .map(|(q, (w, _))| (q, w))
        .collect())
}

/// An optimal accepting path.
#[derive(Clone, Debug, PartialEq)]
pub struct BestPath<W> {
    pub states: Vec<StateId>,
    pub labels: Vec<LabelTuple>,
    pub weight: W,
}

impl<W> BestPath<W> {
    /// Per-tape concatenation of the labels.
    pub fn tuple(&self, arity: usize) -> StringTuple {
        let mut out = vec![Vec::new(); arity];
        for l in &self.labels {
            for (tape, tok) in out.iter_mut().zip(l.tokens()) {
                if let Token::Sym(s) = tok {
                    tape.push(s.clone());
                }
            }
        }
        out
    }
}

/// An accepting path of optimal weight, or `None` for a machine with no
/// accepting path.
///
/// Among optimal paths the one with the fewest transitions is chosen, and
/// among those the lexicographically smallest sequence of state ids (then
/// of labels, for parallel transitions).
pub fn best_path<W: Semiring>(m: &Machine<W>) -> Result<Option<BestPath<W>>> {
    check_supported(m, "best_path")?;
    let n = m.num_states();
    // backward search: distance from each state to acceptance
    let mut radj = vec![Vec::new(); n];
    for t in m.transitions() {
        radj[t.dst].push((t.src, t.weight));
    }
    let to_final = settle(n, m.final_weights(), &radj);

    let mut best: Option<(StateId, (W, usize))> = None;
    for (&q, lambda) in m.initial_weights() {
        let (w, h) = to_final[q];
        if w.is_zero() {
            continue;
        }
        let cand = (lambda.times(&w), h);
        if best
            .as_ref()
            .is_none_or(|(_, b)| key_cmp(&cand, b) == Ordering::Less)
        {
            best = Some((q, cand));
        }
    }
    let Some((start, (weight, _))) = best else {
        return Ok(None);
    };

    let out_index = m.out_index();
    let mut states = vec![start];
    let mut labels = Vec::new();
    let mut q = start;
    loop {
        let (wq, hq) = to_final[q];
        if hq == 0 {
            break;
        }
        let step = out_index[q]
            .iter()
            .map(|&k| &m.transitions()[k])
            .filter(|t| {
                let (wd, hd) = to_final[t.dst];
                hd != usize::MAX && hd + 1 == hq && t.weight.times(&wd) == wq
            })
            .min_by(|a, b| (a.dst, &a.label).cmp(&(b.dst, &b.label)))
            .expect("an optimal successor exists for every settled state");
        labels.push(step.label.clone());
        states.push(step.dst);
        q = step.dst;
    }
    Ok(Some(BestPath {
        states,
        labels,
        weight,
    }))
}
