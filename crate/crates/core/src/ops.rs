//! Rational operations: union, concatenation, closure, cross-product,
//! projection, complementary projection and ε-tuple removal.
//!
//! All operations take machines by reference and build new ones.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::machine::{LabelTuple, Machine, StateId, Token, Transition};
use crate::semiring::Semiring;

/// A non-empty list of 1-based tape indices. Order matters and repeats are
/// allowed (projection onto `[1, 1]` duplicates tape 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TapeIndexList(Vec<usize>);

impl TapeIndexList {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::InvalidTapeList("empty".into()));
        }
        if indices.contains(&0) {
            return Err(Error::InvalidTapeList("tapes are numbered from 1".into()));
        }
        Ok(TapeIndexList(indices))
    }

    /// `[first, first+1, ..., last]`.
    pub fn range(first: usize, last: usize) -> Result<Self> {
        TapeIndexList::new((first..=last).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    fn check(&self, arity: usize) -> Result<()> {
        match self.0.iter().find(|&&i| i > arity) {
            Some(&index) => Err(Error::TapeIndex { index, arity }),
            None => Ok(()),
        }
    }
}

impl std::str::FromStr for TapeIndexList {
    type Err = Error;

    /// Parses `"2,1,3"`.
    fn from_str(s: &str) -> Result<Self> {
        let indices = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidTapeList(format!("bad tape index {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        TapeIndexList::new(indices)
    }
}

/// R(a) ∪ R(b), by disjoint union of states.
pub fn union<W: Semiring>(a: &Machine<W>, b: &Machine<W>) -> Result<Machine<W>> {
    a.check_arity(b)?;
    let mut m = a.clone();
    let offset = m.absorb(b, LabelTuple::clone);
    for (&q, &w) in b.initial_weights() {
        m.set_initial(q + offset, w);
    }
    for (&q, &w) in b.final_weights() {
        m.set_final(q + offset, w);
    }
    Ok(m)
}

/// Tape-wise concatenation; each final state of `a` is bridged to each
/// initial state of `b` by an ε-tuple transition weighted ρ_a ⊗ λ_b.
pub fn concat<W: Semiring>(a: &Machine<W>, b: &Machine<W>) -> Result<Machine<W>> {
    a.check_arity(b)?;
    let mut m = a.clone();
    let offset = m.absorb(b, LabelTuple::clone);
    let finals: Vec<(StateId, W)> = m.final_weights().iter().map(|(q, w)| (*q, *w)).collect();
    for &(q, _) in &finals {
        m.set_final(q, W::zero());
    }
    for &(q, rho) in &finals {
        for (&p, lambda) in b.initial_weights() {
            m.push_transition(Transition {
                src: q,
                dst: p + offset,
                label: LabelTuple::epsilon(a.arity()),
                weight: rho.times(lambda),
            });
        }
    }
    for (&q, &w) in b.final_weights() {
        m.set_final(q + offset, w);
    }
    Ok(m)
}

/// Kleene star under tape-wise concatenation.
///
/// A fresh state (initial and final with 1̄) is linked by ε-tuple transitions
/// to the operand's initial states and back from its final states. Refused
/// when the operand accepts the all-ε tuple and the resulting ε-cycle has no
/// finite weight.
pub fn closure<W: Semiring>(a: &Machine<W>) -> Result<Machine<W>> {
    if let Some(weight) = epsilon_acceptance(a)? {
        let stable = W::IDEMPOTENT && weight.plus(&W::one()) == W::one();
        if !stable {
            return Err(Error::EpsilonAcceptance {
                semiring: W::NAME,
                weight: weight.to_string(),
            });
        }
    }
    let mut m = Machine::new(a.arity());
    let hub = m.add_state();
    m.set_initial(hub, W::one());
    m.set_final(hub, W::one());
    let offset = m.absorb(a, LabelTuple::clone);
    for (&q, &w) in a.initial_weights() {
        m.push_transition(Transition {
            src: hub,
            dst: q + offset,
            label: LabelTuple::epsilon(a.arity()),
            weight: w,
        });
    }
    for (&q, &w) in a.final_weights() {
        m.push_transition(Transition {
            src: q + offset,
            dst: hub,
            label: LabelTuple::epsilon(a.arity()),
            weight: w,
        });
    }
    Ok(m)
}

/// Weight with which `a` accepts the all-ε tuple, if it does.
///
/// Non-idempotent semirings only need existence, so no ε-closure (which could
/// itself diverge) is computed for them.
fn epsilon_acceptance<W: Semiring>(a: &Machine<W>) -> Result<Option<W>> {
    if !W::IDEMPOTENT {
        let reach = epsilon_reachability(a);
        let accepts = a
            .initial_weights()
            .keys()
            .any(|&p| reach[p].iter().any(|&q| !a.final_weight(q).is_zero()));
        return Ok(accepts.then(W::one));
    }
    let dist = epsilon_closure(a)?;
    let mut total = W::zero();
    for (&p, lambda) in a.initial_weights() {
        for (&q, d) in &dist[p] {
            total = total.plus(&lambda.times(d).times(&a.final_weight(q)));
        }
    }
    Ok((!total.is_zero()).then_some(total))
}

fn epsilon_reachability<W: Semiring>(a: &Machine<W>) -> Vec<BTreeSet<StateId>> {
    let mut adj = vec![Vec::new(); a.num_states()];
    for t in a.transitions().iter().filter(|t| t.label.is_epsilon()) {
        adj[t.src].push(t.dst);
    }
    (0..a.num_states())
        .map(|p| {
            let mut seen = BTreeSet::from([p]);
            let mut stack = vec![p];
            while let Some(q) = stack.pop() {
                for &r in &adj[q] {
                    if seen.insert(r) {
                        stack.push(r);
                    }
                }
            }
            seen
        })
        .collect()
}

/// For each state p, the ⊕-sum of weights of all ε-tuple paths p → q
/// (including the empty path, weight 1̄).
///
/// Acyclic ε-graphs are handled in any semiring. Cycles are accepted only
/// in idempotent semirings where relaxation reaches a fixpoint within |Q|
/// rounds (boolean; tropical with non-negative cycles).
pub(crate) fn epsilon_closure<W: Semiring>(a: &Machine<W>) -> Result<Vec<BTreeMap<StateId, W>>> {
    let n = a.num_states();
    let mut adj: Vec<Vec<(StateId, W)>> = vec![Vec::new(); n];
    for t in a.transitions().iter().filter(|t| t.label.is_epsilon()) {
        adj[t.src].push((t.dst, t.weight));
    }
    let reach = epsilon_reachability(a);
    // a state on an ε-cycle reaches an ε-predecessor of itself
    let cyclic_state = (0..n).find(|&p| adj[p].iter().any(|&(q, _)| reach[q].contains(&p)));

    match cyclic_state {
        None => {
            let order = topological_order(&adj);
            Ok((0..n)
                .map(|p| {
                    let mut dist = BTreeMap::from([(p, W::one())]);
                    for &q in order.iter().filter(|q| reach[p].contains(q)) {
                        let Some(&dq) = dist.get(&q) else { continue };
                        for &(r, w) in &adj[q] {
                            let e = dist.entry(r).or_insert_with(W::zero);
                            *e = e.plus(&dq.times(&w));
                        }
                    }
                    dist
                })
                .collect())
        }
        Some(state) if !W::IDEMPOTENT => Err(Error::EpsilonCycle {
            semiring: W::NAME,
            state,
        }),
        Some(_) => (0..n)
            .map(|p| {
                let mut dist = BTreeMap::from([(p, W::one())]);
                for _round in 0..=n {
                    let mut changed = false;
                    let snapshot: Vec<(StateId, W)> = dist.iter().map(|(q, w)| (*q, *w)).collect();
                    for (q, dq) in snapshot {
                        for &(r, w) in &adj[q] {
                            let old = dist.get(&r).copied().unwrap_or_else(W::zero);
                            let new = old.plus(&dq.times(&w));
                            if new != old {
                                dist.insert(r, new);
                                changed = true;
                            }
                        }
                    }
                    if !changed {
                        return Ok(dist);
                    }
                }
                Err(Error::EpsilonCycle {
                    semiring: W::NAME,
                    state: p,
                })
            })
            .collect(),
    }
}

fn topological_order<W>(adj: &[Vec<(StateId, W)>]) -> Vec<StateId> {
    let n = adj.len();
    let mut indegree = vec![0usize; n];
    for edges in adj {
        for &(r, _) in edges {
            indegree[r] += 1;
        }
    }
    let mut ready: Vec<StateId> = (0..n).filter(|&q| indegree[q] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(q) = ready.pop() {
        order.push(q);
        for &(r, _) in &adj[q] {
            indegree[r] -= 1;
            if indegree[r] == 0 {
                ready.push(r);
            }
        }
    }
    order
}

/// Pairs every tuple of `a` with every tuple of `b`: arity `n_a + n_b`,
/// realised as `a` padded with ε on `b`'s tapes, concatenated with `b`
/// padded with ε on `a`'s tapes.
pub fn cross_product<W: Semiring>(a: &Machine<W>, b: &Machine<W>) -> Result<Machine<W>> {
    let (na, nb) = (a.arity(), b.arity());
    let arity = na + nb;
    let left = a.map_labels(arity, |l| {
        LabelTuple(
            l.tokens()
                .iter()
                .cloned()
                .chain(std::iter::repeat_n(Token::Eps, nb))
                .collect(),
        )
    });
    let right = b.map_labels(arity, |l| {
        LabelTuple(
            std::iter::repeat_n(Token::Eps, na)
                .chain(l.tokens().iter().cloned())
                .collect(),
        )
    });
    concat(&left, &right)
}

/// Rebuilds every label from the kept tapes in the given order. May create
/// ε-tuple labels; see [`remove_epsilon_tuples`].
pub fn project<W: Semiring>(a: &Machine<W>, keep: &TapeIndexList) -> Result<Machine<W>> {
    keep.check(a.arity())?;
    let idx = keep.indices();
    Ok(a.map_labels(idx.len(), |l| {
        LabelTuple(idx.iter().map(|&i| l.get(i - 1).clone()).collect())
    }))
}

/// Removes the listed tapes: projection onto the complement in ascending order.
pub fn coproject<W: Semiring>(a: &Machine<W>, remove: &TapeIndexList) -> Result<Machine<W>> {
    remove.check(a.arity())?;
    let removed: BTreeSet<usize> = remove.indices().iter().copied().collect();
    let kept: Vec<usize> = (1..=a.arity()).filter(|i| !removed.contains(i)).collect();
    if kept.is_empty() {
        return Err(Error::InvalidTapeList("cannot remove every tape".into()));
    }
    project(a, &TapeIndexList(kept))
}

/// Eliminates ε-tuple transitions by folding ε-closure weights into the
/// following transitions and into final weights, then trims.
pub fn remove_epsilon_tuples<W: Semiring>(a: &Machine<W>) -> Result<Machine<W>> {
    if !a.has_epsilon_tuples() {
        return Ok(a.clone());
    }
    let dist = epsilon_closure(a)?;
    let out_index = a.out_index();
    let mut m = Machine::new(a.arity());
    m.add_states(a.num_states());
    for (&q, &w) in a.initial_weights() {
        m.set_initial(q, w);
    }
    for (p, reach) in dist.iter().enumerate() {
        let mut rho = W::zero();
        // parallel transitions with one label are merged by ⊕
        let mut merged: HashMap<(StateId, &LabelTuple), W> = HashMap::new();
        let mut order = Vec::new();
        for (&q, d) in reach {
            rho = rho.plus(&d.times(&a.final_weight(q)));
            for &k in &out_index[q] {
                let t = &a.transitions()[k];
                if t.label.is_epsilon() {
                    continue;
                }
                let w = d.times(&t.weight);
                match merged.get_mut(&(t.dst, &t.label)) {
                    Some(acc) => *acc = acc.plus(&w),
                    None => {
                        merged.insert((t.dst, &t.label), w);
                        order.push((t.dst, &t.label));
                    }
                }
            }
        }
        m.set_final(p, rho);
        for key in order {
            m.push_transition(Transition {
                src: p,
                dst: key.0,
                label: key.1.clone(),
                weight: merged[&key],
            });
        }
    }
    Ok(m.trim())
}
