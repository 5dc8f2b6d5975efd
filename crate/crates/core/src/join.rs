//! Join of two machines on tape-equality constraints, plus transducer
//! composition built on it.
//!
//! Two independent constructions are provided. [`join_via_sigma`] follows
//! the algebraic route (cross-product, one auto-intersection per constrained
//! pair, complementary projection). [`join_direct`] is a single product
//! construction over state pairs. They denote the same relation whenever
//! the first reports `complete`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::autointersect::{auto_intersect, AutoIntersectionConfig, AutoIntersectionResult};
use crate::error::{Error, Result};
use crate::machine::{LabelTuple, Machine, StateId, Token, Transition};
use crate::ops::{coproject, cross_product, remove_epsilon_tuples, TapeIndexList};
use crate::semiring::Semiring;

/// Equality constraints `a.tape(i) = b.tape(j)`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinSpec {
    pairs: Vec<(usize, usize)>,
}

impl JoinSpec {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidJoinSpec("no tape pairs".into()));
        }
        let left: BTreeSet<usize> = pairs.iter().map(|p| p.0).collect();
        let right: BTreeSet<usize> = pairs.iter().map(|p| p.1).collect();
        if left.len() != pairs.len() || right.len() != pairs.len() {
            return Err(Error::InvalidJoinSpec(
                "a tape appears in more than one pair".into(),
            ));
        }
        if left.contains(&0) || right.contains(&0) {
            return Err(Error::InvalidJoinSpec("tapes are numbered from 1".into()));
        }
        Ok(JoinSpec { pairs })
    }

    pub fn single(i: usize, j: usize) -> Result<Self> {
        JoinSpec::new(vec![(i, j)])
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    fn check(&self, na: usize, nb: usize) -> Result<()> {
        for &(i, j) in &self.pairs {
            if i > na {
                return Err(Error::TapeIndex {
                    index: i,
                    arity: na,
                });
            }
            if j > nb {
                return Err(Error::TapeIndex {
                    index: j,
                    arity: nb,
                });
            }
        }
        Ok(())
    }

    /// Tapes of `b` that are dropped from the join output (1-based, within `b`).
    fn matched_right(&self) -> BTreeSet<usize> {
        self.pairs.iter().map(|p| p.1).collect()
    }
}

impl std::str::FromStr for JoinSpec {
    type Err = Error;

    /// Parses `"2=1"` or `"1=1,3=2"`.
    fn from_str(s: &str) -> Result<Self> {
        let pairs = s
            .split(',')
            .map(|p| {
                let (i, j) = p
                    .split_once('=')
                    .ok_or_else(|| Error::InvalidJoinSpec(format!("expected I=J, got {p:?}")))?;
                let parse = |x: &str| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidJoinSpec(format!("bad tape index {x:?}")))
                };
                Ok((parse(i)?, parse(j)?))
            })
            .collect::<Result<Vec<_>>>()?;
        JoinSpec::new(pairs)
    }
}

/// Join as cross-product, then σ for each pair in order, then removal of
/// `b`'s copies of the matched tapes. Output arity is `n_a + n_b − r`, with
/// `a`'s tapes first and `b`'s unmatched tapes after them in order.
pub fn join_via_sigma<W: Semiring>(
    a: &Machine<W>,
    spec: &JoinSpec,
    b: &Machine<W>,
) -> Result<AutoIntersectionResult<W>> {
    join_via_sigma_with(a, spec, b, &AutoIntersectionConfig::default())
}

/// [`join_via_sigma`] with an explicit configuration for every σ step.
pub fn join_via_sigma_with<W: Semiring>(
    a: &Machine<W>,
    spec: &JoinSpec,
    b: &Machine<W>,
    config: &AutoIntersectionConfig,
) -> Result<AutoIntersectionResult<W>> {
    spec.check(a.arity(), b.arity())?;
    let na = a.arity();
    let mut x = cross_product(a, b)?;
    let mut complete = true;
    let mut delta_max = 0;
    for &(i, j) in spec.pairs() {
        let r = auto_intersect(&x, i, na + j, config)?;
        complete &= r.complete;
        delta_max = delta_max.max(r.delta_max);
        x = r.machine;
    }
    let drop = TapeIndexList::new(spec.matched_right().iter().map(|j| na + j).collect())?;
    let projected = coproject(&x, &drop)?;
    let machine = remove_epsilon_tuples(&projected)?.trim();
    Ok(AutoIntersectionResult {
        machine,
        complete,
        delta_max,
        leftovers: Vec::new(),
    })
}

/// How a transition behaves on the constrained tapes of its machine.
#[derive(Clone, Copy, PartialEq, Eq)]
enum MatchedShape {
    AllEps,
    AllSym,
    Mixed,
}

fn shape(label: &LabelTuple, tapes: &[usize]) -> MatchedShape {
    let eps = tapes.iter().filter(|&&k| label.get(k - 1).is_eps()).count();
    if eps == tapes.len() {
        MatchedShape::AllEps
    } else if eps == 0 {
        MatchedShape::AllSym
    } else {
        MatchedShape::Mixed
    }
}

/// Join as one product construction over reachable state pairs.
///
/// Transitions move together when they carry equal symbols on every matched
/// tape; a transition that is ε on all of its matched tapes moves alone
/// while the other side stays put. Refused (with [`Error::JoinGuard`]) when
/// a transition mixes ε and symbols across matched tapes, or when both
/// operands have such ε-moves in a non-idempotent semiring (interleavings
/// would be counted more than once).
pub fn join_direct<W: Semiring>(
    a: &Machine<W>,
    spec: &JoinSpec,
    b: &Machine<W>,
) -> Result<Machine<W>> {
    spec.check(a.arity(), b.arity())?;
    let left_tapes: Vec<usize> = spec.pairs().iter().map(|p| p.0).collect();
    let right_tapes: Vec<usize> = spec.pairs().iter().map(|p| p.1).collect();
    let shapes_a: Vec<MatchedShape> = a
        .transitions()
        .iter()
        .map(|t| shape(&t.label, &left_tapes))
        .collect();
    let shapes_b: Vec<MatchedShape> = b
        .transitions()
        .iter()
        .map(|t| shape(&t.label, &right_tapes))
        .collect();
    if shapes_a.contains(&MatchedShape::Mixed) || shapes_b.contains(&MatchedShape::Mixed) {
        return Err(Error::JoinGuard(
            "a transition mixes symbols and epsilon on matched tapes".into(),
        ));
    }
    if !W::IDEMPOTENT
        && shapes_a.contains(&MatchedShape::AllEps)
        && shapes_b.contains(&MatchedShape::AllEps)
    {
        return Err(Error::JoinGuard(format!(
            "both operands move on epsilon over matched tapes in the non-idempotent {} semiring",
            W::NAME
        )));
    }

    let dropped = spec.matched_right();
    let kept_b: Vec<usize> = (1..=b.arity()).filter(|j| !dropped.contains(j)).collect();
    let arity = a.arity() + kept_b.len();
    let label_a = |l: &LabelTuple| {
        LabelTuple(
            l.tokens()
                .iter()
                .cloned()
                .chain(std::iter::repeat_n(Token::Eps, kept_b.len()))
                .collect(),
        )
    };
    let label_b = |l: &LabelTuple| {
        LabelTuple(
            std::iter::repeat_n(Token::Eps, a.arity())
                .chain(kept_b.iter().map(|&j| l.get(j - 1).clone()))
                .collect(),
        )
    };
    let label_both = |la: &LabelTuple, lb: &LabelTuple| {
        LabelTuple(
            la.tokens()
                .iter()
                .cloned()
                .chain(kept_b.iter().map(|&j| lb.get(j - 1).clone()))
                .collect(),
        )
    };
    let key = |l: &LabelTuple, tapes: &[usize]| -> Vec<Token> {
        tapes.iter().map(|&k| l.get(k - 1).clone()).collect()
    };

    let out_a = a.out_index();
    let out_b = b.out_index();
    // symbol moves of b indexed by their matched-tape key
    let sym_b: Vec<HashMap<Vec<Token>, Vec<usize>>> = out_b
        .iter()
        .map(|ks| {
            let mut by_key: HashMap<Vec<Token>, Vec<usize>> = HashMap::new();
            for &k in ks.iter().filter(|&&k| shapes_b[k] == MatchedShape::AllSym) {
                by_key
                    .entry(key(&b.transitions()[k].label, &right_tapes))
                    .or_default()
                    .push(k);
            }
            by_key
        })
        .collect();

    let mut out = Machine::new(arity);
    let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut pairs: Vec<(StateId, StateId)> = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |p: (StateId, StateId),
                      out: &mut Machine<W>,
                      queue: &mut VecDeque<StateId>,
                      pairs: &mut Vec<(StateId, StateId)>| {
        *ids.entry(p).or_insert_with(|| {
            pairs.push(p);
            queue.push_back(pairs.len() - 1);
            out.add_state()
        })
    };

    for (&p, wa) in a.initial_weights() {
        for (&q, wb) in b.initial_weights() {
            let id = intern((p, q), &mut out, &mut queue, &mut pairs);
            out.set_initial(id, wa.times(wb));
        }
    }
    while let Some(id) = queue.pop_front() {
        let (p, q) = pairs[id];
        out.set_final(id, a.final_weight(p).times(&b.final_weight(q)));
        for &k in &out_a[p] {
            let ta = &a.transitions()[k];
            match shapes_a[k] {
                MatchedShape::AllEps => {
                    let dst = intern((ta.dst, q), &mut out, &mut queue, &mut pairs);
                    out.push_transition(Transition {
                        src: id,
                        dst,
                        label: label_a(&ta.label),
                        weight: ta.weight,
                    });
                }
                _ => {
                    let Some(partners) = sym_b[q].get(&key(&ta.label, &left_tapes)) else {
                        continue;
                    };
                    for &kb in partners {
                        let tb = &b.transitions()[kb];
                        let dst = intern((ta.dst, tb.dst), &mut out, &mut queue, &mut pairs);
                        out.push_transition(Transition {
                            src: id,
                            dst,
                            label: label_both(&ta.label, &tb.label),
                            weight: ta.weight.times(&tb.weight),
                        });
                    }
                }
            }
        }
        for &k in out_b[q]
            .iter()
            .filter(|&&k| shapes_b[k] == MatchedShape::AllEps)
        {
            let tb = &b.transitions()[k];
            let dst = intern((p, tb.dst), &mut out, &mut queue, &mut pairs);
            out.push_transition(Transition {
                src: id,
                dst,
                label: label_b(&tb.label),
                weight: tb.weight,
            });
        }
    }
    Ok(out.trim())
}

/// Exact join: [`join_direct`] when its guard allows, otherwise
/// [`join_via_sigma`], failing with [`Error::Incomplete`] if the delay bound
/// may have lost tuples.
pub fn join<W: Semiring>(a: &Machine<W>, spec: &JoinSpec, b: &Machine<W>) -> Result<Machine<W>> {
    match join_direct(a, spec, b) {
        Err(Error::JoinGuard(_)) => {
            let r = join_via_sigma(a, spec, b)?;
            if r.complete {
                Ok(r.machine)
            } else {
                Err(Error::Incomplete("join"))
            }
        }
        other => other,
    }
}

/// Transducer composition. With `keep_intermediate` the result has three
/// tapes (input, intermediate, output); otherwise the middle tape is
/// removed and the result is an ordinary transducer.
pub fn compose<W: Semiring>(
    t1: &Machine<W>,
    t2: &Machine<W>,
    keep_intermediate: bool,
) -> Result<Machine<W>> {
    for t in [t1, t2] {
        if t.arity() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: t.arity(),
            });
        }
    }
    let joined = join(t1, &JoinSpec::single(2, 1)?, t2)?;
    if keep_intermediate {
        return Ok(joined);
    }
    let outer = coproject(&joined, &TapeIndexList::new(vec![2])?)?;
    Ok(remove_epsilon_tuples(&outer)?.trim())
}
