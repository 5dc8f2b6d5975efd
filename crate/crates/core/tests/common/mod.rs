//! Random machines and brute-force relation oracles shared by the
//! integration suites. Nothing here calls the operation under test: every
//! oracle works on finite `WeightedTupleSet`s produced by enumeration.

#![allow(dead_code)]

use std::collections::BTreeMap;

use ntwfsm::{LabelTuple, Machine, Semiring, StringTuple, Symbol, Token, WeightedTupleSet};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Parameters for [`random_machine`].
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_states: usize,
    pub arity: usize,
    pub alphabet: &'static [&'static str],
    /// Upper bound on the transition count; never more than `2 * states + 1`.
    pub max_transitions: usize,
    /// Probability that a label component is ε.
    pub eps_prob: f64,
    /// Whether a label may be ε on every tape.
    pub eps_tuples: bool,
}

impl Shape {
    pub fn new(max_states: usize, arity: usize) -> Self {
        Shape {
            max_states,
            arity,
            alphabet: &["a", "b"],
            max_transitions: 2 * max_states,
            eps_prob: 0.3,
            eps_tuples: false,
        }
    }
}

pub fn random_label(rng: &mut StdRng, shape: &Shape) -> LabelTuple {
    loop {
        let tokens: Vec<Token> = (0..shape.arity)
            .map(|_| {
                if rng.gen_bool(shape.eps_prob) {
                    Token::Eps
                } else {
                    Token::sym(shape.alphabet[rng.gen_range(0..shape.alphabet.len())])
                }
            })
            .collect();
        let label = LabelTuple(tokens);
        if shape.eps_tuples || !label.is_epsilon() {
            return label;
        }
    }
}

pub fn random_machine<W: Semiring>(
    rng: &mut StdRng,
    shape: &Shape,
    mut weight: impl FnMut(&mut StdRng) -> W,
) -> Machine<W> {
    let mut m = Machine::new(shape.arity);
    let n = rng.gen_range(1..=shape.max_states);
    m.add_states(n);
    m.set_initial(0, weight(rng));
    if n > 1 && rng.gen_bool(0.25) {
        let q = rng.gen_range(1..n);
        m.set_initial(q, weight(rng));
    }
    let finals = rng.gen_range(1..=2.min(n));
    for _ in 0..finals {
        let q = rng.gen_range(0..n);
        m.set_final(q, weight(rng));
    }
    // about two transitions per state keeps brute-force enumeration tractable
    let count = rng.gen_range(1..=shape.max_transitions.min(2 * n + 1));
    for _ in 0..count {
        let (src, dst) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let label = random_label(rng, shape);
        let w = weight(rng);
        m.add_transition(src, dst, label, w).unwrap();
    }
    m
}

pub fn tropical_weight(rng: &mut StdRng) -> ntwfsm::TropicalWeight {
    ntwfsm::TropicalWeight(rng.gen_range(0..=5) as f64)
}

pub fn real_weight(rng: &mut StdRng) -> ntwfsm::RealWeight {
    ntwfsm::RealWeight([0.25, 0.5, 1.0, 1.5][rng.gen_range(0..4)])
}

pub fn boolean_weight(_: &mut StdRng) -> ntwfsm::BooleanWeight {
    ntwfsm::BooleanWeight(true)
}

pub fn total_len(t: &StringTuple) -> usize {
    t.iter().map(Vec::len).sum()
}

/// Entries with total length at most `max`.
pub fn upto<W: Semiring>(ts: &WeightedTupleSet<W>, max: usize) -> WeightedTupleSet<W> {
    ts.filter(|t| total_len(t) <= max)
}

pub fn set_of<W: Semiring>(
    arity: usize,
    entries: impl IntoIterator<Item = (StringTuple, W)>,
) -> WeightedTupleSet<W> {
    let mut out = WeightedTupleSet::new(arity);
    for (t, w) in entries {
        out.add(t, w);
    }
    out
}

pub fn union_rel<W: Semiring>(
    a: &WeightedTupleSet<W>,
    b: &WeightedTupleSet<W>,
) -> WeightedTupleSet<W> {
    set_of(
        a.arity(),
        a.iter().chain(b.iter()).map(|(t, w)| (t.clone(), *w)),
    )
}

fn concat_tuples(x: &StringTuple, y: &StringTuple) -> StringTuple {
    x.iter()
        .zip(y)
        .map(|(u, v)| u.iter().chain(v).cloned().collect())
        .collect()
}

pub fn concat_rel<W: Semiring>(
    a: &WeightedTupleSet<W>,
    b: &WeightedTupleSet<W>,
) -> WeightedTupleSet<W> {
    let mut out = WeightedTupleSet::new(a.arity());
    for (x, wx) in a.iter() {
        for (y, wy) in b.iter() {
            out.add(concat_tuples(x, y), wx.times(wy));
        }
    }
    out
}

pub fn cross_rel<W: Semiring>(
    a: &WeightedTupleSet<W>,
    b: &WeightedTupleSet<W>,
) -> WeightedTupleSet<W> {
    let mut out = WeightedTupleSet::new(a.arity() + b.arity());
    for (x, wx) in a.iter() {
        for (y, wy) in b.iter() {
            out.add(x.iter().chain(y).cloned().collect(), wx.times(wy));
        }
    }
    out
}

/// 1-based projection.
pub fn project_rel<W: Semiring>(a: &WeightedTupleSet<W>, keep: &[usize]) -> WeightedTupleSet<W> {
    set_of(
        keep.len(),
        a.iter()
            .map(|(t, w)| (keep.iter().map(|&i| t[i - 1].clone()).collect(), *w)),
    )
}

/// Kleene star restricted to tuples of total length ≤ `max`; the operand
/// must not contain the all-empty tuple.
pub fn closure_rel<W: Semiring>(a: &WeightedTupleSet<W>, max: usize) -> WeightedTupleSet<W> {
    assert!(a.iter().all(|(t, _)| total_len(t) > 0));
    let base = upto(a, max);
    let mut out = WeightedTupleSet::new(a.arity());
    let mut layer = set_of(a.arity(), [(vec![Vec::new(); a.arity()], W::one())]);
    while !layer.is_empty() {
        for (t, w) in layer.iter() {
            out.add(t.clone(), *w);
        }
        layer = upto(&concat_rel(&layer, &base), max);
    }
    out
}

/// Relation-level join on 1-based tape pairs; output keeps `a`'s tapes and
/// `b`'s unmatched tapes in order.
pub fn join_rel<W: Semiring>(
    a: &WeightedTupleSet<W>,
    pairs: &[(usize, usize)],
    b: &WeightedTupleSet<W>,
) -> WeightedTupleSet<W> {
    let kept_b: Vec<usize> = (1..=b.arity())
        .filter(|j| !pairs.iter().any(|p| p.1 == *j))
        .collect();
    let mut out = WeightedTupleSet::new(a.arity() + kept_b.len());
    for (x, wx) in a.iter() {
        for (y, wy) in b.iter() {
            if pairs.iter().all(|&(i, j)| x[i - 1] == y[j - 1]) {
                let t = x
                    .iter()
                    .cloned()
                    .chain(kept_b.iter().map(|&j| y[j - 1].clone()))
                    .collect();
                out.add(t, wx.times(wy));
            }
        }
    }
    out
}

/// Relation composition of two transducer relations.
pub fn compose_rel<W: Semiring>(
    a: &WeightedTupleSet<W>,
    b: &WeightedTupleSet<W>,
) -> WeightedTupleSet<W> {
    let mut by_input: BTreeMap<&Vec<Symbol>, Vec<(&StringTuple, &W)>> = BTreeMap::new();
    for (y, w) in b.iter() {
        by_input.entry(&y[0]).or_default().push((y, w));
    }
    let mut out = WeightedTupleSet::new(2);
    for (x, wx) in a.iter() {
        for (y, wy) in by_input.get(&x[1]).into_iter().flatten() {
            out.add(vec![x[0].clone(), y[1].clone()], wx.times(wy));
        }
    }
    out
}

/// Textbook edit distance with per-operation costs.
pub fn dp_edit_distance(a: &str, b: &str, sub: f64, ins: f64, del: f64) -> f64 {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut d = vec![vec![0.0; b.len() + 1]; a.len() + 1];
    for i in 1..=a.len() {
        d[i][0] = d[i - 1][0] + del;
    }
    for j in 1..=b.len() {
        d[0][j] = d[0][j - 1] + ins;
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            let diag = d[i - 1][j - 1] + if a[i - 1] == b[j - 1] { 0.0 } else { sub };
            d[i][j] = diag.min(d[i - 1][j] + del).min(d[i][j - 1] + ins);
        }
    }
    d[a.len()][b.len()]
}

/// Minimum sum-of-pairs cost over every sequence of alignment columns for
/// three strings, by exhaustive recursion over which strings advance.
pub fn exhaustive_three_way(s: [&str; 3], sub: f64, indel: f64) -> f64 {
    let s: Vec<Vec<char>> = s.iter().map(|x| x.chars().collect()).collect();
    fn pair(x: Option<char>, y: Option<char>, sub: f64, indel: f64) -> f64 {
        match (x, y) {
            (None, None) => 0.0,
            (Some(a), Some(b)) => {
                if a == b {
                    0.0
                } else {
                    sub
                }
            }
            _ => indel,
        }
    }
    fn go(
        s: &[Vec<char>],
        pos: [usize; 3],
        sub: f64,
        indel: f64,
        memo: &mut BTreeMap<[usize; 3], f64>,
    ) -> f64 {
        if (0..3).all(|k| pos[k] == s[k].len()) {
            return 0.0;
        }
        if let Some(&v) = memo.get(&pos) {
            return v;
        }
        let mut best = f64::INFINITY;
        for mask in 1u8..8 {
            let advance: Vec<bool> = (0..3).map(|k| mask & (1 << k) != 0).collect();
            if (0..3).any(|k| advance[k] && pos[k] == s[k].len()) {
                continue;
            }
            let col: Vec<Option<char>> = (0..3).map(|k| advance[k].then(|| s[k][pos[k]])).collect();
            let cost = pair(col[0], col[1], sub, indel)
                + pair(col[0], col[2], sub, indel)
                + pair(col[1], col[2], sub, indel);
            let mut next = pos;
            for k in 0..3 {
                next[k] += advance[k] as usize;
            }
            best = best.min(cost + go(s, next, sub, indel, memo));
        }
        memo.insert(pos, best);
        best
    }
    go(&s, [0, 0, 0], sub, indel, &mut BTreeMap::new())
}

pub fn random_word(rng: &mut StdRng, alphabet: &[char], max_len: usize) -> String {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
        .collect()
}
