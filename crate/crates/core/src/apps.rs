//! Applications assembled from the library operations: n-way string
//! alignment, cognate search and transducer cascades that keep their
//! intermediate results.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::join::{compose, join, join_direct, JoinSpec};
use crate::machine::{chars, LabelTuple, Machine, Symbol, Token};
use crate::search::best_path;
use crate::semiring::{Semiring, TropicalWeight};

/// Per-pair column costs for sum-of-pairs alignment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EditCostModel {
    pub match_cost: f64,
    pub substitution_cost: f64,
    /// Pair (p, q) with ε on p and a symbol on q.
    pub insertion_cost: f64,
    /// Pair (p, q) with a symbol on p and ε on q.
    pub deletion_cost: f64,
}

impl Default for EditCostModel {
    fn default() -> Self {
        EditCostModel {
            match_cost: 0.0,
            substitution_cost: 1.0,
            insertion_cost: 1.0,
            deletion_cost: 1.0,
        }
    }
}

impl EditCostModel {
    fn validate(&self) -> Result<()> {
        for (name, c) in [
            ("match", self.match_cost),
            ("substitution", self.substitution_cost),
            ("insertion", self.insertion_cost),
            ("deletion", self.deletion_cost),
        ] {
            if !(c.is_finite() && c >= 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "{name} cost must be a finite non-negative number, got {c}"
                )));
            }
        }
        Ok(())
    }

    /// Sum over tape pairs p < q of the pairwise cost of a column.
    pub fn column_cost(&self, column: &[Token]) -> f64 {
        let mut total = 0.0;
        for (p, x) in column.iter().enumerate() {
            for y in &column[p + 1..] {
                total += match (x, y) {
                    (Token::Eps, Token::Eps) => 0.0,
                    (Token::Sym(_), Token::Eps) => self.deletion_cost,
                    (Token::Eps, Token::Sym(_)) => self.insertion_cost,
                    (Token::Sym(a), Token::Sym(b)) if a == b => self.match_cost,
                    _ => self.substitution_cost,
                };
            }
        }
        total
    }
}

/// A one-state machine looping on every column over `alphabet ∪ {ε}` except
/// the all-ε one, weighted by its sum-of-pairs cost.
pub fn build_edit_machine(
    alphabet: &BTreeSet<Symbol>,
    n: usize,
    costs: &EditCostModel,
) -> Result<Machine<TropicalWeight>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "alignment needs at least 2 tapes, got {n}"
        )));
    }
    if alphabet.is_empty() {
        return Err(Error::InvalidArgument("empty alphabet".into()));
    }
    costs.validate()?;
    let tokens: Vec<Token> = std::iter::once(Token::Eps)
        .chain(alphabet.iter().cloned().map(Token::Sym))
        .collect();
    let mut m = Machine::new(n);
    let q = m.add_state();
    m.set_initial(q, TropicalWeight::one());
    m.set_final(q, TropicalWeight::one());
    // odometer over tokens^n
    let mut digits = vec![0usize; n];
    loop {
        if digits.iter().any(|&d| d != 0) {
            let column: Vec<Token> = digits.iter().map(|&d| tokens[d].clone()).collect();
            let w = TropicalWeight(costs.column_cost(&column));
            m.add_transition(q, q, LabelTuple(column), w)?;
        }
        let Some(k) = digits.iter().rposition(|&d| d + 1 < tokens.len()) else {
            break;
        };
        digits[k] += 1;
        digits[k + 1..].iter_mut().for_each(|d| *d = 0);
    }
    Ok(m)
}

/// An optimal alignment: one column per aligned position.
#[derive(Clone, Debug, PartialEq)]
pub struct Alignment {
    pub columns: Vec<LabelTuple>,
    pub weight: f64,
}

impl Alignment {
    /// One row per string with `gap` in place of ε.
    pub fn rows(&self, n: usize, gap: &str) -> Vec<String> {
        (0..n)
            .map(|tape| {
                self.columns
                    .iter()
                    .map(|c| match c.get(tape) {
                        Token::Eps => gap,
                        Token::Sym(s) => s,
                    })
                    .collect()
            })
            .collect()
    }
}

/// A one-tape machine accepting exactly `s`, one symbol per character.
pub fn string_acceptor(s: &str) -> Machine<TropicalWeight> {
    let mut m = Machine::new(1);
    let symbols = chars(s);
    let states = m.add_states(symbols.len() + 1);
    m.set_initial(states.start, TropicalWeight::one());
    m.set_final(states.end - 1, TropicalWeight::one());
    for (k, sym) in symbols.into_iter().enumerate() {
        m.add_transition(
            k,
            k + 1,
            LabelTuple(vec![Token::Sym(sym)]),
            TropicalWeight::one(),
        )
        .expect("chain states exist");
    }
    m
}

/// Optimal sum-of-pairs alignment of `strings` (characters as symbols): the
/// edit machine joined with one acceptor per tape, then the best path.
pub fn align(strings: &[&str], costs: &EditCostModel) -> Result<Alignment> {
    let n = strings.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "alignment needs at least 2 strings, got {n}"
        )));
    }
    costs.validate()?;
    let alphabet: BTreeSet<Symbol> = strings.iter().flat_map(|s| chars(s)).collect();
    if alphabet.is_empty() {
        return Ok(Alignment {
            columns: Vec::new(),
            weight: 0.0,
        });
    }
    let mut lattice = build_edit_machine(&alphabet, n, costs)?;
    for (tape, s) in strings.iter().enumerate() {
        lattice = join_direct(
            &lattice,
            &JoinSpec::single(tape + 1, 1)?,
            &string_acceptor(s),
        )?;
    }
    let path =
        best_path(&lattice)?.ok_or_else(|| Error::InvalidArgument("no alignment found".into()))?;
    Ok(Alignment {
        columns: path.labels,
        weight: path.weight.0,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CognatePair {
    pub left: String,
    pub right: String,
    pub weight: f64,
}

/// Scores every cross pair by its alignment cost and returns the `top_k`
/// cheapest, ties broken by the words themselves.
pub fn cognate_pairs(
    list1: &[String],
    list2: &[String],
    costs: &EditCostModel,
    top_k: usize,
) -> Result<Vec<CognatePair>> {
    if top_k == 0 {
        return Err(Error::InvalidArgument("top_k must be at least 1".into()));
    }
    if list1.is_empty() || list2.is_empty() {
        return Err(Error::InvalidArgument(
            "word lists must be non-empty".into(),
        ));
    }
    let pairs: Vec<(&String, &String)> = list1
        .iter()
        .flat_map(|a| list2.iter().map(move |b| (a, b)))
        .collect();
    let mut scored = pairs
        .par_iter()
        .map(|(a, b)| {
            let alignment = align(&[a.as_str(), b.as_str()], costs)?;
            Ok(CognatePair {
                left: (*a).clone(),
                right: (*b).clone(),
                weight: alignment.weight,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    scored.sort_by(|x, y| {
        x.weight
            .total_cmp(&y.weight)
            .then_with(|| x.left.cmp(&y.left))
            .then_with(|| x.right.cmp(&y.right))
    });
    scored.truncate(top_k);
    Ok(scored)
}

/// Composes a cascade of transducers keeping every intermediate string: k
/// transducers give a (k+1)-tape machine (input, intermediate₁, …, output).
pub fn cascade_with_intermediates<W: Semiring>(transducers: &[Machine<W>]) -> Result<Machine<W>> {
    if transducers.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "a cascade needs at least 2 transducers, got {}",
            transducers.len()
        )));
    }
    if let Some(t) = transducers.iter().find(|t| t.arity() != 2) {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: t.arity(),
        });
    }
    let mut acc = compose(&transducers[0], &transducers[1], true)?;
    for t in &transducers[2..] {
        acc = join(&acc, &JoinSpec::single(acc.arity(), 1)?, t)?;
    }
    Ok(acc)
}
