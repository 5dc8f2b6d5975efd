//! Deterministic workloads for the benchmarks.

use ntwfsm::{chars, closure, concat, LabelTuple, Machine, Semiring, TropicalWeight as T};

fn pair(x: &str, y: &str, w: f64) -> Machine<T> {
    Machine::from_tuples(2, [(vec![chars(x), chars(y)], T(w))]).expect("arity 2")
}

/// `{⟨a^m b, a^n b⟩}`: two loops that drift in opposite directions, so the
/// auto-intersection explores every delay up to its bound.
pub fn drifting_pair() -> Machine<T> {
    [closure(&pair("", "a", 1.0)).unwrap(), pair("", "b", 0.0)]
        .iter()
        .fold(
            concat(&closure(&pair("a", "", 1.0)).unwrap(), &pair("b", "", 0.0)).unwrap(),
            |acc, m| concat(&acc, m).unwrap(),
        )
}

/// A ring of `n` states over tapes (input, output) that copies `a`/`b`,
/// with every third arc delayed by one symbol on the output side.
pub fn ring_transducer(n: usize) -> Machine<T> {
    let mut m = Machine::new(2);
    m.add_states(n);
    m.set_initial(0, T::one());
    m.set_final(n - 1, T::one());
    for q in 0..n {
        let next = (q + 1) % n;
        let (x, y) = if q % 3 == 0 {
            ("a", "<eps>")
        } else {
            ("b", "b")
        };
        m.add_transition(q, next, LabelTuple::from_texts(&[x, y]), T((q % 4) as f64))
            .unwrap();
        m.add_transition(q, next, LabelTuple::from_texts(&["a", "a"]), T(1.0))
            .unwrap();
    }
    m
}

/// Words of length `len` cycling through a small alphabet from `offset`.
pub fn word(len: usize, offset: usize) -> String {
    const LETTERS: &[u8] = b"abcdeg";
    (0..len)
        .map(|k| LETTERS[(k * 7 + offset) % LETTERS.len()] as char)
        .collect()
}

/// `count` words of growing length for cognate ranking.
pub fn word_list(count: usize, offset: usize) -> Vec<String> {
    (0..count).map(|k| word(3 + k % 5, offset + k)).collect()
}
