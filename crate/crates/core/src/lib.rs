//! Weighted n-tape finite-state machines.
//!
//! A machine with `n` tapes reads an n-tuple of strings along each path and
//! so denotes a weighted relation on n strings. Acceptors (`n = 1`) and
//! transducers (`n = 2`) are the familiar special cases.
//!
//! The crate provides:
//!
//! - [`semiring`]: the weight algebras (boolean, tropical, real, log);
//! - [`machine`]: the machine type, validation, trimming and brute-force
//!   evaluation of the relation it denotes;
//! - [`ops`]: union, concatenation, closure, cross-product, projection,
//!   complementary projection and ε-tuple removal;
//! - [`autointersect`]: σ_{i,j}, keeping tuples whose tapes `i` and `j` agree,
//!   with a delay bound and a completeness flag;
//! - [`join`]: join on tape-equality constraints (two constructions), and
//!   transducer composition;
//! - [`search`]: shortest distance and best path;
//! - [`io`]: the `.ntw` text format and DOT export;
//! - [`apps`]: multi-string alignment, cognate search and cascades that keep
//!   intermediate results.
//!
//! ```
//! use ntwfsm::{compose, Machine, TropicalWeight};
//!
//! let t1 = Machine::from_char_tuples(2, &[(&["a", "b"], TropicalWeight(1.0))]).unwrap();
//! let t2 = Machine::from_char_tuples(2, &[(&["b", "c"], TropicalWeight(2.0))]).unwrap();
//! let three_tapes = compose(&t1, &t2, true).unwrap();
//! assert_eq!(three_tapes.arity(), 3);
//! ```

pub mod apps;
pub mod autointersect;
pub mod error;
pub mod io;
pub mod join;
pub mod machine;
pub mod ops;
pub mod search;
pub mod semiring;

pub use apps::{
    align, build_edit_machine, cascade_with_intermediates, cognate_pairs, Alignment, CognatePair,
    EditCostModel,
};
pub use autointersect::{
    auto_intersect, default_delta_max, equal_tapes_filter, transition_delay,
    AutoIntersectionConfig, AutoIntersectionResult, FlagPolicy, LeftoverState,
};
pub use error::{Error, Result};
pub use io::{parse, parse_with, peek_semiring, serialize, to_dot, ParseMode};
pub use join::{compose, join, join_direct, join_via_sigma, join_via_sigma_with, JoinSpec};
pub use machine::{
    chars, tape_string, LabelTuple, Machine, StateId, StringTuple, Symbol, Tape, Token, Transition,
    Violation, WeightedTupleSet, EPSILON,
};
pub use ops::{
    closure, concat, coproject, cross_product, project, remove_epsilon_tuples, union, TapeIndexList,
};
pub use search::{best_path, shortest_distance, BestPath};
pub use semiring::{BooleanWeight, LogWeight, RealWeight, Semiring, SemiringKind, TropicalWeight};
