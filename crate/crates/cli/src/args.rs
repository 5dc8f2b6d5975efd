use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use ntwfsm::{JoinSpec, SemiringKind, TapeIndexList};

/// Weighted n-tape finite-state machines over `.ntw` files.
///
/// Machine operands are file paths; `-` reads standard input. Results are
/// written to standard output in the canonical `.ntw` form unless noted.
#[derive(Debug, Parser)]
#[command(name = "ntwfsm", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile a hand-written machine (or a tuple list) to canonical form.
    Compile {
        input: PathBuf,
        /// Weight algebra; must agree with the file header when both are given.
        #[arg(long)]
        semiring: Option<SemiringKind>,
        /// Read lines `WEIGHT<TAB>TAPE1<TAB>…<TAB>TAPEn` (one symbol per character).
        #[arg(long)]
        tuples: bool,
        /// Tape count for `--tuples` input (defaults to the field count).
        #[arg(long, requires = "tuples")]
        arity: Option<usize>,
    },
    /// Re-serialize a machine canonically.
    Print {
        input: PathBuf,
    },
    /// Render a machine in Graphviz DOT.
    Dot {
        input: PathBuf,
    },
    Union {
        a: PathBuf,
        b: PathBuf,
    },
    Concat {
        a: PathBuf,
        b: PathBuf,
    },
    Closure {
        input: PathBuf,
    },
    /// Cross product: the tapes of A followed by the tapes of B.
    Cross {
        a: PathBuf,
        b: PathBuf,
    },
    /// Keep the listed tapes, in the listed order.
    Project {
        input: PathBuf,
        #[arg(long, value_name = "LIST")]
        tapes: TapeIndexList,
    },
    /// Drop the listed tapes.
    Coproject {
        input: PathBuf,
        #[arg(long, value_name = "LIST")]
        tapes: TapeIndexList,
    },
    /// Remove transitions labelled ε on every tape.
    Rmeps {
        input: PathBuf,
    },
    /// Keep only tuples whose tapes I and J are equal.
    Autointersect {
        input: PathBuf,
        #[arg(long = "tape-i")]
        tape_i: usize,
        #[arg(long = "tape-j")]
        tape_j: usize,
        /// Delay bound; defaults to (|Q| + 1) times the largest per-transition delay.
        #[arg(long = "delta-max")]
        delta_max: Option<usize>,
        #[command(flatten)]
        strict: Strict,
    },
    /// Join A and B on equal tapes, e.g. `--pairs 2=1` or `--pairs 1=1,3=2`.
    Join {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        pairs: JoinSpec,
        /// Use only the product construction (fails if its guard rejects the operands).
        #[arg(long, conflicts_with = "via_sigma")]
        direct: bool,
        /// Use only the cross-product, auto-intersection and projection route.
        #[arg(long = "via-sigma")]
        via_sigma: bool,
        #[command(flatten)]
        strict: Strict,
    },
    /// Compose two transducers (tape 2 of T1 against tape 1 of T2).
    Compose {
        t1: PathBuf,
        t2: PathBuf,
        /// Keep the intermediate string as a middle tape.
        #[arg(long = "keep-intermediate")]
        keep_intermediate: bool,
    },
    /// Print the best accepted tuple as `WEIGHT<TAB>TAPE1<TAB>…`.
    Bestpath {
        input: PathBuf,
    },
    /// List accepted tuples reachable within a hop limit.
    Enumerate {
        input: PathBuf,
        #[arg(long = "hop-limit", default_value_t = 8)]
        hop_limit: usize,
        #[arg(long, default_value_t = ntwfsm::machine::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Optimal sum-of-pairs alignment of two or more strings.
    Align {
        #[arg(required = true, num_args = 2..)]
        strings: Vec<String>,
        #[command(flatten)]
        costs: Costs,
    },
    /// Rank cross pairs of two word lists by alignment cost.
    Cognates {
        list1: PathBuf,
        list2: PathBuf,
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[command(flatten)]
        costs: Costs,
    },
    /// Compose a cascade of transducers, keeping every intermediate tape.
    Cascade {
        #[arg(required = true, num_args = 2..)]
        transducers: Vec<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct Strict {
    /// Exit with status 2 when the result may be incomplete.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct Costs {
    #[arg(long = "match", default_value_t = 0.0)]
    pub match_cost: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sub: f64,
    #[arg(long, default_value_t = 1.0)]
    pub ins: f64,
    #[arg(long, default_value_t = 1.0)]
    pub del: f64,
}

impl Costs {
    pub fn model(&self) -> ntwfsm::EditCostModel {
        ntwfsm::EditCostModel {
            match_cost: self.match_cost,
            substitution_cost: self.sub,
            insertion_cost: self.ins,
            deletion_cost: self.del,
        }
    }
}
