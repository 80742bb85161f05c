//! Exact non-deterministic automatic complexity of finite words.
//!
//! A word `x` has exact non-deterministic automatic complexity `k` when some
//! NFA with `k` states accepts `x` and rejects every other word of length
//! `|x|`, and no smaller NFA does. This crate computes that measure
//! (`A_Ne`) together with its unique-path (`A_N`) and deterministic (`A_D`)
//! relatives, builds explicit upper-bound automata, and runs exhaustive
//! censuses of the low-complexity languages `L_q = { x : A_Ne(x) < q|x| }`.
//!
//! Every value this crate reports comes with a witness automaton that has
//! been re-verified by fixed-length word counting.

pub mod cache;
pub mod census;
pub mod constructions;
mod error;
pub mod nfa;
mod rational;
pub mod search;
pub mod words;

pub use error::{Error, Result};
pub use nfa::{Nfa, Run, StateSet, MAX_STATES};
pub use rational::RationalQ;
pub use search::{Certificate, Kind, SearchBudget};
pub use words::Word;
