//! Exact computation of `A_Ne`, `A_N` and `A_D`.
//!
//! A minimal exact acceptor can always be cut down to the states and
//! transitions of one accepting run, accepting only the run's last state.
//! The search therefore walks restricted-growth state sequences over `x`,
//! `k = 1, 2, ...`, and stops at the first whose path automaton passes the
//! acceptance test. Every witness is re-checked by subset counting before it
//! is returned.

mod dfa;
mod engine;
pub mod reference;
mod runs;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::cache::ComplexityCache;
use crate::error::{Error, Result};
use crate::nfa::{path_automaton, Nfa, Run, StateSet, MAX_STATES};
use crate::words::Word;
use engine::{find_first, Meter, Mode, Ticker};

pub use runs::{enumerate_canonical_runs, CanonicalRuns};

/// Longest word `a_d` accepts unless the budget raises the cap.
pub const DEFAULT_AD_LENGTH_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Kind {
    #[serde(rename = "ane")]
    Ane,
    #[serde(rename = "an")]
    An,
    #[serde(rename = "ad")]
    Ad,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Ane, Kind::An, Kind::Ad];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Ane => "ane",
            Kind::An => "an",
            Kind::Ad => "ad",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ane" | "a_ne" => Ok(Kind::Ane),
            "an" | "a_n" => Ok(Kind::An),
            "ad" | "a_d" => Ok(Kind::Ad),
            _ => Err(Error::precondition(format!(
                "unknown complexity kind {s:?} (expected ane, an or ad)"
            ))),
        }
    }
}

/// A complexity value with its witness and the counts that certify it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub kind: Kind,
    pub word: Word,
    pub value: usize,
    pub witness: Nfa,
    /// The lexicographically least accepting run of the witness on `word`.
    pub run: Run,
    /// Accepted words of length `|word|`, saturated at 2.
    pub word_count_at_n: u64,
    /// Accepting runs on `word`, saturated at 2.
    pub path_count: u64,
}

impl Certificate {
    /// Checks `witness` against `kind`'s acceptance condition for `word`.
    /// The value is the witness's state count.
    pub fn verify(kind: Kind, word: &Word, witness: Nfa) -> Result<Certificate> {
        let fail = |what: &str| {
            Err(Error::Verification(format!(
                "{}-state witness for {kind}({word:?}) {what}",
                witness.num_states()
            )))
        };
        let Some(run) = witness.least_accepting_run(word)? else {
            return fail("does not accept the word");
        };
        let word_count_at_n = witness.count_accepted_words(word.len(), 2)?;
        let path_count = witness.count_accepting_paths(word, 2)?;
        if word_count_at_n != 1 {
            return fail("accepts other words of the same length");
        }
        if kind == Kind::An && path_count != 1 {
            return fail("has more than one accepting run");
        }
        if kind == Kind::Ad && !(witness.is_deterministic() && witness.is_total()) {
            return fail("is not a complete DFA");
        }
        Ok(Certificate {
            kind,
            word: word.clone(),
            value: witness.num_states(),
            witness,
            run,
            word_count_at_n,
            path_count,
        })
    }
}

/// Limits and resources for one search.
#[derive(Debug, Clone)]
pub struct SearchBudget {
    /// Largest state count to try. `None` means the trivial bound
    /// (`|x| + 1`, or `|x| + 2` for `A_D`), which always has a witness.
    pub max_states: Option<usize>,
    /// Search nodes allowed per word.
    pub max_nodes: u64,
    /// Workers for the run stream of a single word; 1 is sequential.
    pub parallelism: usize,
    /// Longest word accepted by `a_d`.
    pub ad_length_cap: usize,
    pub cache: Option<Arc<ComplexityCache>>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_states: None,
            max_nodes: 50_000_000_000,
            parallelism: 1,
            ad_length_cap: DEFAULT_AD_LENGTH_CAP,
            cache: None,
        }
    }
}

impl SearchBudget {
    pub fn with_max_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn with_max_states(mut self, max_states: usize) -> Self {
        self.max_states = Some(max_states);
        self
    }

    pub fn with_parallelism(mut self, parallelism: usize) -> Self {
        self.parallelism = parallelism;
        self
    }

    pub fn with_cache(mut self, cache: Arc<ComplexityCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    /// Same limits, no cache.
    pub fn without_cache(&self) -> Self {
        SearchBudget {
            cache: None,
            ..self.clone()
        }
    }

    fn check(&self) -> Result<()> {
        if self.max_nodes == 0 {
            return Err(Error::precondition("the node limit must be at least 1"));
        }
        if self.max_states == Some(0) {
            return Err(Error::precondition("max_states must be at least 1"));
        }
        Ok(())
    }
}

/// Exact non-deterministic automatic complexity `A_Ne(x)`.
pub fn a_ne(x: &Word, budget: &SearchBudget) -> Result<Certificate> {
    complexity(Kind::Ane, x, budget)
}

/// Unique-path complexity `A_N(x)`.
pub fn a_n(x: &Word, budget: &SearchBudget) -> Result<Certificate> {
    complexity(Kind::An, x, budget)
}

/// Deterministic complexity `A_D(x)` over complete DFAs.
pub fn a_d(x: &Word, budget: &SearchBudget) -> Result<Certificate> {
    complexity(Kind::Ad, x, budget)
}

pub fn complexity(kind: Kind, x: &Word, budget: &SearchBudget) -> Result<Certificate> {
    budget.check()?;
    if kind == Kind::Ad && x.len() > budget.ad_length_cap {
        return Err(Error::precondition(format!(
            "a_d is capped at length {}, got a word of length {}",
            budget.ad_length_cap,
            x.len()
        )));
    }
    if let Some(cache) = &budget.cache {
        if let Some(cert) = cache.get(x, kind)? {
            return Ok(cert);
        }
    }
    let cert = match kind {
        Kind::Ane => search_path_automata(x, Mode::Exact, kind, budget)?,
        Kind::An => search_path_automata(x, Mode::Unique, kind, budget)?,
        Kind::Ad => search_dfa(x, budget)?,
    };
    if let Some(cache) = &budget.cache {
        cache.insert(&cert);
    }
    Ok(cert)
}

fn exhausted_states(x: &Word, limit: usize) -> Error {
    Error::BudgetExhausted(format!("no witness for {x:?} with at most {limit} states"))
}

fn search_path_automata(x: &Word, mode: Mode, kind: Kind, budget: &SearchBudget) -> Result<Certificate> {
    let n = x.len();
    let limit = budget.max_states.unwrap_or(n + 1).min(MAX_STATES);
    let meter = Meter::new(budget.max_nodes);
    let parallel = budget.parallelism > 1;
    for k in 1..=limit.min(n + 1) {
        let found = find_first(x.symbols(), x.alphabet_size(), k, mode, &meter, parallel, &|run, _| {
            Ok(Some(run.to_vec()))
        })?;
        if let Some(states) = found {
            let witness = path_automaton(&Run::new(states, x.clone())?)?;
            return Certificate::verify(kind, x, witness);
        }
    }
    Err(exhausted_states(x, limit))
}

fn table_automaton(table: &[StateSet], k: usize, s: usize, accept: usize) -> Result<Nfa> {
    let mut nfa = Nfa::new(k, s, 0)?;
    for (slot, &mask) in table.iter().enumerate() {
        for to in crate::nfa::states_of(mask) {
            nfa.add_transition(slot / s, slot % s, to)?;
        }
    }
    nfa.set_accepting(accept)?;
    Ok(nfa)
}

/// Deterministic runs are walked like the non-deterministic ones. A run on
/// `k` labels whose partial table can be completed inside those `k` states
/// gives `A_D <= k`; any exact deterministic run on `k` labels gives
/// `A_D <= k + 1` by sending every missing transition to a dead state. A
/// minimal DFA falls into one of the two cases: either its run visits every
/// state, or the states it skips can be merged into one dead state.
fn search_dfa(x: &Word, budget: &SearchBudget) -> Result<Certificate> {
    let n = x.len();
    let s = x.alphabet_size();
    let limit = budget.max_states.unwrap_or(n + 2).min(MAX_STATES);
    let meter = Meter::new(budget.max_nodes);
    let parallel = budget.parallelism > 1;
    let mut fallback: Option<Vec<usize>> = None;
    for k in 1..=limit {
        if let Some(states) = fallback.take() {
            let mut table = vec![0 as StateSet; k * s];
            for (i, &c) in x.symbols().iter().enumerate() {
                table[states[i] * s + c as usize] = 1 << states[i + 1];
            }
            let dead = k - 1;
            for mask in table.iter_mut().filter(|m| **m == 0) {
                *mask = 1 << dead;
            }
            let witness = table_automaton(&table, k, s, states[n])?;
            return Certificate::verify(Kind::Ad, x, witness);
        }
        if k > n + 1 {
            continue;
        }
        let least_exact: Mutex<Option<Vec<usize>>> = Mutex::new(None);
        let found = find_first(
            x.symbols(),
            s,
            k,
            Mode::Deterministic,
            &meter,
            parallel,
            &|run, succ| {
                {
                    let mut least = least_exact.lock().unwrap();
                    if least.as_ref().is_none_or(|l| run < l.as_slice()) {
                        *least = Some(run.to_vec());
                    }
                }
                let mut ticker = Ticker::new(&meter);
                Ok(dfa::complete(succ, s, k, x.symbols(), run[n], &mut ticker)?.map(|t| (t, run[n])))
            },
        )?;
        if let Some((table, accept)) = found {
            let witness = table_automaton(&table, k, s, accept)?;
            return Certificate::verify(Kind::Ad, x, witness);
        }
        fallback = least_exact.into_inner().unwrap();
    }
    Err(exhausted_states(x, limit))
}
