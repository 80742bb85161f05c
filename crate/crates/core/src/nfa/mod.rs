//! Non-deterministic finite automata without ε-transitions, and the
//! fixed-length oracles that decide exact and unique acceptance.

mod count;
mod text;

use crate::error::{Error, Result};
use crate::words::{Word, MAX_ALPHABET, MIN_ALPHABET};

/// A set of states as a bitmask.
pub type StateSet = u64;

pub const MAX_STATES: usize = 64;

/// An NFA with a single start state. Transitions have set semantics and are
/// stored as one successor mask per `(state, symbol)` pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Nfa {
    num_states: usize,
    alphabet_size: usize,
    start: usize,
    accepts: StateSet,
    succ: Vec<StateSet>,
}

pub(crate) fn bit(state: usize) -> StateSet {
    1 << state
}

pub(crate) fn states_of(set: StateSet) -> impl Iterator<Item = usize> {
    let mut rest = set;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let state = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(state)
        }
    })
}

impl Nfa {
    pub fn new(num_states: usize, alphabet_size: usize, start: usize) -> Result<Self> {
        if num_states == 0 || num_states > MAX_STATES {
            return Err(Error::TooManyStates(num_states));
        }
        if !(MIN_ALPHABET..=MAX_ALPHABET).contains(&alphabet_size) {
            return Err(Error::InvalidAlphabet(alphabet_size));
        }
        let mut nfa = Nfa {
            num_states,
            alphabet_size,
            start: 0,
            accepts: 0,
            succ: vec![0; num_states * alphabet_size],
        };
        nfa.check_state(start)?;
        nfa.start = start;
        Ok(nfa)
    }

    fn check_state(&self, state: usize) -> Result<()> {
        if state < self.num_states {
            Ok(())
        } else {
            Err(Error::InvalidState {
                state,
                num_states: self.num_states,
            })
        }
    }

    fn check_symbol(&self, symbol: usize) -> Result<()> {
        if symbol < self.alphabet_size {
            Ok(())
        } else {
            Err(Error::InvalidSymbol {
                symbol,
                alphabet: self.alphabet_size,
            })
        }
    }

    pub(crate) fn check_word(&self, x: &Word) -> Result<()> {
        if x.alphabet_size() == self.alphabet_size {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                automaton: self.alphabet_size,
                word: x.alphabet_size(),
            })
        }
    }

    /// Adds `from --symbol--> to`; returns whether the triple was new.
    pub fn add_transition(&mut self, from: usize, symbol: usize, to: usize) -> Result<bool> {
        self.check_state(from)?;
        self.check_state(to)?;
        self.check_symbol(symbol)?;
        let slot = &mut self.succ[from * self.alphabet_size + symbol];
        let fresh = *slot & bit(to) == 0;
        *slot |= bit(to);
        Ok(fresh)
    }

    pub fn set_accepting(&mut self, state: usize) -> Result<()> {
        self.check_state(state)?;
        self.accepts |= bit(state);
        Ok(())
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accepts(&self) -> StateSet {
        self.accepts
    }

    pub fn accept_states(&self) -> Vec<usize> {
        states_of(self.accepts).collect()
    }

    pub fn successors(&self, state: usize, symbol: usize) -> StateSet {
        self.succ[state * self.alphabet_size + symbol]
    }

    /// Image of a state set under one symbol.
    pub fn step(&self, from: StateSet, symbol: usize) -> StateSet {
        states_of(from).fold(0, |acc, state| acc | self.successors(state, symbol))
    }

    /// Transition triples in lexicographic order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.num_states).flat_map(move |from| {
            (0..self.alphabet_size)
                .flat_map(move |symbol| states_of(self.successors(from, symbol)).map(move |to| (from, symbol, to)))
        })
    }

    pub fn num_transitions(&self) -> usize {
        self.succ.iter().map(|mask| mask.count_ones() as usize).sum()
    }

    pub fn is_deterministic(&self) -> bool {
        self.succ.iter().all(|mask| mask.count_ones() <= 1)
    }

    pub fn is_total(&self) -> bool {
        self.succ.iter().all(|&mask| mask != 0)
    }

    pub fn accepts_word(&self, x: &Word) -> Result<bool> {
        self.check_word(x)?;
        let reached = x
            .symbols()
            .iter()
            .fold(bit(self.start), |set, &c| self.step(set, c as usize));
        Ok(reached & self.accepts != 0)
    }

    /// The lexicographically least accepting run on `x`, if any.
    pub fn least_accepting_run(&self, x: &Word) -> Result<Option<Run>> {
        self.check_word(x)?;
        let s = x.symbols();
        let n = s.len();
        // alive[j]: states from which x[j..] leads to acceptance
        let mut alive = vec![0 as StateSet; n + 1];
        alive[n] = self.accepts;
        for j in (0..n).rev() {
            alive[j] = (0..self.num_states)
                .filter(|&q| self.successors(q, s[j] as usize) & alive[j + 1] != 0)
                .fold(0, |acc, q| acc | bit(q));
        }
        if alive[0] & bit(self.start) == 0 {
            return Ok(None);
        }
        let mut states = Vec::with_capacity(n + 1);
        states.push(self.start);
        for j in 0..n {
            let options = self.successors(states[j], s[j] as usize) & alive[j + 1];
            states.push(options.trailing_zeros() as usize);
        }
        Ok(Some(Run {
            states,
            word: x.clone(),
        }))
    }

    /// Transitions reversed, start and the single accept state swapped.
    pub fn reversed(&self) -> Result<Nfa> {
        if self.accepts.count_ones() != 1 {
            return Err(Error::precondition(format!(
                "reversal needs exactly one accept state, found {}",
                self.accepts.count_ones()
            )));
        }
        let accept = self.accepts.trailing_zeros() as usize;
        let mut rev = Nfa::new(self.num_states, self.alphabet_size, accept)?;
        for (from, symbol, to) in self.transitions() {
            rev.add_transition(to, symbol, from)?;
        }
        rev.set_accepting(self.start)?;
        Ok(rev)
    }
}

/// A state sequence `q_0 .. q_n` reading a word of length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    states: Vec<usize>,
    word: Word,
}

impl Run {
    pub fn new(states: Vec<usize>, word: Word) -> Result<Self> {
        if states.len() != word.len() + 1 {
            return Err(Error::precondition(format!(
                "a run on a word of length {} needs {} states, got {}",
                word.len(),
                word.len() + 1,
                states.len()
            )));
        }
        Ok(Run { states, word })
    }

    pub fn states(&self) -> &[usize] {
        &self.states
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// Every step `(q_i, x_i, q_{i+1})` is a transition of `nfa`.
    pub fn is_licensed_by(&self, nfa: &Nfa) -> bool {
        self.word.alphabet_size() == nfa.alphabet_size()
            && self.states.iter().all(|&q| q < nfa.num_states())
            && self
                .word
                .symbols()
                .iter()
                .enumerate()
                .all(|(i, &c)| nfa.successors(self.states[i], c as usize) & bit(self.states[i + 1]) != 0)
    }

    pub fn is_accepting_in(&self, nfa: &Nfa) -> bool {
        self.is_licensed_by(nfa)
            && self.states[0] == nfa.start()
            && nfa.accepts() & bit(*self.states.last().unwrap()) != 0
    }

    /// Same state sequence with labels renumbered by first appearance.
    pub fn canonical(&self) -> Run {
        let mut relabel: Vec<Option<usize>> = Vec::new();
        let mut next = 0;
        let states = self
            .states
            .iter()
            .map(|&q| {
                if q >= relabel.len() {
                    relabel.resize(q + 1, None);
                }
                *relabel[q].get_or_insert_with(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        Run {
            states,
            word: self.word.clone(),
        }
    }

    pub fn distinct_states(&self) -> usize {
        let mut seen = self.states.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// The run read backwards over the reversed word.
    pub fn reversed(&self) -> Run {
        let mut states = self.states.clone();
        states.reverse();
        Run {
            states,
            word: self.word.reverse(),
        }
    }
}

/// The automaton made of exactly the states and transitions a run uses,
/// starting at `q_0` and accepting only `q_n`. States are renumbered by
/// first appearance.
pub fn path_automaton(run: &Run) -> Result<Nfa> {
    let canon = run.canonical();
    let states = canon.states();
    let num_states = canon.distinct_states();
    if num_states > MAX_STATES {
        return Err(Error::TooManyStates(num_states));
    }
    let mut nfa = Nfa::new(num_states, run.word().alphabet_size(), states[0])?;
    for (i, &c) in run.word().symbols().iter().enumerate() {
        nfa.add_transition(states[i], c as usize, states[i + 1])?;
    }
    nfa.set_accepting(*states.last().unwrap())?;
    Ok(nfa)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    pub(crate) fn cycle01() -> Nfa {
        let mut m = Nfa::new(2, 2, 0).unwrap();
        m.add_transition(0, 0, 1).unwrap();
        m.add_transition(1, 1, 0).unwrap();
        m.set_accepting(0).unwrap();
        m
    }

    pub(crate) fn all_loops() -> Nfa {
        let mut m = Nfa::new(1, 2, 0).unwrap();
        m.add_transition(0, 0, 0).unwrap();
        m.add_transition(0, 1, 0).unwrap();
        m.set_accepting(0).unwrap();
        m
    }

    #[test]
    fn acceptance_examples() {
        assert!(all_loops().accepts_word(&w("0110")).unwrap());
        assert!(cycle01().accepts_word(&w("0101")).unwrap());
        assert!(!cycle01().accepts_word(&w("0110")).unwrap());
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let x = Word::parse("01", 3).unwrap();
        assert!(matches!(
            cycle01().accepts_word(&x),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn construction_checks_ranges() {
        assert!(Nfa::new(0, 2, 0).is_err());
        assert!(Nfa::new(65, 2, 0).is_err());
        assert!(Nfa::new(2, 2, 2).is_err());
        let mut m = Nfa::new(2, 2, 0).unwrap();
        assert!(m.add_transition(0, 2, 1).is_err());
        assert!(m.add_transition(0, 1, 1).unwrap());
        assert!(!m.add_transition(0, 1, 1).unwrap());
        assert_eq!(m.num_transitions(), 1);
    }

    #[test]
    fn path_automaton_examples() {
        let m = path_automaton(&Run::new(vec![0, 0, 0], w("00")).unwrap()).unwrap();
        assert_eq!(m.num_states(), 1);
        assert_eq!(m.transitions().collect::<Vec<_>>(), vec![(0, 0, 0)]);

        let m = path_automaton(&Run::new(vec![0, 1, 0, 1], w("010")).unwrap()).unwrap();
        assert_eq!(m.num_states(), 2);
        assert_eq!(m.transitions().collect::<Vec<_>>(), vec![(0, 0, 1), (1, 1, 0)]);
        assert_eq!(m.accept_states(), vec![1]);
    }

    #[test]
    fn path_automaton_relabels() {
        let run = Run::new(vec![5, 2, 5], w("01")).unwrap();
        assert_eq!(run.canonical().states(), &[0, 1, 0]);
        let m = path_automaton(&run).unwrap();
        assert!(run.canonical().is_accepting_in(&m));
    }

    #[test]
    fn least_run_is_lexicographic() {
        // two parallel branches on 0; the run through state 1 is least
        let mut m = Nfa::new(3, 2, 0).unwrap();
        m.add_transition(0, 0, 2).unwrap();
        m.add_transition(0, 0, 1).unwrap();
        m.set_accepting(1).unwrap();
        m.set_accepting(2).unwrap();
        let run = m.least_accepting_run(&w("0")).unwrap().unwrap();
        assert_eq!(run.states(), &[0, 1]);
        assert!(m.least_accepting_run(&w("1")).unwrap().is_none());
    }

    #[test]
    fn reversal_swaps_roles() {
        let rev = cycle01().reversed().unwrap();
        assert_eq!(rev.transitions().collect::<Vec<_>>(), vec![(0, 1, 1), (1, 0, 0)]);
        assert_eq!(rev.reversed().unwrap(), cycle01());
        let mut two = cycle01();
        two.set_accepting(1).unwrap();
        assert!(two.reversed().is_err());
    }

    #[test]
    fn run_length_checked() {
        assert!(Run::new(vec![0, 1], w("01")).is_err());
    }
}
