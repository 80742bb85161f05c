//! Explicit automata that witness upper bounds on `A_Ne`.
//!
//! Every constructor here checks its own output with the subset-counting
//! oracle and reports the outcome next to the automaton.

mod gap;
mod power;
mod primes;
mod pumping;

pub use gap::{gap_automaton, Gap, GapPlan};
pub use power::power_automaton;
pub use primes::{bertrand_prime, is_prime, next_prime};
pub use pumping::{pumping_automaton, PumpingPlan, PumpingReport};

use crate::error::Result;
use crate::nfa::Nfa;
use crate::words::Word;

/// Incrementally laid out automaton made of chains and cycles.
struct Layout {
    alphabet: usize,
    states: usize,
    edges: Vec<(usize, usize, usize)>,
}

impl Layout {
    fn new(alphabet: usize) -> Self {
        Layout {
            alphabet,
            states: 1,
            edges: Vec::new(),
        }
    }

    fn fresh(&mut self) -> usize {
        self.states += 1;
        self.states - 1
    }

    /// Spells `w` from `from` through fresh states; returns the last state.
    fn chain(&mut self, from: usize, w: &Word) -> usize {
        let mut at = from;
        for &c in w.symbols() {
            let next = self.fresh();
            self.edges.push((at, c as usize, next));
            at = next;
        }
        at
    }

    /// A loop spelling `w` that leaves from and returns to `at`.
    fn cycle(&mut self, at: usize, w: &Word) {
        let mut current = at;
        for (i, &c) in w.symbols().iter().enumerate() {
            let next = if i + 1 == w.len() { at } else { self.fresh() };
            self.edges.push((current, c as usize, next));
            current = next;
        }
    }

    fn build(&self, accept: usize) -> Result<Nfa> {
        let mut nfa = Nfa::new(self.states, self.alphabet, 0)?;
        for &(from, symbol, to) in &self.edges {
            nfa.add_transition(from, symbol, to)?;
        }
        nfa.set_accepting(accept)?;
        Ok(nfa)
    }
}
