use std::collections::HashMap;

use super::{bit, states_of, Nfa, StateSet};
use crate::error::{Error, Result};
use crate::words::Word;

fn check_cap(cap: u64) -> Result<()> {
    if cap < 2 {
        Err(Error::precondition(format!(
            "counter cap must be at least 2, got {cap}"
        )))
    } else {
        Ok(())
    }
}

impl Nfa {
    /// Level maps of the on-the-fly subset construction: reachable subsets
    /// after `n` symbols, each with the number of words leading to it.
    /// Distinct words reach distinct subset paths, so summing the counts of
    /// subsets meeting the accept set counts accepted words.
    fn subset_levels<C, F>(&self, n: usize, add: F) -> HashMap<StateSet, C>
    where
        C: Copy + From<u8>,
        F: Fn(C, C) -> C,
    {
        let mut level: HashMap<StateSet, C> = HashMap::new();
        level.insert(bit(self.start), C::from(1));
        for _ in 0..n {
            let mut next: HashMap<StateSet, C> = HashMap::with_capacity(level.len() * 2);
            for (&subset, &count) in &level {
                for symbol in 0..self.alphabet_size {
                    let image = self.step(subset, symbol);
                    if image != 0 {
                        next.entry(image).and_modify(|c| *c = add(*c, count)).or_insert(count);
                    }
                }
            }
            level = next;
        }
        level
    }

    /// `|L(M) ∩ Σ^n|`, saturated at `cap`.
    pub fn count_accepted_words(&self, n: usize, cap: u64) -> Result<u64> {
        check_cap(cap)?;
        let level = self.subset_levels(n, |a: u64, b: u64| a.saturating_add(b).min(cap));
        Ok(level
            .iter()
            .filter(|(&subset, _)| subset & self.accepts != 0)
            .fold(0u64, |acc, (_, &count)| acc.saturating_add(count).min(cap)))
    }

    /// `|L(M) ∩ Σ^n|` without saturation; `None` if it exceeds `u128`.
    pub fn count_accepted_words_exact(&self, n: usize) -> Option<u128> {
        let overflowed = std::cell::Cell::new(false);
        let level = self.subset_levels(n, |a: u128, b: u128| {
            a.checked_add(b).unwrap_or_else(|| {
                overflowed.set(true);
                u128::MAX
            })
        });
        let total = level
            .iter()
            .filter(|(&subset, _)| subset & self.accepts != 0)
            .try_fold(0u128, |acc, (_, &count)| acc.checked_add(count));
        if overflowed.get() {
            None
        } else {
            total
        }
    }

    /// Number of accepting runs on `x`, saturated at `cap`.
    pub fn count_accepting_paths(&self, x: &Word, cap: u64) -> Result<u64> {
        check_cap(cap)?;
        self.check_word(x)?;
        let mut paths = vec![0u64; self.num_states];
        paths[self.start] = 1;
        for &c in x.symbols() {
            let mut next = vec![0u64; self.num_states];
            for (from, &count) in paths.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                for to in states_of(self.successors(from, c as usize)) {
                    next[to] = next[to].saturating_add(count).min(cap);
                }
            }
            paths = next;
        }
        Ok(states_of(self.accepts).fold(0u64, |acc, q| acc.saturating_add(paths[q]).min(cap)))
    }

    /// Accepts `x` and no other word of length `|x|`.
    pub fn is_exact_acceptor(&self, x: &Word) -> Result<bool> {
        Ok(self.accepts_word(x)? && self.count_accepted_words(x.len(), 2)? == 1)
    }

    /// Exact acceptance with a single accepting run.
    pub fn is_unique_acceptor(&self, x: &Word) -> Result<bool> {
        Ok(self.is_exact_acceptor(x)? && self.count_accepting_paths(x, 2)? == 1)
    }

    /// States reached by `x` itself, and states reached by some other word
    /// of the same length.
    ///
    /// This is a linear-time exactness test independent of the subset
    /// construction: `M` exactly accepts `x` iff the first set meets the
    /// accept states and the second does not.
    pub fn rival_states(&self, x: &Word) -> Result<(StateSet, StateSet)> {
        self.check_word(x)?;
        let mut own = bit(self.start);
        let mut rivals: StateSet = 0;
        for &c in x.symbols() {
            let mut next_rivals = 0;
            for symbol in 0..self.alphabet_size {
                next_rivals |= self.step(rivals, symbol);
                if symbol != c as usize {
                    next_rivals |= self.step(own, symbol);
                }
            }
            own = self.step(own, c as usize);
            rivals = next_rivals;
        }
        Ok((own, rivals))
    }

    pub fn is_exact_acceptor_fast(&self, x: &Word) -> Result<bool> {
        let (own, rivals) = self.rival_states(x)?;
        Ok(own & self.accepts != 0 && rivals & self.accepts == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{all_loops, cycle01, w};
    use super::super::{path_automaton, Run};
    use super::*;

    #[test]
    fn word_counts() {
        assert_eq!(all_loops().count_accepted_words(3, 1000).unwrap(), 8);
        assert_eq!(all_loops().count_accepted_words(3, 2).unwrap(), 2);
        assert_eq!(all_loops().count_accepted_words_exact(100), Some(1u128 << 100));
        assert_eq!(cycle01().count_accepted_words(4, 2).unwrap(), 1);
        assert_eq!(cycle01().count_accepted_words(3, 2).unwrap(), 0);
        assert!(cycle01().count_accepted_words(3, 1).is_err());
    }

    #[test]
    fn path_counts() {
        assert_eq!(cycle01().count_accepting_paths(&w("0101"), 2).unwrap(), 1);
        let mut m = Nfa::new(3, 2, 0).unwrap();
        m.add_transition(0, 0, 1).unwrap();
        m.add_transition(0, 0, 2).unwrap();
        m.set_accepting(1).unwrap();
        m.set_accepting(2).unwrap();
        assert_eq!(m.count_accepting_paths(&w("0"), 10).unwrap(), 2);
        assert!(m.is_exact_acceptor(&w("0")).unwrap());
        assert!(!m.is_unique_acceptor(&w("0")).unwrap());
    }

    #[test]
    fn exactness_examples() {
        assert!(cycle01().is_exact_acceptor(&w("0101")).unwrap());
        assert!(!all_loops().is_exact_acceptor(&w("01")).unwrap());
        let m = path_automaton(&Run::new(vec![0, 1, 0, 1], w("010")).unwrap()).unwrap();
        assert!(m.is_exact_acceptor(&w("010")).unwrap());
        assert!(m.is_exact_acceptor_fast(&w("010")).unwrap());
        assert!(cycle01().is_unique_acceptor(&w("0101")).unwrap());
    }

    #[test]
    fn reversal_of_cycle() {
        let rev = cycle01().reversed().unwrap();
        assert!(rev.is_exact_acceptor(&w("1010")).unwrap());
        assert_eq!(rev.count_accepted_words(4, 100).unwrap(), 1);
    }
}
