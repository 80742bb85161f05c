//! Slow searches with no pruning, used to cross-check the main engine.
//!
//! None of these share code with the pruned search: the NFA references try
//! every state sequence over `[0, k)` with `q_0 = 0` and decide exactness by
//! subset counting; the DFA reference enumerates complete tables in
//! breadth-first canonical numbering and counts words per state.

use std::collections::BTreeMap;

use super::{Certificate, Kind};
use crate::error::{Error, Result};
use crate::nfa::{path_automaton, Nfa, Run};
use crate::words::Word;

fn too_long(x: &Word, max: usize) -> Result<()> {
    if x.len() > max {
        Err(Error::precondition(format!(
            "reference search limited to length {max}, got {}",
            x.len()
        )))
    } else {
        Ok(())
    }
}

/// Longest word the sequence-enumerating references accept.
pub const REFERENCE_NFA_MAX_LEN: usize = 10;
/// Longest word the DFA-table reference accepts.
pub const REFERENCE_DFA_MAX_LEN: usize = 10;

fn reference_sequences(x: &Word, kind: Kind) -> Result<Certificate> {
    too_long(x, REFERENCE_NFA_MAX_LEN)?;
    let n = x.len();
    for k in 1..=n + 1 {
        let mut states = vec![0usize; n + 1];
        loop {
            let run = Run::new(states.clone(), x.clone())?;
            let nfa = path_automaton(&run)?;
            let ok = match kind {
                Kind::Ane => nfa.is_exact_acceptor(x)?,
                _ => nfa.is_unique_acceptor(x)?,
            };
            if ok {
                return Certificate::verify(kind, x, nfa);
            }
            // odometer over q_1 .. q_n
            let mut i = n;
            while i >= 1 && states[i] + 1 == k {
                states[i] = 0;
                i -= 1;
            }
            if i == 0 {
                break;
            }
            states[i] += 1;
        }
    }
    unreachable!("the all-distinct run is always exact")
}

/// `A_Ne(x)` by trying every state sequence.
pub fn reference_a_ne(x: &Word) -> Result<Certificate> {
    reference_sequences(x, Kind::Ane)
}

/// `A_N(x)` by trying every state sequence.
pub fn reference_a_n(x: &Word) -> Result<Certificate> {
    reference_sequences(x, Kind::An)
}

/// `A_D(x)` over all complete, accessible DFAs with `k` states, numbered
/// in breadth-first order, accepting the state `x` leads to.
pub fn reference_a_d(x: &Word) -> Result<Certificate> {
    too_long(x, REFERENCE_DFA_MAX_LEN)?;
    let s = x.alphabet_size();
    for k in 1..=x.len() + 2 {
        let mut table = vec![0usize; k * s];
        if let Some(accept) = dfa_tables(&mut table, 0, 0, k, s, x) {
            let mut nfa = Nfa::new(k, s, 0)?;
            for (slot, &to) in table.iter().enumerate() {
                nfa.add_transition(slot / s, slot % s, to)?;
            }
            nfa.set_accepting(accept)?;
            return Certificate::verify(Kind::Ad, x, nfa);
        }
    }
    unreachable!("a chain with a dead state is always exact")
}

fn dfa_tables(table: &mut [usize], slot: usize, max_label: usize, k: usize, s: usize, x: &Word) -> Option<usize> {
    if slot == table.len() {
        return (max_label + 1 == k).then(|| dfa_exact(table, k, s, x)).flatten();
    }
    if slot / s > max_label {
        return None;
    }
    for target in 0..=(max_label + 1).min(k - 1) {
        table[slot] = target;
        if let Some(accept) = dfa_tables(table, slot + 1, max_label.max(target), k, s, x) {
            return Some(accept);
        }
    }
    None
}

fn dfa_exact(table: &[usize], k: usize, s: usize, x: &Word) -> Option<usize> {
    let end = x.symbols().iter().fold(0, |q, &c| table[q * s + c as usize]);
    let mut counts = vec![0u64; k];
    counts[0] = 1;
    for _ in 0..x.len() {
        let mut next = vec![0u64; k];
        for (q, &c) in counts.iter().enumerate() {
            for symbol in 0..s {
                next[table[q * s + symbol]] += c;
            }
        }
        counts = next;
    }
    (counts[end] == 1).then_some(end)
}

/// Every word of length `n` exactly accepted by some NFA with at most
/// `max_states` states, mapped to the least such state count.
///
/// Enumerates all transition relations and all non-empty accept sets, so
/// the cost is `2^(k·k·s)` automata per state count `k`.
pub fn small_nfa_words(n: usize, s: usize, max_states: usize) -> Result<BTreeMap<Word, usize>> {
    if max_states * max_states * s > 24 {
        return Err(Error::precondition(format!(
            "{max_states} states over {s} symbols is too many relations to enumerate"
        )));
    }
    let mut found: BTreeMap<Word, usize> = BTreeMap::new();
    for k in 1..=max_states {
        let triples = k * k * s;
        for relation in 0u64..(1 << triples) {
            let succ: Vec<u64> = (0..k * s)
                .map(|slot| (relation >> (slot * k)) & ((1 << k) - 1))
                .collect();
            let reach = DenseCounts::new(&succ, k, s, n);
            for accepts in 1u64..(1 << k) {
                if let Some(word) = reach.unique_word(accepts)? {
                    found.entry(word).or_insert(k);
                }
            }
        }
    }
    Ok(found)
}

/// Subset counts per level for a small NFA, indexed densely by subset.
struct DenseCounts<'a> {
    succ: &'a [u64],
    k: usize,
    s: usize,
    levels: Vec<Vec<u64>>,
}

impl<'a> DenseCounts<'a> {
    fn new(succ: &'a [u64], k: usize, s: usize, n: usize) -> Self {
        let size = 1usize << k;
        let mut levels = vec![vec![0u64; size]];
        levels[0][1] = 1;
        for j in 0..n {
            let mut next = vec![0u64; size];
            for (subset, &count) in levels[j].iter().enumerate() {
                if count == 0 {
                    continue;
                }
                for symbol in 0..s {
                    let image = Self::image(succ, k, s, subset as u64, symbol);
                    if image != 0 {
                        next[image as usize] = (next[image as usize] + count).min(2);
                    }
                }
            }
            levels.push(next);
        }
        DenseCounts { succ, k, s, levels }
    }

    fn image(succ: &[u64], k: usize, s: usize, subset: u64, symbol: usize) -> u64 {
        (0..k)
            .filter(|&q| subset >> q & 1 == 1)
            .fold(0, |acc, q| acc | succ[q * s + symbol])
    }

    fn unique_word(&self, accepts: u64) -> Result<Option<Word>> {
        let n = self.levels.len() - 1;
        let total: u64 = self.levels[n]
            .iter()
            .enumerate()
            .filter(|(subset, _)| *subset as u64 & accepts != 0)
            .map(|(_, &c)| c)
            .sum();
        if total != 1 {
            return Ok(None);
        }
        // alive[j]: states that reach an accept state in exactly n - j steps
        let mut alive = vec![0u64; n + 1];
        alive[n] = accepts;
        for j in (0..n).rev() {
            alive[j] = (0..self.k)
                .filter(|&q| (0..self.s).any(|a| self.succ[q * self.s + a] & alive[j + 1] != 0))
                .fold(0, |acc, q| acc | 1 << q);
        }
        let mut current = 1u64;
        let mut symbols = Vec::with_capacity(n);
        for j in 0..n {
            let symbol = (0..self.s)
                .find(|&a| Self::image(self.succ, self.k, self.s, current, a) & alive[j + 1] != 0)
                .expect("a unique accepted word continues");
            symbols.push(symbol as u8);
            current = Self::image(self.succ, self.k, self.s, current, symbol);
        }
        Ok(Some(Word::new(symbols, self.s)?))
    }
}
