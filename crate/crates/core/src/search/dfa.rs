//! Completing a partial deterministic table to a total one without
//! breaking exact acceptance.

use super::engine::Ticker;
use crate::error::Result;
use crate::nfa::{bit, StateSet};

/// Whether `q_n`, the state `x` leads to, is reached by no other word of
/// length `|x|`. Only ever called on tables where `x` itself is defined.
fn exact_at(succ: &[StateSet], s: usize, x: &[u8], accept: usize) -> bool {
    let mut own = 0usize;
    let mut rivals: StateSet = 0;
    for &c in x {
        let mut next: StateSet = 0;
        let mut rest = rivals;
        while rest != 0 {
            let q = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            for symbol in 0..s {
                next |= succ[q * s + symbol];
            }
        }
        for symbol in 0..s {
            if symbol != c as usize {
                next |= succ[own * s + symbol];
            }
        }
        rivals = next;
        own = succ[own * s + c as usize].trailing_zeros() as usize;
    }
    debug_assert_eq!(own, accept);
    rivals & bit(accept) == 0
}

/// Fills every undefined slot of `succ` (a deterministic partial table over
/// `k` states) so that the automaton accepting only `accept` stays exact.
/// Returns the lexicographically least such total table.
pub(crate) fn complete(
    succ: &[StateSet],
    s: usize,
    k: usize,
    x: &[u8],
    accept: usize,
    ticker: &mut Ticker,
) -> Result<Option<Vec<StateSet>>> {
    let mut table = succ.to_vec();
    if !exact_at(&table, s, x, accept) {
        return Ok(None);
    }
    let missing: Vec<usize> = (0..table.len()).filter(|&slot| table[slot] == 0).collect();
    if fill(&mut table, &missing, s, k, x, accept, ticker)? {
        Ok(Some(table))
    } else {
        Ok(None)
    }
}

fn fill(
    table: &mut [StateSet],
    missing: &[usize],
    s: usize,
    k: usize,
    x: &[u8],
    accept: usize,
    ticker: &mut Ticker,
) -> Result<bool> {
    let Some((&slot, rest)) = missing.split_first() else {
        return Ok(true);
    };
    for target in 0..k {
        ticker.tick()?;
        table[slot] = bit(target);
        // adding transitions only adds words, so a failure here is final
        if exact_at(table, s, x, accept) && fill(table, rest, s, k, x, accept, ticker)? {
            return Ok(true);
        }
    }
    table[slot] = 0;
    Ok(false)
}
