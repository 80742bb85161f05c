//! Depth-first search over canonical runs with prefix pruning.
//!
//! A candidate witness is the path automaton of a state sequence. When the
//! prefix `q_0 .. q_i` has been fixed, its transitions are already part of
//! the final automaton, so if some word `y != x[..j]` of length `j <= i` can
//! reach `q_j` from `q_0`, then `y x[j..]` is accepted as well and the
//! prefix is dead. Per level we track the states reachable by `x[..j]`
//! (`own`) and by any other word of length `j` (`rivals`):
//!
//! ```text
//! own[j+1]    = δ(own[j], x_j)
//! rivals[j+1] = ⋃_a δ(rivals[j], a) ∪ ⋃_{a ≠ x_j} δ(own[j], a)
//! ```
//!
//! which keeps every check linear in the word length. For unique acceptance
//! the number of paths reading `x[..j]` into `q_j` must also stay at one.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::nfa::{bit, states_of, StateSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    Exact,
    Unique,
    Deterministic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Flow {
    Continue,
    Stop,
}

/// Search-node accounting shared between workers.
pub(crate) struct Meter {
    used: AtomicU64,
    limit: u64,
}

const FLUSH_EVERY: u64 = 256;

impl Meter {
    pub(crate) fn new(limit: u64) -> Self {
        Meter {
            used: AtomicU64::new(0),
            limit,
        }
    }

    fn charge(&self, nodes: u64) -> Result<()> {
        let used = self.used.fetch_add(nodes, Ordering::Relaxed) + nodes;
        if used > self.limit {
            Err(Error::BudgetExhausted(format!("more than {} search nodes", self.limit)))
        } else {
            Ok(())
        }
    }
}

/// Local tick counter flushed into a [`Meter`] in batches.
pub(crate) struct Ticker<'m> {
    meter: &'m Meter,
    pending: u64,
}

impl<'m> Ticker<'m> {
    pub(crate) fn new(meter: &'m Meter) -> Self {
        Ticker { meter, pending: 0 }
    }

    pub(crate) fn tick(&mut self) -> Result<()> {
        self.pending += 1;
        if self.pending >= FLUSH_EVERY {
            let pending = std::mem::take(&mut self.pending);
            self.meter.charge(pending)?;
        }
        Ok(())
    }
}

impl Drop for Ticker<'_> {
    fn drop(&mut self) {
        self.meter.used.fetch_add(self.pending, Ordering::Relaxed);
    }
}

pub(crate) struct Engine<'a, 'm> {
    pub(crate) x: &'a [u8],
    pub(crate) s: usize,
    pub(crate) k: usize,
    mode: Mode,
    /// Successor masks, `k * s` slots.
    pub(crate) succ: Vec<StateSet>,
    pub(crate) run: Vec<usize>,
    own: Vec<StateSet>,
    rivals: Vec<StateSet>,
    /// Saturating path counts per level and state (unique mode only).
    paths: Vec<u8>,
    leaf_depth: usize,
    pub(crate) ticker: Ticker<'m>,
}

impl<'a, 'm> Engine<'a, 'm> {
    pub(crate) fn new(x: &'a [u8], s: usize, k: usize, mode: Mode, meter: &'m Meter) -> Self {
        let n = x.len();
        Engine {
            x,
            s,
            k,
            mode,
            succ: vec![0; k * s],
            run: vec![0; n + 1],
            own: vec![0; n + 1],
            rivals: vec![0; n + 1],
            paths: if mode == Mode::Unique {
                vec![0; (n + 1) * k]
            } else {
                Vec::new()
            },
            leaf_depth: n,
            ticker: Ticker::new(meter),
        }
    }

    pub(crate) fn n(&self) -> usize {
        self.x.len()
    }

    fn step(&self, set: StateSet, symbol: usize) -> StateSet {
        states_of(set).fold(0, |acc, q| acc | self.succ[q * self.s + symbol])
    }

    /// Recomputes levels `from + 1 ..= to` from level `from`.
    fn fill(&mut self, from: usize, to: usize) {
        if from == 0 {
            self.own[0] = bit(0);
            self.rivals[0] = 0;
            if self.mode == Mode::Unique {
                self.paths[..self.k].fill(0);
                self.paths[0] = 1;
            }
        }
        for j in from..to {
            let c = self.x[j] as usize;
            let mut rivals = 0;
            for symbol in 0..self.s {
                rivals |= self.step(self.rivals[j], symbol);
                if symbol != c {
                    rivals |= self.step(self.own[j], symbol);
                }
            }
            self.rivals[j + 1] = rivals;
            self.own[j + 1] = self.step(self.own[j], c);
            if self.mode == Mode::Unique {
                let k = self.k;
                let (done, rest) = self.paths.split_at_mut((j + 1) * k);
                let current = &done[j * k..];
                let next = &mut rest[..k];
                next.fill(0);
                for (q, &count) in current.iter().enumerate() {
                    if count == 0 {
                        continue;
                    }
                    for t in states_of(self.succ[q * self.s + c]) {
                        next[t] = (next[t] + count).min(2);
                    }
                }
            }
        }
    }

    fn level_ok(&self, j: usize) -> bool {
        let q = self.run[j];
        self.rivals[j] & bit(q) == 0 && (self.mode != Mode::Unique || self.paths[j * self.k + q] == 1)
    }

    /// Loads a fixed run prefix; returns false if it is already dead.
    pub(crate) fn install_prefix(&mut self, prefix: &[usize]) -> bool {
        self.succ.fill(0);
        self.run[..prefix.len()].copy_from_slice(prefix);
        for i in 0..prefix.len() - 1 {
            let slot = prefix[i] * self.s + self.x[i] as usize;
            if self.mode == Mode::Deterministic && self.succ[slot] & !bit(prefix[i + 1]) != 0 {
                return false;
            }
            self.succ[slot] |= bit(prefix[i + 1]);
        }
        self.fill(0, prefix.len() - 1);
        (0..prefix.len()).all(|j| self.level_ok(j))
    }

    pub(crate) fn dfs<F>(&mut self, i: usize, labels: usize, on_leaf: &mut F) -> Result<Flow>
    where
        F: FnMut(&mut Self, usize) -> Result<Flow>,
    {
        if i == self.leaf_depth {
            return if i < self.n() || labels == self.k {
                on_leaf(self, labels)
            } else {
                Ok(Flow::Continue)
            };
        }
        let from = self.run[i];
        let slot = from * self.s + self.x[i] as usize;
        let (lo, hi) = if self.mode == Mode::Deterministic && self.succ[slot] != 0 {
            let forced = self.succ[slot].trailing_zeros() as usize;
            (forced, forced)
        } else {
            (0, labels.min(self.k - 1))
        };
        let remaining = self.n() - i - 1;
        for next in lo..=hi {
            let new_labels = labels.max(next + 1);
            if new_labels + remaining < self.k {
                continue;
            }
            self.ticker.tick()?;
            let fresh = self.succ[slot] & bit(next) == 0;
            self.succ[slot] |= bit(next);
            self.run[i + 1] = next;
            let alive = if fresh {
                self.fill(0, i + 1);
                (0..=i + 1).all(|j| self.level_ok(j))
            } else {
                self.fill(i, i + 1);
                self.level_ok(i + 1)
            };
            let flow = if alive {
                self.dfs(i + 1, new_labels, on_leaf)?
            } else {
                Flow::Continue
            };
            if fresh {
                self.succ[slot] &= !bit(next);
                self.fill(0, i);
            }
            if flow == Flow::Stop {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }
}

/// Scans runs with exactly `k` labels in lexicographic order and returns
/// the first value `leaf` produces. Leaves are runs whose path automaton
/// passes `mode`'s acceptance test; `succ` holds that automaton's successor
/// masks.
pub(crate) fn find_first<T, P>(
    x: &[u8],
    s: usize,
    k: usize,
    mode: Mode,
    meter: &Meter,
    parallel: bool,
    leaf: &P,
) -> Result<Option<T>>
where
    T: Send,
    P: Fn(&[usize], &[StateSet]) -> Result<Option<T>> + Sync,
{
    let n = x.len();
    if k == 0 || k > n + 1 {
        return Ok(None);
    }
    let scan = |engine: &mut Engine, depth: usize, labels: usize| -> Result<Option<T>> {
        let mut found = None;
        engine.dfs(depth, labels, &mut |e, _| match leaf(&e.run, &e.succ)? {
            Some(value) => {
                found = Some(value);
                Ok(Flow::Stop)
            }
            None => Ok(Flow::Continue),
        })?;
        Ok(found)
    };

    let split = 6.min(n);
    if !parallel || split < 3 {
        let mut engine = Engine::new(x, s, k, mode, meter);
        if !engine.install_prefix(&[0]) {
            return Ok(None);
        }
        return scan(&mut engine, 0, 1);
    }

    let mut prefixes: Vec<(Vec<usize>, usize)> = Vec::new();
    {
        let mut engine = Engine::new(x, s, k, mode, meter);
        engine.leaf_depth = split;
        if !engine.install_prefix(&[0]) {
            return Ok(None);
        }
        engine.dfs(0, 1, &mut |e, labels| {
            prefixes.push((e.run[..=split].to_vec(), labels));
            Ok(Flow::Continue)
        })?;
    }
    prefixes
        .par_iter()
        .find_map_first(|(prefix, labels)| {
            let mut engine = Engine::new(x, s, k, mode, meter);
            if !engine.install_prefix(prefix) {
                return None;
            }
            scan(&mut engine, split, *labels).transpose()
        })
        .transpose()
}
