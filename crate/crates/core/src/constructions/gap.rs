use serde::Serialize;

use super::primes::next_prime;
use super::Layout;
use crate::error::{Error, Result};
use crate::nfa::{Nfa, MAX_STATES};
use crate::rational::RationalQ;
use crate::words::{supp, Word};

/// One zero-run of `x` carried by a `0^Q`-loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gap {
    pub start: usize,
    pub length: usize,
    pub prime: u64,
    /// Product of the other primes.
    pub period: u64,
    /// Loop traversals, `length div period`.
    pub a: u64,
    /// Leftover zeros, `length mod period`.
    pub r: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapPlan {
    pub word: Word,
    pub q: RationalQ,
    pub c: usize,
    pub primes: Vec<u64>,
    pub periods: Vec<u64>,
    pub gaps: Vec<Gap>,
    /// Blocks between gaps: `x = w_0 0^{l_1} w_1 ... 0^{l_k} w_k`.
    pub blocks: Vec<Word>,
    pub valid: bool,
    pub reasons: Vec<String>,
    /// `p_i` divides every other period but not `Q_i`.
    pub divisibility_ok: bool,
    pub states: usize,
    /// `3·k·c·Q_1` for `k` gaps.
    pub state_bound: u64,
    pub within_state_bound: bool,
    /// `states < q·|x|`.
    pub witnesses_lq: bool,
    /// Subset-count verdict on the built automaton; `None` if not built.
    pub exact: Option<bool>,
}

fn zero_runs(x: &Word) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let s = x.symbols();
    let mut i = 0;
    while i < s.len() {
        if s[i] == 0 {
            let start = i;
            while i < s.len() && s[i] == 0 {
                i += 1;
            }
            runs.push((start, i - start));
        } else {
            i += 1;
        }
    }
    runs
}

/// Primes `p_1 < ... < p_c` with `p_1` the least prime above `n^{1/c}` and
/// each next one the least prime above its predecessor.
fn gap_primes(n: usize, c: usize) -> Vec<u64> {
    let exceeds = |p: u64| {
        (0..c)
            .try_fold(1u64, |acc, _| acc.checked_mul(p))
            .is_none_or(|power| power > n as u64)
    };
    let mut p = 2u64;
    while !exceeds(p) {
        p = next_prime(p);
    }
    let mut primes = vec![p];
    while primes.len() < c {
        primes.push(next_prime(*primes.last().unwrap()));
    }
    primes
}

/// The gap automaton for `x` with weight parameter `c`.
///
/// The `c` longest zero-runs of `x` (leftmost first on ties) become gaps;
/// everything else lies in the blocks `w_i`. Gap `i` gets a `0^{Q_i}` loop
/// and a chain of `r_i` zeros, blocks become chains. The automaton is built
/// whenever it fits in the state limit, valid or not, and checked.
pub fn gap_automaton(x: &Word, q: RationalQ, c: usize) -> Result<(Option<Nfa>, GapPlan)> {
    if supp(x) == 0 {
        return Err(Error::precondition(
            "the gap automaton needs a nonzero symbol; constant words are covered by the power automaton",
        ));
    }
    if c == 0 {
        return Err(Error::precondition("the weight bound c must be at least 1"));
    }
    let n = x.len();
    let primes = gap_primes(n, c);
    let product = primes
        .iter()
        .try_fold(1u64, |acc, &p| acc.checked_mul(p))
        .ok_or_else(|| Error::precondition(format!("prime product overflows for c = {c}")))?;
    let periods: Vec<u64> = primes.iter().map(|&p| product / p).collect();

    let mut runs = zero_runs(x);
    runs.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    runs.truncate(c);
    runs.sort();

    let mut gaps = Vec::new();
    let mut blocks = Vec::new();
    let mut cursor = 0;
    for (i, &(start, length)) in runs.iter().enumerate() {
        blocks.push(x.factor(cursor, start - cursor));
        let period = periods[i];
        gaps.push(Gap {
            start,
            length,
            prime: primes[i],
            period,
            a: length as u64 / period,
            r: length as u64 % period,
        });
        cursor = start + length;
    }
    blocks.push(x.suffix_from(cursor));

    let q1 = periods[0];
    let mut reasons = Vec::new();
    for (i, gap) in gaps.iter().enumerate() {
        if gap.a >= gap.prime {
            reasons.push(format!(
                "a_{} = {} is not below p_{} = {}",
                i + 1,
                gap.a,
                i + 1,
                gap.prime
            ));
        }
        if (gap.length as u64) < q1 {
            reasons.push(format!("ℓ_{} = {} < Q_1 = {q1}", i + 1, gap.length));
        }
    }
    for (i, block) in blocks.iter().enumerate() {
        if block.len() as u64 > c as u64 * q1 {
            reasons.push(format!("|w_{i}| = {} exceeds c·Q_1 = {}", block.len(), c as u64 * q1));
        }
    }
    let divisibility_ok =
        (0..c).all(|i| periods[i] % primes[i] != 0 && (0..c).filter(|&j| j != i).all(|j| periods[j] % primes[i] == 0));

    let mut layout = Layout::new(x.alphabet_size());
    let zeros = |len: u64| Word::new(vec![0; len as usize], x.alphabet_size());
    let mut at = layout.chain(0, &blocks[0]);
    for (gap, block) in gaps.iter().zip(&blocks[1..]) {
        layout.cycle(at, &zeros(gap.period)?);
        at = layout.chain(at, &zeros(gap.r)?);
        at = layout.chain(at, block);
    }
    let states = layout.states;
    let state_bound = 3 * gaps.len() as u64 * c as u64 * q1;
    let nfa = if states <= MAX_STATES {
        Some(layout.build(at)?)
    } else {
        None
    };
    let exact = nfa.as_ref().map(|m| m.is_exact_acceptor(x)).transpose()?;

    let plan = GapPlan {
        word: x.clone(),
        q,
        c,
        primes,
        periods,
        gaps,
        blocks,
        valid: reasons.is_empty(),
        reasons,
        divisibility_ok,
        states,
        state_bound,
        within_state_bound: states as u64 <= state_bound,
        witnesses_lq: q.below(states as u64, n as u64),
        exact,
    };
    Ok((nfa, plan))
}
