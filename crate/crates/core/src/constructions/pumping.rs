use serde::Serialize;

use super::Layout;
use crate::error::{Error, Result};
use crate::nfa::Nfa;
use crate::rational::RationalQ;
use crate::words::Word;

/// Parameters of the two-loop witness for `α(ℓ) = u a^ℓ v b^ℓ w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PumpingPlan {
    pub u: Word,
    pub v: Word,
    pub w: Word,
    pub a: Word,
    pub b: Word,
    pub q: RationalQ,
    pub m: usize,
    /// `floor(3/q) + 1`.
    pub k: usize,
    /// `m·k·|a|·|b| + k·|b|`.
    pub l_prime: usize,
    /// Traversals of the `a`-loop, `k|a|`.
    pub i0: usize,
    /// Traversals of the `b`-loop, `k|b|`.
    pub j0: usize,
}

impl PumpingPlan {
    pub fn new(u: Word, v: Word, w: Word, a: Word, b: Word, q: RationalQ, m: usize) -> Result<Self> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::precondition("a and b must be non-empty"));
        }
        if m == 0 {
            return Err(Error::precondition("m must be at least 1"));
        }
        let k = q.pumping_factor() as usize;
        let (la, lb) = (a.len(), b.len());
        Ok(PumpingPlan {
            l_prime: m * k * la * lb + lb * k,
            i0: k * la,
            j0: k * lb,
            u,
            v,
            w,
            a,
            b,
            q,
            m,
            k,
        })
    }

    /// `α(ℓ′)`.
    pub fn word(&self) -> Word {
        self.u
            .concat(&self.a.pow(self.l_prime))
            .concat(&self.v)
            .concat(&self.b.pow(self.l_prime))
            .concat(&self.w)
    }

    /// Other loop counts `(i, j)` of the same total length exist iff
    /// `k|b| >= m|a|` or `k > m`.
    pub fn predicted_exact(&self) -> bool {
        self.k * self.b.len() < self.m * self.a.len() && self.k <= self.m
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PumpingReport {
    pub plan: PumpingPlan,
    pub length: usize,
    pub states: usize,
    pub predicted_exact: bool,
    pub exact: bool,
    /// `states < q·|α(ℓ′)|`.
    pub witnesses_lq: bool,
}

/// Builds `chain(u) [a^{m|b|}]* chain(a^{k|b|}) chain(v) [b^{m|a|+1}]*
/// chain(w)` and checks it against `α(ℓ′)`.
pub fn pumping_automaton(plan: &PumpingPlan) -> Result<(Word, Nfa, PumpingReport)> {
    let word = plan.word();
    let (la, lb) = (plan.a.len(), plan.b.len());
    let mut layout = Layout::new(word.alphabet_size());
    let p = layout.chain(0, &plan.u);
    layout.cycle(p, &plan.a.pow(plan.m * lb));
    let mut at = layout.chain(p, &plan.a.pow(plan.k * lb));
    let r = layout.chain(at, &plan.v);
    layout.cycle(r, &plan.b.pow(plan.m * la + 1));
    at = layout.chain(r, &plan.w);
    let nfa = layout.build(at)?;
    let exact = nfa.is_exact_acceptor(&word)?;
    let report = PumpingReport {
        plan: plan.clone(),
        length: word.len(),
        states: nfa.num_states(),
        predicted_exact: plan.predicted_exact(),
        exact,
        witnesses_lq: plan.q.below(nfa.num_states() as u64, word.len() as u64),
    };
    Ok((word, nfa, report))
}
