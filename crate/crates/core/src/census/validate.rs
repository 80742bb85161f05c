use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use serde::Serialize;

use super::{census_certificates, census_row};
use crate::error::{Error, Result};
use crate::nfa::Run;
use crate::rational::RationalQ;
use crate::search::reference::{reference_a_n, reference_a_ne, REFERENCE_NFA_MAX_LEN};
use crate::search::{a_n, a_ne, Certificate, SearchBudget};
use crate::words::{border_structure_find, Word};

/// Positions `k` of a run whose state was already visited at two earlier
/// positions `i < j < k`.
pub fn loop_triples(run: &Run) -> BTreeSet<usize> {
    let mut seen = std::collections::HashMap::new();
    let mut triples = BTreeSet::new();
    for (k, &q) in run.states().iter().enumerate() {
        let visits = seen.entry(q).or_insert(0usize);
        if *visits >= 2 {
            triples.insert(k);
        }
        *visits += 1;
    }
    triples
}

/// Outcome of checking a property on every member of `L_q ∩ Σ^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MemberCheck {
    pub n: usize,
    pub q: RationalQ,
    pub members: usize,
    pub passed: usize,
    pub failures: Vec<Word>,
    /// False when some word of length `n` ran out of budget.
    pub authoritative: bool,
}

impl MemberCheck {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_members<F>(
    n: usize,
    alphabet: usize,
    q: RationalQ,
    certs: &[Option<Certificate>],
    test: F,
) -> Result<MemberCheck>
where
    F: Fn(&Certificate) -> Result<bool>,
{
    let row = census_row(n, alphabet, q, certs)?;
    let mut failures = Vec::new();
    for cert in certs.iter().flatten() {
        if q.below(cert.value as u64, n as u64) && !test(cert)? {
            failures.push(cert.word.clone());
        }
    }
    Ok(MemberCheck {
        n,
        q,
        members: row.members.len(),
        passed: row.members.len() - failures.len(),
        failures,
        authoritative: row.authoritative,
    })
}

/// Loop-triple bound `|loop_triples| >= (1 - 2q) n` on the witness run of
/// every member, from precomputed certificates.
pub fn loop_bound_check(n: usize, alphabet: usize, q: RationalQ, certs: &[Option<Certificate>]) -> Result<MemberCheck> {
    check_members(n, alphabet, q, certs, |cert| {
        Ok(q.meets_loop_bound(loop_triples(&cert.run).len() as u64, n as u64))
    })
}

/// Border structure search on every member, from precomputed certificates.
pub fn border_check(n: usize, alphabet: usize, q: RationalQ, certs: &[Option<Certificate>]) -> Result<MemberCheck> {
    if n < 4 {
        return Err(Error::precondition(format!("border structures need n >= 4, got {n}")));
    }
    check_members(n, alphabet, q, certs, |cert| {
        Ok(border_structure_find(&cert.word, q)?.is_some_and(|b| b.holds_in(&cert.word, q)))
    })
}

pub fn validate_loop_bound(n: usize, alphabet: usize, q: RationalQ, budget: &SearchBudget) -> Result<MemberCheck> {
    loop_bound_check(n, alphabet, q, &census_certificates(n, alphabet, budget)?)
}

pub fn validate_borders(n: usize, alphabet: usize, q: RationalQ, budget: &SearchBudget) -> Result<MemberCheck> {
    if n < 4 {
        return Err(Error::precondition(format!("border structures need n >= 4, got {n}")));
    }
    border_check(n, alphabet, q, &census_certificates(n, alphabet, budget)?)
}

/// A word with `A_Ne(x) < A_N(x)`, with both certificates.
#[derive(Debug, Clone)]
pub struct SeparationHit {
    pub word: Word,
    pub ane: Certificate,
    pub an: Certificate,
    /// Both reference searches agreed (only run up to their length limit).
    pub reference_confirmed: bool,
}

/// Every word in the given lengths where the exact and unique measures
/// differ. Hits short enough for the reference searches are re-derived
/// there; a disagreement is reported as an error.
pub fn separation_scan(
    lengths: RangeInclusive<usize>,
    alphabet: usize,
    budget: &SearchBudget,
) -> Result<Vec<SeparationHit>> {
    let mut hits = Vec::new();
    for n in lengths {
        for x in Word::all(n, alphabet)? {
            if x.is_constant() {
                continue;
            }
            let ane = a_ne(&x, budget)?;
            let an = a_n(&x, budget)?;
            if ane.value >= an.value {
                continue;
            }
            let reference_confirmed = if n <= REFERENCE_NFA_MAX_LEN {
                let (rne, rn) = (reference_a_ne(&x)?, reference_a_n(&x)?);
                if (rne.value, rn.value) != (ane.value, an.value) {
                    return Err(Error::Verification(format!(
                        "separation at {x:?} not confirmed: search gave ({}, {}), reference ({}, {})",
                        ane.value, an.value, rne.value, rn.value
                    )));
                }
                true
            } else {
                false
            };
            hits.push(SeparationHit {
                word: x,
                ane,
                an,
                reference_confirmed,
            });
        }
    }
    Ok(hits)
}
