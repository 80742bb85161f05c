//! Exhaustive experiments over all words of one length.

mod validate;

pub use validate::{
    border_check, loop_bound_check, loop_triples, separation_scan, validate_borders, validate_loop_bound, MemberCheck,
    SeparationHit,
};

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::RationalQ;
use crate::search::{a_ne, Certificate, Kind, SearchBudget};
use crate::words::Word;

fn ratio_as_string<S: Serializer>(r: &Ratio<u64>, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub alphabet: usize,
    pub q: RationalQ,
    /// `|L_q ∩ Σ^n|` among the words whose value was computed.
    pub count: u64,
    pub total: u64,
    #[serde(serialize_with = "ratio_as_string")]
    pub fraction: Ratio<u64>,
    pub max_complexity: usize,
    pub histogram: BTreeMap<usize, u64>,
    pub members: Vec<Word>,
    /// False when some word ran out of budget; those words are listed in
    /// `unresolved` and counted nowhere else.
    pub authoritative: bool,
    pub unresolved: Vec<Word>,
}

impl CensusRow {
    pub const CSV_HEADER: [&'static str; 9] = [
        "n",
        "alphabet",
        "q",
        "count",
        "total",
        "fraction",
        "max_complexity",
        "histogram",
        "authoritative",
    ];

    /// `v:c;v:c;...` in ascending value order.
    pub fn histogram_string(&self) -> String {
        self.histogram
            .iter()
            .map(|(v, c)| format!("{v}:{c}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn csv_record(&self) -> [String; 9] {
        [
            self.n.to_string(),
            self.alphabet.to_string(),
            self.q.to_string(),
            self.count.to_string(),
            self.total.to_string(),
            format!("{}/{}", self.fraction.numer(), self.fraction.denom()),
            self.max_complexity.to_string(),
            self.histogram_string(),
            self.authoritative.to_string(),
        ]
    }
}

/// `A_Ne` certificates for every word of length `n`, in lexicographic
/// order; `None` where the budget ran out.
///
/// Only the lexicographically smaller of each word and its reversal is
/// searched. The other one gets the reversed witness, which accepts only
/// the reversed word because reversal maps the length-`n` language of a
/// single-accept automaton onto the reversed words.
pub fn census_certificates(n: usize, alphabet: usize, budget: &SearchBudget) -> Result<Vec<Option<Certificate>>> {
    let words: Vec<Word> = Word::all(n, alphabet)?.collect();
    let representatives: Vec<&Word> = words.iter().filter(|x| **x <= x.reverse()).collect();
    let per_word = SearchBudget {
        parallelism: 1,
        ..budget.clone()
    };
    let solve = |x: &&Word| match a_ne(x, &per_word) {
        Ok(cert) => Ok(Some(cert)),
        Err(e) if e.is_budget_exhausted() => Ok(None),
        Err(e) => Err(e),
    };
    let solved: Vec<Option<Certificate>> = if budget.parallelism > 1 {
        representatives.par_iter().map(solve).collect::<Result<_>>()?
    } else {
        representatives.iter().map(solve).collect::<Result<_>>()?
    };
    let by_word: BTreeMap<&Word, Option<Certificate>> = representatives.into_iter().zip(solved).collect();
    words
        .iter()
        .map(|x| {
            let rev = x.reverse();
            if x <= &rev {
                return Ok(by_word[x].clone());
            }
            match &by_word[&rev] {
                None => Ok(None),
                Some(cert) => Certificate::verify(Kind::Ane, x, cert.witness.reversed()?).map(Some),
            }
        })
        .collect()
}

fn total_words(n: usize, alphabet: usize) -> Result<u64> {
    (alphabet as u64)
        .checked_pow(n as u32)
        .ok_or_else(|| Error::precondition(format!("{alphabet}^{n} words overflow the census counters")))
}

/// Aggregates certificates of all words of length `n` into a row.
pub fn census_row(n: usize, alphabet: usize, q: RationalQ, certs: &[Option<Certificate>]) -> Result<CensusRow> {
    let total = total_words(n, alphabet)?;
    let mut histogram = BTreeMap::new();
    let mut members = Vec::new();
    let mut unresolved = Vec::new();
    let mut words = Word::all(n, alphabet)?;
    for cert in certs {
        let x = words.next().expect("one certificate per word");
        match cert {
            Some(cert) => {
                *histogram.entry(cert.value).or_insert(0u64) += 1;
                if q.below(cert.value as u64, n as u64) {
                    members.push(x);
                }
            }
            None => unresolved.push(x),
        }
    }
    let count = histogram
        .iter()
        .filter(|(&v, _)| q.below(v as u64, n as u64))
        .map(|(_, &c)| c)
        .sum();
    Ok(CensusRow {
        n,
        alphabet,
        q,
        count,
        total,
        fraction: Ratio::new(count, total),
        max_complexity: histogram.keys().next_back().copied().unwrap_or(0),
        histogram,
        members,
        authoritative: unresolved.is_empty(),
        unresolved,
    })
}

/// `|L_q ∩ Σ^n|` with the full distribution of `A_Ne` at length `n`.
pub fn lq_census(n: usize, alphabet: usize, q: RationalQ, budget: &SearchBudget) -> Result<CensusRow> {
    census_row(n, alphabet, q, &census_certificates(n, alphabet, budget)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShannonRow {
    pub n: usize,
    pub histogram: BTreeMap<usize, u64>,
    pub max_complexity: usize,
    /// Words with `A_Ne >= floor(n/2) - 1`.
    #[serde(serialize_with = "ratio_as_string")]
    pub high_fraction: Ratio<u64>,
    #[serde(serialize_with = "ratio_as_string")]
    pub lq_fraction: Ratio<u64>,
    pub authoritative: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShannonReport {
    pub alphabet: usize,
    pub q: RationalQ,
    pub rows: Vec<ShannonRow>,
    /// `fraction(L_q, n_max) < fraction(L_q, n_min)`.
    pub lq_fraction_decreases: bool,
}

/// Distribution of `A_Ne` for each length in `lengths`.
pub fn shannon_report(
    lengths: std::ops::RangeInclusive<usize>,
    alphabet: usize,
    q: RationalQ,
    budget: &SearchBudget,
) -> Result<ShannonReport> {
    let mut rows = Vec::new();
    for n in lengths {
        let row = lq_census(n, alphabet, q, budget)?;
        let threshold = (n / 2).saturating_sub(1);
        let high: u64 = row.histogram.range(threshold..).map(|(_, &c)| c).sum();
        rows.push(ShannonRow {
            n,
            high_fraction: Ratio::new(high, row.total),
            lq_fraction: row.fraction,
            max_complexity: row.max_complexity,
            histogram: row.histogram,
            authoritative: row.authoritative,
        });
    }
    let lq_fraction_decreases = match (rows.first(), rows.last()) {
        (Some(first), Some(last)) if rows.len() > 1 => last.lq_fraction < first.lq_fraction,
        _ => false,
    };
    Ok(ShannonReport {
        alphabet,
        q,
        rows,
        lq_fraction_decreases,
    })
}
