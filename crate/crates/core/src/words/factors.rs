use super::{Word, MAX_ALPHABET};
use crate::error::{Error, Result};

/// Hamming weight: number of nonzero symbols.
pub fn supp(x: &Word) -> usize {
    x.symbols().iter().filter(|&&c| c != 0).count()
}

/// Start indices of every (possibly overlapping) occurrence of `w` in `x`.
pub fn occurrences(w: &Word, x: &Word) -> Result<Vec<usize>> {
    if w.is_empty() {
        return Err(Error::precondition("occurrences of the empty word"));
    }
    Ok(x.symbols()
        .windows(w.len())
        .enumerate()
        .filter(|(_, window)| *window == w.symbols())
        .map(|(i, _)| i)
        .collect())
}

/// Suffix automaton with end-position counts.
struct SuffixAutomaton {
    len: Vec<usize>,
    link: Vec<Option<usize>>,
    next: Vec<[u32; MAX_ALPHABET]>,
    count: Vec<usize>,
}

const NONE: u32 = u32::MAX;

impl SuffixAutomaton {
    fn build(symbols: &[u8]) -> Self {
        let cap = 2 * symbols.len() + 1;
        let mut sa = SuffixAutomaton {
            len: Vec::with_capacity(cap),
            link: Vec::with_capacity(cap),
            next: Vec::with_capacity(cap),
            count: Vec::with_capacity(cap),
        };
        sa.push(0, None, [NONE; MAX_ALPHABET], 0);
        let mut last = 0usize;
        for &c in symbols {
            let c = c as usize;
            let cur = sa.push(sa.len[last] + 1, None, [NONE; MAX_ALPHABET], 1);
            let mut p = Some(last);
            while let Some(state) = p {
                if sa.next[state][c] != NONE {
                    break;
                }
                sa.next[state][c] = cur as u32;
                p = sa.link[state];
            }
            match p {
                None => sa.link[cur] = Some(0),
                Some(state) => {
                    let q = sa.next[state][c] as usize;
                    if sa.len[state] + 1 == sa.len[q] {
                        sa.link[cur] = Some(q);
                    } else {
                        let clone = sa.push(sa.len[state] + 1, sa.link[q], sa.next[q], 0);
                        let mut p = Some(state);
                        while let Some(s) = p {
                            if sa.next[s][c] != q as u32 {
                                break;
                            }
                            sa.next[s][c] = clone as u32;
                            p = sa.link[s];
                        }
                        sa.link[q] = Some(clone);
                        sa.link[cur] = Some(clone);
                    }
                }
            }
            last = cur;
        }
        // propagate end-position counts up the suffix-link tree
        let mut order: Vec<usize> = (0..sa.len.len()).collect();
        order.sort_unstable_by(|&a, &b| sa.len[b].cmp(&sa.len[a]));
        for v in order {
            if let Some(parent) = sa.link[v] {
                sa.count[parent] += sa.count[v];
            }
        }
        sa
    }

    fn push(&mut self, len: usize, link: Option<usize>, next: [u32; MAX_ALPHABET], count: usize) -> usize {
        self.len.push(len);
        self.link.push(link);
        self.next.push(next);
        self.count.push(count);
        self.len.len() - 1
    }
}

/// Length of the longest factor occurring at least twice (overlaps allowed).
pub fn longest_repeated_factor(x: &Word) -> usize {
    let sa = SuffixAutomaton::build(x.symbols());
    (1..sa.len.len())
        .filter(|&v| sa.count[v] >= 2)
        .map(|v| sa.len[v])
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniqueFactorReport {
    /// Every factor longer than the threshold occurs exactly once.
    pub ok: bool,
    pub longest_repeat: usize,
}

pub fn unique_factor_check(x: &Word, threshold: usize) -> Result<UniqueFactorReport> {
    if threshold == 0 {
        return Err(Error::precondition("unique-factor threshold must be at least 1"));
    }
    let longest_repeat = longest_repeated_factor(x);
    Ok(UniqueFactorReport {
        ok: longest_repeat <= threshold,
        longest_repeat,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use proptest::prelude::*;

    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 3).unwrap()
    }

    fn brute_longest_repeat(x: &[u8]) -> usize {
        (1..=x.len())
            .rev()
            .find(|&len| {
                let mut seen = HashSet::new();
                x.windows(len).any(|f| !seen.insert(f))
            })
            .unwrap_or(0)
    }

    #[test]
    fn supp_examples() {
        assert_eq!(supp(&w("0000")), 0);
        assert_eq!(supp(&w("0101")), 2);
        assert_eq!(supp(&w("21020")), 3);
    }

    #[test]
    fn occurrence_examples() {
        assert_eq!(occurrences(&w("01"), &w("0101")).unwrap(), vec![0, 2]);
        assert!(occurrences(&w("11"), &w("0101")).unwrap().is_empty());
        assert_eq!(occurrences(&w("0101"), &w("01010110")).unwrap(), vec![0, 2]);
        assert!(occurrences(&w(""), &w("01")).is_err());
    }

    #[test]
    fn unique_factor_examples() {
        let r = unique_factor_check(&w("0011"), 1).unwrap();
        assert!(r.ok);
        assert_eq!(r.longest_repeat, 1);
        let r = unique_factor_check(&w("0101"), 1).unwrap();
        assert!(!r.ok);
        assert_eq!(r.longest_repeat, 2);
        assert_eq!(longest_repeated_factor(&w("")), 0);
        assert!(unique_factor_check(&w("01"), 0).is_err());
    }

    proptest! {
        #[test]
        fn suffix_automaton_matches_brute_force(syms in prop::collection::vec(0u8..3, 0..120)) {
            let x = Word::new(syms.clone(), 3).unwrap();
            prop_assert_eq!(longest_repeated_factor(&x), brute_longest_repeat(&syms));
        }
    }
}
