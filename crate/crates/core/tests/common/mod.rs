//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's counting or search code.
#![allow(dead_code)]

use autocx_core::{Nfa, Word};
use rand::Rng;

pub fn w(s: &str) -> Word {
    Word::parse(s, 2).unwrap()
}

/// Adjacency lists `adj[state][symbol]`, read off the transition list.
pub fn adjacency(nfa: &Nfa) -> Vec<Vec<Vec<usize>>> {
    let mut adj = vec![vec![Vec::new(); nfa.alphabet_size()]; nfa.num_states()];
    for (from, symbol, to) in nfa.transitions() {
        adj[from][symbol].push(to);
    }
    adj
}

fn accept_list(nfa: &Nfa) -> Vec<bool> {
    (0..nfa.num_states())
        .map(|q| nfa.accept_states().contains(&q))
        .collect()
}

/// Number of accepting runs on `x`, counted over explicit run prefixes.
pub fn brute_paths(nfa: &Nfa, x: &Word) -> u128 {
    let adj = adjacency(nfa);
    let accepting = accept_list(nfa);
    let mut ways = vec![0u128; nfa.num_states()];
    ways[nfa.start()] = 1;
    for &c in x.symbols() {
        let mut next = vec![0u128; nfa.num_states()];
        for (q, &count) in ways.iter().enumerate() {
            for &t in &adj[q][c as usize] {
                next[t] += count;
            }
        }
        ways = next;
    }
    ways.iter().zip(&accepting).filter(|(_, &a)| a).map(|(&c, _)| c).sum()
}

pub fn brute_accepts(adj: &[Vec<Vec<usize>>], accepting: &[bool], start: usize, x: &[u8]) -> bool {
    let mut current = vec![false; adj.len()];
    current[start] = true;
    for &c in x {
        let mut next = vec![false; adj.len()];
        for (q, &on) in current.iter().enumerate() {
            if on {
                for &t in &adj[q][c as usize] {
                    next[t] = true;
                }
            }
        }
        current = next;
    }
    current.iter().zip(accepting).any(|(&on, &a)| on && a)
}

/// Every accepted word of length `n`, by trying all of `Σ^n`.
pub fn brute_accepted_words(nfa: &Nfa, n: usize) -> Vec<Word> {
    let adj = adjacency(nfa);
    let accepting = accept_list(nfa);
    Word::all(n, nfa.alphabet_size())
        .unwrap()
        .filter(|x| brute_accepts(&adj, &accepting, nfa.start(), x.symbols()))
        .collect()
}

/// Every accepting run on `x`, up to `limit` of them, by depth-first search.
pub fn all_accepting_runs(nfa: &Nfa, x: &Word, limit: usize) -> Vec<Vec<usize>> {
    fn go(
        adj: &[Vec<Vec<usize>>],
        accepting: &[bool],
        x: &[u8],
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        let i = path.len() - 1;
        let q = path[i];
        if i == x.len() {
            if accepting[q] {
                out.push(path.clone());
            }
            return;
        }
        for &t in &adj[q][x[i] as usize] {
            path.push(t);
            go(adj, accepting, x, path, out, limit);
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(
        &adjacency(nfa),
        &accept_list(nfa),
        x.symbols(),
        &mut vec![nfa.start()],
        &mut out,
        limit,
    );
    out
}

/// A random NFA: each possible transition present with probability
/// `density`, each state accepting with probability 1/2 (at least one).
pub fn random_nfa<R: Rng>(rng: &mut R, states: usize, alphabet: usize, density: f64) -> Nfa {
    let mut nfa = Nfa::new(states, alphabet, 0).unwrap();
    for from in 0..states {
        for symbol in 0..alphabet {
            for to in 0..states {
                if rng.gen_bool(density) {
                    nfa.add_transition(from, symbol, to).unwrap();
                }
            }
        }
    }
    let mut any = false;
    for q in 0..states {
        if rng.gen_bool(0.5) {
            nfa.set_accepting(q).unwrap();
            any = true;
        }
    }
    if !any {
        nfa.set_accepting(rng.gen_range(0..states)).unwrap();
    }
    nfa
}

pub fn random_word<R: Rng>(rng: &mut R, n: usize, alphabet: usize) -> Word {
    Word::new((0..n).map(|_| rng.gen_range(0..alphabet as u8)).collect(), alphabet).unwrap()
}

/// Primes up to `limit` by the sieve of Eratosthenes.
pub fn sieve(limit: usize) -> Vec<bool> {
    let mut prime = vec![true; limit + 1];
    prime[0] = false;
    if limit >= 1 {
        prime[1] = false;
    }
    let mut i = 2;
    while i * i <= limit {
        if prime[i] {
            let mut j = i * i;
            while j <= limit {
                prime[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    prime
}

/// Multiset of all factors of each length, used to find the longest
/// factor occurring at least twice.
pub fn brute_longest_repeat(x: &Word) -> usize {
    let s = x.symbols();
    let mut best = 0;
    for len in 1..s.len() {
        let mut seen = std::collections::HashSet::new();
        if s.windows(len).any(|f| !seen.insert(f)) {
            best = len;
        } else {
            break;
        }
    }
    best
}
