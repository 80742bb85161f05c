mod common;

use autocx_core::nfa::path_automaton;
use autocx_core::{Nfa, Run, Word};
use common::*;
use proptest::prelude::*;

/// (states, alphabet, transition bits, accept bits)
fn arb_nfa(max_states: usize) -> impl Strategy<Value = Nfa> {
    (1..=max_states, 2..=3usize).prop_flat_map(|(k, s)| {
        (
            proptest::collection::vec(proptest::bool::weighted(0.3), k * s * k),
            1u64..(1 << k),
        )
            .prop_map(move |(bits, accepts)| {
                let mut nfa = Nfa::new(k, s, 0).unwrap();
                for (i, &on) in bits.iter().enumerate() {
                    if on {
                        nfa.add_transition(i / (s * k), i / k % s, i % k).unwrap();
                    }
                }
                for q in 0..k {
                    if accepts >> q & 1 == 1 {
                        nfa.set_accepting(q).unwrap();
                    }
                }
                nfa
            })
    })
}

fn arb_nfa_and_word(max_states: usize, max_len: usize) -> impl Strategy<Value = (Nfa, Word)> {
    arb_nfa(max_states).prop_flat_map(move |nfa| {
        let s = nfa.alphabet_size() as u8;
        proptest::collection::vec(0..s, 0..=max_len)
            .prop_map(move |symbols| (nfa.clone(), Word::new(symbols, s as usize).unwrap()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn word_count_matches_enumeration((nfa, x) in arb_nfa_and_word(5, 7)) {
        let n = x.len();
        let words = brute_accepted_words(&nfa, n).len() as u64;
        prop_assert_eq!(nfa.count_accepted_words(n, 2).unwrap(), words.min(2));
        prop_assert_eq!(nfa.count_accepted_words_exact(n), Some(words as u128));
    }

    #[test]
    fn path_count_matches_enumeration((nfa, x) in arb_nfa_and_word(5, 7)) {
        let runs = all_accepting_runs(&nfa, &x, usize::MAX).len() as u64;
        prop_assert_eq!(nfa.count_accepting_paths(&x, 2).unwrap(), runs.min(2));
        prop_assert_eq!(nfa.count_accepting_paths(&x, u64::MAX).unwrap(), runs);
        prop_assert_eq!(nfa.accepts_word(&x).unwrap(), runs > 0);
    }

    #[test]
    fn fast_exactness_agrees_with_counting((nfa, x) in arb_nfa_and_word(5, 8)) {
        prop_assert_eq!(nfa.is_exact_acceptor_fast(&x).unwrap(), nfa.is_exact_acceptor(&x).unwrap());
    }

    #[test]
    fn unique_is_exact_plus_one_path((nfa, x) in arb_nfa_and_word(4, 7)) {
        let words = brute_accepted_words(&nfa, x.len());
        let exact = words == [x.clone()];
        prop_assert_eq!(nfa.is_exact_acceptor(&x).unwrap(), exact);
        prop_assert_eq!(nfa.is_unique_acceptor(&x).unwrap(), exact && brute_paths(&nfa, &x) == 1);
    }

    #[test]
    fn path_automata_of_exact_acceptors_are_exact((nfa, x) in arb_nfa_and_word(4, 8)) {
        if nfa.is_exact_acceptor(&x).unwrap() {
            for states in all_accepting_runs(&nfa, &x, 32) {
                let run = Run::new(states, x.clone()).unwrap();
                let path = path_automaton(&run).unwrap();
                prop_assert!(path.is_exact_acceptor(&x).unwrap());
                prop_assert!(path.num_states() <= nfa.num_states());
            }
        }
    }

    #[test]
    fn reversal_preserves_counts((nfa, x) in arb_nfa_and_word(5, 7)) {
        let single = {
            let mut m = Nfa::new(nfa.num_states(), nfa.alphabet_size(), nfa.start()).unwrap();
            for (f, a, t) in nfa.transitions() {
                m.add_transition(f, a, t).unwrap();
            }
            m.set_accepting(nfa.accept_states()[0]).unwrap();
            m
        };
        let rev = single.reversed().unwrap();
        let n = x.len();
        prop_assert_eq!(rev.count_accepted_words_exact(n), single.count_accepted_words_exact(n));
        prop_assert_eq!(rev.is_exact_acceptor(&x.reverse()).unwrap(), single.is_exact_acceptor(&x).unwrap());
        let mut forward: Vec<Word> = brute_accepted_words(&single, n).iter().map(Word::reverse).collect();
        forward.sort();
        prop_assert_eq!(brute_accepted_words(&rev, n), forward);
        prop_assert_eq!(rev.reversed().unwrap(), single);
    }

    #[test]
    fn text_format_round_trips(nfa in arb_nfa(6)) {
        prop_assert_eq!(Nfa::parse_text(&nfa.to_text()).unwrap(), nfa.clone());
        prop_assert_eq!(Nfa::parse_inline(&nfa.to_inline()).unwrap(), nfa.clone());
        prop_assert_eq!(Nfa::parse_text(&nfa.to_text()).unwrap().to_text(), nfa.to_text());
    }
}

#[test]
fn spec_examples() {
    let mut loops = Nfa::new(1, 2, 0).unwrap();
    loops.add_transition(0, 0, 0).unwrap();
    loops.add_transition(0, 1, 0).unwrap();
    loops.set_accepting(0).unwrap();
    assert_eq!(loops.count_accepted_words(3, 100).unwrap(), 8);
    assert!(!loops.is_exact_acceptor(&w("01")).unwrap());

    let cycle = Nfa::parse_text("nfa 2 2 0\naccept 0\nt 0 0 1\nt 1 1 0\n").unwrap();
    assert!(cycle.accepts_word(&w("0101")).unwrap());
    assert!(!cycle.accepts_word(&w("0110")).unwrap());
    assert_eq!(cycle.count_accepted_words(4, 2).unwrap(), 1);
    assert_eq!(cycle.count_accepting_paths(&w("0101"), 2).unwrap(), 1);
    assert!(cycle.is_exact_acceptor(&w("0101")).unwrap());
    assert!(cycle.is_unique_acceptor(&w("0101")).unwrap());

    let rev = cycle.reversed().unwrap();
    assert!(rev.is_exact_acceptor(&w("1010")).unwrap());

    // two parallel branches reading 0
    let twin = Nfa::parse_text("nfa 3 2 0\naccept 1 2\nt 0 0 1\nt 0 0 2\n").unwrap();
    assert_eq!(twin.count_accepting_paths(&w("0"), 2).unwrap(), 2);
    assert!(twin.is_exact_acceptor(&w("0")).unwrap());
    assert!(!twin.is_unique_acceptor(&w("0")).unwrap());
    assert!(twin.reversed().is_err());

    let path = path_automaton(&Run::new(vec![0, 1, 0, 1], w("010")).unwrap()).unwrap();
    assert_eq!(path.transitions().collect::<Vec<_>>(), [(0, 0, 1), (1, 1, 0)]);
    assert!(path.is_exact_acceptor(&w("010")).unwrap());
}

#[test]
fn alphabet_mismatch() {
    let cycle = Nfa::parse_text("nfa 2 2 0\naccept 0\nt 0 0 1\nt 1 1 0\n").unwrap();
    let ternary = Word::parse("01", 3).unwrap();
    assert!(cycle.accepts_word(&ternary).is_err());
}
