mod common;

use autocx_core::words::{
    border_structure_find, build_ymk, decode_repeat, encode_repeat, ls1_decompose, ls2_solve, make_pair_homs,
    occurrences, primitive_root, sigma, supp, unique_factor_check, RepeatCode, YmkParts,
};
use autocx_core::{RationalQ, Word};
use common::*;
use proptest::prelude::*;

fn arb_word(
    alphabets: std::ops::RangeInclusive<usize>,
    len: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Word> {
    alphabets.prop_flat_map(move |s| {
        proptest::collection::vec(0..s as u8, len.clone()).prop_map(move |v| Word::new(v, s).unwrap())
    })
}

fn brute_root_len(x: &Word) -> usize {
    let n = x.len();
    (1..=n).find(|&d| n % d == 0 && x.prefix(d).pow(n / d) == *x).unwrap()
}

/// Does any `(w, u, v)` with the border conditions exist? Tries every
/// start, `|u|` and `|w|`.
fn brute_border_exists(x: &Word, q: RationalQ) -> bool {
    let n = x.len();
    for start in 0..n {
        for w_len in 1..n {
            if !q.meets_border_bound(w_len as u64, n as u64) {
                continue;
            }
            for u_len in 1..=w_len {
                if start + 2 * u_len + w_len > n || 2 * u_len + w_len == n {
                    continue;
                }
                let u = x.factor(start, u_len);
                let w = x.factor(start + u_len, w_len);
                let v = x.factor(start + u_len + w_len, u_len);
                if u.concat(&w) == w.concat(&v) {
                    return true;
                }
            }
        }
    }
    false
}

#[test]
fn spec_examples() {
    assert_eq!(supp(&w("0000")), 0);
    assert_eq!(supp(&w("0101")), 2);
    assert_eq!(supp(&Word::parse("21020", 3).unwrap()), 3);
    assert_eq!(occurrences(&w("01"), &w("0101")).unwrap(), [0, 2]);
    assert!(occurrences(&w("11"), &w("0101")).unwrap().is_empty());
    assert_eq!(occurrences(&w("0101"), &w("01010110")).unwrap(), [0, 2]);
    assert!(occurrences(&w(""), &w("01")).is_err());

    assert_eq!(ls1_decompose(&w("01"), &w("0101")), Some((w("01"), 1, 2)));
    assert_eq!(ls1_decompose(&w("01"), &w("10")), None);
    assert_eq!(ls1_decompose(&w("010101"), &w("0101")), Some((w("01"), 3, 2)));
    assert_eq!(primitive_root(&w("0101")).unwrap(), (w("01"), 2));
    assert_eq!(primitive_root(&w("011")).unwrap(), (w("011"), 1));
    assert_eq!(primitive_root(&w("001001001")).unwrap(), (w("001"), 3));

    let sol = ls2_solve(&w("01"), &w("0"), &w("10")).unwrap();
    assert_eq!((sol.u.clone(), sol.v.clone(), sol.e), (w("0"), w("1"), 0));
    let sol = ls2_solve(&w("0"), &w("0"), &w("0")).unwrap();
    assert!(sol.reconstructs(&w("0"), &w("0"), &w("0")));
    assert_eq!(sol.u, w("0"));
    assert!(ls2_solve(&w("01"), &w("11"), &w("10")).is_none());

    assert_eq!(sigma(2).unwrap().to_string(), "002012102112");
    assert_eq!(sigma(1).unwrap().to_string(), "0212");
    assert_eq!(sigma(3).unwrap().len(), 32);

    let (_, h) = make_pair_homs((&w("01"), &w("10")), (&w("01"), &w("10"))).unwrap();
    assert_eq!(h.image(2).unwrap().to_string(), "01010110101010");
    assert_eq!(
        h.apply(&sigma(1).unwrap()).unwrap().to_string(),
        ["0110", "01010110101010", "1001", "01010110101010"].concat()
    );
    assert!(make_pair_homs((&w("01"), &w("01")), (&w("01"), &w("10"))).is_err());

    let r = unique_factor_check(&w("0011"), 1).unwrap();
    assert!(r.ok);
    assert_eq!(r.longest_repeat, 1);
    assert!(!unique_factor_check(&w("0101"), 1).unwrap().ok);
    assert!(unique_factor_check(&w("0101"), 0).is_err());

    let code = encode_repeat(&w("01010110")).unwrap();
    assert_eq!((code.len_x1, code.len_z, code.len_w, code.len_x2), (0, 4, 2, 2));
    assert_eq!(
        (code.payload_w.to_string(), code.payload_x2.to_string()),
        ("01".into(), "10".into())
    );
    assert_eq!(code.m, 4);
    assert_eq!(code.to_word().len(), 25);
    assert_eq!(decode_repeat(&code).unwrap(), w("01010110"));
    assert!(encode_repeat(&w("0110")).is_none());
}

#[test]
fn codec_hand_built_code() {
    let code = RepeatCode {
        alphabet: 2,
        m: 2,
        len_x1: 0,
        len_z: 2,
        len_w: 1,
        len_x2: 0,
        payload_x1: w(""),
        payload_w: w("0"),
        payload_x2: w(""),
    };
    assert_eq!(decode_repeat(&code).unwrap(), w("000"));
    let bad = RepeatCode {
        len_w: 2,
        ..code.clone()
    };
    assert!(decode_repeat(&bad).is_err());
    assert!(RepeatCode::from_word(&w("0101")).is_err());
}

#[test]
fn ymk_example_and_length() {
    let parts = YmkParts {
        w1: w(""),
        w2: w(""),
        w3: w(""),
        x: w("0"),
        y: w("1"),
        x2: w("1"),
        y2: w("0"),
    };
    let y = build_ymk(&parts, 1, 1).unwrap();
    let (g, h) = make_pair_homs((&w("01"), &w("10")), (&w("10"), &w("01"))).unwrap();
    let s1 = sigma(1).unwrap();
    let expected = g
        .apply(&s1)
        .unwrap()
        .concat(&w("01"))
        .concat(&h.apply(&s1).unwrap().reverse());
    assert_eq!(y, expected);
    for k in 1..=4 {
        for m in 1..=3 {
            let parts = YmkParts {
                w1: w("1"),
                w2: w("00"),
                w3: w("111"),
                x: w("01"),
                y: w("0"),
                x2: w("10"),
                y2: w("1"),
            };
            let y = build_ymk(&parts, m, k).unwrap();
            let g_len = (1 << k) * 4 * (2 * k + 7);
            let h_len = (1 << k) * 2 * (2 * k + 7);
            assert_eq!(y.len(), 6 + m * 3 + g_len + h_len);
        }
    }
    let commuting = YmkParts {
        w1: w(""),
        w2: w(""),
        w3: w(""),
        x: w("0"),
        y: w("1"),
        x2: w("0"),
        y2: w("0"),
    };
    assert!(build_ymk(&commuting, 1, 1).is_err());
}

#[test]
fn border_finder_agrees_with_brute_force() {
    for q in [
        RationalQ::new(1, 3).unwrap(),
        RationalQ::new(1, 100).unwrap(),
        RationalQ::new(1, 5).unwrap(),
    ] {
        for n in 4..=11 {
            for x in Word::all(n, 2).unwrap() {
                let found = border_structure_find(&x, q).unwrap();
                assert_eq!(found.is_some(), brute_border_exists(&x, q), "{x} at q={q}");
                if let Some(b) = found {
                    assert!(b.holds_in(&x, q), "{x}");
                }
            }
        }
    }
    assert_eq!(
        border_structure_find(&w("0110"), RationalQ::new(1, 100).unwrap()).unwrap(),
        None
    );
}

#[test]
fn sigma_and_image_lengths() {
    let (_, h) = make_pair_homs((&w("01"), &w("10")), (&w("0011"), &w("1100"))).unwrap();
    for k in 1..=10 {
        let s = sigma(k).unwrap();
        assert_eq!(s.len(), (1 << k) * (k + 1));
        assert_eq!(h.apply(&s).unwrap().len(), (1 << k) * 4 * (2 * k + 7));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn primitive_root_is_shortest(x in arb_word(2..=3, 1..=24)) {
        let (z, k) = primitive_root(&x).unwrap();
        prop_assert_eq!(z.pow(k), x.clone());
        prop_assert_eq!(z.len(), brute_root_len(&x));
        prop_assert_eq!(brute_root_len(&z), z.len());
    }

    #[test]
    fn ls1_on_powers(z in arb_word(2..=2, 1..=5), k in 0usize..4, l in 0usize..4) {
        let (x, y) = (z.pow(k), z.pow(l));
        let (root, a, b) = ls1_decompose(&x, &y).unwrap();
        prop_assert_eq!(root.pow(a), x);
        prop_assert_eq!(root.pow(b), y);
    }

    #[test]
    fn ls2_on_constructed_triples(u in arb_word(2..=2, 1..=5), v in arb_word(2..=2, 0..=5), e in 0usize..4) {
        let x = u.concat(&v);
        let z = v.concat(&u);
        let y = x.pow(e).concat(&u);
        let sol = ls2_solve(&x, &y, &z).unwrap();
        prop_assert!(sol.reconstructs(&x, &y, &z));
        prop_assert!(!sol.u.is_empty());
    }

    #[test]
    fn codec_round_trip(x in arb_word(2..=4, 0..=40)) {
        let longest = brute_longest_repeat(&x);
        match encode_repeat(&x) {
            None => prop_assert!(longest < 2),
            Some(code) => {
                prop_assert_eq!(code.len_z, longest);
                prop_assert_eq!(code.to_word().len(), 5 * code.m + 1 + x.len() - longest);
                prop_assert_eq!(decode_repeat(&code).unwrap(), x.clone());
                let reparsed = RepeatCode::from_word(&code.to_word()).unwrap();
                prop_assert_eq!(decode_repeat(&reparsed).unwrap(), x);
            }
        }
    }

    #[test]
    fn unique_factor_matches_brute(x in arb_word(2..=3, 1..=200), t in 1usize..40) {
        let longest = brute_longest_repeat(&x);
        let r = unique_factor_check(&x, t).unwrap();
        prop_assert_eq!(r.longest_repeat, longest);
        prop_assert_eq!(r.ok, longest <= t);
    }

    #[test]
    fn occurrences_match_scan(x in arb_word(2..=2, 0..=30), f in arb_word(2..=2, 1..=4)) {
        let brute: Vec<usize> = (0..x.len())
            .filter(|&i| i + f.len() <= x.len() && x.factor(i, f.len()) == f)
            .collect();
        prop_assert_eq!(occurrences(&f, &x).unwrap(), brute);
    }
}
