//! Frozen values from the brute-force oracles in `common`, checked against
//! both the oracles and the library.

mod common;

use tablematch::closed_form::{f_closed, g_closed, greedy_sum};
use tablematch::enumerate::{enumerate_f, enumerate_g};
use tablematch::greedy::{cycle_expected_unmatched, cycle_perfect_probability};
use tablematch::stability::all_matchings;
use tablematch::ExactProb;

fn q(s: &str) -> ExactProb {
    s.parse().unwrap()
}

// (n, f, g) from brute-force stable sets over every matching.
const STABLE_TABLE: [(usize, &str, &str); 12] = [
    (1, "1", "0"),
    (2, "0", "1"),
    (3, "1/3", "0"),
    (4, "0", "1"),
    (5, "1/5", "0"),
    (6, "1/16", "13/16"),
    (7, "1/7", "0"),
    (8, "3/32", "5/8"),
    (9, "35/288", "0"),
    (10, "27/256", "121/256"),
    (11, "161/1408", "0"),
    (12, "7/64", "91/256"),
];

// (n, expected alone, P(perfect)) from the greedy state-space oracle.
const GREEDY_TABLE: [(usize, &str, &str); 12] = [
    (3, "1", "0"),
    (4, "0", "1"),
    (5, "1", "0"),
    (6, "2/3", "2/3"),
    (7, "1", "0"),
    (8, "16/15", "7/15"),
    (9, "11/9", "0"),
    (10, "142/105", "34/105"),
    (11, "67/45", "0"),
    (12, "4604/2835", "638/2835"),
    (13, "2771/1575", "0"),
    (14, "59086/31185", "4876/31185"),
];

#[test]
fn oracle_reproduces_frozen_stable_table() {
    for (n, f, g) in STABLE_TABLE {
        let (of, og) = common::brute_f_g(n);
        assert_eq!((of, og), (q(f), q(g)), "oracle drifted at n = {n}");
    }
}

#[test]
fn library_matches_stable_table() {
    for (n, f, g) in STABLE_TABLE {
        assert_eq!(f_closed(n).unwrap(), q(f), "f_closed({n})");
        assert_eq!(enumerate_f(n).unwrap(), q(f), "enumerate_f({n})");
        assert_eq!(g_closed(n).unwrap(), q(g), "g_closed({n})");
        assert_eq!(enumerate_g(n).unwrap(), q(g), "enumerate_g({n})");
    }
}

#[test]
fn oracle_reproduces_frozen_greedy_table() {
    for (n, e, p) in GREEDY_TABLE {
        assert_eq!(
            common::brute_greedy_cycle(n),
            (q(e), q(p)),
            "oracle drifted at n = {n}"
        );
    }
}

#[test]
fn library_matches_greedy_table() {
    for (n, e, p) in GREEDY_TABLE {
        assert_eq!(
            cycle_expected_unmatched(n).unwrap(),
            q(e),
            "recursion at n = {n}"
        );
        assert_eq!(greedy_sum(n).unwrap(), q(e), "alternating sum at n = {n}");
        assert_eq!(
            cycle_perfect_probability(n, true).unwrap(),
            q(p),
            "perfect at n = {n}"
        );
    }
}

#[test]
fn matching_lists_agree_with_oracle() {
    for n in 1..=12 {
        let ours: Vec<Vec<usize>> = all_matchings(n)
            .unwrap()
            .iter()
            .map(|m| m.partners().to_vec())
            .collect();
        assert_eq!(ours, common::matchings(n), "n = {n}");
    }
}
