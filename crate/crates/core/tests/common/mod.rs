//! Test-only oracles, written against the raw definitions and sharing no
//! code with the library's matching logic.

#![allow(dead_code)]

use std::collections::HashMap;

use tablematch::ExactProb;

/// Preference string for code `code`: bit i set means seat i says R.
pub fn labels(n: usize, code: u64) -> Vec<char> {
    (0..n)
        .map(|i| if code >> i & 1 == 1 { 'R' } else { 'L' })
        .collect()
}

/// Every matching of the n-seat circle as a partner list, built seat by
/// seat.
pub fn matchings(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, i: usize, partner: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(
                partner
                    .iter()
                    .enumerate()
                    .map(|(k, p)| p.unwrap_or(k))
                    .collect(),
            );
            return;
        }
        if partner[i].is_some() {
            return go(n, i + 1, partner, out);
        }
        // alone
        partner[i] = Some(i);
        go(n, i + 1, partner, out);
        partner[i] = None;
        // seat 0 with its left neighbor, closing the circle
        if i == 0 && n >= 3 {
            partner[0] = Some(n - 1);
            partner[n - 1] = Some(0);
            go(n, 1, partner, out);
            partner[0] = None;
            partner[n - 1] = None;
        }
        // with right neighbor
        let j = (i + 1) % n;
        if j != i && partner[j].is_none() {
            partner[i] = Some(j);
            partner[j] = Some(i);
            go(n, i + 1, partner, out);
            partner[i] = None;
            partner[j] = None;
        }
    }
    let mut out = Vec::new();
    go(n, 0, &mut vec![None; n], &mut out);
    out.sort();
    out.dedup();
    out
}

/// Rank a seat gives to an option: 2 = preferred neighbor, 1 = other
/// neighbor, 0 = alone.
fn rank(prefs: &[char], i: usize, option: usize) -> u8 {
    let n = prefs.len();
    if option == i {
        return 0;
    }
    let wanted = if prefs[i] == 'R' {
        (i + 1) % n
    } else {
        (i + n - 1) % n
    };
    if option == wanted {
        2
    } else {
        1
    }
}

pub fn stable(prefs: &[char], partner: &[usize]) -> bool {
    let n = prefs.len();
    let edges: Vec<(usize, usize)> = match n {
        1 => vec![],
        2 => vec![(0, 1)],
        _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
    };
    !edges.into_iter().any(|(a, b)| {
        partner[a] != b
            && rank(prefs, a, b) > rank(prefs, a, partner[a])
            && rank(prefs, b, a) > rank(prefs, b, partner[b])
    })
}

/// f(n) and g(n) from brute-force stable sets with the conventions: two
/// stable (perfect) matchings count as matched, none leaves a uniform
/// random seat out.
pub fn brute_f_g(n: usize) -> (ExactProb, ExactProb) {
    let all = matchings(n);
    let mut unmatched = ExactProb::zero();
    let mut perfect = 0u64;
    for code in 0..1u64 << n {
        let prefs = labels(n, code);
        let st: Vec<&Vec<usize>> = all.iter().filter(|m| stable(&prefs, m)).collect();
        match st.len() {
            0 => unmatched = unmatched + ExactProb::new(1, n as i64),
            1 => {
                if st[0][0] == 0 {
                    unmatched = unmatched + ExactProb::one();
                }
                if st[0].iter().enumerate().all(|(i, &p)| p != i) {
                    perfect += 1;
                }
            }
            _ => {
                assert!(st
                    .iter()
                    .all(|m| m.iter().enumerate().all(|(i, &p)| p != i)));
                perfect += 1;
            }
        }
    }
    let total = ExactProb::from_integer(1i64 << n);
    (
        unmatched / total.clone(),
        ExactProb::from_integer(perfect) / total,
    )
}

/// Exact randomized greedy on the n-cycle by exploring every state (set of
/// matched seats). Returns (expected alone count, probability perfect).
pub fn brute_greedy_cycle(n: usize) -> (ExactProb, ExactProb) {
    fn go(
        n: usize,
        used: u64,
        memo: &mut HashMap<u64, (ExactProb, ExactProb)>,
    ) -> (ExactProb, ExactProb) {
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let free: Vec<usize> = (0..n)
            .filter(|&e| {
                let j = (e + 1) % n;
                used >> e & 1 == 0 && used >> j & 1 == 0
            })
            .collect();
        let result = if free.is_empty() {
            let alone = n - used.count_ones() as usize;
            (
                ExactProb::from_integer(alone as i64),
                if alone == 0 {
                    ExactProb::one()
                } else {
                    ExactProb::zero()
                },
            )
        } else {
            let w = ExactProb::new(1, free.len() as i64);
            let mut e_sum = ExactProb::zero();
            let mut p_sum = ExactProb::zero();
            for &e in &free {
                let (e2, p2) = go(n, used | 1 << e | 1 << ((e + 1) % n), memo);
                e_sum = e_sum + e2;
                p_sum = p_sum + p2;
            }
            (e_sum * w.clone(), p_sum * w)
        };
        memo.insert(used, result.clone());
        result
    }
    go(n, 0, &mut HashMap::new())
}
