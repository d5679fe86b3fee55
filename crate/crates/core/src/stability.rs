//! Stable matchings on a circular table.
//!
//! A matching is stable when no two neighbors who are not talking to each
//! other would both rather talk to each other. Being alone ranks below
//! either neighbor. Two independent checkers are provided, one straight from
//! the blocking-pair definition and one from the structural
//! characterization (natural pairs matched, preferred seats matched, no two
//! adjacent seats alone); tests hold them equal exhaustively.
//!
//! For regular preferences the unique stable matching is built from the
//! zone decomposition of every stretch between consecutive natural pairs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Matching, Preferences, Side};

/// Default largest table accepted by [`all_stable_matchings_bruteforce`].
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 16;

/// Shape of the stable-matching set for a preference string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StableOutcome {
    UniqueStable(Matching),
    /// Irregular preferences on an even table: both perfect matchings are
    /// stable. The one containing the pair `(0, 1)` comes first; on a
    /// 2-seat table the two coincide.
    TwoPerfect(Matching, Matching),
    /// Irregular preferences on an odd table.
    NoStable,
}

impl StableOutcome {
    /// Whether the outcome leaves nobody alone (vacuously false when no
    /// stable matching exists).
    pub fn everyone_matched(&self) -> bool {
        match self {
            StableOutcome::UniqueStable(m) => m.is_perfect(),
            StableOutcome::TwoPerfect(..) => true,
            StableOutcome::NoStable => false,
        }
    }
}

/// Middle zone of a stretch between natural pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MiddleZone {
    Empty,
    SingleL,
    SingleR,
    PairLR,
}

/// The seats strictly between two circularly consecutive natural pairs.
///
/// The stretch reads as some L's followed by some R's. `leading` is the
/// even-length run of L's paired off left to right, `trailing` the
/// even-length run of R's paired off right to left, and `middle` holds the
/// at most two seats left over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stretch {
    /// Left seat of the natural pair that opens the stretch.
    pub opening_pair: usize,
    /// Left seat of the natural pair that closes the stretch.
    pub closing_pair: usize,
    /// First seat of the stretch (meaningless when `len == 0`).
    pub start: usize,
    pub len: usize,
    pub leading: usize,
    pub trailing: usize,
    pub middle: MiddleZone,
}

impl Stretch {
    /// Seats of the stretch in left-to-right order.
    pub fn seats(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).map(move |j| (self.start + j) % n)
    }

    /// The middle zone's seats.
    pub fn middle_seats(&self, n: usize) -> Vec<usize> {
        let width = self.len - self.leading - self.trailing;
        (0..width)
            .map(|j| (self.start + self.leading + j) % n)
            .collect()
    }
}

/// Splits the table into stretches between consecutive natural pairs.
pub fn zone_decomposition(prefs: &Preferences) -> Result<Vec<Stretch>> {
    prefs.require_regular()?;
    let n = prefs.n();
    let starts: Vec<usize> = prefs.natural_pairs().iter().map(|&(i, _)| i).collect();
    let k = starts.len();
    let mut stretches = Vec::with_capacity(k);
    for (idx, &open) in starts.iter().enumerate() {
        let close = starts[(idx + 1) % k];
        let len = (close as isize - open as isize - 2).rem_euclid(n as isize) as usize;
        // a single pair on a 2-seat table leaves nothing between
        let len = if n == 2 { 0 } else { len };
        let start = (open + 2) % n;
        let ls = (0..len)
            .take_while(|&j| prefs.label(start + j) == Side::L)
            .count();
        let rs = len - ls;
        debug_assert!((ls..len).all(|j| prefs.label(start + j) == Side::R));
        let middle = match (ls % 2, rs % 2) {
            (0, 0) => MiddleZone::Empty,
            (1, 0) => MiddleZone::SingleL,
            (0, 1) => MiddleZone::SingleR,
            _ => MiddleZone::PairLR,
        };
        stretches.push(Stretch {
            opening_pair: open,
            closing_pair: close,
            start,
            len,
            leading: ls - ls % 2,
            trailing: rs - rs % 2,
            middle,
        });
    }
    Ok(stretches)
}

/// The unique stable matching of regular preferences.
pub fn unique_stable_matching(prefs: &Preferences) -> Result<Matching> {
    let stretches = zone_decomposition(prefs)?;
    let n = prefs.n();
    let mut partner: Vec<usize> = (0..n).collect();
    let mut pair = |a: usize, b: usize| {
        partner[a] = b;
        partner[b] = a;
    };
    for st in &stretches {
        pair(st.opening_pair, (st.opening_pair + 1) % n);
        let seat = |j: usize| (st.start + j) % n;
        for j in (0..st.leading).step_by(2) {
            pair(seat(j), seat(j + 1));
        }
        for j in (0..st.trailing).step_by(2) {
            pair(seat(st.len - 1 - j), seat(st.len - 2 - j));
        }
        if st.middle == MiddleZone::PairLR {
            pair(seat(st.leading), seat(st.leading + 1));
        }
    }
    Ok(Matching::from_partner_unchecked(partner))
}

/// Classifies the full set of stable matchings.
pub fn stable_set(prefs: &Preferences) -> StableOutcome {
    let n = prefs.n();
    if prefs.is_regular() {
        return StableOutcome::UniqueStable(
            unique_stable_matching(prefs).expect("regular preferences"),
        );
    }
    if n % 2 == 1 {
        return StableOutcome::NoStable;
    }
    let even = Matching::from_partner_unchecked((0..n).map(|i| i ^ 1).collect());
    let odd = Matching::from_partner_unchecked(
        (0..n)
            .map(|i| {
                if i % 2 == 1 {
                    (i + 1) % n
                } else {
                    (i + n - 1) % n
                }
            })
            .collect(),
    );
    StableOutcome::TwoPerfect(even, odd)
}

/// Whether seat `i` strictly prefers talking to neighbor `j` over its
/// situation in `m`.
fn prefers_over_current(prefs: &Preferences, m: &Matching, i: usize, j: usize) -> bool {
    let current = m.partner(i);
    if current == i {
        true
    } else if current == j {
        false
    } else {
        prefs.preferred_neighbor(i) == j
    }
}

/// Adjacent pairs `(i, i + 1)` of the table, each listed once.
fn adjacent_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    let count = match n {
        1 => 0,
        2 => 1,
        _ => n,
    };
    (0..count).map(move |i| (i, (i + 1) % n))
}

fn check_sizes(prefs: &Preferences, m: &Matching) -> Result<()> {
    if prefs.n() != m.n() {
        return Err(Error::InvalidMatching(format!(
            "matching has {} seats, preferences have {}",
            m.n(),
            prefs.n()
        )));
    }
    Ok(())
}

/// Stability by definition: no blocking pair exists.
pub fn is_stable_def(prefs: &Preferences, m: &Matching) -> Result<bool> {
    check_sizes(prefs, m)?;
    Ok(!adjacent_pairs(prefs.n()).any(|(i, j)| {
        m.partner(i) != j
            && prefers_over_current(prefs, m, i, j)
            && prefers_over_current(prefs, m, j, i)
    }))
}

/// Stability by characterization: natural pairs matched together, preferred
/// seats matched, and no two neighbors both alone.
pub fn is_stable_characterized(prefs: &Preferences, m: &Matching) -> Result<bool> {
    check_sizes(prefs, m)?;
    let n = prefs.n();
    let naturals_matched = prefs
        .natural_pairs()
        .iter()
        .all(|&(a, b)| m.partner(a) == b);
    let preferred_matched = (0..n).all(|i| !prefs.is_preferred(i) || !m.is_unmatched(i));
    let no_idle_neighbors =
        adjacent_pairs(n).all(|(i, j)| !(m.is_unmatched(i) && m.is_unmatched(j)));
    Ok(naturals_matched && preferred_matched && no_idle_neighbors)
}

/// Every valid matching of an `n`-seat table, ordered lexicographically by
/// partner list.
pub fn all_matchings(n: usize) -> Result<Vec<Matching>> {
    all_matchings_capped(n, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn all_matchings_capped(n: usize, cap: usize) -> Result<Vec<Matching>> {
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "brute-force matching",
            n,
            cap,
        });
    }
    let mut out = Vec::new();
    match n {
        1 => out.push(Matching::empty(1)),
        2 => {
            out.push(Matching::empty(2));
            out.push(Matching::from_partner_unchecked(vec![1, 0]));
        }
        _ => {
            // Edge i joins seats i and i + 1; keep subsets with no two
            // cyclically adjacent edges.
            let full = (1u64 << n) - 1;
            for edges in 0..=full {
                let rotated = ((edges << 1) | (edges >> (n - 1))) & full;
                if edges & rotated != 0 {
                    continue;
                }
                let mut partner: Vec<usize> = (0..n).collect();
                for i in (0..n).filter(|&i| edges >> i & 1 == 1) {
                    let j = (i + 1) % n;
                    partner[i] = j;
                    partner[j] = i;
                }
                out.push(Matching::from_partner_unchecked(partner));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// All stable matchings, found by filtering every matching through
/// [`is_stable_def`].
pub fn all_stable_matchings_bruteforce(prefs: &Preferences) -> Result<Vec<Matching>> {
    all_stable_matchings_bruteforce_capped(prefs, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn all_stable_matchings_bruteforce_capped(
    prefs: &Preferences,
    cap: usize,
) -> Result<Vec<Matching>> {
    let candidates = all_matchings_capped(prefs.n(), cap)?;
    Ok(candidates
        .into_iter()
        .filter(|m| is_stable_def(prefs, m).expect("sizes agree"))
        .collect())
}

/// Whether seat `i` is alone in the unique stable matching, decided by the
/// parity of `s(i)` and `t(i)`.
pub fn is_unmatched(prefs: &Preferences, i: usize) -> Result<bool> {
    let s = prefs.left_distance(i)?;
    let t = prefs.right_distance(i)?;
    Ok(s % 2 == 0 && t % 2 == 0)
}

/// Whether the unique stable matching is perfect: every stretch between
/// consecutive natural pairs has even length.
pub fn everyone_matched(prefs: &Preferences) -> Result<bool> {
    Ok(zone_decomposition(prefs)?.iter().all(|st| st.len % 2 == 0))
}
