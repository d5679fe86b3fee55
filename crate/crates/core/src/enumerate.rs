//! Exhaustive enumeration of every preference string of a table.
//!
//! Strings are visited through their integer codes, so a sweep is a
//! counter loop that splits into independent shards. Tallies are integers
//! and combine by addition, which makes sharded and sequential runs
//! bit-identical.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign};

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::ExactProb;
use crate::model::{Preferences, Regularity};
use crate::stability::{
    all_stable_matchings_bruteforce_capped, everyone_matched, is_unmatched, DEFAULT_BRUTE_FORCE_CAP,
};

/// Limits and parallelism for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumConfig {
    /// Largest `n` for the structural sweeps (`2^n` strings).
    pub enum_cap: usize,
    /// Largest `n` for the stable-matching census, which also enumerates
    /// every matching of each string.
    pub census_cap: usize,
    /// Number of shards; 0 picks one per rayon worker thread, 1 runs
    /// sequentially.
    pub shards: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            enum_cap: 24,
            census_cap: 14,
            shards: 0,
        }
    }
}

impl EnumConfig {
    pub fn sequential() -> Self {
        EnumConfig {
            shards: 1,
            ..Default::default()
        }
    }
}

/// Per-outcome counts over a range of preference codes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EnumCounts {
    /// Strings visited.
    pub strings: u64,
    /// Regular strings (unique stable matching).
    pub regular: u64,
    /// One-symbol strings on an even table (two perfect stable matchings).
    pub irregular_even: u64,
    /// One-symbol strings on an odd table (no stable matching).
    pub irregular_odd: u64,
    /// Regular strings whose stable matching leaves seat 0 alone.
    pub regular_seat0_unmatched: u64,
    /// Regular strings whose stable matching is perfect.
    pub even_spaced: u64,
}

impl EnumCounts {
    /// Strings whose stable outcome leaves nobody alone.
    pub fn perfect(&self) -> u64 {
        self.even_spaced + self.irregular_even
    }
}

impl Add for EnumCounts {
    type Output = EnumCounts;
    fn add(self, o: EnumCounts) -> EnumCounts {
        EnumCounts {
            strings: self.strings + o.strings,
            regular: self.regular + o.regular,
            irregular_even: self.irregular_even + o.irregular_even,
            irregular_odd: self.irregular_odd + o.irregular_odd,
            regular_seat0_unmatched: self.regular_seat0_unmatched + o.regular_seat0_unmatched,
            even_spaced: self.even_spaced + o.even_spaced,
        }
    }
}

impl AddAssign for EnumCounts {
    fn add_assign(&mut self, o: EnumCounts) {
        *self = *self + o;
    }
}

/// Exact results of a full enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumReport {
    pub n: usize,
    pub total_strings: u64,
    pub unmatched_probability: ExactProb,
    pub perfect_probability: ExactProb,
    pub counts: EnumCounts,
}

impl EnumReport {
    /// Builds the probabilities from complete tallies.
    pub fn from_counts(n: usize, counts: EnumCounts) -> Self {
        let total = ExactProb::from_integer(BigInt::one() << n);
        // Each one-symbol odd string leaves seat 0 out with probability 1/n.
        let weight = ExactProb::from_integer(counts.regular_seat0_unmatched)
            + ExactProb::new(counts.irregular_odd, n as u64);
        EnumReport {
            n,
            total_strings: counts.strings,
            unmatched_probability: weight / total.clone(),
            perfect_probability: ExactProb::from_integer(counts.perfect()) / total,
            counts,
        }
    }
}

/// Tallies over the codes in `[lo, hi)`.
pub fn enumerate_range(n: usize, lo: u64, hi: u64) -> Result<EnumCounts> {
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    if n >= 64 {
        return Err(Error::CapExceeded {
            what: "enumeration",
            n,
            cap: 63,
        });
    }
    if lo > hi || hi > 1u64 << n {
        return Err(Error::InvalidRange { n, lo, hi });
    }
    let mut counts = EnumCounts::default();
    for code in lo..hi {
        let prefs = Preferences::from_code(n, code)?;
        counts.strings += 1;
        match prefs.classify() {
            Regularity::Regular => {
                counts.regular += 1;
                if is_unmatched(&prefs, 0)? {
                    counts.regular_seat0_unmatched += 1;
                }
                if everyone_matched(&prefs)? {
                    counts.even_spaced += 1;
                }
            }
            _ if n.is_multiple_of(2) => counts.irregular_even += 1,
            _ => counts.irregular_odd += 1,
        }
    }
    Ok(counts)
}

fn check_cap(n: usize, cap: usize, what: &'static str) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    if n > cap || n >= 64 {
        return Err(Error::CapExceeded { what, n, cap });
    }
    Ok(())
}

/// Splits `[0, total)` into `shards` contiguous ranges.
fn shard_bounds(total: u64, shards: u64) -> Vec<(u64, u64)> {
    let shards = shards.clamp(1, total.max(1));
    (0..shards)
        .map(|s| (total * s / shards, total * (s + 1) / shards))
        .collect()
}

/// Full enumeration for one table size.
pub fn enumerate(n: usize, config: &EnumConfig) -> Result<EnumReport> {
    check_cap(n, config.enum_cap, "enumeration")?;
    let total = 1u64 << n;
    let shards = match config.shards {
        0 => rayon::current_num_threads() as u64 * 4,
        s => s as u64,
    };
    let bounds = shard_bounds(total, shards);
    let counts = if bounds.len() == 1 {
        enumerate_range(n, 0, total)?
    } else {
        bounds
            .into_par_iter()
            .map(|(lo, hi)| enumerate_range(n, lo, hi))
            .try_reduce(EnumCounts::default, |a, b| Ok(a + b))?
    };
    Ok(EnumReport::from_counts(n, counts))
}

/// `f(n)` by exhaustive enumeration with the default configuration.
pub fn enumerate_f(n: usize) -> Result<ExactProb> {
    Ok(enumerate(n, &EnumConfig::default())?.unmatched_probability)
}

/// `g(n)` by exhaustive enumeration with the default configuration.
pub fn enumerate_g(n: usize) -> Result<ExactProb> {
    Ok(enumerate(n, &EnumConfig::default())?.perfect_probability)
}

/// Number of strings of an even table whose stable outcome is perfect.
pub fn count_perfect_strings(n: usize) -> Result<u64> {
    count_perfect_strings_with(n, &EnumConfig::default())
}

pub fn count_perfect_strings_with(n: usize, config: &EnumConfig) -> Result<u64> {
    if n % 2 == 1 {
        return Err(Error::invalid("perfect-string count needs even n", n));
    }
    Ok(enumerate(n, config)?.counts.perfect())
}

/// Histogram: number of stable matchings -> number of strings with that
/// many, found by brute force over every matching.
pub fn stable_count_census(n: usize) -> Result<BTreeMap<usize, u64>> {
    stable_count_census_with(n, &EnumConfig::default())
}

pub fn stable_count_census_with(n: usize, config: &EnumConfig) -> Result<BTreeMap<usize, u64>> {
    check_cap(n, config.census_cap.min(DEFAULT_BRUTE_FORCE_CAP), "census")?;
    let per_string = (0..1u64 << n)
        .into_par_iter()
        .map(|code| {
            let prefs = Preferences::from_code(n, code)?;
            Ok(all_stable_matchings_bruteforce_capped(&prefs, n)?.len())
        })
        .collect::<Result<Vec<usize>>>()?;
    let mut hist = BTreeMap::new();
    for count in per_string {
        *hist.entry(count).or_insert(0) += 1;
    }
    Ok(hist)
}
