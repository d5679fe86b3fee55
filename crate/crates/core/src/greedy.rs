//! Randomized greedy matching on cycles and paths.
//!
//! The process repeatedly picks a uniformly random edge whose endpoints are
//! both free and matches it. On an `n`-cycle the first pick leaves a path of
//! `n - 2` seats, and on a path of `m` seats picking edge `(i, i + 1)`
//! (1-based, uniform over `m - 1` edges) leaves independent paths of
//! `i - 1` and `m - i - 1` seats. That gives, for `m >= 2`,
//!
//! ```text
//! u(m)  = 2/(m-1) * sum_{j=0}^{m-2} u(j)                      expected alone
//! pp(m) = 1/(m-1) * sum_{i=1}^{m-1} pp(i-1) pp(m-1-i)         P(perfect)
//! ```
//!
//! with `u(0) = 0, u(1) = 1, pp(0) = 1, pp(1) = 0`.
//!
//! The expectation table is kept in scaled integer form: with
//! `T(k) = k! * sum_{j<=k} u(j)` we have `T(k) = k (T(k-1) + 2 T(k-2))` and
//! `u(m) = 2 T(m-2) / (m-1)!`, so building to `m = 5000` needs only
//! small-integer multiplications and one reduction per query.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::ExactProb;
use crate::sampling::{run_batches, StreamTag, RNG_IDENTIFIER};

/// Memoized exact values of the path recurrences.
#[derive(Debug, Clone)]
pub struct GreedyTable {
    max_m: usize,
    // scaled[k] = k! * (u(0) + ... + u(k))
    scaled: Vec<BigInt>,
    perfect: Vec<ExactProb>,
}

impl GreedyTable {
    /// Builds both recurrences for paths of up to `max_m` seats.
    pub fn new(max_m: usize) -> Self {
        let mut table = GreedyTable::expectations_only(max_m);
        table.perfect = path_perfect_table(max_m);
        table
    }

    /// Builds only the expectation table; [`GreedyTable::pp`] then answers
    /// `None`.
    pub fn expectations_only(max_m: usize) -> Self {
        GreedyTable {
            max_m,
            scaled: scaled_prefix_sums(max_m),
            perfect: Vec::new(),
        }
    }

    pub fn max_m(&self) -> usize {
        self.max_m
    }

    /// Expected number of alone seats on a path of `m` seats.
    pub fn u(&self, m: usize) -> Option<ExactProb> {
        match m {
            0 => Some(ExactProb::zero()),
            1 => Some(ExactProb::one()),
            _ if m > self.max_m => None,
            _ => {
                let factorial: BigInt = (2..m).fold(BigInt::one(), |acc, k| acc * k);
                Some(ExactProb::new(&self.scaled[m - 2] * 2, factorial))
            }
        }
    }

    /// Probability that a path of `m` seats ends perfectly matched.
    pub fn pp(&self, m: usize) -> Option<ExactProb> {
        self.perfect.get(m).cloned()
    }
}

fn scaled_prefix_sums(max_m: usize) -> Vec<BigInt> {
    let len = max_m.saturating_sub(1).max(2);
    let mut t: Vec<BigInt> = Vec::with_capacity(len);
    t.push(BigInt::zero());
    t.push(BigInt::one());
    for k in 2..len {
        let next = (&t[k - 1] + (&t[k - 2] << 1usize)) * k;
        t.push(next);
    }
    t
}

fn path_perfect_table(max_m: usize) -> Vec<ExactProb> {
    let mut pp = vec![ExactProb::one(), ExactProb::zero()];
    for m in 2..=max_m {
        if m % 2 == 1 {
            pp.push(ExactProb::zero());
            continue;
        }
        let total: ExactProb = (1..m).step_by(2).map(|i| &pp[i - 1] * &pp[m - 1 - i]).sum();
        pp.push(total / ExactProb::from_integer(m as i64 - 1));
    }
    pp.truncate(max_m + 1);
    pp
}

/// `u(m)`: expected number of seats left alone on a path of `m` seats.
pub fn path_expected_unmatched(m: usize) -> ExactProb {
    GreedyTable::expectations_only(m)
        .u(m)
        .expect("table covers m")
}

/// Probability that a path of `m` seats ends perfectly matched.
pub fn path_perfect_probability(m: usize) -> ExactProb {
    path_perfect_table(m).swap_remove(m)
}

/// Expected number of alone seats on an `n`-cycle: `u(n - 2)`.
pub fn cycle_expected_unmatched(n: usize) -> Result<ExactProb> {
    if n < 3 {
        return Err(Error::invalid("greedy cycle needs n >= 3", n));
    }
    Ok(path_expected_unmatched(n - 2))
}

/// Probability that greedy matching on an `n`-cycle leaves nobody alone.
///
/// Odd `n` is rejected unless `lenient`, in which case the parity answer 0
/// is returned.
pub fn cycle_perfect_probability(n: usize, lenient: bool) -> Result<ExactProb> {
    if n % 2 == 1 {
        return if lenient && n >= 3 {
            Ok(ExactProb::zero())
        } else {
            Err(Error::invalid("greedy perfect probability needs even n", n))
        };
    }
    if n < 4 {
        return Err(Error::invalid("greedy perfect probability needs n >= 4", n));
    }
    Ok(path_perfect_probability(n - 2))
}

/// Tallies of a greedy simulation run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GreedyTally {
    pub samples: u64,
    pub unmatched_total: u64,
    pub unmatched_sq_total: u128,
    pub perfect: u64,
    /// Number of alone seats -> number of runs.
    pub histogram: BTreeMap<usize, u64>,
}

impl GreedyTally {
    fn merge(mut self, other: GreedyTally) -> GreedyTally {
        self.samples += other.samples;
        self.unmatched_total += other.unmatched_total;
        self.unmatched_sq_total += other.unmatched_sq_total;
        self.perfect += other.perfect;
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_insert(0) += v;
        }
        self
    }
}

/// Summary of a greedy simulation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GreedyStats {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub rng_identifier: String,
    /// Alone seats over all seats and runs.
    pub per_person: f64,
    /// Standard error of `per_person`, from the sample variance of the
    /// per-run alone count.
    pub per_person_se: f64,
    pub perfect_frequency: f64,
    pub perfect_se: f64,
    pub mean_unmatched: f64,
    pub tally: GreedyTally,
}

/// Runs randomized greedy matching `samples` times on an `n`-cycle.
pub fn simulate_greedy_cycle(n: usize, seed: u64, samples: u64) -> Result<GreedyStats> {
    if n < 3 {
        return Err(Error::invalid("greedy cycle needs n >= 3", n));
    }
    if samples == 0 {
        return Err(Error::invalid("samples must be positive", samples));
    }
    let tally = run_batches(
        seed,
        StreamTag::Greedy,
        samples,
        |rng, count| {
            let mut sim = CycleSim::new(n);
            let mut tally = GreedyTally::default();
            for _ in 0..count {
                let alone = sim.run(rng);
                tally.samples += 1;
                tally.unmatched_total += alone as u64;
                tally.unmatched_sq_total += (alone * alone) as u128;
                if alone == 0 {
                    tally.perfect += 1;
                }
                *tally.histogram.entry(alone).or_insert(0) += 1;
            }
            tally
        },
        GreedyTally::merge,
    );
    Ok(GreedyStats::from_tally(n, seed, tally))
}

impl GreedyStats {
    fn from_tally(n: usize, seed: u64, tally: GreedyTally) -> Self {
        let s = tally.samples as f64;
        let mean = tally.unmatched_total as f64 / s;
        let var = if tally.samples > 1 {
            ((tally.unmatched_sq_total as f64 - s * mean * mean) / (s - 1.0)).max(0.0)
        } else {
            0.0
        };
        let perfect = tally.perfect as f64 / s;
        GreedyStats {
            n,
            samples: tally.samples,
            seed,
            rng_identifier: RNG_IDENTIFIER.to_string(),
            per_person: mean / n as f64,
            per_person_se: (var / s).sqrt() / n as f64,
            perfect_frequency: perfect,
            perfect_se: (perfect * (1.0 - perfect) / s).sqrt(),
            mean_unmatched: mean,
            tally,
        }
    }
}

/// Reusable state for one cycle run: the available edges with swap-remove
/// deletion. Edge `e` joins seats `e` and `e + 1`.
struct CycleSim {
    n: usize,
    available: Vec<usize>,
    slot: Vec<usize>,
}

const ABSENT: usize = usize::MAX;

impl CycleSim {
    fn new(n: usize) -> Self {
        CycleSim {
            n,
            available: Vec::with_capacity(n),
            slot: vec![ABSENT; n],
        }
    }

    fn remove(&mut self, e: usize) {
        let at = self.slot[e];
        if at == ABSENT {
            return;
        }
        let last = *self.available.last().expect("nonempty");
        self.available.swap_remove(at);
        if last != e {
            self.slot[last] = at;
        }
        self.slot[e] = ABSENT;
    }

    /// One full greedy run; returns the number of seats left alone.
    fn run<R: Rng>(&mut self, rng: &mut R) -> usize {
        let n = self.n;
        self.available.clear();
        self.available.extend(0..n);
        for (e, s) in self.slot.iter_mut().enumerate() {
            *s = e;
        }
        let mut matched = 0;
        while !self.available.is_empty() {
            let e = self.available[rng.gen_range(0..self.available.len())];
            matched += 2;
            self.remove((e + n - 1) % n);
            self.remove(e);
            self.remove((e + 1) % n);
        }
        n - matched
    }
}
