//! Seeded Monte Carlo estimators for the stable-matching probabilities.
//!
//! Each sample draws one preference string (`ceil(n / 64)` words from the
//! generator). A one-symbol string on an odd table has no stable matching;
//! for the unmatched estimate that case draws one extra uniform seat from
//! the same stream and counts seat 0 as alone when it is picked.

use rand::{Rng, RngCore};
use serde::Serialize;

use crate::closed_form::{f_closed, g_closed};
use crate::error::{Error, Result};
use crate::exact::ExactProb;
use crate::model::{Preferences, Regularity};
use crate::sampling::{run_batches, StreamTag, RNG_IDENTIFIER};
use crate::stability::{everyone_matched, is_unmatched};

/// Which probability is being estimated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimand {
    /// `f`: seat 0 is alone.
    Unmatched,
    /// `g`: nobody is alone.
    Perfect,
}

impl Estimand {
    pub fn label(self) -> &'static str {
        match self {
            Estimand::Unmatched => "f",
            Estimand::Perfect => "g",
        }
    }

    fn tag(self) -> StreamTag {
        match self {
            Estimand::Unmatched => StreamTag::Unmatched,
            Estimand::Perfect => StreamTag::Perfect,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleStats {
    pub n: usize,
    pub quantity: String,
    pub samples: u64,
    pub hits: u64,
    pub estimate: f64,
    pub standard_error: f64,
    pub exact_reference: Option<ExactProb>,
    pub seed: u64,
    pub rng_identifier: String,
}

impl SampleStats {
    /// Distance from the exact reference in standard errors; `None` without
    /// a reference. A zero standard error counts as exact agreement only
    /// when the estimate equals the reference.
    pub fn z_score(&self) -> Option<f64> {
        let exact = self.exact_reference.as_ref()?.to_f64();
        let diff = (self.estimate - exact).abs();
        Some(if self.standard_error > 0.0 {
            diff / self.standard_error
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        })
    }
}

fn draw_prefs<R: RngCore>(rng: &mut R, n: usize) -> Preferences {
    let words = (0..n.div_ceil(64)).map(|_| rng.next_u64()).collect();
    Preferences::from_words(n, words).expect("n >= 1")
}

fn indicator<R: RngCore>(rng: &mut R, n: usize, what: Estimand) -> bool {
    let prefs = draw_prefs(rng, n);
    let regular = prefs.classify() == Regularity::Regular;
    match what {
        Estimand::Unmatched if regular => is_unmatched(&prefs, 0).expect("regular"),
        Estimand::Unmatched if n.is_multiple_of(2) => false,
        Estimand::Unmatched => rng.gen_range(0..n) == 0,
        Estimand::Perfect if regular => everyone_matched(&prefs).expect("regular"),
        Estimand::Perfect => n.is_multiple_of(2),
    }
}

/// Estimates `f(n)` or `g(n)` from `samples` random strings.
pub fn sample(what: Estimand, n: usize, seed: u64, samples: u64) -> Result<SampleStats> {
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    if samples == 0 {
        return Err(Error::invalid("samples must be positive", samples));
    }
    let hits = run_batches(
        seed,
        what.tag(),
        samples,
        |rng, count| (0..count).filter(|_| indicator(rng, n, what)).count() as u64,
        |a, b| a + b,
    );
    let estimate = hits as f64 / samples as f64;
    let exact_reference = Some(match what {
        Estimand::Unmatched => f_closed(n)?,
        Estimand::Perfect => g_closed(n)?,
    });
    Ok(SampleStats {
        n,
        quantity: what.label().to_string(),
        samples,
        hits,
        estimate,
        standard_error: (estimate * (1.0 - estimate) / samples as f64).sqrt(),
        exact_reference,
        seed,
        rng_identifier: RNG_IDENTIFIER.to_string(),
    })
}

pub fn sample_f(n: usize, seed: u64, samples: u64) -> Result<SampleStats> {
    sample(Estimand::Unmatched, n, seed, samples)
}

pub fn sample_g(n: usize, seed: u64, samples: u64) -> Result<SampleStats> {
    sample(Estimand::Perfect, n, seed, samples)
}
