//! Closed-form probabilities, evaluated exactly.
//!
//! Nothing in this module touches floating point except [`limits`].

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::ExactProb;

/// Which branch of a formula produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    Odd,
    Even,
}

impl Branch {
    pub fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Branch::Even
        } else {
            Branch::Odd
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaResult {
    pub n: usize,
    pub value: ExactProb,
    pub branch: Branch,
}

fn require_positive(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyTable)
    } else {
        Ok(())
    }
}

fn frac(p: i64, q: i64) -> ExactProb {
    ExactProb::new(p, q)
}

/// Probability that a given seat is alone in equilibrium.
///
/// Odd `n`: `1/9 + (1/2)^n (2n/3 - 8/9 + 2/n)`.
/// Even `n`: `1/9 - (1/2)^n (2n/3 - 8/9)`.
pub fn f_closed(n: usize) -> Result<ExactProb> {
    Ok(f_closed_detailed(n)?.value)
}

pub fn f_closed_detailed(n: usize) -> Result<FormulaResult> {
    require_positive(n)?;
    let nn = n as i64;
    let scale = ExactProb::half_pow(n as u32);
    let branch = Branch::of(n);
    let value = match branch {
        Branch::Odd => frac(1, 9) + scale * (frac(2 * nn, 3) - frac(8, 9) + frac(2, nn)),
        Branch::Even => frac(1, 9) - scale * (frac(2 * nn, 3) - frac(8, 9)),
    };
    Ok(FormulaResult { n, value, branch })
}

/// Probability that nobody is alone: 0 for odd `n`,
/// `(3^(n/2) - 1) / 2^(n-1)` for even `n`.
pub fn g_closed(n: usize) -> Result<ExactProb> {
    require_positive(n)?;
    if n % 2 == 1 {
        return Ok(ExactProb::zero());
    }
    let three_pow = num_traits::pow(BigInt::from(3), n / 2);
    Ok(ExactProb::new(three_pow - 1, BigInt::one() << (n - 1)))
}

/// `sum_{c=1}^{m-2} (1/4)^c sum_{d=1}^{m-1-c} (1/4)^d`, term by term.
pub fn distance_double_sum(m: usize) -> Result<ExactProb> {
    if m < 2 {
        return Err(Error::invalid("double sum needs m >= 2", m));
    }
    let mut total = ExactProb::zero();
    for c in 1..=m.saturating_sub(2) {
        let inner: ExactProb = (1..=m - 1 - c)
            .map(|d| ExactProb::quarter_pow(d as u32))
            .sum();
        total = total + ExactProb::quarter_pow(c as u32) * inner;
    }
    Ok(total)
}

/// `1/9 - (1/4)^m (4m/3 - 8/9)`.
pub fn distance_double_sum_closed(m: usize) -> Result<ExactProb> {
    if m < 2 {
        return Err(Error::invalid("closed form needs m >= 2", m));
    }
    let mm = m as i64;
    Ok(frac(1, 9) - ExactProb::quarter_pow(m as u32) * (frac(4 * mm, 3) - frac(8, 9)))
}

/// On an odd table `n = 2m - 1`, the weight of the `m - 1` ways the
/// leftward and rightward scans from a seat meet: `(m - 1) (1/2)^(2m - 2)`.
pub fn odd_overlap_term(m: usize) -> Result<ExactProb> {
    if m < 2 {
        return Err(Error::invalid("overlap term needs m >= 2", m));
    }
    Ok(ExactProb::from_integer(m as i64 - 1) * ExactProb::half_pow(2 * m as u32 - 2))
}

/// Contribution of the two one-symbol strings on an odd table, where one
/// random seat is left out: `2 (1/2)^n (1/n)`.
pub fn irregular_odd_term(n: usize) -> Result<ExactProb> {
    if n.is_multiple_of(2) {
        return Err(Error::invalid("irregular odd term needs odd n", n));
    }
    Ok(ExactProb::half_pow(n as u32 - 1) * frac(1, n as i64))
}

/// `sum_{k=0}^{n-3} (-2)^k (n-2-k) / k!`.
///
/// This is the expected number of seats left alone by randomized greedy
/// matching on an `n`-cycle (it equals 1 at `n = 3`), not a per-seat
/// probability; see [`greedy_unmatched_probability`].
pub fn greedy_sum(n: usize) -> Result<ExactProb> {
    if n < 3 {
        return Err(Error::invalid("greedy sum needs n >= 3", n));
    }
    let mut total = ExactProb::zero();
    let mut factorial = BigInt::one();
    let mut power = BigInt::one();
    for k in 0..=n - 3 {
        if k > 0 {
            factorial *= k;
            power *= -2;
        }
        total = total + ExactProb::new(&power * (n - 2 - k), factorial.clone());
    }
    Ok(total)
}

/// Per-seat probability of being alone under randomized greedy matching:
/// [`greedy_sum`] divided by `n`, since every seat of the cycle is alike.
pub fn greedy_unmatched_probability(n: usize) -> Result<ExactProb> {
    Ok(greedy_sum(n)? / ExactProb::from_integer(n as i64))
}

/// Large-table limits of the two per-seat probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Limits {
    /// Stable matching: 1/9.
    pub stable: f64,
    /// Randomized greedy matching: e^-2.
    pub greedy: f64,
}

pub fn limits() -> Limits {
    Limits {
        stable: 1.0 / 9.0,
        greedy: (-2.0f64).exp(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_examples() {
        assert_eq!(f_closed(9).unwrap(), frac(35, 288));
        assert_eq!(f_closed(11).unwrap(), frac(161, 1408));
        assert_eq!(f_closed(2).unwrap(), ExactProb::zero());
        assert_eq!(f_closed(1).unwrap(), ExactProb::one());
        assert_eq!(f_closed_detailed(6).unwrap().branch, Branch::Even);
        assert_eq!(f_closed(0), Err(Error::EmptyTable));
    }

    #[test]
    fn g_examples() {
        assert_eq!(g_closed(10).unwrap(), frac(121, 256));
        assert_eq!(g_closed(7).unwrap(), ExactProb::zero());
        assert_eq!(g_closed(6).unwrap(), frac(13, 16));
        assert_eq!(g_closed(2).unwrap(), ExactProb::one());
        assert!(g_closed(0).is_err());
    }

    #[test]
    fn double_sum_examples() {
        assert_eq!(distance_double_sum(2).unwrap(), ExactProb::zero());
        assert_eq!(distance_double_sum(3).unwrap(), frac(1, 16));
        assert_eq!(distance_double_sum_closed(2).unwrap(), ExactProb::zero());
        assert_eq!(distance_double_sum_closed(3).unwrap(), frac(1, 16));
        assert_eq!(
            distance_double_sum(6).unwrap(),
            distance_double_sum_closed(6).unwrap()
        );
        assert_eq!(
            distance_double_sum(10).unwrap(),
            distance_double_sum_closed(10).unwrap()
        );
        assert!(distance_double_sum(1).is_err());
    }

    #[test]
    fn odd_pieces() {
        assert_eq!(odd_overlap_term(2).unwrap(), frac(1, 4));
        assert_eq!(odd_overlap_term(3).unwrap(), frac(1, 8));
        assert_eq!(irregular_odd_term(1).unwrap(), ExactProb::one());
        assert_eq!(irregular_odd_term(3).unwrap(), frac(1, 12));
        assert_eq!(irregular_odd_term(5).unwrap(), frac(1, 80));
        assert!(irregular_odd_term(4).is_err());
        // n = 3 assembles from an empty double sum
        assert_eq!(
            distance_double_sum(2).unwrap()
                + odd_overlap_term(2).unwrap()
                + irregular_odd_term(3).unwrap(),
            f_closed(3).unwrap()
        );
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_sum(3).unwrap(), ExactProb::one());
        assert_eq!(greedy_sum(4).unwrap(), ExactProb::zero());
        assert_eq!(greedy_sum(6).unwrap(), frac(2, 3));
        assert_eq!(greedy_sum(7).unwrap(), ExactProb::one());
        assert_eq!(greedy_unmatched_probability(3).unwrap(), frac(1, 3));
        assert_eq!(greedy_unmatched_probability(6).unwrap(), frac(1, 9));
        assert_eq!(greedy_unmatched_probability(4).unwrap(), ExactProb::zero());
        assert!(greedy_sum(2).is_err());
    }

    #[test]
    fn limit_constants() {
        let l = limits();
        assert!((l.stable - 0.111_111_111_111_111).abs() < 1e-15);
        assert!((l.greedy - 0.135_335_283_236_613).abs() < 1e-15);
        assert!(l.greedy > l.stable);
    }
}
