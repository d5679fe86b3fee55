//! Stable one-on-one conversations at a circular table.
//!
//! Each of `n` seats prefers its left or right neighbor. This crate builds
//! the stable matching for such preferences, evaluates the probability that
//! a seat is left alone (and that nobody is) with exact rational
//! arithmetic, and checks those values against exhaustive enumeration,
//! an exact recursion for randomized greedy matching, and seeded sampling.
//!
//! ```
//! use tablematch::{closed_form, stability, ExactProb, Preferences};
//!
//! let prefs: Preferences = "RLLRL".parse().unwrap();
//! let m = stability::unique_stable_matching(&prefs).unwrap();
//! assert_eq!(m.unmatched_seats(), vec![2]);
//! assert_eq!(closed_form::f_closed(9).unwrap(), ExactProb::new(35, 288));
//! ```

pub mod closed_form;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod greedy;
pub mod model;
pub mod montecarlo;
pub mod report;
pub mod sampling;
pub mod stability;

pub use error::{Error, Result};
pub use exact::ExactProb;
pub use model::{Matching, Preferences, Regularity, Side};
pub use stability::StableOutcome;
