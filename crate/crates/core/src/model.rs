//! Tables, preferences and matchings.
//!
//! Seats are indexed `0..n` around a circle; seat `i` has left neighbor
//! `i - 1` and right neighbor `i + 1`, modulo `n`. A [`Preferences`] value
//! records, for every seat, which of its two neighbors it would rather talk
//! to. Its canonical encoding is an integer whose bit `i` is set when seat
//! `i` prefers its right neighbor.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The neighbor a seat prefers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn as_char(self) -> char {
        match self {
            Side::L => 'L',
            Side::R => 'R',
        }
    }
}

/// Regularity of a preference string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regularity {
    /// Both symbols occur.
    Regular,
    IrregularAllL,
    IrregularAllR,
}

impl Regularity {
    pub fn is_regular(self) -> bool {
        self == Regularity::Regular
    }
}

/// Circular L/R preference string for a table of `n >= 1` seats.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Preferences {
    n: usize,
    // Bit i of the concatenated words is 1 when seat i prefers R.
    words: Vec<u64>,
}

/// Largest table size whose preferences fit the single-word integer code.
pub const MAX_CODE_SEATS: usize = 64;

impl Preferences {
    pub fn from_sides(sides: &[Side]) -> Result<Self> {
        if sides.is_empty() {
            return Err(Error::EmptyTable);
        }
        let mut words = vec![0u64; words_for(sides.len())];
        for (i, side) in sides.iter().enumerate() {
            if *side == Side::R {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Ok(Preferences {
            n: sides.len(),
            words,
        })
    }

    /// Decodes the canonical integer form: bit `i` set means seat `i` prefers R.
    pub fn from_code(n: usize, code: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        if n > MAX_CODE_SEATS {
            return Err(Error::CapExceeded {
                what: "integer code",
                n,
                cap: MAX_CODE_SEATS,
            });
        }
        if n < 64 && code >> n != 0 {
            return Err(Error::invalid("code does not fit in n bits", code));
        }
        Ok(Preferences {
            n,
            words: vec![code],
        })
    }

    /// Builds preferences from raw little-endian words; bits past `n` are
    /// ignored.
    pub fn from_words(n: usize, mut words: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        let need = words_for(n);
        if words.len() < need {
            return Err(Error::invalid("not enough words for n seats", words.len()));
        }
        words.truncate(need);
        let rem = n % 64;
        if rem != 0 {
            words[need - 1] &= (1u64 << rem) - 1;
        }
        Ok(Preferences { n, words })
    }

    /// Every seat prefers the same side.
    pub fn uniform(n: usize, side: Side) -> Result<Self> {
        Preferences::from_sides(&vec![side; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Canonical integer code, available for `n <= 64`.
    pub fn code(&self) -> Option<u64> {
        (self.n <= MAX_CODE_SEATS).then(|| self.words[0])
    }

    /// Label of seat `i`, taken modulo `n`.
    pub fn label(&self, i: usize) -> Side {
        let i = i % self.n;
        if self.words[i / 64] >> (i % 64) & 1 == 1 {
            Side::R
        } else {
            Side::L
        }
    }

    pub fn sides(&self) -> impl Iterator<Item = Side> + '_ {
        (0..self.n).map(move |i| self.label(i))
    }

    /// Seat `i + offset` modulo `n`.
    pub fn seat(&self, i: usize, offset: isize) -> usize {
        (i as isize + offset).rem_euclid(self.n as isize) as usize
    }

    pub fn left(&self, i: usize) -> usize {
        self.seat(i, -1)
    }

    pub fn right(&self, i: usize) -> usize {
        self.seat(i, 1)
    }

    pub fn count_r(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn classify(&self) -> Regularity {
        let r = self.count_r();
        if r == 0 {
            Regularity::IrregularAllL
        } else if r == self.n {
            Regularity::IrregularAllR
        } else {
            Regularity::Regular
        }
    }

    pub fn is_regular(&self) -> bool {
        self.classify().is_regular()
    }

    /// The neighbor seat `i` prefers.
    pub fn preferred_neighbor(&self, i: usize) -> usize {
        match self.label(i) {
            Side::L => self.left(i),
            Side::R => self.right(i),
        }
    }

    /// Natural pairs `(i, i + 1)`: seat `i` says R and seat `i + 1` says L,
    /// including the pair that wraps from `n - 1` to `0`. Sorted by `i`.
    pub fn natural_pairs(&self) -> Vec<(usize, usize)> {
        if self.n < 2 {
            return Vec::new();
        }
        (0..self.n)
            .filter(|&i| self.label(i) == Side::R && self.label(i + 1) == Side::L)
            .map(|i| (i, self.right(i)))
            .collect()
    }

    /// `s(i)`: least `k >= 1` such that seat `i - k` prefers R.
    pub fn left_distance(&self, i: usize) -> Result<usize> {
        self.require_regular()?;
        Ok((1..=self.n)
            .find(|&k| self.label(self.seat(i, -(k as isize))) == Side::R)
            .expect("regular preferences contain an R"))
    }

    /// `t(i)`: least `k >= 1` such that seat `i + k` prefers L.
    pub fn right_distance(&self, i: usize) -> Result<usize> {
        self.require_regular()?;
        Ok((1..=self.n)
            .find(|&k| self.label(i + k) == Side::L)
            .expect("regular preferences contain an L"))
    }

    /// Whether at least one neighbor of `i` prefers `i`. A lone seat has no
    /// neighbor and is never preferred.
    pub fn is_preferred(&self, i: usize) -> bool {
        if self.n < 2 {
            return false;
        }
        self.label(self.left(i)) == Side::R || self.label(self.right(i)) == Side::L
    }

    pub(crate) fn require_regular(&self) -> Result<()> {
        if self.is_regular() {
            Ok(())
        } else {
            Err(Error::Irregular {
                prefs: self.to_string(),
            })
        }
    }
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl fmt::Display for Preferences {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for side in self.sides() {
            write!(f, "{}", side.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Preferences {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Preferences({self})")
    }
}

impl FromStr for Preferences {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let sides = s
            .chars()
            .enumerate()
            .map(|(position, c)| match c {
                'L' => Ok(Side::L),
                'R' => Ok(Side::R),
                found => Err(Error::InvalidLabel { position, found }),
            })
            .collect::<Result<Vec<_>>>()?;
        Preferences::from_sides(&sides)
    }
}

/// Involutive assignment of each seat to itself or an adjacent seat.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    partner: Vec<usize>,
}

impl Matching {
    /// Validates the partner list: neighbor-only and mutual.
    pub fn new(partner: Vec<usize>) -> Result<Self> {
        let n = partner.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        for (i, &p) in partner.iter().enumerate() {
            if p >= n {
                return Err(Error::InvalidMatching(format!(
                    "seat {i} paired with {p} outside table"
                )));
            }
            let adjacent = p == i || p == (i + 1) % n || p == (i + n - 1) % n;
            if !adjacent {
                return Err(Error::InvalidMatching(format!(
                    "seats {i} and {p} are not neighbors"
                )));
            }
            if partner[p] != i {
                return Err(Error::InvalidMatching(format!(
                    "seat {i} -> {p} is not mutual"
                )));
            }
        }
        Ok(Matching { partner })
    }

    /// Everyone alone.
    pub fn empty(n: usize) -> Self {
        Matching {
            partner: (0..n).collect(),
        }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut partner: Vec<usize> = (0..n).collect();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidMatching(format!(
                    "pair ({a},{b}) outside table"
                )));
            }
            if partner[a] != a || partner[b] != b {
                return Err(Error::InvalidMatching(format!(
                    "seat in ({a},{b}) matched twice"
                )));
            }
            partner[a] = b;
            partner[b] = a;
        }
        Matching::new(partner)
    }

    pub(crate) fn from_partner_unchecked(partner: Vec<usize>) -> Self {
        debug_assert!(Matching::new(partner.clone()).is_ok());
        Matching { partner }
    }

    pub fn n(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, i: usize) -> usize {
        self.partner[i]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    pub fn is_unmatched(&self, i: usize) -> bool {
        self.partner[i] == i
    }

    pub fn unmatched_seats(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.is_unmatched(i)).collect()
    }

    pub fn is_perfect(&self) -> bool {
        (0..self.n()).all(|i| !self.is_unmatched(i))
    }

    /// Matched pairs `(a, b)` listed once each, with `a` the seat whose right
    /// neighbor is `b`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n)
            .filter(|&i| {
                let p = self.partner[i];
                p != i && p == (i + 1) % n && (n != 2 || i == 0)
            })
            .map(|i| (i, self.partner[i]))
            .collect()
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.partner.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matching[{self}]")
    }
}
