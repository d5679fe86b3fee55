//! Report rows, sweeps and their CSV/JSON forms.
//!
//! Rationals print in lowest terms as `p/q` and floats with 12 significant
//! digits, so identical invocations give byte-identical output.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::closed_form::{self, f_closed, g_closed, greedy_sum, greedy_unmatched_probability};
use crate::enumerate::{enumerate, EnumConfig};
use crate::error::{Error, Result};
use crate::exact::ExactProb;
use crate::greedy::{
    cycle_expected_unmatched, cycle_perfect_probability, simulate_greedy_cycle, GreedyStats,
};
use crate::model::{Preferences, Side};
use crate::montecarlo::{sample, Estimand, SampleStats};
use crate::stability::{stable_set, zone_decomposition, MiddleZone, StableOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    F,
    G,
    GreedyExpected,
    GreedyPerPerson,
    GreedyPerfect,
}

impl Quantity {
    pub const ALL: [Quantity; 5] = [
        Quantity::F,
        Quantity::G,
        Quantity::GreedyExpected,
        Quantity::GreedyPerPerson,
        Quantity::GreedyPerfect,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::F => "f",
            Quantity::G => "g",
            Quantity::GreedyExpected => "greedy_expected",
            Quantity::GreedyPerPerson => "greedy_per_person",
            Quantity::GreedyPerfect => "greedy_perfect",
        }
    }

    pub fn default_method(self) -> Method {
        match self {
            Quantity::GreedyPerfect => Method::Recursion,
            _ => Method::ClosedForm,
        }
    }

    fn is_greedy(self) -> bool {
        !matches!(self, Quantity::F | Quantity::G)
    }
}

impl FromStr for Quantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| Error::invalid("unknown quantity", s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    #[serde(rename = "closed_form")]
    ClosedForm,
    #[serde(rename = "enumeration")]
    Enumeration,
    #[serde(rename = "recursion")]
    Recursion,
    #[serde(rename = "montecarlo")]
    MonteCarlo,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::ClosedForm,
        Method::Enumeration,
        Method::Recursion,
        Method::MonteCarlo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Enumeration => "enumeration",
            Method::Recursion => "recursion",
            Method::MonteCarlo => "montecarlo",
        }
    }

    fn is_exact(self) -> bool {
        self != Method::MonteCarlo
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::invalid("unknown method", s))
    }
}

/// Formats a float with 12 significant digits, trailing zeros trimmed and
/// at least one fractional digit kept.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0.0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.push('0');
        }
    } else {
        s.push_str(".0");
    }
    s
}

fn rounded(x: f64) -> f64 {
    format_float(x).parse().unwrap_or(x)
}

/// One `(n, quantity, value, method)` record.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub quantity: Quantity,
    pub exact: Option<ExactProb>,
    pub float: f64,
    pub method: Method,
    pub samples: u64,
    pub seed: Option<u64>,
}

pub const SWEEP_CSV_HEADER: &str = "n,quantity,exact,float,method,samples,seed";

impl SweepRow {
    fn exact(n: usize, quantity: Quantity, method: Method, value: ExactProb) -> Self {
        SweepRow {
            n,
            quantity,
            float: value.to_f64(),
            exact: Some(value),
            method,
            samples: 0,
            seed: None,
        }
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n,
            self.quantity.name(),
            self.exact
                .as_ref()
                .map_or("NA".to_string(), |e| e.to_string()),
            format_float(self.float),
            self.method.name(),
            self.samples,
            self.seed.map_or(String::new(), |s| s.to_string()),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "quantity": self.quantity.name(),
            "exact": self.exact.as_ref().map_or("NA".to_string(), |e| e.to_string()),
            "float": rounded(self.float),
            "method": self.method.name(),
            "samples": self.samples,
            "seed": self.seed,
        })
    }
}

/// Knobs shared by value, sweep and simulate.
#[derive(Debug, Clone, Copy)]
pub struct RowOptions {
    pub seed: u64,
    pub samples: u64,
    pub enum_config: EnumConfig,
    /// Report odd-table greedy perfect probability as 0 instead of failing.
    pub lenient: bool,
}

impl Default for RowOptions {
    fn default() -> Self {
        RowOptions {
            seed: 1,
            samples: 100_000,
            enum_config: EnumConfig::default(),
            lenient: false,
        }
    }
}

fn greedy_stats(n: usize, opts: &RowOptions) -> Result<GreedyStats> {
    simulate_greedy_cycle(n, opts.seed, opts.samples)
}

fn sampled_row(n: usize, quantity: Quantity, float: f64, opts: &RowOptions) -> SweepRow {
    SweepRow {
        n,
        quantity,
        exact: None,
        float,
        method: Method::MonteCarlo,
        samples: opts.samples,
        seed: Some(opts.seed),
    }
}

fn unsupported(quantity: Quantity, method: Method) -> Error {
    Error::invalid(
        "method not available for quantity",
        format!("{} via {}", quantity.name(), method.name()),
    )
}

/// Computes one row.
pub fn compute_row(
    quantity: Quantity,
    n: usize,
    method: Method,
    opts: &RowOptions,
) -> Result<SweepRow> {
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    if quantity.is_greedy() && n < 3 {
        return Err(Error::invalid("greedy quantities need n >= 3", n));
    }
    let exact = |v: ExactProb| Ok(SweepRow::exact(n, quantity, method, v));
    match (quantity, method) {
        (Quantity::F, Method::ClosedForm) => exact(f_closed(n)?),
        (Quantity::G, Method::ClosedForm) => exact(g_closed(n)?),
        (Quantity::F, Method::Enumeration) => {
            exact(enumerate(n, &opts.enum_config)?.unmatched_probability)
        }
        (Quantity::G, Method::Enumeration) => {
            exact(enumerate(n, &opts.enum_config)?.perfect_probability)
        }
        (Quantity::F, Method::MonteCarlo) | (Quantity::G, Method::MonteCarlo) => {
            let what = if quantity == Quantity::F {
                Estimand::Unmatched
            } else {
                Estimand::Perfect
            };
            let stats = sample(what, n, opts.seed, opts.samples)?;
            Ok(sampled_row(n, quantity, stats.estimate, opts))
        }
        (Quantity::GreedyExpected, Method::ClosedForm) => exact(greedy_sum(n)?),
        (Quantity::GreedyExpected, Method::Recursion) => exact(cycle_expected_unmatched(n)?),
        (Quantity::GreedyPerPerson, Method::ClosedForm) => exact(greedy_unmatched_probability(n)?),
        (Quantity::GreedyPerPerson, Method::Recursion) => {
            exact(cycle_expected_unmatched(n)? / ExactProb::from_integer(n as i64))
        }
        (Quantity::GreedyPerfect, Method::Recursion) => {
            exact(cycle_perfect_probability(n, opts.lenient)?)
        }
        (Quantity::GreedyExpected, Method::MonteCarlo) => Ok(sampled_row(
            n,
            quantity,
            greedy_stats(n, opts)?.mean_unmatched,
            opts,
        )),
        (Quantity::GreedyPerPerson, Method::MonteCarlo) => Ok(sampled_row(
            n,
            quantity,
            greedy_stats(n, opts)?.per_person,
            opts,
        )),
        (Quantity::GreedyPerfect, Method::MonteCarlo) => Ok(sampled_row(
            n,
            quantity,
            greedy_stats(n, opts)?.perfect_frequency,
            opts,
        )),
        _ => Err(unsupported(quantity, method)),
    }
}

/// Parameters of a sweep over table sizes.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub quantity: Quantity,
    pub n_lo: usize,
    pub n_hi: usize,
    pub methods: Vec<Method>,
    pub even_only: bool,
    /// Cross-validate exact routes and fail on the first disagreement.
    pub check: bool,
}

/// The independent exact route that `--check` compares against the emitted
/// exact rows, if any.
fn check_partner(quantity: Quantity) -> Option<(Method, Method)> {
    match quantity {
        Quantity::F | Quantity::G => Some((Method::ClosedForm, Method::Enumeration)),
        Quantity::GreedyExpected | Quantity::GreedyPerPerson => {
            Some((Method::ClosedForm, Method::Recursion))
        }
        Quantity::GreedyPerfect => None,
    }
}

/// Rows for every `n` in range and every requested method, in that order.
pub fn sweep(spec: &SweepSpec, opts: &RowOptions) -> Result<Vec<SweepRow>> {
    if spec.n_lo == 0 || spec.n_lo > spec.n_hi {
        return Err(Error::invalid(
            "sweep range must satisfy 1 <= lo <= hi",
            format!("{}..{}", spec.n_lo, spec.n_hi),
        ));
    }
    if spec.methods.is_empty() {
        return Err(Error::invalid("at least one method is required", ""));
    }
    let mut rows = Vec::new();
    for n in spec.n_lo..=spec.n_hi {
        if spec.even_only && n % 2 == 1 {
            continue;
        }
        let mut these = spec
            .methods
            .iter()
            .map(|&m| compute_row(spec.quantity, n, m, opts))
            .collect::<Result<Vec<_>>>()?;
        if spec.check {
            check_rows(spec.quantity, n, &mut these, opts)?;
        }
        rows.extend(these);
    }
    Ok(rows)
}

/// Checks that every exact row for one `n` agrees, computing the partner
/// route when it was not requested (enumeration only within its cap).
fn check_rows(
    quantity: Quantity,
    n: usize,
    rows: &mut [SweepRow],
    opts: &RowOptions,
) -> Result<()> {
    let mut exact: Vec<(Method, ExactProb)> = rows
        .iter()
        .filter(|r| r.method.is_exact())
        .filter_map(|r| r.exact.clone().map(|e| (r.method, e)))
        .collect();
    if let Some((a, b)) = check_partner(quantity) {
        for m in [a, b] {
            if exact.iter().any(|(have, _)| *have == m) {
                continue;
            }
            if m == Method::Enumeration && n > opts.enum_config.enum_cap {
                continue;
            }
            if let Some(v) = compute_row(quantity, n, m, opts)?.exact {
                exact.push((m, v));
            }
        }
    }
    verify_agreement(quantity, n, &exact)
}

/// Fails with [`Error::Mismatch`] unless all values are equal.
pub fn verify_agreement(
    quantity: Quantity,
    n: usize,
    values: &[(Method, ExactProb)],
) -> Result<()> {
    if let Some((m0, v0)) = values.first() {
        for (m, v) in &values[1..] {
            if v != v0 {
                return Err(Error::Mismatch {
                    n,
                    quantity: quantity.name().to_string(),
                    detail: format!("{} gives {v0}, {} gives {v}", m0.name(), m.name()),
                });
            }
        }
    }
    Ok(())
}

/// One line of the stable-versus-greedy comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub n: usize,
    pub stable: ExactProb,
    pub greedy: ExactProb,
}

impl CompareRow {
    /// `greedy - stable`.
    pub fn difference(&self) -> ExactProb {
        &self.greedy - &self.stable
    }
}

pub const COMPARE_CSV_HEADER: &str =
    "n,stable_exact,stable_float,greedy_exact,greedy_float,difference_exact,difference_float,stable_limit,greedy_limit";

pub fn compare(n_lo: usize, n_hi: usize) -> Result<Vec<CompareRow>> {
    if n_lo < 3 || n_lo > n_hi {
        return Err(Error::invalid(
            "compare range must satisfy 3 <= lo <= hi",
            format!("{n_lo}..{n_hi}"),
        ));
    }
    (n_lo..=n_hi)
        .map(|n| {
            Ok(CompareRow {
                n,
                stable: f_closed(n)?,
                greedy: greedy_unmatched_probability(n)?,
            })
        })
        .collect()
}

pub fn compare_csv(rows: &[CompareRow]) -> Vec<String> {
    let lim = closed_form::limits();
    let (sl, gl) = (format_float(lim.stable), format_float(lim.greedy));
    let mut out = vec![COMPARE_CSV_HEADER.to_string()];
    for r in rows {
        let d = r.difference();
        out.push(format!(
            "{},{},{},{},{},{},{},{sl},{gl}",
            r.n,
            r.stable,
            format_float(r.stable.to_f64()),
            r.greedy,
            format_float(r.greedy.to_f64()),
            d,
            format_float(d.to_f64()),
        ));
    }
    out.push(format!(
        "limit,1/9,{sl},NA,{gl},NA,{},{sl},{gl}",
        format_float(lim.greedy - lim.stable)
    ));
    out
}

pub fn compare_json(rows: &[CompareRow]) -> serde_json::Value {
    let lim = closed_form::limits();
    let rows: Vec<_> = rows
        .iter()
        .map(|r| {
            let d = r.difference();
            serde_json::json!({
                "n": r.n,
                "stable_exact": r.stable.to_string(),
                "stable_float": rounded(r.stable.to_f64()),
                "greedy_exact": r.greedy.to_string(),
                "greedy_float": rounded(r.greedy.to_f64()),
                "difference_exact": d.to_string(),
                "difference_float": rounded(d.to_f64()),
                "stable_limit": rounded(lim.stable),
                "greedy_limit": rounded(lim.greedy),
            })
        })
        .collect();
    serde_json::json!({
        "rows": rows,
        "limit": {
            "stable_exact": "1/9",
            "stable_float": rounded(lim.stable),
            "greedy_float": rounded(lim.greedy),
        },
    })
}

/// A sampling result in the shared statistics shape.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRow {
    pub n: usize,
    pub quantity: String,
    pub samples: u64,
    pub estimate: f64,
    pub standard_error: f64,
    pub exact: Option<ExactProb>,
    pub seed: u64,
    pub rng: String,
}

pub const SAMPLE_CSV_HEADER: &str = "n,quantity,samples,estimate,standard_error,exact,seed,rng";

impl SampleRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.quantity,
            self.samples,
            format_float(self.estimate),
            format_float(self.standard_error),
            self.exact
                .as_ref()
                .map_or("NA".to_string(), |e| e.to_string()),
            self.seed,
            self.rng,
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "quantity": self.quantity,
            "samples": self.samples,
            "estimate": rounded(self.estimate),
            "standard_error": rounded(self.standard_error),
            "exact": self.exact.as_ref().map_or("NA".to_string(), |e| e.to_string()),
            "seed": self.seed,
            "rng": self.rng,
        })
    }
}

impl From<SampleStats> for SampleRow {
    fn from(s: SampleStats) -> Self {
        SampleRow {
            n: s.n,
            quantity: s.quantity,
            samples: s.samples,
            estimate: s.estimate,
            standard_error: s.standard_error,
            exact: s.exact_reference,
            seed: s.seed,
            rng: s.rng_identifier,
        }
    }
}

/// Greedy simulation results as sample rows: per-person, perfect and
/// expected alone count.
pub fn greedy_sample_rows(stats: &GreedyStats) -> Result<Vec<SampleRow>> {
    let n = stats.n;
    let row = |quantity: Quantity, estimate: f64, se: f64, exact: Option<ExactProb>| SampleRow {
        n,
        quantity: quantity.name().to_string(),
        samples: stats.samples,
        estimate,
        standard_error: se,
        exact,
        seed: stats.seed,
        rng: stats.rng_identifier.clone(),
    };
    Ok(vec![
        row(
            Quantity::GreedyPerPerson,
            stats.per_person,
            stats.per_person_se,
            Some(greedy_unmatched_probability(n)?),
        ),
        row(
            Quantity::GreedyPerfect,
            stats.perfect_frequency,
            stats.perfect_se,
            Some(cycle_perfect_probability(n, true)?),
        ),
        row(
            Quantity::GreedyExpected,
            stats.mean_unmatched,
            stats.per_person_se * n as f64,
            Some(greedy_sum(n)?),
        ),
    ])
}

fn seat_list(seats: impl IntoIterator<Item = usize>) -> String {
    let v: Vec<String> = seats.into_iter().map(|s| s.to_string()).collect();
    format!("[{}]", v.join(" "))
}

/// Human-readable account of one preference string: arrows, natural
/// pairs, zones and the stable outcome.
pub fn show_text(prefs: &Preferences) -> String {
    let n = prefs.n();
    let mut out = String::new();
    let regularity = match prefs.classify() {
        crate::model::Regularity::Regular => "regular",
        crate::model::Regularity::IrregularAllL => "irregular, all L",
        crate::model::Regularity::IrregularAllR => "irregular, all R",
    };
    let _ = writeln!(out, "preferences: {prefs} (n = {n}, {regularity})");
    let arrows: Vec<String> = (0..n)
        .map(|i| match prefs.label(i) {
            Side::L => format!("←{i}"),
            Side::R => format!("{i}→"),
        })
        .collect();
    let _ = writeln!(out, "diagram: {}", arrows.join(" "));
    let pairs = prefs.natural_pairs();
    if pairs.is_empty() {
        let _ = writeln!(out, "natural pairs: none");
    } else {
        let list: Vec<String> = pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
        let _ = writeln!(out, "natural pairs: {}", list.join(" "));
    }
    if let Ok(stretches) = zone_decomposition(prefs) {
        for st in &stretches {
            let seats: Vec<usize> = st.seats(n).collect();
            let middle = match st.middle {
                MiddleZone::Empty => "empty",
                MiddleZone::SingleL => "L",
                MiddleZone::SingleR => "R",
                MiddleZone::PairLR => "LR",
            };
            let _ = writeln!(
                out,
                "stretch ({},{})..({},{}): seats {} zone1 {} zone2 {} {} zone3 {}",
                st.opening_pair,
                (st.opening_pair + 1) % n,
                st.closing_pair,
                (st.closing_pair + 1) % n,
                seat_list(seats.iter().copied()),
                seat_list(seats[..st.leading].iter().copied()),
                middle,
                seat_list(st.middle_seats(n)),
                seat_list(seats[st.len - st.trailing..].iter().copied()),
            );
        }
    }
    match stable_set(prefs) {
        StableOutcome::UniqueStable(m) => {
            let _ = writeln!(out, "stable matching (unique): {m}");
            let alone = m.unmatched_seats();
            if alone.is_empty() {
                let _ = writeln!(out, "unmatched: none");
            } else {
                let detail: Vec<String> = alone
                    .iter()
                    .map(|&i| {
                        let s = prefs.left_distance(i).expect("regular");
                        let t = prefs.right_distance(i).expect("regular");
                        format!("{i} (s={s} t={t})")
                    })
                    .collect();
                let _ = writeln!(out, "unmatched: {}", detail.join(", "));
            }
        }
        StableOutcome::TwoPerfect(a, b) => {
            let _ = writeln!(out, "two perfect stable matchings: {a} | {b}");
            let _ = writeln!(out, "unmatched: none");
        }
        StableOutcome::NoStable => {
            let _ = writeln!(out, "no stable matching (irregular, odd n)");
        }
    }
    out
}
