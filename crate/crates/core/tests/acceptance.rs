//! Acceptance criteria. Runs as a plain binary so every criterion prints one
//! PASS/FAIL line; exits nonzero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use tablematch::closed_form::{
    distance_double_sum, distance_double_sum_closed, f_closed, g_closed, greedy_sum,
    irregular_odd_term, odd_overlap_term,
};
use tablematch::enumerate::{count_perfect_strings, enumerate, stable_count_census, EnumConfig};
use tablematch::greedy::{
    cycle_expected_unmatched, cycle_perfect_probability, path_expected_unmatched,
    simulate_greedy_cycle,
};
use tablematch::montecarlo::sample_f;
use tablematch::stability::{all_matchings, is_stable_characterized, is_stable_def};
use tablematch::{ExactProb, Preferences};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(s: &str) -> ExactProb {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(took)
}

const F_TABLE: [&str; 12] = [
    "1", "0", "1/3", "0", "1/5", "1/16", "1/7", "3/32", "35/288", "27/256", "161/1408", "7/64",
];
const G_TABLE: [&str; 12] = [
    "0", "1", "0", "1", "0", "13/16", "0", "5/8", "0", "121/256", "0", "91/256",
];

fn f_table() -> Outcome {
    let start = Instant::now();
    for (i, want) in F_TABLE.iter().enumerate() {
        let n = i + 1;
        let want = q(want);
        let closed = f_closed(n).map_err(|e| e.to_string())?;
        let enumerated = enumerate(n, &EnumConfig::default())
            .map_err(|e| e.to_string())?
            .unmatched_probability;
        ensure(closed == want && enumerated == want, || {
            format!("n = {n}: closed {closed}, enum {enumerated}, want {want}")
        })?;
    }
    let took = within(Duration::from_secs(1), start)?;
    Ok(format!("12 values exact in {took:?}"))
}

fn g_table() -> Outcome {
    let start = Instant::now();
    for (i, want) in G_TABLE.iter().enumerate() {
        let n = i + 1;
        let want = q(want);
        let closed = g_closed(n).map_err(|e| e.to_string())?;
        let enumerated = enumerate(n, &EnumConfig::default())
            .map_err(|e| e.to_string())?
            .perfect_probability;
        ensure(closed == want && enumerated == want, || {
            format!("n = {n}: closed {closed}, enum {enumerated}, want {want}")
        })?;
    }
    let took = within(Duration::from_secs(1), start)?;
    Ok(format!("12 values exact in {took:?}"))
}

fn oracle_equality_at_scale() -> Outcome {
    let run = |config: EnumConfig| -> Result<Duration, String> {
        let start = Instant::now();
        for n in 1..=18 {
            let report = enumerate(n, &config).map_err(|e| e.to_string())?;
            let f = f_closed(n).map_err(|e| e.to_string())?;
            let g = g_closed(n).map_err(|e| e.to_string())?;
            ensure(report.unmatched_probability == f, || {
                format!("f at n = {n}")
            })?;
            ensure(report.perfect_probability == g, || format!("g at n = {n}"))?;
        }
        Ok(start.elapsed())
    };
    let single = run(EnumConfig::sequential())?;
    ensure(single < Duration::from_secs(120), || {
        format!("single-threaded took {single:?}")
    })?;
    let sharded = run(EnumConfig::default())?;
    ensure(sharded < Duration::from_secs(30), || {
        format!("sharded took {sharded:?}")
    })?;
    Ok(format!(
        "n <= 18 exact; single {single:?}, sharded {sharded:?}"
    ))
}

fn perfect_string_count() -> Outcome {
    for n in (2..=20).step_by(2) {
        let got = count_perfect_strings(n).map_err(|e| e.to_string())?;
        let want = 2 * 3u64.pow(n as u32 / 2) - 2;
        ensure(got == want, || format!("n = {n}: {got} != {want}"))?;
    }
    Ok("2*3^(n/2)-2 for even n <= 20".into())
}

fn census() -> Outcome {
    let start = Instant::now();
    for n in 3..=12 {
        let hist = stable_count_census(n).map_err(|e| e.to_string())?;
        let regular = (1u64 << n) - 2;
        let want: BTreeMap<usize, u64> = if n % 2 == 0 {
            [(1, regular), (2, 2)].into()
        } else {
            [(0, 2), (1, regular)].into()
        };
        ensure(hist == want, || format!("n = {n}: {hist:?}"))?;
    }
    let took = within(Duration::from_secs(120), start)?;
    Ok(format!("3 <= n <= 12 in {took:?}"))
}

fn checker_equivalence() -> Outcome {
    let mut pairs = 0u64;
    for n in 1..=10 {
        let matchings = all_matchings(n).map_err(|e| e.to_string())?;
        for code in 0..1u64 << n {
            let prefs = Preferences::from_code(n, code).map_err(|e| e.to_string())?;
            for m in &matchings {
                let a = is_stable_def(&prefs, m).map_err(|e| e.to_string())?;
                let b = is_stable_characterized(&prefs, m).map_err(|e| e.to_string())?;
                ensure(a == b, || {
                    format!("{prefs} with {m}: def {a}, characterized {b}")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (string, matching) pairs agree"))
}

fn double_sum_identity() -> Outcome {
    for m in 2..=64 {
        let a = distance_double_sum(m).map_err(|e| e.to_string())?;
        let b = distance_double_sum_closed(m).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("m = {m}"))?;
    }
    for n in 3..=64 {
        let f = f_closed(n).map_err(|e| e.to_string())?;
        let assembled = if n % 2 == 1 {
            let m = n.div_ceil(2);
            distance_double_sum(m).unwrap()
                + odd_overlap_term(m).unwrap()
                + irregular_odd_term(n).unwrap()
        } else {
            distance_double_sum_closed(n / 2).unwrap()
        };
        ensure(f == assembled, || format!("assembly at n = {n}"))?;
    }
    Ok("m <= 64 and n <= 64 exact".into())
}

fn greedy_values() -> Outcome {
    let six = cycle_perfect_probability(6, false).map_err(|e| e.to_string())?;
    ensure(six == q("2/3"), || format!("P(perfect, n = 6) = {six}"))?;
    for n in 3..=60 {
        let a = cycle_expected_unmatched(n).map_err(|e| e.to_string())?;
        let b = greedy_sum(n).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("n = {n}: recursion {a}, sum {b}"))?;
    }
    Ok("P(perfect, 6) = 2/3; recursion = sum for 3 <= n <= 60".into())
}

fn limits() -> Outcome {
    let start = Instant::now();
    let f60 = f_closed(60).map_err(|e| e.to_string())?;
    let gap = (f60.to_f64() - 1.0 / 9.0).abs();
    ensure(gap < 1e-12, || format!("|f(60) - 1/9| = {gap:e}"))?;
    let u = path_expected_unmatched(5000);
    let flory = (u.to_f64() / 5000.0 - (-2.0f64).exp()).abs();
    ensure(flory < 1e-3, || {
        format!("|u(5000)/5000 - e^-2| = {flory:e}")
    })?;
    ensure(u.denom() > &BigInt::from(1u8), || {
        "u(5000) unexpectedly integral".into()
    })?;
    let took = within(Duration::from_secs(5), start)?;
    Ok(format!("f gap {gap:.3e}, Flory gap {flory:.3e}, {took:?}"))
}

const SAMPLE_SEED: u64 = 42;
const GREEDY_SEED: u64 = 1;

fn statistical() -> Outcome {
    let f = sample_f(12, SAMPLE_SEED, 1_000_000).map_err(|e| e.to_string())?;
    let z = f.z_score().unwrap();
    ensure(f.exact_reference == Some(q("7/64")), || {
        "reference is not 7/64".into()
    })?;
    ensure(z <= 4.0, || format!("sample_f z = {z:.2}"))?;
    let again = sample_f(12, SAMPLE_SEED, 1_000_000).map_err(|e| e.to_string())?;
    ensure(again == f, || "sample_f not reproducible".into())?;
    let g = simulate_greedy_cycle(6, GREEDY_SEED, 1_000_000).map_err(|e| e.to_string())?;
    let gz = (g.perfect_frequency - 2.0 / 3.0).abs() / g.perfect_se;
    ensure(gz <= 4.0, || format!("greedy z = {gz:.2}"))?;
    Ok(format!(
        "f(12) est {:.6} (z {z:.2}, seed {SAMPLE_SEED}); greedy perfect {:.6} (z {gz:.2}, seed {GREEDY_SEED})",
        f.estimate, g.perfect_frequency
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1 f(n) matches the reference table for n <= 12", f_table),
        ("AC2 g(n) matches the reference table for n <= 12", g_table),
        (
            "AC3 closed forms equal enumeration for n <= 18",
            oracle_equality_at_scale,
        ),
        ("AC4 perfect-outcome string count", perfect_string_count),
        ("AC5 stable-matching census", census),
        (
            "AC6 blocking-pair and structural checkers agree",
            checker_equivalence,
        ),
        (
            "AC7 double-sum identity and f assembly",
            double_sum_identity,
        ),
        ("AC8 greedy recursion and alternating sum", greedy_values),
        ("AC9 large-n limits", limits),
        ("AC10 seeded statistical checks", statistical),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
