//! `tablematch` command-line front end.
//!
//! Exit codes: 0 success, 2 usage error, 3 resource cap exceeded,
//! 4 cross-validation mismatch.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};

use tablematch::enumerate::EnumConfig;
use tablematch::greedy::simulate_greedy_cycle;
use tablematch::montecarlo::{sample, Estimand};
use tablematch::report::{
    compare, compare_csv, compare_json, compute_row, greedy_sample_rows, show_text, sweep, Method,
    Quantity, RowOptions, SampleRow, SweepSpec, SAMPLE_CSV_HEADER, SWEEP_CSV_HEADER,
};
use tablematch::{Error, Preferences};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SimTarget {
    F,
    G,
    Greedy,
}

#[derive(Debug, Parser)]
#[command(
    name = "tablematch",
    version,
    about = "Stable conversations at a circular table"
)]
struct Cli {
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: Format,
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
    #[arg(long, default_value_t = 100_000, global = true)]
    samples: u64,
    /// Largest n for exhaustive enumeration.
    #[arg(long, default_value_t = 24, global = true)]
    enum_cap: usize,
    /// Cross-validate exact routes; exit 4 on disagreement.
    #[arg(long, global = true)]
    check: bool,
    /// Omit the metadata header (timestamp).
    #[arg(long, global = true)]
    no_meta: bool,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print one value.
    Value {
        quantity: Quantity,
        n: usize,
        #[arg(long)]
        method: Option<Method>,
    },
    /// One row per table size and method.
    Sweep {
        quantity: Quantity,
        n_lo: usize,
        n_hi: usize,
        /// Comma-separated methods.
        #[arg(long, value_delimiter = ',')]
        methods: Vec<Method>,
        #[arg(long)]
        even_only: bool,
    },
    /// Stable versus randomized greedy per-seat probabilities.
    Compare { n_lo: usize, n_hi: usize },
    /// Describe one preference string.
    Show { prefs: String },
    /// Seeded sampling of f, g, or the greedy process.
    Simulate {
        #[arg(value_enum)]
        target: SimTarget,
        n: usize,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::CapExceeded { .. } => 3,
        Error::Mismatch { .. } => 4,
        _ => 2,
    }
}

fn now_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

fn meta_line(cli: &Cli, command: &str) -> Option<String> {
    (!cli.no_meta).then(|| {
        format!(
            "# tablematch {} command={command} generated_unix={}",
            env!("CARGO_PKG_VERSION"),
            now_unix()
        )
    })
}

fn meta_json(cli: &Cli, command: &str) -> Option<serde_json::Value> {
    (!cli.no_meta).then(|| {
        serde_json::json!({
            "tool": "tablematch",
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "generated_unix": now_unix(),
        })
    })
}

fn wrap_json(cli: &Cli, command: &str, mut body: serde_json::Value) -> String {
    if let (Some(meta), Some(obj)) = (meta_json(cli, command), body.as_object_mut()) {
        obj.insert("meta".to_string(), meta);
    }
    serde_json::to_string_pretty(&body).expect("json") + "\n"
}

fn csv_document(
    cli: &Cli,
    command: &str,
    header: &str,
    lines: impl IntoIterator<Item = String>,
) -> String {
    let mut out = String::new();
    if let Some(meta) = meta_line(cli, command) {
        out.push_str(&meta);
        out.push('\n');
    }
    out.push_str(header);
    out.push('\n');
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn sample_document(cli: &Cli, rows: &[SampleRow]) -> String {
    match cli.format {
        Format::Csv => csv_document(
            cli,
            "simulate",
            SAMPLE_CSV_HEADER,
            rows.iter().map(SampleRow::to_csv),
        ),
        Format::Json => {
            let rows: Vec<_> = rows.iter().map(SampleRow::to_json).collect();
            wrap_json(cli, "simulate", serde_json::json!({ "rows": rows }))
        }
    }
}

fn run(cli: &Cli) -> Result<String, Error> {
    let opts = RowOptions {
        seed: cli.seed,
        samples: cli.samples,
        enum_config: EnumConfig {
            enum_cap: cli.enum_cap,
            ..EnumConfig::default()
        },
        lenient: false,
    };
    match &cli.command {
        Command::Value {
            quantity,
            n,
            method,
        } => {
            let method = method.unwrap_or(quantity.default_method());
            let spec = SweepSpec {
                quantity: *quantity,
                n_lo: *n,
                n_hi: *n,
                methods: vec![method],
                even_only: false,
                check: cli.check,
            };
            let row = if cli.check {
                sweep(&spec, &opts)?.remove(0)
            } else {
                compute_row(*quantity, *n, method, &opts)?
            };
            Ok(match cli.format {
                Format::Csv => row.to_csv() + "\n",
                Format::Json => serde_json::to_string_pretty(&row.to_json()).expect("json") + "\n",
            })
        }
        Command::Sweep {
            quantity,
            n_lo,
            n_hi,
            methods,
            even_only,
        } => {
            let methods = if methods.is_empty() {
                vec![quantity.default_method()]
            } else {
                methods.clone()
            };
            let spec = SweepSpec {
                quantity: *quantity,
                n_lo: *n_lo,
                n_hi: *n_hi,
                methods,
                even_only: *even_only,
                check: cli.check,
            };
            let opts = RowOptions {
                lenient: true,
                ..opts
            };
            let rows = sweep(&spec, &opts)?;
            Ok(match cli.format {
                Format::Csv => csv_document(
                    cli,
                    "sweep",
                    SWEEP_CSV_HEADER,
                    rows.iter().map(|r| r.to_csv()),
                ),
                Format::Json => {
                    let rows: Vec<_> = rows.iter().map(|r| r.to_json()).collect();
                    wrap_json(cli, "sweep", serde_json::json!({ "rows": rows }))
                }
            })
        }
        Command::Compare { n_lo, n_hi } => {
            let rows = compare(*n_lo, *n_hi)?;
            Ok(match cli.format {
                Format::Csv => {
                    let mut lines = compare_csv(&rows);
                    let header = lines.remove(0);
                    csv_document(cli, "compare", &header, lines)
                }
                Format::Json => wrap_json(cli, "compare", compare_json(&rows)),
            })
        }
        Command::Show { prefs } => {
            let prefs: Preferences = prefs.parse()?;
            Ok(show_text(&prefs))
        }
        Command::Simulate { target, n } => {
            let rows = match target {
                SimTarget::F => {
                    vec![sample(Estimand::Unmatched, *n, cli.seed, cli.samples)?.into()]
                }
                SimTarget::G => vec![sample(Estimand::Perfect, *n, cli.seed, cli.samples)?.into()],
                SimTarget::Greedy => {
                    greedy_sample_rows(&simulate_greedy_cycle(*n, cli.seed, cli.samples)?)?
                }
            };
            Ok(sample_document(cli, &rows))
        }
    }
}

/// Writes through a sibling temporary file so a failed write never leaves
/// a truncated result at `path`.
fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    let result = fs::write(&tmp, text).and_then(|()| fs::rename(&tmp, path));
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            let written = match &cli.output {
                Some(path) => write_atomically(path, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: cannot write output: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
