use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spectra_core::counting::derangement_count;
use spectra_core::families::{max_cross_product_search, max_intersecting_search, SearchConfig};
use spectra_core::report::SCHEMA_VERSION;
use spectra_core::repr::CharacterTable;
use spectra_core::spectral::{derangement_spectrum, nu_formula_check, trace_identity_check};
use spectra_core::verify::{verify, VerifyConfig, TASKS};
use spectra_core::{Partition, Result, SpectraError};

const EXIT_ERROR: u8 = 1;
const EXIT_CHECK_FAILED: u8 = 2;
const EXIT_INCOMPLETE: u8 = 3;

/// Largest n whose character table is written to a cache file.
const CACHE_MAX_N: usize = 14;

#[derive(Parser, Debug)]
#[command(name = "spectra", version, about = "Spectra of derangement graphs and intersecting families of permutations")]
struct Cli {
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Character-table cache file; validated before use, created if missing
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Write the JSON report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derangement-graph spectrum with table, trace and nu checks
    Spectrum {
        #[arg(long)]
        n: usize,
    },
    /// Run the invariant suites over a range of n
    Verify {
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Comma-separated task names; an empty string runs nothing
        #[arg(long)]
        tasks: Option<String>,
        /// Per-search time budget in seconds
        #[arg(long, default_value_t = 60)]
        budget: u64,
    },
    /// Exact extremal searches
    Search {
        #[arg(long, value_enum)]
        kind: SearchKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        non_centred: bool,
        /// Time budget in seconds
        #[arg(long, default_value_t = 60)]
        budget: u64,
        #[arg(long, default_value_t = 10_000)]
        witness_cap: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SearchKind {
    MaxIntersecting,
    MaxCrossProduct,
}

struct Outcome {
    report: Value,
    code: u8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { 0 });
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    }
    match run(&cli) {
        Ok(outcome) => {
            let mut text = serde_json::to_string_pretty(&outcome.report).expect("report serializes");
            text.push('\n');
            let written = match &cli.out {
                Some(path) => std::fs::write(path, text).map_err(SpectraError::from),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_ERROR);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let cache = cli.cache.as_ref().map(|path| prepare_cache(path, cache_upper_n(&cli.command)));
    if let Some(Err(e)) = &cache {
        // a corrupt cache is a failed check, not a crash
        let report = json!({
            "schema": SCHEMA_VERSION,
            "command": command_name(&cli.command),
            "passed": false,
            "failed_checks": [{ "name": "cache.character-table", "detail": e.to_string() }],
        });
        return Ok(Outcome {
            report,
            code: EXIT_CHECK_FAILED,
        });
    }
    let cache_note = cache.and_then(|c| c.ok());
    let mut outcome = match &cli.command {
        Command::Spectrum { n } => cmd_spectrum(*n)?,
        Command::Verify {
            n_min,
            n_max,
            seed,
            tasks,
            budget,
        } => {
            let tasks = match tasks {
                Some(list) => list
                    .split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(String::from)
                    .collect(),
                None => TASKS.iter().map(|t| t.to_string()).collect(),
            };
            cmd_verify(&VerifyConfig {
                n_min: *n_min,
                n_max: *n_max,
                seed: *seed,
                tasks,
                budget: Some(Duration::from_secs(*budget)),
            })?
        }
        Command::Search {
            kind,
            n,
            non_centred,
            budget,
            witness_cap,
        } => cmd_search(
            *kind,
            *n,
            &SearchConfig {
                non_centred: *non_centred,
                budget: Some(Duration::from_secs(*budget)),
                witness_cap: *witness_cap,
            },
        )?,
    };
    if let (Some(note), Value::Object(map)) = (cache_note, &mut outcome.report) {
        map.insert("cache".into(), note);
    }
    Ok(outcome)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Spectrum { .. } => "spectrum",
        Command::Verify { .. } => "verify",
        Command::Search { .. } => "search",
    }
}

fn cache_upper_n(c: &Command) -> usize {
    let n = match c {
        Command::Spectrum { n } => *n,
        Command::Verify { n_max, .. } => (*n_max).max(9),
        Command::Search { n, .. } => *n,
    };
    n.clamp(1, CACHE_MAX_N)
}

/// Loads and validates an existing cache, or writes a fresh one.
fn prepare_cache(path: &Path, upper: usize) -> Result<Value> {
    if path.exists() {
        let ns = CharacterTable::load_cache_set(path)?;
        Ok(json!({ "path": path.display().to_string(), "loaded": ns }))
    } else {
        let tables: Vec<Arc<CharacterTable>> = (1..=upper).map(CharacterTable::get).collect();
        CharacterTable::write_cache_set(path, &tables)?;
        Ok(json!({ "path": path.display().to_string(), "written": (1..=upper).collect::<Vec<_>>() }))
    }
}

fn cmd_spectrum(n: usize) -> Result<Outcome> {
    let table = derangement_spectrum(n)?;
    let summary = table.summary();
    let trace = trace_identity_check(&table);
    let mut passed = trace.passed;
    let mut rows = Vec::new();
    if n >= 4 {
        let d = derangement_count(n);
        let sign = |k: usize| if k.is_multiple_of(2) { 1i64 } else { -1 };
        let hook: Vec<usize> = std::iter::once(2).chain(std::iter::repeat_n(1, n - 2)).collect();
        let expected = [
            (vec![n], d.clone()),
            (vec![n - 1, 1], -(&d / (n - 1))),
            (vec![1; n], (sign(n - 1) * (n as i64 - 1)).into()),
            (hook, sign(n).into()),
        ];
        for (parts, value) in expected {
            let alpha = Partition::new(parts)?;
            let found = table.eigenvalue(&alpha).cloned();
            let ok = found.as_ref() == Some(&value);
            passed &= ok;
            rows.push(json!({
                "alpha": alpha,
                "expected": value.to_string(),
                "found": found.map(|v| v.to_string()),
                "passed": ok,
            }));
        }
    }
    let nu = if n >= 2 { Some(nu_formula_check(n)?) } else { None };
    if let Some(r) = &nu {
        if n >= 4 {
            passed &= r.passed();
        }
    }
    let report = json!({
        "schema": SCHEMA_VERSION,
        "command": "spectrum",
        "n": n,
        "degenerate": table.degree == 0.into(),
        "spectrum": table.to_json(),
        "summary": summary,
        "table_check": rows,
        "trace_identity": trace,
        "nu_check": nu,
        "passed": passed,
    });
    Ok(Outcome {
        report,
        code: if passed { 0 } else { EXIT_CHECK_FAILED },
    })
}

fn cmd_verify(cfg: &VerifyConfig) -> Result<Outcome> {
    let report = verify(cfg)?;
    let code = if !report.passed {
        EXIT_CHECK_FAILED
    } else if report.incomplete {
        EXIT_INCOMPLETE
    } else {
        0
    };
    let failed: Vec<Value> = report
        .failed_checks()
        .map(|c| json!({ "name": c.name, "detail": c.detail }))
        .collect();
    let mut value = serde_json::to_value(&report)?;
    if let Value::Object(map) = &mut value {
        map.insert("schema".into(), json!(SCHEMA_VERSION));
        map.insert("command".into(), json!("verify"));
        map.insert("failed_checks".into(), Value::Array(failed));
    }
    Ok(Outcome { report: value, code })
}

fn cmd_search(kind: SearchKind, n: usize, cfg: &SearchConfig) -> Result<Outcome> {
    let result = match kind {
        SearchKind::MaxIntersecting => max_intersecting_search(n, cfg)?,
        SearchKind::MaxCrossProduct => {
            if cfg.non_centred {
                return Err(SpectraError::Domain("--non-centred applies to max-intersecting only".into()));
            }
            max_cross_product_search(n, cfg)?
        }
    };
    let code = if result.is_complete() { 0 } else { EXIT_INCOMPLETE };
    let mut value = serde_json::to_value(&result)?;
    if let Value::Object(map) = &mut value {
        map.insert("schema".into(), json!(SCHEMA_VERSION));
        map.insert("command".into(), json!("search"));
    }
    Ok(Outcome { report: value, code })
}
