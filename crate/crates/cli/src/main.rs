//! `idemcode`: analyze, verify and search linear codes over `B_k`.
//!
//! Documents go to standard output (or `--out`), a one-line summary to
//! standard error. Exit codes: 0 success, 1 property failure, 2 input
//! error, 3 cap exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use idemcode::bounds::Metric;
use idemcode::doc::{analyze, AnalyzeOptions, CodeSpecDoc};
use idemcode::search::{search, Predicate, SearchParams};
use idemcode::table::ring_table;
use idemcode::verify::{run, Suite, VerifyParams};
use idemcode::{Error, Ring};

#[derive(Parser)]
#[command(name = "idemcode", version, about = "Linear codes over F_q[v_1..v_k]/(v_i^2 - v_i)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Hamming,
    Lee,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Macwilliams,
    Crt,
    Duality,
    Bounds,
    Cyclic,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum PredicateArg {
    SelfDualEuclid,
    SelfDualHerm,
    Mds,
    Mdr,
    Mlds,
    Mldr,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the code described by a JSON spec.
    Analyze {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Enumeration cap; overrides the spec.
        #[arg(long)]
        cap: Option<u64>,
        /// Shift index for the quasi-cyclic check; overrides the spec.
        #[arg(long)]
        shift_index: Option<usize>,
        #[arg(long, value_enum)]
        metric: Option<MetricArg>,
    },
    /// Run a seeded property suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Largest code length drawn.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, hide = true)]
        corrupt_dual: bool,
    },
    /// Search for codes satisfying a predicate.
    Search {
        #[arg(long, value_enum)]
        predicate: PredicateArg,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1 << 16)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump the element table of B_k.
    RingTable {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Irreducible polynomial, constant term first, comma separated.
        #[arg(long, value_delimiter = ',')]
        irr: Option<Vec<u32>>,
        #[arg(long, default_value_t = 1 << 12)]
        cap: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::TooLargeToEnumerate { .. } | Error::MatrixTooLarge { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn emit(out: &Option<PathBuf>, doc: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, doc).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{doc}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Returns whether every checked property held.
fn execute(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Analyze { spec, out, cap, shift_index, metric } => {
            let text = fs::read_to_string(&spec).map_err(|e| Failure::Input(format!("{}: {e}", spec.display())))?;
            let doc = CodeSpecDoc::parse(&text)?;
            let mut opts = AnalyzeOptions::from_spec(&doc);
            if let Some(c) = cap {
                opts.cap = c.into();
            }
            if let Some(l) = shift_index {
                opts.shift_index = l;
            }
            opts.metric = metric.map(|m| match m {
                MetricArg::Hamming => Metric::Hamming,
                MetricArg::Lee => Metric::Lee,
            });
            let report = analyze(&doc, &opts)?;
            emit(&out, &report.to_json())?;
            eprintln!(
                "analyze: |C| = {}, component ranks {:?}, rank {}",
                report.cardinality, report.component_ranks, report.rank_profile.rank
            );
            Ok(true)
        }
        Command::Verify { suite, p, r, k, n, seed, cases, out, corrupt_dual } => {
            let suite = match suite {
                SuiteArg::Macwilliams => Suite::Macwilliams,
                SuiteArg::Crt => Suite::Crt,
                SuiteArg::Duality => Suite::Duality,
                SuiteArg::Bounds => Suite::Bounds,
                SuiteArg::Cyclic => Suite::Cyclic,
            };
            let report = run(suite, &VerifyParams { p, r, k, n, seed, cases, corrupt_dual })?;
            emit(&out, &to_json(&report))?;
            eprintln!(
                "verify {:?}: {} checks, {} failures: {}",
                suite,
                report.checks,
                report.failures.len(),
                if report.passed { "PASS" } else { "FAIL" }
            );
            if let Some(f) = report.failures.first() {
                eprintln!("first failure: {}", f.check);
                if let Some(c) = &f.counterexample {
                    eprintln!("counterexample: {}", serde_json::to_string(c).expect("serializable"));
                }
            }
            Ok(report.passed)
        }
        Command::Search { predicate, p, r, k, n, budget, seed, out } => {
            let predicate = match predicate {
                PredicateArg::SelfDualEuclid => Predicate::SelfDualEuclid,
                PredicateArg::SelfDualHerm => Predicate::SelfDualHerm,
                PredicateArg::Mds => Predicate::Mds,
                PredicateArg::Mdr => Predicate::Mdr,
                PredicateArg::Mlds => Predicate::Mlds,
                PredicateArg::Mldr => Predicate::Mldr,
            };
            let result = search(predicate, &SearchParams { p, r, k, n, budget, seed })?;
            emit(&out, &to_json(&result))?;
            eprintln!(
                "search {:?}: {:?}, {} examined, {} witnesses",
                predicate,
                result.mode,
                result.examined,
                result.witnesses.len()
            );
            Ok(true)
        }
        Command::RingTable { p, r, k, irr, cap, out } => {
            let ring = Ring::with_params(p, r, irr.as_deref(), k)?;
            let table = ring_table(&ring, cap.into())?;
            emit(&out, &to_json(&table))?;
            eprintln!("ring-table: {} elements, {} units", table.order, table.unit_count);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("cap exceeded: {msg}");
            ExitCode::from(3)
        }
    }
}
