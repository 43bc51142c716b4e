//! Command-line front end: claim verification runs, bijection application,
//! the ballot-number triangle, and level-set expansions.
//!
//! Exit codes: 0 all good, 1 at least one failed check or a domain error,
//! 2 usage or parse error.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use catalan_blocks::bijection::{f_inverse, f_map, trace, BijectionError};
use catalan_blocks::catalan::ballot;
use catalan_blocks::perm::Permutation;
use catalan_blocks::symfun::{bl_level_set, ldes_inverse_level_set, q_of, schur_expand, Expansion};
use catalan_blocks::verify::{
    verify_cardinalities_at, verify_equidist_at, verify_hilbert_at, verify_pairs_at,
    verify_schur_at, VerificationReport, VerifyError, DEFAULT_CARDINALITIES_N, DEFAULT_EQUIDIST_N,
    DEFAULT_HILBERT_N, DEFAULT_PAIRS_N, DEFAULT_SCHUR_N, MAX_CARDINALITIES_N, MAX_EQUIDIST_N,
    MAX_HILBERT_N, MAX_PAIRS_N, MAX_SCHUR_N,
};

/// Enumeration cost caps the expansion command well below the library's
/// dense-degree limit.
const QSYM_MAX_N: usize = 12;

#[derive(Parser)]
#[command(
    name = "catalan-blocks",
    version,
    about = "321-avoiding permutations: recursive bijection, block statistics, and exhaustive claim verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run exhaustive claim checks, streaming one report per claim per n.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Apply the recursive bijection to one permutation.
    #[command(subcommand)]
    Bijection(BijectionCmd),
    /// Emit number tables.
    #[command(subcommand)]
    Table(TableCmd),
    /// Quasi-symmetric expansions of level sets.
    #[command(subcommand)]
    Qsym(QsymCmd),
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Trivariate equidistribution of block number against n minus the
    /// last descent of the inverse.
    Equidist(VerifyArgs),
    /// Restriction identity, Schur positivity, and skew-count cross-checks.
    Schur(VerifyArgs),
    /// Four-way cardinality agreement for every (n, k).
    Cardinalities(VerifyArgs),
    /// Hilbert-series coefficient identity.
    Hilbert(VerifyArgs),
    /// Pattern-statistic pair positivity, with a negative control at n=3.
    Pairs(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest n to check; each subcommand has a default and a hard cap.
    #[arg(long)]
    n_max: Option<usize>,
    /// JSON Lines output (the default).
    #[arg(long, conflicts_with = "tsv")]
    json: bool,
    /// TSV output: claim_id, n, status, elapsed_ms, counterexample.
    #[arg(long)]
    tsv: bool,
}

#[derive(Subcommand)]
enum BijectionCmd {
    /// Print the image of WORD.
    Map { word: String },
    /// Print the preimage of WORD.
    Inverse { word: String },
    /// Print the per-level recursion trace for WORD.
    Trace {
        word: String,
        /// Emit the trace as a JSON array instead of text lines.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum TableCmd {
    /// Ballot-number triangle as TSV; row n lists C(n,k) for k = n..1.
    Catalan {
        #[arg(long)]
        n_max: usize,
    },
}

#[derive(Subcommand)]
enum QsymCmd {
    /// Expand Q of one level set in the fundamental and Schur bases.
    Expand {
        /// Level-set family: bl (block number k) or ldes (last descent of
        /// the inverse equal to k).
        #[arg(long, value_parser = ["bl", "ldes"])]
        set: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify(cmd) => run_verify(cmd),
        Command::Bijection(cmd) => run_bijection(cmd),
        Command::Table(cmd) => run_table(cmd),
        Command::Qsym(cmd) => run_qsym(cmd),
    };
    ExitCode::from(code)
}

/// Reports print in ascending n (fixed claim order inside each n)
/// regardless of task completion order, so identical inputs give
/// byte-identical output modulo elapsed_ms; a finished prefix is flushed
/// as soon as it is contiguous.
struct Emitter {
    tsv: bool,
    next: usize,
    pending: BTreeMap<usize, Vec<VerificationReport>>,
}

impl Emitter {
    fn submit(&mut self, n: usize, reports: Vec<VerificationReport>) {
        self.pending.insert(n, reports);
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        while let Some(batch) = self.pending.remove(&self.next) {
            for r in &batch {
                if self.tsv {
                    let ce = r
                        .counterexample
                        .as_ref()
                        .map(|v| v.to_string())
                        .unwrap_or_else(|| "-".to_string());
                    let status = if r.passed() { "pass" } else { "fail" };
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}",
                        r.claim_id, r.n_range.0, status, r.elapsed_ms, ce
                    )
                    .ok();
                } else {
                    writeln!(out, "{}", serde_json::to_string(r).expect("report serializes")).ok();
                }
            }
            self.next += 1;
        }
        out.flush().ok();
    }
}

fn build_pool() -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    match std::env::var("CATALAN_BLOCKS_THREADS") {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(t) if t >= 1 => builder = builder.num_threads(t),
            _ => return Err(format!("invalid CATALAN_BLOCKS_THREADS value {raw:?}")),
        },
        Err(std::env::VarError::NotPresent) => {}
        Err(e) => return Err(format!("invalid CATALAN_BLOCKS_THREADS value: {e}")),
    }
    builder.build().map_err(|e| e.to_string())
}

fn run_verify(cmd: VerifyCmd) -> u8 {
    let (per_n, name, default, max): (fn(usize) -> Vec<VerificationReport>, &'static str, usize, usize) =
        match &cmd {
            VerifyCmd::Equidist(_) => {
                (verify_equidist_at, "equidist", DEFAULT_EQUIDIST_N, MAX_EQUIDIST_N)
            }
            VerifyCmd::Schur(_) => (verify_schur_at, "schur", DEFAULT_SCHUR_N, MAX_SCHUR_N),
            VerifyCmd::Cardinalities(_) => (
                verify_cardinalities_at,
                "cardinalities",
                DEFAULT_CARDINALITIES_N,
                MAX_CARDINALITIES_N,
            ),
            VerifyCmd::Hilbert(_) => {
                (verify_hilbert_at, "hilbert", DEFAULT_HILBERT_N, MAX_HILBERT_N)
            }
            VerifyCmd::Pairs(_) => (verify_pairs_at, "pairs", DEFAULT_PAIRS_N, MAX_PAIRS_N),
        };
    let args = match cmd {
        VerifyCmd::Equidist(a)
        | VerifyCmd::Schur(a)
        | VerifyCmd::Cardinalities(a)
        | VerifyCmd::Hilbert(a)
        | VerifyCmd::Pairs(a) => a,
    };
    let n_max = args.n_max.unwrap_or(default);
    if n_max < 1 || n_max > max {
        // Mirror the library's range-guard wording.
        let err = VerifyError::RangeGuard { command: name, got: n_max, max };
        eprintln!("error: {err}");
        return 2;
    }
    let pool = match build_pool() {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let emitter = Mutex::new(Emitter { tsv: args.tsv, next: 1, pending: BTreeMap::new() });
    let failed = AtomicBool::new(false);
    pool.install(|| {
        (1..=n_max).into_par_iter().for_each(|n| {
            let reports = per_n(n);
            if reports.iter().any(|r| !r.passed()) {
                failed.store(true, Ordering::SeqCst);
            }
            emitter.lock().expect("printer lock").submit(n, reports);
        });
    });
    u8::from(failed.load(Ordering::SeqCst))
}

fn parse_word(word: &str) -> Result<Permutation, u8> {
    word.parse::<Permutation>().map_err(|e| {
        eprintln!("error: {e}");
        2
    })
}

fn apply(word: &str, f: fn(&Permutation) -> Result<Permutation, BijectionError>) -> u8 {
    let p = match parse_word(word) {
        Ok(p) => p,
        Err(code) => return code,
    };
    match f(&p) {
        Ok(image) => {
            println!("{}", image.to_compact_string());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn run_bijection(cmd: BijectionCmd) -> u8 {
    match cmd {
        BijectionCmd::Map { word } => apply(&word, f_map),
        BijectionCmd::Inverse { word } => apply(&word, f_inverse),
        BijectionCmd::Trace { word, json } => {
            let p = match parse_word(&word) {
                Ok(p) => p,
                Err(code) => return code,
            };
            match trace(&p) {
                Ok(steps) => {
                    if json {
                        let arr: Vec<serde_json::Value> =
                            steps.iter().map(|s| s.to_json()).collect();
                        println!("{}", serde_json::Value::Array(arr));
                    } else {
                        for s in &steps {
                            println!("{}", s.render());
                        }
                    }
                    0
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
            }
        }
    }
}

fn run_table(cmd: TableCmd) -> u8 {
    match cmd {
        TableCmd::Catalan { n_max } => {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            for n in 1..=n_max {
                let row: Vec<String> = (1..=n)
                    .rev()
                    .map(|k| ballot(n, k).expect("k <= n").to_string())
                    .collect();
                writeln!(out, "{}", row.join("\t")).ok();
            }
            0
        }
    }
}

fn run_qsym(cmd: QsymCmd) -> u8 {
    let QsymCmd::Expand { set, n, k } = cmd;
    if n < 1 || n > QSYM_MAX_N {
        eprintln!("error: --n must be in 1..={QSYM_MAX_N}");
        return 2;
    }
    let perms = match set.as_str() {
        "bl" => bl_level_set(n, k),
        "ldes" => ldes_inverse_level_set(n, k),
        other => unreachable!("clap restricts --set, got {other}"),
    };
    let v = q_of(n, perms.iter()).expect("level sets are degree-uniform");
    let payload = match schur_expand(&v).expect("degree within the dense limit") {
        Expansion::Symmetric(sv) => serde_json::json!({
            "set": set,
            "n": n,
            "k": k,
            "count": perms.len(),
            "qsym": v.to_json(),
            "schur": sv.to_json(),
        }),
        Expansion::NotSymmetric(w) => serde_json::json!({
            "set": set,
            "n": n,
            "k": k,
            "count": perms.len(),
            "qsym": v.to_json(),
            "not_symmetric": w.to_json(),
        }),
    };
    println!("{payload}");
    0
}
