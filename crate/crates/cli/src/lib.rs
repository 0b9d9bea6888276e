//! Command-line front end: argument definitions, JSON-lines output and the
//! acceptance checks behind `paley verify-all`.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

pub mod acceptance;
mod commands;

/// Environment variable holding the default `--budget`.
pub const BUDGET_ENV: &str = "PALEY_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "paley",
    version,
    about = "Paley graphs and tournaments, degree-parity censuses and MDS self-dual codes"
)]
pub struct Cli {
    /// Cap on enumeration work, overriding every per-command default.
    #[arg(long, global = true, env = BUDGET_ENV)]
    pub budget: Option<u64>,

    /// Worker threads; output does not depend on this.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Field parameters, quadratic character and square roots in F_q.
    FieldInfo(FieldInfoArgs),
    /// Build P_q (q = 1 mod 4) or PT_q (q = 3 mod 4): degree, 2-rank, optional edge list.
    Paley(PaleyArgs),
    /// Number of co-even subsets of P_q, i.e. 2^(q - rank2 A): 2 when q = 5 mod 8, 2^((q+1)/2) when q = 1 mod 8.
    Coeven(CoevenArgs),
    /// Even/odd/mixed census of induced sub(di)graphs of order r; even share tends to 2^(1-r) (2^(-r) for tournaments).
    Census(CensusArgs),
    /// Lower bound C(n, n-theta) / C(n - ceil(theta/2), n - theta) on even induced subgraphs of order in [theta/2, theta].
    Bound(BoundArgs),
    /// Check |sum_c eta(f_W(c)^n)| <= (|W| - 1) sqrt(q) on random W and odd n.
    Weil(WeilArgs),
    /// Self-dual MDS (extended) GRS codes from sets with all eta(Delta) equal (even n) or all eta(-Delta) = 1 (odd n).
    #[command(subcommand)]
    Mds(MdsCommand),
    /// Even-size S whose own Deltas and whose complement's Deltas are all squares; 2^((q-1)/2) - 1 of them when q = 1 mod 8, none otherwise.
    CoevenPairs(CoevenPairsArgs),
    /// Exact expected number of even induced sub(di)graphs of order r in G(n, p) / D(n, p), with a Monte Carlo check.
    RandomExpect(RandomExpectArgs),
    /// Run every acceptance criterion and print one line per criterion.
    VerifyAll(VerifyAllArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct FieldInfoArgs {
    /// Field order, an odd prime power.
    #[arg(long)]
    pub q: u64,
    /// Monic modulus coefficients, lowest degree first, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
    /// Canonical index of an element to describe.
    #[arg(long)]
    pub element: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct PaleyArgs {
    #[arg(long)]
    pub q: u64,
    /// Write the edge (or arc) list, one "u v" pair per line, to this file.
    #[arg(long)]
    pub export: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoevenMethod {
    Rank,
    Brute,
}

#[derive(Debug, Args, Serialize)]
pub struct CoevenArgs {
    /// Order of the Paley graph, q = 1 mod 4.
    #[arg(long)]
    pub q: u64,
    #[arg(long, value_enum, default_value = "rank")]
    pub method: CoevenMethod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CensusModeArg {
    Exhaustive,
    Sample,
}

#[derive(Debug, Args, Serialize)]
pub struct CensusArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 1)]
    pub r_min: usize,
    #[arg(long)]
    pub r_max: usize,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub mode: CensusModeArg,
    /// Draws per order in sample mode.
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub theta: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct WeilArgs {
    /// Field order; random odd prime powers up to 101 when omitted.
    #[arg(long)]
    pub q: Option<u64>,
    /// |W|; uniform in 2..=6 when omitted.
    #[arg(long)]
    pub deg: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "action", rename_all = "lowercase")]
pub enum MdsCommand {
    /// Stream one verified code record per feasible n-subset of F_q.
    Search(MdsSearchArgs),
    /// Re-verify code records from a JSON-lines file; exits 1 on any failure.
    Verify(MdsVerifyArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct MdsSearchArgs {
    #[arg(long)]
    pub q: u64,
    /// Number of evaluation points.
    #[arg(long)]
    pub n: usize,
    /// Stop after this many codes.
    #[arg(long)]
    pub limit: Option<usize>,
    /// Also write each generator as "q n k" text to code-<i>.txt here.
    #[arg(long)]
    pub export_dir: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct MdsVerifyArgs {
    #[arg(long)]
    pub file: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct CoevenPairsArgs {
    #[arg(long)]
    pub q: u64,
    /// Number of member sets to list.
    #[arg(long, default_value_t = 8)]
    pub witnesses: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KindArg {
    Graph,
    Digraph,
}

#[derive(Debug, Args, Serialize)]
pub struct RandomExpectArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub n: usize,
    /// Edge probability as NUM/DEN or a terminating decimal.
    #[arg(long)]
    pub p: String,
    #[arg(long)]
    pub r: usize,
    /// Monte Carlo trials; 0 reports the exact value only.
    #[arg(long, default_value_t = 0)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyAllArgs {}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::FieldInfo(_) => "field-info",
            Command::Paley(_) => "paley",
            Command::Coeven(_) => "coeven",
            Command::Census(_) => "census",
            Command::Bound(_) => "bound",
            Command::Weil(_) => "weil",
            Command::Mds(MdsCommand::Search(_)) => "mds search",
            Command::Mds(MdsCommand::Verify(_)) => "mds verify",
            Command::CoevenPairs(_) => "coeven-pairs",
            Command::RandomExpect(_) => "random-expect",
            Command::VerifyAll(_) => "verify-all",
        }
    }

    fn seed(&self) -> Option<u64> {
        match self {
            Command::Census(a) if a.mode == CensusModeArg::Sample => Some(a.seed),
            Command::Weil(a) => Some(a.seed),
            Command::RandomExpect(a) if a.trials > 0 => Some(a.seed),
            _ => None,
        }
    }
}

/// Error with a stable kind for the JSON error line.
#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(kind: &'static str, message: impl Into<String>) -> Self {
        CliError { kind, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

/// Stable name of an error for `error_kind`.
pub fn error_kind(err: &anyhow::Error) -> &'static str {
    if let Some(e) = err.downcast_ref::<paley_core::Error>() {
        e.kind()
    } else if let Some(e) = err.downcast_ref::<CliError>() {
        e.kind
    } else if err.downcast_ref::<std::io::Error>().is_some() {
        "IoError"
    } else if err.downcast_ref::<serde_json::Error>().is_some() {
        "ParseError"
    } else {
        "Internal"
    }
}

pub fn error_json(err: &anyhow::Error) -> Value {
    json!({ "error_kind": error_kind(err), "message": format!("{err:#}") })
}

/// Writes JSON lines, each carrying the run manifest.
pub struct Emitter<'a> {
    out: &'a mut (dyn Write + Send),
    manifest: Value,
}

impl<'a> Emitter<'a> {
    pub fn new(out: &'a mut (dyn Write + Send), cli: &Cli) -> Self {
        let manifest = json!({
            "subcommand": cli.command.name(),
            "params": serde_json::to_value(&cli.command).expect("arguments serialize"),
            "budget": cli.budget.map(|b| b.to_string()),
            "seed": cli.command.seed(),
            "version": env!("CARGO_PKG_VERSION"),
        });
        Emitter { out, manifest }
    }

    pub fn emit(&mut self, mut row: Value) -> anyhow::Result<()> {
        if let Value::Object(map) = &mut row {
            map.insert("manifest".into(), self.manifest.clone());
        }
        serde_json::to_writer(&mut *self.out, &row)?;
        self.out.write_all(b"\n")?;
        Ok(())
    }

    pub fn raw(&mut self) -> &mut dyn Write {
        self.out
    }
}

fn budget_or(cli: &Cli, default: u128) -> u128 {
    cli.budget.map_or(default, u128::from)
}

/// Runs a parsed command inside a pool of `cli.workers` threads.
pub fn run(cli: &Cli, out: &mut (dyn Write + Send)) -> anyhow::Result<()> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(CliError::new("UsageError", "--workers must be positive").into());
        }
        builder = builder.num_threads(w);
    }
    let pool = builder.build()?;
    pool.install(|| {
        let mut emitter = Emitter::new(out, cli);
        commands::dispatch(cli, &mut emitter)
    })
}

/// Parses `args` (without the program name) and runs them, returning the
/// exit code and everything written to standard output.
pub fn run_captured<I, S>(args: I) -> (i32, Vec<u8>)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("paley")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(_) => return (2, Vec::new()),
    };
    let mut out = Vec::new();
    let code = match run(&cli, &mut out) {
        Ok(()) => 0,
        Err(_) => 1,
    };
    (code, out)
}
