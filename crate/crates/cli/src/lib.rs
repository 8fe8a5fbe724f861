//! Command-line front end: `scan`, `test`, `grr-map` and `simulate`.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 bad flags, input or config,
//! 3 no usable rows. `ROBUST_SCAN_THREADS` bounds the worker pool
//! (unset or 0 means one worker per core).

pub mod config;
pub mod error;
pub mod format;
pub mod grr_map;
pub mod input;
pub mod scan;
pub mod simulate;
pub mod single;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use robust_scan::ld::GeneticModel;
use robust_scan::null::BootstrapConfig;
use robust_scan::sim::ScanMethod;
use robust_scan::GenotypeCounts;

use crate::error::{CliError, CliResult};
use crate::grr_map::{grr_map, write_grr_map, GrrMapArgs};
use crate::scan::{run_scan, ScanOptions};
use crate::simulate::{run_simulate, SimulateOptions, Study};
use crate::single::{evaluate, to_json, write_key_values};

pub const THREADS_ENV: &str = "ROBUST_SCAN_THREADS";

#[derive(Debug, Parser)]
#[command(name = "robust-scan", version, about = "Robust case-control association scans")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Omit the generation-time header line.
    #[arg(long)]
    pub no_header_timestamp: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank every SNP of a genotype-count file.
    Scan {
        input: PathBuf,
        /// Comma-separated subset of CATT, PEARSON, MAX3, MIN2, GMS; the
        /// first sets the output order.
        #[arg(long, value_delimiter = ',', value_parser = parse_method)]
        methods: Option<Vec<ScanMethod>>,
        /// Keep only the best N rows.
        #[arg(long)]
        top: Option<usize>,
        /// Bootstrap replicates for MAX3 and GMS p-values.
        #[arg(long)]
        bootstrap: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// All statistics for a single table.
    Test {
        #[arg(long)]
        r0: u64,
        #[arg(long)]
        r1: u64,
        #[arg(long)]
        r2: u64,
        #[arg(long)]
        s0: u64,
        #[arg(long)]
        s1: u64,
        #[arg(long)]
        s2: u64,
        #[arg(long)]
        bootstrap: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Marker GRRs induced by a functional-locus model under partial LD.
    GrrMap {
        #[arg(long, value_parser = parse_model)]
        model: GeneticModel,
        /// Homozygote GRR at the functional locus.
        #[arg(long)]
        lambda2: f64,
        /// Marker risk-allele frequency.
        #[arg(long)]
        p: f64,
        /// Functional risk-allele frequency; defaults to `p`.
        #[arg(long)]
        q: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        d_prime: f64,
        /// Disease prevalence.
        #[arg(long, default_value_t = 0.1)]
        k: f64,
        #[arg(long)]
        json: bool,
    },
    /// Run a simulation study described by a key=value config file.
    Simulate {
        config: PathBuf,
        #[arg(long, value_enum)]
        study: Study,
        /// Override the config's seed.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn parse_method(s: &str) -> Result<ScanMethod, String> {
    s.parse().map_err(|e: robust_scan::Error| e.to_string())
}

fn parse_model(s: &str) -> Result<GeneticModel, String> {
    s.parse().map_err(|e: robust_scan::Error| e.to_string())
}

fn timestamp(enabled: bool) -> Option<String> {
    enabled.then(|| {
        SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()).to_string()
    })
}

fn threads_from_env() -> CliResult<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV}='{v}' is not a nonnegative integer"))),
        _ => Ok(0),
    }
}

fn with_output<F>(path: &Option<PathBuf>, stdout: &mut dyn Write, f: F) -> CliResult<()>
where
    F: FnOnce(&mut dyn Write) -> CliResult<()>,
{
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            f(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => f(stdout),
    }
}

fn open(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::Usage(format!("cannot open {}: {e}", path.display())))
}

fn dedup(methods: Vec<ScanMethod>) -> Vec<ScanMethod> {
    let mut out = Vec::new();
    for m in methods {
        if !out.contains(&m) {
            out.push(m);
        }
    }
    out
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Scan { input, methods, top, bootstrap, seed, output } => {
            let opts = ScanOptions {
                methods: dedup(methods.unwrap_or_else(|| ScanMethod::ALL.to_vec())),
                top,
                bootstrap,
                seed,
                timestamp: timestamp(!output.no_header_timestamp),
            };
            if let Some(n) = bootstrap {
                BootstrapConfig::new(n, seed)?;
            }
            let reader = open(&input)?;
            with_output(&output.output, stdout, |w| run_scan(reader, &opts, w, stderr).map(|_| ()))
        }
        Command::Test { r0, r1, r2, s0, s1, s2, bootstrap, seed, json } => {
            let c = GenotypeCounts::new([r0, r1, r2], [s0, s1, s2])?;
            let boot = bootstrap.map(|n| BootstrapConfig::new(n, seed)).transpose()?;
            let entries = evaluate(&c, boot);
            if json {
                writeln!(stdout, "{}", to_json(&c, &entries))?;
                Ok(())
            } else {
                write_key_values(&c, &entries, stdout)
            }
        }
        Command::GrrMap { model, lambda2, p, q, d_prime, k, json } => {
            let args = GrrMapArgs { model, lambda2_star: lambda2, p, q: q.unwrap_or(p), d_prime, k };
            write_grr_map(&grr_map(&args)?, json, stdout)
        }
        Command::Simulate { config, study, seed, output } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", config.display())))?;
            let opts = SimulateOptions { study, seed, timestamp: timestamp(!output.no_header_timestamp) };
            with_output(&output.output, stdout, |w| run_simulate(&text, &opts, w))
        }
    }
}

/// Parse `args` (program name first), run the command and return the exit
/// code. Errors are reported on `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(rendered.as_bytes()) } else { stdout.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let threads = match threads_from_env() {
        Ok(n) => n,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    // Fails only if a pool already exists, as in repeated in-process calls.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    match execute(cli, stdout, stderr) {
        Ok(()) => match stdout.flush() {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// Process entry point over the real standard streams.
pub fn main_with_env() -> i32 {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    let code = run(std::env::args_os(), &mut out, &mut err);
    if out.flush().is_err() && code == 0 {
        return 1;
    }
    code
}
