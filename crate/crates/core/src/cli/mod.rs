//! The `geodesy` command line.
//!
//! Exit codes: 0 success, 1 failed check or theorem violation, 2 usage or
//! parse error, 3 unresolved data remain.

pub mod candidate;
pub mod selftest;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::embedcheck::{check_conditions, CheckReportJson};
use crate::ladder::{classify, ClassifyOptions, Status, TheoremSummary, WeightData};
use crate::oracle::minimize;
use candidate::{CandidateError, CandidateFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNRESOLVED: i32 = 3;
pub const MAX_P: usize = 8;

#[derive(Debug, Parser)]
#[command(name = "geodesy", version, about = "Exact checks for holomorphic equivariant embeddings of the disc into SU(p,p)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a candidate embedding read from a JSON file.
    Check {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Classify every weight datum for SU(p,p).
    Classify(ClassifyArgs),
    /// Minimise the numeric residual for a weight pattern or for every datum of p.
    Oracle(OracleArgs),
    /// Run the seeded invariant suite.
    Selftest,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(value_parser = clap::value_parser!(u64).range(1..=MAX_P as u64))]
    pub p: u64,
    /// Largest |weight| enumerated (default 2p - 1).
    #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
    pub max_weight: Option<i64>,
    #[arg(long)]
    pub json: bool,
    #[arg(long, env = "GEODESY_JOBS", default_value_t = 1)]
    pub jobs: usize,
    /// Write one certificate document per weight datum into this directory.
    #[arg(long)]
    pub emit_certs: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// `V₊` pattern, e.g. `1:2,0:1`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_pattern, requires = "minus", conflicts_with = "p")]
    pub plus: Option<Pattern>,
    /// `V₋` pattern, e.g. `-1:2,0:1`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_pattern, requires = "plus")]
    pub minus: Option<Pattern>,
    /// Run on every enumerated datum of this rank instead.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=MAX_P as u64), required_unless_present = "plus")]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub restarts: u64,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
    #[arg(long, env = "GEODESY_JOBS", default_value_t = 1)]
    pub jobs: usize,
}

/// A side of a weight datum as `weight:multiplicity` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern(pub Vec<(i64, usize)>);

/// Parses `w:m,w:m,...`; the empty string is the empty side.
pub fn parse_pattern(s: &str) -> Result<Pattern, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (w, m) = t.split_once(':').ok_or_else(|| format!("{t:?} is not weight:multiplicity"))?;
            let w = w.trim().parse::<i64>().map_err(|_| format!("bad weight {w:?}"))?;
            let m = m.trim().parse::<usize>().map_err(|_| format!("bad multiplicity {m:?}"))?;
            Ok((w, m))
        })
        .collect::<Result<_, String>>()
        .map(Pattern)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn json_line(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn cmd_check(path: &Path, json: bool, out: &mut impl Write, err: &mut impl Write) -> std::io::Result<i32> {
    let file = match CandidateFile::read(path) {
        Ok(f) => f,
        Err(e) => {
            writeln!(err, "error: {}: {e}", path.display())?;
            return Ok(EXIT_USAGE);
        }
    };
    let candidate = match file.to_candidate() {
        Ok(c) => c,
        Err(CandidateError::Membership(e)) => {
            writeln!(err, "error: {}: {e}", path.display())?;
            return Ok(EXIT_FAILED);
        }
        Err(e) => {
            writeln!(err, "error: {}: {e}", path.display())?;
            return Ok(EXIT_USAGE);
        }
    };
    let report = match check_conditions(&candidate) {
        Ok(r) => r,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_FAILED);
        }
    };
    if json {
        writeln!(out, "{}", json_line(&CheckReportJson::new(file.p, &report)))?;
    } else {
        writeln!(out, "candidate: {} (p = {})", path.display(), file.p)?;
        writeln!(out, "homomorphism: {}", yes_no(report.is_homomorphism))?;
        for v in &report.bracket_violations {
            writeln!(out, "  bracket {v} violated")?;
        }
        if report.is_homomorphism {
            writeln!(out, "F(w) in k: {}", yes_no(report.satisfies_c1))?;
            writeln!(out, "F_p intertwines the complex structures: {}", yes_no(report.satisfies_c3))?;
            writeln!(out, "injective: {}", yes_no(report.injective))?;
        }
        match &report.h_spectrum {
            Ok(s) => {
                let parts: Vec<String> = s.iter().rev().map(|(w, m)| format!("{w}:{m}")).collect();
                writeln!(out, "spectrum of H: {}", parts.join(","))?;
            }
            Err(e) => writeln!(out, "spectrum of H: {e}")?,
        }
        writeln!(out, "accepted: {}", yes_no(report.accepted()))?;
        writeln!(out, "totally geodesic: {}", yes_no(report.totally_geodesic))?;
    }
    Ok(if report.accepted() { EXIT_OK } else { EXIT_FAILED })
}

fn write_certificates(dir: &Path, summary: &TheoremSummary) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for d in &summary.data {
        let mut doc = json_line(d);
        doc.push('\n');
        std::fs::write(dir.join(format!("{}.json", d.hash)), doc)?;
    }
    Ok(())
}

fn print_summary(s: &TheoremSummary, out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "p = {}, weights up to {}", s.p, s.max_weight)?;
    writeln!(out, "enumerated: {}", s.enumerated)?;
    writeln!(out, "feasible: {}", s.feasible)?;
    writeln!(out, "infeasible: {}", s.infeasible)?;
    writeln!(out, "unresolved: {}", s.unresolved)?;
    writeln!(out, "feasible classes:")?;
    for c in &s.classes {
        writeln!(out, "  {}  [{}]", c.description, c.data)?;
        for r in &c.relations {
            writeln!(out, "    {r}")?;
        }
    }
    for d in s.data.iter().filter(|d| d.status == Status::Unresolved) {
        writeln!(out, "unresolved: {}", d.data)?;
    }
    for v in &s.violations {
        writeln!(out, "violation: {v}")?;
    }
    Ok(())
}

fn cmd_classify(a: &ClassifyArgs, out: &mut impl Write, err: &mut impl Write) -> std::io::Result<i32> {
    let opts = ClassifyOptions { max_weight: a.max_weight, jobs: a.jobs };
    let summary = match classify(a.p as usize, opts) {
        Ok(s) => s,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    if let Some(dir) = &a.emit_certs {
        if let Err(e) = write_certificates(dir, &summary) {
            writeln!(err, "error: writing certificates to {}: {e}", dir.display())?;
            return Ok(EXIT_FAILED);
        }
    }
    if a.json {
        writeln!(out, "{}", json_line(&summary))?;
    } else {
        print_summary(&summary, out)?;
    }
    Ok(match summary.check() {
        Ok(()) => EXIT_OK,
        Err(crate::Error::UnresolvedRemains { .. }) => EXIT_UNRESOLVED,
        Err(_) => EXIT_FAILED,
    })
}

#[derive(Debug, Serialize)]
struct OracleEntry {
    data: String,
    status: Status,
    final_residual: f64,
    iterations: usize,
    best_restart: usize,
}

#[derive(Debug, Serialize)]
struct OracleSweep {
    p: usize,
    restarts: usize,
    seed: u64,
    entries: Vec<OracleEntry>,
}

fn cmd_oracle(a: &OracleArgs, out: &mut impl Write, err: &mut impl Write) -> std::io::Result<i32> {
    let restarts = a.restarts as usize;
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(a.jobs.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            writeln!(err, "error: thread pool: {e}")?;
            return Ok(EXIT_FAILED);
        }
    };
    if let (Some(plus), Some(minus)) = (&a.plus, &a.minus) {
        let wd = match WeightData::from_pairs(&plus.0, &minus.0) {
            Ok(wd) => wd,
            Err(e) => {
                writeln!(err, "error: {e}")?;
                return Ok(EXIT_USAGE);
            }
        };
        let report = pool.install(|| minimize(&wd, restarts, a.seed)).expect("restarts >= 1");
        if a.json {
            writeln!(out, "{}", json_line(&report))?;
        } else {
            writeln!(out, "data: {}", report.data)?;
            writeln!(out, "restarts: {} (seed {})", report.restarts, report.seed)?;
            writeln!(out, "best restart: {}", report.best_restart)?;
            writeln!(out, "iterations: {} (total {})", report.iterations, report.total_iterations)?;
            writeln!(out, "final residual: {:e}", report.final_residual)?;
        }
        return Ok(EXIT_OK);
    }
    let p = a.p.expect("clap enforces --p or --plus") as usize;
    let summary = match classify(p, ClassifyOptions { max_weight: None, jobs: a.jobs }) {
        Ok(s) => s,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let entries = pool.install(|| {
        summary
            .data
            .iter()
            .map(|d| {
                let r = minimize(&d.data, restarts, a.seed).expect("restarts >= 1");
                OracleEntry {
                    data: r.data,
                    status: d.status,
                    final_residual: r.final_residual,
                    iterations: r.iterations,
                    best_restart: r.best_restart,
                }
            })
            .collect::<Vec<_>>()
    });
    if a.json {
        writeln!(out, "{}", json_line(&OracleSweep { p, restarts, seed: a.seed, entries }))?;
    } else {
        writeln!(out, "p = {p}, {restarts} restarts, seed {}", a.seed)?;
        for e in &entries {
            writeln!(out, "{:<11} {:>12.3e}  {}", e.status.to_string(), e.final_residual, e.data)?;
        }
    }
    Ok(EXIT_OK)
}

/// Dispatches a parsed command line, writing to the given streams.
pub fn execute(cli: &Cli, out: &mut impl Write, err: &mut impl Write) -> std::io::Result<i32> {
    match &cli.command {
        Command::Check { path, json } => cmd_check(path, *json, out, err),
        Command::Classify(a) => cmd_classify(a, out, err),
        Command::Oracle(a) => cmd_oracle(a, out, err),
        Command::Selftest => Ok(if selftest::run(out)? { EXIT_OK } else { EXIT_FAILED }),
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    match execute(&cli, &mut stdout.lock(), &mut stderr.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAILED
        }
    }
}
