//! `phz`: character tables, blocks and height-zero checks over the corpus.

mod exit;
mod writer;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use phz_core::blocks::{block_partition, block_report};
use phz_core::chartable::{dixon_table, CharacterTable};
use phz_core::conjecture::{central_p_subgroups, check_eaton, ConjAReport, VerdictReport};
use phz_core::corpus::{embedded_corpus, embedded_entry, load_corpus, run_entry, CorpusEntry, RunConfig};
use phz_core::{Error, Result};

#[derive(Parser)]
#[command(name = "phz", version, about = "Character tables, p-blocks and projective height-zero checks")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Corpus directory or single entry file (default: the shipped corpus).
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    /// Element enumeration cap; overrides PHZ_ENUMERATION_CAP.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Largest group order handed to the character table algorithm.
    #[arg(long, global = true)]
    dixon_cap: Option<u64>,
    /// Recompute block partitions under a second prime and reduction map.
    #[arg(long, global = true)]
    recheck: bool,
    /// Per-check time budget in seconds.
    #[arg(long, global = true)]
    timeout: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the character table in the interchange format.
    Table { group: String },
    /// Print the p-blocks with defects, heights and defect groups.
    Blocks {
        group: String,
        #[arg(short = 'p')]
        p: u64,
    },
    #[command(subcommand)]
    Check(Check),
    /// Run every check over the corpus and write one JSON report per
    /// (group, p).
    Report {
        #[arg(long)]
        json: PathBuf,
        #[arg(short = 'p', value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u64>,
    },
}

#[derive(Subcommand)]
enum Check {
    /// Conjecture A with the theorem-backed checks, for one group or `all`.
    #[command(name = "conj-a")]
    ConjA {
        target: String,
        #[arg(short = 'p', value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u64>,
        /// Flip one height in memory before judging.
        #[arg(long, hide = true)]
        inject_height_fault: bool,
    },
    /// The Eaton variant over a named normal p-subgroup.
    Eaton {
        group: String,
        #[arg(long)]
        normal: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let code = exit::code_for(&e);
            let payload = json!({
                "status": "error",
                "kind": exit::kind(&e),
                "message": e.to_string(),
                "exit_code": code,
            });
            println!("{}", serde_json::to_string_pretty(&payload).expect("json"));
            ExitCode::from(code)
        }
    }
}

fn config(opts: &GlobalOpts, primes: Vec<u64>) -> Result<RunConfig> {
    let mut c = RunConfig::default().with_env()?;
    c.primes = primes;
    if let Some(cap) = opts.cap {
        c.enumeration_cap = cap;
    }
    if let Some(d) = opts.dixon_cap {
        c.dixon_cap = d;
    }
    if let Some(t) = opts.timeout {
        c.timeout_secs = t;
    }
    c.recheck = opts.recheck;
    c.validate()?;
    Ok(c)
}

fn find_entry(opts: &GlobalOpts, config: &RunConfig, name: &str) -> Result<CorpusEntry> {
    match &opts.corpus {
        Some(path) => load_corpus(path, config.enumeration_cap)?
            .into_iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::UnknownGroup(name.to_string())),
        None => embedded_entry(name, config.enumeration_cap),
    }
}

fn all_entries(opts: &GlobalOpts, config: &RunConfig) -> Result<Vec<CorpusEntry>> {
    match &opts.corpus {
        Some(path) => load_corpus(path, config.enumeration_cap),
        None => embedded_corpus(config.enumeration_cap),
    }
}

fn print<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("json"));
}

fn run(cli: Cli) -> Result<u8> {
    let opts = &cli.opts;
    match cli.command {
        Command::Table { group } => {
            let c = config(opts, vec![2])?;
            let t = find_entry(opts, &c, &group)?.table(&c)?;
            println!("{}", t.to_json());
            Ok(exit::OK)
        }
        Command::Blocks { group, p } => {
            let c = config(opts, vec![p])?;
            let t = find_entry(opts, &c, &group)?.table(&c)?;
            let part = block_partition(&t, p)?;
            let central = central_p_subgroups(&t, p)?;
            print(&json!({ "group": group, "report": block_report(&t, &part, &central) }));
            Ok(exit::OK)
        }
        Command::Check(Check::ConjA {
            target,
            primes,
            inject_height_fault,
        }) => {
            let c = config(opts, primes)?;
            let entries = if target == "all" {
                all_entries(opts, &c)?
            } else {
                vec![find_entry(opts, &c, &target)?]
            };
            let mut reports = run_all(&entries, &c, |_| Ok(()))?;
            if inject_height_fault {
                inject(&mut reports)?;
            }
            Ok(summarize(&reports, &c, None))
        }
        Command::Check(Check::Eaton { group, normal }) => {
            let c = config(opts, vec![2])?;
            eaton(&find_entry(opts, &c, &group)?, &normal, &c)
        }
        Command::Report { json, primes } => {
            let c = config(opts, primes)?;
            let entries = all_entries(opts, &c)?;
            let writer = writer::ReportWriter::spawn(json)?;
            let hash = c.hash();
            let reports = run_all(&entries, &c, |r| {
                let name = format!("{}_p{}_{}.json", r.group, r.p, hash);
                let body = serde_json::to_string_pretty(r).expect("json");
                writer.send(name, body.into_bytes())
            })?;
            let written = writer.finish()?;
            Ok(summarize(&reports, &c, Some(written)))
        }
    }
}

/// Computes tables in parallel, then fans out over `(group, p)`. Reports
/// come back sorted by entry order, then prime.
fn run_all(
    entries: &[CorpusEntry],
    config: &RunConfig,
    on_report: impl Fn(&VerdictReport) -> Result<()> + Sync,
) -> Result<Vec<VerdictReport>> {
    let tables: Vec<CharacterTable> = entries
        .par_iter()
        .map(|e| e.table(config))
        .collect::<Result<_>>()?;
    let jobs: Vec<(usize, u64)> = (0..entries.len())
        .flat_map(|i| config.primes.iter().map(move |&p| (i, p)))
        .collect();
    jobs.par_iter()
        .map(|&(i, p)| {
            let r = run_entry(&entries[i], &tables[i], p, config)?;
            on_report(&r)?;
            Ok(r)
        })
        .collect()
}

fn inject(reports: &mut [VerdictReport]) -> Result<()> {
    for r in reports.iter_mut() {
        if r.inject_height_fault().is_ok() {
            return Ok(());
        }
    }
    Err(Error::Precondition("no report admits a height fault".into()))
}

#[derive(Serialize)]
struct RunSummary<'a> {
    group: &'a str,
    p: u64,
    checks: usize,
    conjecture_failures: usize,
    theorem_failures: usize,
    conditional: usize,
    all_pass: bool,
    /// Checks whose verdict is not true, with their witnesses.
    failing: Vec<&'a ConjAReport>,
}

fn summarize(reports: &[VerdictReport], config: &RunConfig, written: Option<Vec<String>>) -> u8 {
    let runs: Vec<RunSummary> = reports
        .iter()
        .map(|r| RunSummary {
            group: &r.group,
            p: r.p,
            checks: r.checks.len(),
            conjecture_failures: r.conjecture_failures,
            theorem_failures: r.theorem_failures,
            conditional: r.conditional,
            all_pass: r.all_pass,
            failing: r.checks.iter().filter(|c| c.verdict != Some(true)).collect(),
        })
        .collect();
    let all_pass = reports.iter().all(|r| r.all_pass);
    let mut out = json!({
        "status": if all_pass { "pass" } else { "fail" },
        "config_hash": config.hash(),
        "primes": config.primes,
        "runs": runs,
        "all_pass": all_pass,
    });
    if let Some(w) = written {
        out["written"] = json!(w);
    }
    print(&out);
    if all_pass {
        exit::OK
    } else {
        exit::FAILED
    }
}

fn eaton(entry: &CorpusEntry, normal: &str, config: &RunConfig) -> Result<u8> {
    let n = entry
        .normals()?
        .into_iter()
        .find(|n| n.name == normal)
        .ok_or_else(|| Error::MalformedInput(format!("{} has no normal subgroup named {normal}", entry.name)))?;
    let order = n.group.order_u64();
    let primes = phz_core::arith::prime_divisors(order);
    let &[p] = primes.as_slice() else {
        return Err(Error::Precondition(format!("{normal} is not a nontrivial p-group")));
    };
    let t = entry.table(config)?;
    let part = block_partition(&t, p)?;
    let nt = dixon_table(&n.group)?.with_name(normal);
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for theta in 0..nt.values().len() {
        match check_eaton(&t, &part, normal, &nt, theta) {
            Ok(r) => reports.push(r),
            Err(Error::Precondition(reason)) => skipped.push(json!({ "theta": theta, "reason": reason })),
            Err(e) => return Err(e),
        }
    }
    let all_pass = reports.iter().all(|r| r.passes);
    print(&json!({
        "group": entry.name,
        "p": p,
        "n": normal,
        "reports": reports,
        "skipped": skipped,
        "all_pass": all_pass,
    }));
    Ok(if all_pass { exit::OK } else { exit::FAILED })
}
