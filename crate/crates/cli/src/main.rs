//! Command-line surface: suite runs over a corpus, Monte Carlo estimates,
//! good-set and orbit reports, the gallery catalog, and spec validation.
//!
//! Exit codes: 0 all verified/skipped, 2 counterexample found, 1 internal
//! error.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use sylosync::corpus::{default_corpus, CorpusConfig};
use sylosync::ds::{ds_orbits, gamma, DsContext, DsTuple};
use sylosync::gallery;
use sylosync::mc::{
    exact_intersection_prob, mc_intersection_prob, sync_search, union_bound_report, Family,
    UnionBoundEntry,
};
use sylosync::report::{has_counterexample, run_suites, to_jsonl};
use sylosync::spec::{Caps, GroupSpec};

#[derive(Parser)]
#[command(
    name = "sylosync",
    version,
    about = "Sylow intersection synchronization: checkers and Monte Carlo estimates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites over a corpus of groups
    Check(CheckArgs),
    /// Monte Carlo intersection probabilities in Sym(n)/Alt(n)
    Mc(McArgs),
    /// Good-element sets of a group's canonical Sylow tuple
    Gamma(GroupInput),
    /// Orbit decomposition of the Sylow tuple action
    Orbits(GroupInput),
    /// List, inspect, or verify the gallery of named constructions
    Gallery(GalleryArgs),
    /// Specification tools
    #[command(subcommand)]
    Spec(SpecCommand),
}

#[derive(Args)]
struct CheckArgs {
    /// Corpus config file, or "default" for the built-in corpus
    #[arg(long, default_value = "default")]
    corpus: String,
    /// Suites to run (comma-separated); defaults to the config's list
    #[arg(long = "suite", value_delimiter = ',')]
    suite: Vec<String>,
    /// Master seed override
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (0 = default pool)
    #[arg(long)]
    jobs: Option<usize>,
    /// Drop corpus groups above this order
    #[arg(long)]
    max_order: Option<u64>,
    /// Write JSON-lines records here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct McArgs {
    /// sym or alt
    #[arg(long, default_value = "sym")]
    family: Family,
    #[arg(long)]
    n: usize,
    /// Single prime; without it, a union-bound report over all primes <= n
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Iterate all group elements instead of sampling (small n only)
    #[arg(long)]
    exhaustive: bool,
    /// Search for one element trivializing every prime simultaneously
    #[arg(long)]
    sync: bool,
    /// Sample budget for --sync
    #[arg(long, default_value_t = 10_000)]
    budget: u64,
    /// Primes for --sync (default: odd primes <= n)
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Sylow enumeration limit
    #[arg(long, default_value_t = sylosync::mc::DEFAULT_SYLOW_LIMIT)]
    limit: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GroupInput {
    /// Inline JSON spec, or @path to a spec file
    #[arg(long, conflicts_with = "gallery")]
    spec: Option<String>,
    /// Gallery entry name
    #[arg(long)]
    gallery: Option<String>,
    /// Dense table cap
    #[arg(long, default_value_t = 5000)]
    max_order: u64,
}

#[derive(Args)]
struct GalleryArgs {
    /// Entry to inspect; omitted lists all entries
    #[arg(long)]
    name: Option<String>,
    /// Print the entry's group spec as JSON instead of verifying it
    #[arg(long)]
    emit_spec: bool,
}

#[derive(Subcommand)]
enum SpecCommand {
    /// Parse and build a spec file, reporting order and degree
    Validate { file: PathBuf },
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Check(args) => run_check(args),
        Command::Mc(args) => run_mc(args),
        Command::Gamma(input) => run_gamma(input),
        Command::Orbits(input) => run_orbits(input),
        Command::Gallery(args) => run_gallery(args),
        Command::Spec(SpecCommand::Validate { file }) => run_validate(file),
    }
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn run_check(args: CheckArgs) -> Result<ExitCode> {
    let mut config: CorpusConfig = if args.corpus == "default" {
        default_corpus()
    } else {
        let text = std::fs::read_to_string(&args.corpus)
            .with_context(|| format!("reading corpus {}", args.corpus))?;
        CorpusConfig::parse(&text)?
    };
    if !args.suite.is_empty() {
        config.suites = args.suite;
    }
    if let Some(seed) = args.seed {
        config.master_seed = seed;
    }
    if let Some(jobs) = args.jobs {
        config.jobs = jobs;
    }
    if let Some(max_order) = args.max_order {
        config.filter_max_order(max_order);
    }
    let records = run_suites(&config);
    write_output(&args.out, &to_jsonl(&records))?;
    let verified = records
        .iter()
        .filter(|r| r.status == sylosync::verdict::VerdictStatus::Verified)
        .count();
    let skipped = records
        .iter()
        .filter(|r| r.status == sylosync::verdict::VerdictStatus::Skipped)
        .count();
    let counterexamples = records.len() - verified - skipped;
    eprintln!(
        "{} records: {verified} verified, {skipped} skipped, {counterexamples} counterexamples",
        records.len()
    );
    Ok(if has_counterexample(&records) {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn run_mc(args: McArgs) -> Result<ExitCode> {
    let mut lines = String::new();
    if args.sync {
        let primes: Vec<u64> = match args.primes {
            Some(primes) => primes,
            None => sylosync::arith::primes_upto(args.n)
                .into_iter()
                .filter(|&p| p != 2)
                .collect(),
        };
        let witness =
            sync_search(args.family, args.n, &primes, args.budget, args.seed, args.limit)?;
        lines.push_str(&serde_json::to_string(&witness)?);
        lines.push('\n');
        write_output(&args.out, &lines)?;
        return Ok(ExitCode::SUCCESS);
    }
    match args.p {
        Some(p) if args.exhaustive => {
            let (hits, total) = exact_intersection_prob(args.family, args.n, p, args.limit)?;
            let record = json!({
                "family": args.family,
                "n": args.n,
                "p": p,
                "mode": "exhaustive",
                "hits": hits,
                "total": total,
                "probability": hits as f64 / total as f64,
            });
            lines.push_str(&record.to_string());
            lines.push('\n');
        }
        Some(p) => {
            let estimate =
                mc_intersection_prob(args.family, args.n, p, args.trials, args.seed, args.limit)?;
            lines.push_str(&serde_json::to_string(&estimate)?);
            lines.push('\n');
        }
        None => {
            let report =
                union_bound_report(args.family, args.n, args.trials, args.seed, args.limit);
            for entry in &report.entries {
                match entry {
                    UnionBoundEntry::Estimate(e) => lines.push_str(&serde_json::to_string(e)?),
                    UnionBoundEntry::Gap { .. } => lines.push_str(&serde_json::to_string(entry)?),
                }
                lines.push('\n');
            }
            let summary = json!({
                "family": report.family,
                "n": report.n,
                "sum_of_estimates": report.sum_of_estimates,
                "prime_count": report.prime_count,
                "seed": report.seed,
            });
            lines.push_str(&summary.to_string());
            lines.push('\n');
        }
    }
    write_output(&args.out, &lines)?;
    Ok(ExitCode::SUCCESS)
}

fn load_group(input: &GroupInput) -> Result<(String, GroupSpec)> {
    if let Some(name) = &input.gallery {
        let entry = gallery::entry_by_name(name)
            .with_context(|| format!("no gallery entry named {name:?}"))?;
        return Ok((entry.name.to_string(), entry.spec));
    }
    let Some(spec_arg) = &input.spec else {
        bail!("provide --spec or --gallery");
    };
    let text = match spec_arg.strip_prefix('@') {
        Some(path) => {
            std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
        }
        None => spec_arg.clone(),
    };
    let spec = GroupSpec::parse(&text)?;
    Ok((spec.content_hash(), spec))
}

fn build_context(input: &GroupInput) -> Result<(String, DsContext)> {
    let (name, spec) = load_group(input)?;
    let caps = Caps {
        dense_cap: input.max_order,
        ..Caps::default()
    };
    let built = spec.build(&caps)?;
    let dense = built.dense()?.clone();
    Ok((name, DsContext::build(&dense)))
}

fn run_gamma(input: GroupInput) -> Result<ExitCode> {
    let (name, ctx) = build_context(&input)?;
    let report = gamma(&ctx, &DsTuple::canonical(ctx.rank()));
    let per_prime: Vec<serde_json::Value> = report
        .primes
        .iter()
        .zip(&report.sizes)
        .map(|(p, size)| {
            json!({
                "p": p,
                "size": size,
                "ratio": *size as f64 / report.group_order as f64,
            })
        })
        .collect();
    let record = json!({
        "group": name,
        "order": report.group_order,
        "rho": ctx.rho,
        "per_prime": per_prime,
        "joint_size": report.joint_size,
        "joint_ratio": report.joint_ratio(),
        "witness": report.witness.map(|x| ctx.group.perm(x).images().to_vec()),
    });
    println!("{record}");
    Ok(ExitCode::SUCCESS)
}

fn run_orbits(input: GroupInput) -> Result<ExitCode> {
    let (name, ctx) = build_context(&input)?;
    let orbits = ds_orbits(&ctx, Caps::default().tuple_bound)
        .map_err(|e| anyhow::anyhow!(e.to_string()))?;
    let record = json!({
        "group": name,
        "order": ctx.group.order(),
        "rho": ctx.rho,
        "tuple_space": ctx.tuple_space_size as u64,
        "orbit_sizes": orbits.sorted_sizes(),
        "transitive": orbits.is_transitive(),
        "kernel_order": orbits.kernel.order(),
    });
    println!("{record}");
    Ok(ExitCode::SUCCESS)
}

fn run_gallery(args: GalleryArgs) -> Result<ExitCode> {
    let Some(name) = args.name else {
        for entry in gallery::build_gallery() {
            println!("{:<24} {}", entry.name, entry.description);
        }
        return Ok(ExitCode::SUCCESS);
    };
    let entry = gallery::entry_by_name(&name)
        .with_context(|| format!("no gallery entry named {name:?}"))?;
    if args.emit_spec {
        println!("{}", entry.spec.to_json());
        return Ok(ExitCode::SUCCESS);
    }
    let verdicts = gallery::verify_entry(&entry, &Caps::default())?;
    let mut failed = false;
    for v in &verdicts {
        println!("{}", serde_json::to_string(v)?);
        failed |= v.is_counterexample();
    }
    Ok(if failed {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn run_validate(file: PathBuf) -> Result<ExitCode> {
    let text = std::fs::read_to_string(&file)
        .with_context(|| format!("reading {}", file.display()))?;
    let spec = GroupSpec::parse(&text)?;
    let built = spec.build(&Caps::default())?;
    println!(
        "{}",
        json!({
            "valid": true,
            "order": built.order().to_string(),
            "degree": built.gens.degree(),
            "hash": spec.content_hash(),
            "dense": built.dense.is_some(),
        })
    );
    Ok(ExitCode::SUCCESS)
}
