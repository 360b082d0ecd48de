use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use rayon::prelude::*;

use sscg::config::{read_config_file, ConfigLayer, RunConfig};
use sscg::decimate::{
    count_base_level, count_recursion, size_base_level, size_closed_form, size_recursion,
    Component, RangeMode,
};
use sscg::error::{Error, Result};
use sscg::formats;
use sscg::generate::{build_with_cap, Method, Model};
use sscg::oracle::{solve, BoundaryConstraint, Problem, SolveResult};
use sscg::stats::graph_stats;
use sscg::verify::{verify_rows, RowStatus, VerificationReport};

#[derive(Parser)]
#[command(
    name = "sscg",
    version,
    about = "Build two self-similar graph families and study their matchings, independent sets and dominating sets"
)]
struct Cli {
    /// JSON config file with run settings.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(flatten)]
    overrides: Overrides,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Overrides {
    /// Abort an exact solve after this many seconds.
    #[arg(long, global = true, value_name = "SECONDS")]
    budget_seconds: Option<f64>,

    /// Keep at most this many explicit optimal structures per solve.
    #[arg(long, global = true, value_name = "N")]
    witness_cap: Option<usize>,

    /// Refuse exact solves on graphs with more vertices than this.
    #[arg(long, global = true, value_name = "N")]
    max_vertices: Option<usize>,

    /// Highest level the generator will build.
    #[arg(long, global = true, value_name = "N")]
    max_level: Option<u32>,

    /// Upper bound in bits for any exact count.
    #[arg(long, global = true, value_name = "BITS")]
    bit_budget: Option<u64>,

    /// Worker threads for ranged subcommands.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
}

impl Overrides {
    fn layer(&self) -> ConfigLayer {
        ConfigLayer {
            bit_budget: self.bit_budget,
            witness_cap: self.witness_cap,
            budget_seconds: self.budget_seconds,
            max_vertices: self.max_vertices,
            max_level: self.max_level,
            jobs: self.jobs,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build one graph and print or save it.
    Generate(GenerateArgs),
    /// Solve one problem exactly and report optimum, count and witnesses.
    Solve(SolveArgs),
    /// Evaluate the recurrences over a level range and print CSV.
    Predict(PredictArgs),
    /// Cross-check the exact solver against the recurrence predictions.
    Verify(VerifyArgs),
    /// Print optimum sizes and counts per level for one problem.
    Table(TableArgs),
    /// Print summary statistics for one graph as JSON.
    Stats(StatsArgs),
    /// Write a range of graphs to a directory.
    Export(ExportArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Family to build: fractal or nonfractal.
    #[arg(long)]
    model: String,

    /// Construction level.
    #[arg(long)]
    n: u32,

    /// Construction method: edge-replacement or merge.
    #[arg(long, default_value = "edge-replacement")]
    method: String,

    /// Output format: edge-list, dot or json.
    #[arg(long, default_value = "edge-list")]
    format: String,

    /// Output file; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Family to build: fractal or nonfractal.
    #[arg(long, required_unless_present = "input", conflicts_with = "input")]
    model: Option<String>,

    /// Construction level.
    #[arg(long, required_unless_present = "input", conflicts_with = "input")]
    n: Option<u32>,

    /// Read the graph from an edge-list file instead of generating it.
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,

    /// Problem: matching, independent-set or dominating-set.
    #[arg(long)]
    problem: String,

    /// Boundary constraint: free, k0, k1, k2, k1-first or k1-second.
    #[arg(long, default_value = "free")]
    constraint: String,

    /// Construction method: edge-replacement or merge.
    #[arg(long, default_value = "edge-replacement")]
    method: String,

    /// Output file; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PredictArgs {
    /// Family: fractal or nonfractal.
    #[arg(long)]
    model: String,

    /// Problem: matching, independent-set or dominating-set.
    #[arg(long)]
    problem: String,

    /// Single level to evaluate.
    #[arg(long, conflicts_with = "n_range")]
    n: Option<u32>,

    /// Inclusive level range, written A..B.
    #[arg(long, value_name = "A..B")]
    n_range: Option<String>,

    /// Where values come from: recursion or closed-form.
    #[arg(long, default_value = "recursion")]
    source: String,

    /// Output file; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Verify levels 1 through this one.
    #[arg(long, default_value_t = 3)]
    max_level: u32,

    /// Restrict to one family.
    #[arg(long)]
    model: Option<String>,

    /// Restrict to one problem.
    #[arg(long)]
    problem: Option<String>,
}

#[derive(Args)]
struct TableArgs {
    /// Problem: matching, independent-set or dominating-set.
    #[arg(long)]
    problem: String,

    /// Last level to include.
    #[arg(long, default_value_t = 6)]
    max_level: u32,
}

#[derive(Args)]
struct StatsArgs {
    /// Family: fractal or nonfractal.
    #[arg(long)]
    model: String,

    /// Construction level.
    #[arg(long)]
    n: u32,

    /// Construction method: edge-replacement or merge.
    #[arg(long, default_value = "edge-replacement")]
    method: String,

    /// Output file; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    /// Family: fractal or nonfractal.
    #[arg(long)]
    model: String,

    /// Inclusive level range, written A..B.
    #[arg(long, value_name = "A..B")]
    n_range: String,

    /// Directory that receives one file per level.
    #[arg(long, value_name = "PATH")]
    dir: PathBuf,

    /// Output format: edge-list or dot.
    #[arg(long, default_value = "edge-list")]
    format: String,

    /// Construction method: edge-replacement or merge.
    #[arg(long, default_value = "edge-replacement")]
    method: String,
}

fn main() {
    reset_sigpipe();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

// Rust ignores SIGPIPE, so `sscg table | head` would panic on the closed
// pipe instead of exiting quietly like other command-line tools.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_) | Error::Parse { .. } | Error::Range { .. } => 2,
        Error::Capability(_) | Error::NoClosedForm(_) => 3,
        Error::Io(_) => 1,
    }
}

fn run(cli: Cli) -> Result<i32> {
    let file_layer = match &cli.config {
        Some(path) => Some(read_config_file(path)?),
        None => None,
    };
    let cfg = RunConfig::resolve(
        |key| std::env::var(key).ok(),
        file_layer.as_ref(),
        &cli.overrides.layer(),
    )?;
    if let Some(jobs) = cfg.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .ok();
    }
    match cli.command {
        Command::Generate(args) => cmd_generate(args, &cfg),
        Command::Solve(args) => cmd_solve(args, &cfg),
        Command::Predict(args) => cmd_predict(args, &cfg),
        Command::Verify(args) => cmd_verify(args, &cfg),
        Command::Table(args) => cmd_table(args, &cfg),
        Command::Stats(args) => cmd_stats(args, &cfg),
        Command::Export(args) => cmd_export(args, &cfg),
    }
}

fn parse_model(s: &str) -> Result<Model> {
    Model::from_name(s)
        .ok_or_else(|| Error::usage(format!("unknown model {s:?}; use fractal or nonfractal")))
}

fn parse_problem(s: &str) -> Result<Problem> {
    Problem::from_name(s).ok_or_else(|| {
        Error::usage(format!(
            "unknown problem {s:?}; use matching, independent-set or dominating-set"
        ))
    })
}

fn parse_method(s: &str) -> Result<Method> {
    Method::from_name(s).ok_or_else(|| {
        Error::usage(format!(
            "unknown method {s:?}; use edge-replacement or merge"
        ))
    })
}

fn parse_constraint(s: &str) -> Result<BoundaryConstraint> {
    BoundaryConstraint::parse(s).ok_or_else(|| {
        Error::usage(format!(
            "unknown constraint {s:?}; use free, k0, k1, k2, k1-first or k1-second"
        ))
    })
}

/// Parses "A..B" (inclusive) or a single level "N".
fn parse_range(s: &str) -> Result<(u32, u32)> {
    let bad = || Error::usage(format!("level range {s:?} is not N or A..B"));
    if let Some((a, b)) = s.split_once("..") {
        let lo: u32 = a.trim().parse().map_err(|_| bad())?;
        let hi: u32 = b
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok((lo, hi))
    } else {
        let n: u32 = s.trim().parse().map_err(|_| bad())?;
        Ok((n, n))
    }
}

fn write_output(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => {
            let mut f = fs::File::create(path)?;
            f.write_all(content.as_bytes())?;
            Ok(())
        }
        None => {
            print!("{content}");
            std::io::stdout().flush()?;
            Ok(())
        }
    }
}

fn exact_log2(count: &BigUint) -> Option<u64> {
    if count.count_ones() == 1 {
        count.trailing_zeros()
    } else {
        None
    }
}

fn cmd_generate(args: GenerateArgs, cfg: &RunConfig) -> Result<i32> {
    let model = parse_model(&args.model)?;
    let method = parse_method(&args.method)?;
    let g = build_with_cap(model, method, args.n, cfg.max_level)?;
    let mut buf = Vec::new();
    match args.format.as_str() {
        "edge-list" => formats::write_edge_list(&g, model.name(), args.n, &mut buf)?,
        "dot" => formats::write_dot(&g, &format!("{}_{}", model.name(), args.n), &mut buf)?,
        "json" => {
            let value = formats::graph_json(&g, model.name(), args.n);
            buf = serde_json::to_string_pretty(&value)
                .map_err(|e| Error::usage(format!("serializing graph: {e}")))?
                .into_bytes();
            buf.push(b'\n');
        }
        other => {
            return Err(Error::usage(format!(
                "unknown format {other:?}; use edge-list, dot or json"
            )))
        }
    }
    let text = String::from_utf8(buf).expect("writers emit utf-8");
    write_output(args.out.as_deref(), &text)?;
    Ok(0)
}

fn solve_json(
    model: Option<&str>,
    n: Option<u32>,
    problem: Problem,
    constraint: BoundaryConstraint,
    result: &SolveResult,
) -> serde_json::Value {
    serde_json::json!({
        "model": model,
        "n": n,
        "problem": problem.name(),
        "constraint": constraint.label(),
        "optimum": result.optimum,
        "count": result.count.to_string(),
        "count_log2": exact_log2(&result.count),
        "witnesses": result.witnesses,
        "truncated": result.truncated,
        "elapsed_ms": result.elapsed_ms,
    })
}

fn cmd_solve(args: SolveArgs, cfg: &RunConfig) -> Result<i32> {
    let problem = parse_problem(&args.problem)?;
    let constraint = parse_constraint(&args.constraint)?;
    let budget = cfg.oracle_budget();
    let (g, model_name, level) = match &args.input {
        Some(path) => {
            let file = fs::File::open(path)?;
            let (g, model_name, level) = formats::read_edge_list(std::io::BufReader::new(file))?;
            (g, Some(model_name), Some(level))
        }
        None => {
            let model = parse_model(args.model.as_deref().expect("clap enforces"))?;
            let method = parse_method(&args.method)?;
            let n = args.n.expect("clap enforces");
            let g = build_with_cap(model, method, n, cfg.max_level)?;
            (g, Some(model.name().to_string()), Some(n))
        }
    };
    let result = solve(&g, problem, constraint, &budget)?;
    let value = solve_json(model_name.as_deref(), level, problem, constraint, &result);
    let text = serde_json::to_string_pretty(&value)
        .map_err(|e| Error::usage(format!("serializing result: {e}")))?;
    write_output(args.out.as_deref(), &format!("{text}\n"))?;
    Ok(0)
}

fn predict_row_recursion(
    model: Model,
    problem: Problem,
    n: u32,
    bit_budget: u64,
) -> Result<String> {
    let size_base = size_base_level(model, problem);
    let count_base = count_base_level(problem);
    let mut cells: Vec<String> = vec![n.to_string()];
    if n >= size_base {
        let steps = size_recursion(model, problem, n)?;
        let step = steps.last().expect("recursion reaches requested level");
        for k in 0..3 {
            cells.push(step.by_k[k].map(|v| v.to_string()).unwrap_or_default());
        }
        cells.push(step.headline.to_string());
    } else {
        cells.extend(std::iter::repeat_n(String::new(), 4));
    }
    if n >= count_base {
        let states = count_recursion(model, problem, n, bit_budget)?;
        let count = states
            .last()
            .expect("recursion reaches requested level")
            .headline()
            .clone();
        cells.push(count.to_string());
        cells.push(
            exact_log2(&count)
                .map(|e| e.to_string())
                .unwrap_or_default(),
        );
    } else {
        cells.extend(std::iter::repeat_n(String::new(), 2));
    }
    Ok(cells.join(","))
}

fn predict_row_closed_form(
    model: Model,
    problem: Problem,
    n: u32,
    bit_budget: u64,
) -> Result<String> {
    let mut cells: Vec<String> = vec![n.to_string()];
    for component in [
        Component::K0,
        Component::K1,
        Component::K2,
        Component::Headline,
    ] {
        match size_closed_form(model, problem, component, n, RangeMode::Verified) {
            Ok(v) => cells.push(v.to_string()),
            Err(Error::Range { .. }) | Err(Error::NoClosedForm(_)) => cells.push(String::new()),
            Err(e) => return Err(e),
        }
    }
    match sscg::decimate::count_closed_form(model, problem, n, bit_budget, RangeMode::Verified) {
        Ok(count) => {
            cells.push(count.to_string());
            cells.push(
                exact_log2(&count)
                    .map(|e| e.to_string())
                    .unwrap_or_default(),
            );
        }
        Err(Error::Range { .. }) | Err(Error::NoClosedForm(_)) => {
            cells.push(String::new());
            cells.push(String::new());
        }
        Err(e) => return Err(e),
    }
    Ok(cells.join(","))
}

fn cmd_predict(args: PredictArgs, cfg: &RunConfig) -> Result<i32> {
    let model = parse_model(&args.model)?;
    let problem = parse_problem(&args.problem)?;
    let (lo, hi) = match (&args.n, &args.n_range) {
        (Some(n), None) => (*n, *n),
        (None, Some(r)) => parse_range(r)?,
        (None, None) => (1, cfg.max_level),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    let bit_budget = cfg.bit_budget;
    let rows: Vec<Result<String>> = (lo..=hi)
        .into_par_iter()
        .map(|n| match args.source.as_str() {
            "recursion" => predict_row_recursion(model, problem, n, bit_budget),
            "closed-form" => predict_row_closed_form(model, problem, n, bit_budget),
            other => Err(Error::usage(format!(
                "unknown source {other:?}; use recursion or closed-form"
            ))),
        })
        .collect();
    let mut text = String::from("n,s0,s1,s2,headline,count_decimal,count_log2\n");
    for row in rows {
        text.push_str(&row?);
        text.push('\n');
    }
    write_output(args.out.as_deref(), &text)?;
    Ok(0)
}

fn cmd_verify(args: VerifyArgs, cfg: &RunConfig) -> Result<i32> {
    let models: Vec<Model> = match &args.model {
        Some(s) => vec![parse_model(s)?],
        None => vec![Model::Fractal, Model::NonFractal],
    };
    let problems: Vec<Problem> = match &args.problem {
        Some(s) => vec![parse_problem(s)?],
        None => vec![
            Problem::Matching,
            Problem::IndependentSet,
            Problem::DominatingSet,
        ],
    };
    let budget = cfg.oracle_budget();
    let mut report = VerificationReport::default();
    for &model in &models {
        for &problem in &problems {
            for n in 1..=args.max_level {
                report
                    .rows
                    .extend(verify_rows(model, problem, n, &budget, cfg.bit_budget)?);
            }
        }
    }
    for row in &report.rows {
        let tag = match row.status {
            RowStatus::Match => "ok",
            RowStatus::KnownMismatch => "known",
            RowStatus::Mismatch => "MISMATCH",
            RowStatus::Skipped => "skip",
        };
        if row.expected == row.actual {
            println!(
                "[{tag:>8}] {} {} n={} {}: {}",
                row.model.name(),
                row.problem.name(),
                row.level,
                row.subject,
                row.actual
            );
        } else {
            println!(
                "[{tag:>8}] {} {} n={} {}: recurrence {}, solver {}",
                row.model.name(),
                row.problem.name(),
                row.level,
                row.subject,
                row.expected,
                row.actual
            );
        }
    }
    println!(
        "checked {} rows: {} matched, {} known divergences, {} mismatches, {} skipped",
        report.rows.len(),
        report.count(RowStatus::Match),
        report.count(RowStatus::KnownMismatch),
        report.count(RowStatus::Mismatch),
        report.count(RowStatus::Skipped),
    );
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_table(args: TableArgs, cfg: &RunConfig) -> Result<i32> {
    let problem = parse_problem(&args.problem)?;
    for model in [Model::Fractal, Model::NonFractal] {
        let size_base = size_base_level(model, problem);
        let count_base = count_base_level(problem);
        if args.max_level < size_base && args.max_level < count_base {
            continue;
        }
        println!("{} / {}", model.name(), problem.name());
        println!(
            "{:>5} {:>24} {:>24} {:>24} {:>24}  count",
            "level", "k0", "k1", "k2", "optimum"
        );
        let steps = if args.max_level >= size_base {
            size_recursion(model, problem, args.max_level)?
        } else {
            Vec::new()
        };
        let counts = if args.max_level >= count_base {
            count_recursion(model, problem, args.max_level, cfg.bit_budget)?
        } else {
            Vec::new()
        };
        let mut count_name = "";
        for n in size_base.min(count_base)..=args.max_level {
            let step = steps.iter().find(|s| s.level == n);
            let state = counts.iter().find(|s| s.level == n);
            let size_cell = |v: Option<u128>| match v {
                Some(v) => v.to_string(),
                None => "-".into(),
            };
            let (k0, k1, k2, headline) = match step {
                Some(s) => (
                    size_cell(s.by_k[0]),
                    size_cell(s.by_k[1]),
                    size_cell(s.by_k[2]),
                    s.headline.to_string(),
                ),
                None => ("".into(), "".into(), "".into(), "".into()),
            };
            let count = match state {
                Some(s) => {
                    count_name = s.components[0].0;
                    s.headline().to_string()
                }
                None => "".into(),
            };
            println!("{n:>5} {k0:>24} {k1:>24} {k2:>24} {headline:>24}  {count}");
        }
        if !count_name.is_empty() {
            println!("(count column tracks the {count_name} class)");
        }
        println!();
    }
    Ok(0)
}

fn cmd_stats(args: StatsArgs, cfg: &RunConfig) -> Result<i32> {
    let model = parse_model(&args.model)?;
    let method = parse_method(&args.method)?;
    let g = build_with_cap(model, method, args.n, cfg.max_level)?;
    let stats = graph_stats(&g);
    let text = serde_json::to_string_pretty(&stats)
        .map_err(|e| Error::usage(format!("serializing stats: {e}")))?;
    write_output(args.out.as_deref(), &format!("{text}\n"))?;
    Ok(0)
}

fn cmd_export(args: ExportArgs, cfg: &RunConfig) -> Result<i32> {
    let model = parse_model(&args.model)?;
    let method = parse_method(&args.method)?;
    let (lo, hi) = parse_range(&args.n_range)?;
    let ext = match args.format.as_str() {
        "edge-list" => "edges",
        "dot" => "dot",
        other => {
            return Err(Error::usage(format!(
                "unknown format {other:?}; use edge-list or dot"
            )))
        }
    };
    fs::create_dir_all(&args.dir)?;
    let max_level = cfg.max_level;
    let written: Vec<Result<PathBuf>> = (lo..=hi)
        .into_par_iter()
        .map(|n| {
            let g = build_with_cap(model, method, n, max_level)?;
            let path = args.dir.join(format!("{}-n{}.{}", model.name(), n, ext));
            let mut buf = Vec::new();
            match args.format.as_str() {
                "edge-list" => formats::write_edge_list(&g, model.name(), n, &mut buf)?,
                _ => formats::write_dot(&g, &format!("{}_{}", model.name(), n), &mut buf)?,
            }
            fs::write(&path, buf)?;
            Ok(path)
        })
        .collect();
    for path in written {
        println!("{}", path?.display());
    }
    Ok(0)
}
