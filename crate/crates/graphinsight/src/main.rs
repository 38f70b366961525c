use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use graphinsight::client::RemoteClient;
use graphinsight::config::Config;
use graphinsight::eval::run_evaluation;
use graphinsight::io::{
    answer_to_json, load_benchmark, read_jsonl, save_benchmark, write_json, write_jsonl, LayoutJson, RagBaseJson,
    ReportJson, ResultRecord,
};
use graphinsight_core::bias::PositionalBiasModel;
use graphinsight_core::generate::{generate_benchmark, GenConfig};
use graphinsight_core::method::{prepare, MethodSpec};
use graphinsight_core::model::LanguageModel;
use graphinsight_core::scoring::{aggregate, comparison_table, parse_answer, score, RunMetadata, ScoreReport};
use graphinsight_core::simulator::Simulator;
use graphinsight_core::task::TaskKind;

#[derive(Parser)]
#[command(name = "graphinsight", version, about = "Graph descriptions, retrieval and benchmark evaluation for LLMs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded benchmark (graphs.json + tasks.jsonl).
    Generate(GenerateArgs),
    /// Print one graph's description under a method.
    Describe(DescribeArgs),
    /// Run methods over a benchmark and write results JSONL.
    Eval(EvalArgs),
    /// Re-parse and re-score a results file against its benchmark.
    Score(ScoreArgs),
    /// Aggregate results files into a comparison table.
    Report(ReportArgs),
}

#[derive(Args)]
struct Hyper {
    /// JSON file with alpha, beta, gamma, lambda, max_iter, tol.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Head region, percent of edges.
    #[arg(long)]
    alpha: Option<f64>,
    /// Tail region, percent of edges.
    #[arg(long)]
    beta: Option<f64>,
    /// Share of middle blocks kept in the retrieval base, percent.
    #[arg(long)]
    gamma: Option<f64>,
}

impl Hyper {
    fn resolve(&self) -> Result<Config> {
        let mut c = match &self.config {
            Some(p) => Config::load(p).with_context(|| format!("reading {}", p.display()))?,
            None => Config::default(),
        };
        c.alpha = self.alpha.unwrap_or(c.alpha);
        c.beta = self.beta.unwrap_or(c.beta);
        c.gamma = self.gamma.unwrap_or(c.gamma);
        Ok(c)
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 40)]
    graphs: usize,
    /// Node count range, `MIN..MAX` inclusive.
    #[arg(long, default_value = "15..200")]
    nodes: String,
    #[arg(long, default_value = "1..2")]
    components: String,
    /// Edges per node before multi-edges and self-loops.
    #[arg(long, default_value_t = 2.0)]
    density: f64,
    #[arg(long, default_value_t = 0.02)]
    self_loop_prob: f64,
    #[arg(long, default_value_t = 0.02)]
    multi_edge_prob: f64,
    #[arg(long, default_value_t = 1)]
    tasks_per_kind: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Include the two composite kinds outside the 20-kind suite.
    #[arg(long)]
    all_kinds: bool,
}

#[derive(Args)]
struct DescribeArgs {
    #[arg(long)]
    bench: PathBuf,
    #[arg(long, default_value_t = 0)]
    graph_id: usize,
    #[arg(long, default_value = "graphinsight")]
    method: String,
    #[command(flatten)]
    hyper: Hyper,
    /// Write the region layout as JSON.
    #[arg(long)]
    layout_out: Option<PathBuf>,
    /// Write the retrieval base as JSON.
    #[arg(long)]
    rag_out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    bench: PathBuf,
    /// Comma-separated method names.
    #[arg(long, value_delimiter = ',', default_value = "raw,graphinsight")]
    method: Vec<String>,
    #[command(flatten)]
    hyper: Hyper,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Chat-completions URL; mutually exclusive with --simulator-psi.
    #[arg(long, conflicts_with = "simulator_psi")]
    endpoint: Option<String>,
    #[arg(long, default_value = "gpt-4o-mini")]
    model: String,
    #[arg(long, default_value = "OPENAI_API_KEY")]
    api_key_env: String,
    #[arg(long, default_value_t = 120)]
    timeout_secs: u64,
    /// Simulated model recall as `head,middle,tail`; region widths follow
    /// alpha and beta.
    #[arg(long, value_delimiter = ',')]
    simulator_psi: Option<Vec<f64>>,
    #[arg(long, default_value_t = 4)]
    parallelism: usize,
    #[arg(long)]
    out: PathBuf,
    /// Per-method reports as a JSON array.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct ScoreArgs {
    #[arg(long)]
    bench: PathBuf,
    #[arg(long)]
    results: PathBuf,
    /// Rescored results JSONL.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// Results JSONL files.
    #[arg(required = true)]
    results: Vec<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once("..").with_context(|| format!("expected MIN..MAX, got '{s}'"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn specs(names: &[String], config: &Config) -> Result<Vec<MethodSpec>> {
    names.iter().map(|n| MethodSpec::named(n.trim(), config.hyperparameters()).map_err(anyhow::Error::from)).collect()
}

fn generate(args: GenerateArgs) -> Result<()> {
    let (min_nodes, max_nodes) = parse_range(&args.nodes)?;
    let (min_components, max_components) = parse_range(&args.components)?;
    let cfg = GenConfig {
        min_nodes,
        max_nodes,
        min_components,
        max_components,
        edge_density: args.density,
        self_loop_prob: args.self_loop_prob,
        multi_edge_prob: args.multi_edge_prob,
        seed: args.seed,
        ..GenConfig::default()
    };
    let kinds = if args.all_kinds { TaskKind::ALL } else { TaskKind::STANDARD };
    let bench = generate_benchmark(&cfg, args.graphs, kinds, args.tasks_per_kind)?;
    for s in &bench.skipped {
        log::warn!("graph {}: skipped {}: {}", s.graph_id, s.kind, s.reason);
    }
    save_benchmark(&args.out, &bench)?;
    println!(
        "{} graphs, {} tasks ({} macro, {} micro) written to {}",
        bench.graphs.len(),
        bench.tasks.len(),
        bench.macro_count(),
        bench.micro_count(),
        args.out.display()
    );
    Ok(())
}

fn describe(args: DescribeArgs) -> Result<()> {
    let bench = load_benchmark(&args.bench)?;
    let g = bench.graphs.get(args.graph_id).with_context(|| format!("no graph {}", args.graph_id))?;
    let config = args.hyper.resolve()?;
    let spec = MethodSpec::named(&args.method, config.hyperparameters())?;
    let prepared = prepare(&spec, g)?;
    println!("{}", prepared.description);
    if let Some(path) = &args.layout_out {
        let layout = prepared.layout.as_ref().context("method has no region layout")?;
        write_json(path, &LayoutJson::from(layout))?;
    }
    if let Some(path) = &args.rag_out {
        let rag = prepared.rag.as_ref().context("method has no retrieval base")?;
        write_json(path, &RagBaseJson::from(rag))?;
    }
    Ok(())
}

fn eval(args: EvalArgs) -> Result<()> {
    let bench = load_benchmark(&args.bench)?;
    let config = args.hyper.resolve()?;
    let methods = specs(&args.method, &config)?;
    let model: Box<dyn LanguageModel> = match (&args.endpoint, &args.simulator_psi) {
        (Some(url), _) => {
            Box::new(RemoteClient::new(url, &args.model, &args.api_key_env, Duration::from_secs(args.timeout_secs)))
        }
        (None, Some(psi)) => {
            if psi.len() != 3 {
                bail!("--simulator-psi takes three values, got {}", psi.len());
            }
            let bias = PositionalBiasModel::new(psi[0], psi[1], psi[2], config.alpha / 100.0, config.beta / 100.0)?;
            Box::new(Simulator::new(bias, args.seed))
        }
        (None, None) => bail!("pass --endpoint or --simulator-psi"),
    };
    let runs = run_evaluation(&bench, &methods, model.as_ref(), args.parallelism, args.seed)?;
    write_jsonl(&args.out, runs.iter().flat_map(|r| r.records.iter()))?;
    let reports: Vec<ScoreReport> = runs.into_iter().map(|r| r.report).collect();
    if let Some(path) = &args.report {
        write_json(path, &reports.iter().map(ReportJson::from).collect::<Vec<_>>())?;
    }
    print!("{}", comparison_table(&reports));
    Ok(())
}

fn rescore(args: ScoreArgs) -> Result<()> {
    let bench = load_benchmark(&args.bench)?;
    let tasks: BTreeMap<&str, _> = bench.tasks.iter().map(|t| (t.id.as_str(), t)).collect();
    let mut records = Vec::new();
    for (line, mut r) in read_jsonl::<ResultRecord>(&args.results)? {
        let task = tasks
            .get(r.task_id.as_str())
            .with_context(|| format!("{}:{line}: unknown task {}", args.results.display(), r.task_id))?;
        let parsed = if r.error.is_none() { parse_answer(&r.raw_text, task.answer_type()) } else { None };
        r.score = score(parsed.as_ref(), &task.truth)?;
        r.parsed = parsed.as_ref().map(answer_to_json);
        records.push(r);
    }
    let reports = reports_by_method(&records)?;
    if let Some(out) = &args.out {
        write_jsonl(out, &records)?;
    }
    print!("{}", comparison_table(&reports));
    Ok(())
}

fn reports_by_method(records: &[ResultRecord]) -> Result<Vec<ScoreReport>> {
    let mut order: Vec<(String, String, u64)> = Vec::new();
    let mut groups: BTreeMap<(String, String, u64), Vec<_>> = BTreeMap::new();
    for r in records {
        let key = (r.method.clone(), r.model.clone(), r.seed);
        if !groups.contains_key(&key) {
            order.push(key.clone());
        }
        groups.entry(key).or_default().push(r.task_score().map_err(anyhow::Error::msg)?);
    }
    order
        .into_iter()
        .map(|key| {
            let scores = groups.remove(&key).unwrap_or_default();
            let (method, model, seed) = key;
            Ok(aggregate(scores, RunMetadata { method, model, seed })?)
        })
        .collect()
}

fn report(args: ReportArgs) -> Result<()> {
    let mut records = Vec::new();
    for path in &args.results {
        records.extend(read_jsonl::<ResultRecord>(path)?.into_iter().map(|(_, r)| r));
    }
    let reports = reports_by_method(&records)?;
    if let Some(path) = &args.json {
        write_json(path, &reports.iter().map(ReportJson::from).collect::<Vec<_>>())?;
    }
    print!("{}", comparison_table(&reports));
    Ok(())
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match cli.command {
        Command::Generate(a) => generate(a),
        Command::Describe(a) => describe(a),
        Command::Eval(a) => eval(a),
        Command::Score(a) => rescore(a),
        Command::Report(a) => report(a),
    }
}
