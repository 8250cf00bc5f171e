use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use curvlab::atlas;
use curvlab::bakry_emery::{self, CurvatureOptions, Dimension};
use curvlab::flatness::{
    search_flatness_with, verify_certificate, CertificateJson, FlatnessFlavor, SearchOptions, SearchStats, Violation,
};
use curvlab::graph::{parse_graph_text, to_edge_list, to_json, Graph, VertexId};
use curvlab::products::{product, product_component, ProductKind};
use curvlab::rational::{decimal_f64, parse_rational};
use curvlab::report::{self, EdgeNotion, PLACES};
use curvlab::verify::{self, Suite, VerifyOptions};

#[derive(Parser)]
#[command(name = "curvlab", version, about = "Discrete curvature and Ricci flatness on finite graphs")]
struct Cli {
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, env = "CURVLAB_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Edge or vertex curvature report.
    Curvature(CurvatureArgs),
    /// Decide Ricci flatness at vertices and emit certificates.
    Flatness(FlatnessArgs),
    /// Verify an assignment-matrix certificate.
    CheckCertificate(CheckArgs),
    /// Build a product graph.
    Product(ProductArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Named graphs.
    Atlas {
        #[command(subcommand)]
        command: AtlasCommand,
    },
    /// Compare K_inf of a product with the factor values at sample vertices.
    Probe(ProbeArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Notion {
    Ollivier,
    Lly,
    BakryEmery,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Edgelist,
    Json,
}

#[derive(Args)]
struct CurvatureArgs {
    /// Graph file (edge list or JSON), or `-` for stdin.
    input: PathBuf,
    #[arg(long, value_enum, default_value = "ollivier")]
    notion: Notion,
    /// Idleness for the Ollivier notion, e.g. `0`, `1/4`, `0.5`.
    #[arg(long, default_value = "0")]
    p: String,
    /// Dimension for Bakry-Émery curvature: a positive number or `inf`.
    #[arg(long, default_value = "inf")]
    dim: String,
    /// Comma-separated edges `u-v`; all edges by default.
    #[arg(long, value_delimiter = ',')]
    edges: Vec<String>,
    /// Comma-separated vertices; all vertices by default.
    #[arg(long, value_delimiter = ',')]
    vertices: Vec<VertexId>,
    /// Bisection tolerance for Bakry-Émery curvature.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// CSV instead of JSON.
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct FlatnessArgs {
    input: PathBuf,
    #[arg(long, default_value = "plain")]
    flavor: FlatnessFlavor,
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    vertex: Option<VertexId>,
    /// Every vertex.
    #[arg(long)]
    all: bool,
    /// Largest degree the search accepts.
    #[arg(long, default_value_t = 12)]
    cap: usize,
}

#[derive(Args)]
struct CheckArgs {
    input: PathBuf,
    /// Certificate JSON as written by `flatness`.
    certificate: PathBuf,
    /// Overrides the flavor recorded in the certificate.
    #[arg(long)]
    flavor: Option<FlatnessFlavor>,
}

#[derive(Args)]
struct ProductArgs {
    g: PathBuf,
    h: PathBuf,
    #[arg(long)]
    kind: ProductKind,
    /// Keep only the component of `x,y` when the product is disconnected.
    #[arg(long, value_parser = parse_pair)]
    component: Option<(VertexId, VertexId)>,
    #[arg(long, value_enum, default_value = "edgelist")]
    format: GraphFormat,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`.
    suite: Option<String>,
    /// List suites and exit.
    #[arg(long)]
    list: bool,
    /// Number of random regular graphs.
    #[arg(long, default_value_t = 200)]
    seeds: u64,
    #[arg(long, default_value_t = 14)]
    max_n: usize,
    #[arg(long, default_value_t = 3)]
    min_d: usize,
    #[arg(long, default_value_t = 5)]
    max_d: usize,
    /// Directory for reproducers of failed checks.
    #[arg(long, default_value = "curvlab-repro")]
    dump_dir: PathBuf,
    /// Print the full report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum AtlasCommand {
    /// List available graphs.
    List,
    /// Write a graph to stdout.
    Emit {
        name: String,
        params: Vec<u64>,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: GraphFormat,
    },
}

#[derive(Args)]
struct ProbeArgs {
    g: PathBuf,
    h: PathBuf,
    #[arg(long)]
    kind: ProductKind,
    /// Sample vertices `x,y`; defaults to (0,0).
    #[arg(long = "at", value_parser = parse_pair)]
    at: Vec<(VertexId, VertexId)>,
}

fn parse_pair(text: &str) -> Result<(VertexId, VertexId), String> {
    let (a, b) = text.split_once(',').ok_or("expected `x,y`")?;
    let parse = |s: &str| s.trim().parse::<VertexId>().map_err(|e| format!("`{s}`: {e}"));
    Ok((parse(a)?, parse(b)?))
}

/// Usage and input problems exit with 2, found violations with 1.
enum Failure {
    Usage(anyhow::Error),
    Violation,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).context("reading stdin")?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph_text(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn graph_text(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Edgelist => to_edge_list(g),
        GraphFormat::Json => report::to_json(&to_json(g)),
    }
}

fn rows_text<T: Serialize>(rows: &[T], csv: bool) -> Result<String> {
    Ok(if csv { report::to_csv(rows)? } else { report::to_json(&rows) })
}

fn parse_edge(text: &str) -> Result<(VertexId, VertexId)> {
    let (u, v) = text.split_once('-').ok_or_else(|| anyhow!("edge `{text}` is not of the form u-v"))?;
    Ok((u.trim().parse()?, v.trim().parse()?))
}

fn cmd_curvature(args: CurvatureArgs) -> Result<()> {
    use rayon::prelude::*;
    let g = read_graph(&args.input)?;
    if args.notion == Notion::BakryEmery {
        let dimension: Dimension = args.dim.parse().map_err(|e: String| anyhow!(e))?;
        if args.tolerance.is_nan() || args.tolerance <= 0.0 {
            bail!("tolerance must be positive");
        }
        let vertices: Vec<VertexId> = if args.vertices.is_empty() { g.vertices().collect() } else { args.vertices };
        for &x in &vertices {
            g.require_vertex(x)?;
        }
        let options = CurvatureOptions { tolerance: args.tolerance };
        let rows = vertices
            .par_iter()
            .map(|&x| report::vertex_row(&g, x, dimension, options))
            .collect::<Result<Vec<_>, _>>()?;
        return emit(&rows_text(&rows, args.csv)?);
    }
    let notion = match args.notion {
        Notion::Ollivier => {
            let p = parse_rational(&args.p).ok_or_else(|| anyhow!("invalid idleness `{}`", args.p))?;
            EdgeNotion::Ollivier(p)
        }
        _ => EdgeNotion::LinLuYau,
    };
    let edges: Vec<(VertexId, VertexId)> = if args.edges.is_empty() {
        g.edges().collect()
    } else {
        args.edges.iter().map(|e| parse_edge(e)).collect::<Result<_>>()?
    };
    let rows = edges
        .par_iter()
        .map(|&(u, v)| report::edge_row(&g, u, v, notion))
        .collect::<Result<Vec<_>, _>>()?;
    emit(&rows_text(&rows, args.csv)?)
}

#[derive(Serialize)]
struct FlatnessRow {
    vertex: VertexId,
    flavor: FlatnessFlavor,
    flat: bool,
    stats: SearchStats,
    certificate: Option<CertificateJson>,
}

fn cmd_flatness(args: FlatnessArgs) -> Result<()> {
    use rayon::prelude::*;
    let g = read_graph(&args.input)?;
    let vertices: Vec<VertexId> = match args.vertex {
        Some(x) => vec![x],
        None => g.vertices().collect(),
    };
    let options = SearchOptions { cap: args.cap };
    let rows = vertices
        .par_iter()
        .map(|&x| -> Result<FlatnessRow> {
            let verdict = search_flatness_with(&g, x, args.flavor, options)?;
            let certificate = match verdict.certificate() {
                Some(a) => {
                    let mut json = CertificateJson::from_matrix(&g, a)?;
                    json.flavor = Some(args.flavor.to_string());
                    Some(json)
                }
                None => None,
            };
            Ok(FlatnessRow { vertex: x, flavor: args.flavor, flat: verdict.is_flat(), stats: verdict.stats, certificate })
        })
        .collect::<Result<Vec<_>>>()?;
    emit(&report::to_json(&rows))
}

#[derive(Serialize)]
struct CheckReport {
    center: VertexId,
    flavor: FlatnessFlavor,
    valid: bool,
    violations: Vec<Violation>,
}

fn cmd_check(args: CheckArgs) -> Result<bool> {
    let g = read_graph(&args.input)?;
    let cert: CertificateJson = serde_json::from_str(&read_text(&args.certificate)?)
        .with_context(|| format!("parsing certificate {}", args.certificate.display()))?;
    let flavor = match (args.flavor, &cert.flavor) {
        (Some(f), _) => f,
        (None, Some(text)) => text.parse().map_err(|e: String| anyhow!(e))?,
        (None, None) => FlatnessFlavor::Plain,
    };
    let a = cert.to_matrix(&g)?;
    let violations = verify_certificate(&g, &a, flavor);
    let valid = violations.is_empty();
    emit(&report::to_json(&CheckReport { center: cert.center, flavor, valid, violations }))?;
    Ok(valid)
}

fn cmd_product(args: ProductArgs) -> Result<()> {
    let g = read_graph(&args.g)?;
    let h = read_graph(&args.h)?;
    let p = match args.component {
        Some(root) => product_component(&g, &h, args.kind, root)?,
        None => product(&g, &h, args.kind)?,
    };
    emit(&graph_text(&p.graph, args.format))
}

fn dump_reproducers(dir: &Path, report: &verify::SuiteReport) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut scripts = Vec::new();
    for (i, failure) in report.failures.iter().enumerate() {
        let graph_path = dir.join(format!("{}-{i}.txt", report.suite));
        fs::write(&graph_path, to_edge_list(&failure.reproducer.graph))?;
        let command = failure.reproducer.command.replace("{graph}", &graph_path.display().to_string());
        let script = dir.join(format!("{}-{i}.sh", report.suite));
        fs::write(&script, format!("# {}: {}\n{command}\n", failure.graph, failure.detail))?;
        scripts.push(script);
    }
    Ok(scripts)
}

fn cmd_verify(args: VerifyArgs) -> Result<bool> {
    if args.list {
        let mut text = String::new();
        for suite in Suite::ALL {
            text.push_str(&format!("{:<20}{}\n", suite.name(), suite.description()));
        }
        emit(&text)?;
        return Ok(true);
    }
    let name = args.suite.ok_or_else(|| anyhow!("missing suite name; see `curvlab verify --list`"))?;
    let suites: Vec<Suite> = if name == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![name.parse().map_err(|e: String| anyhow!(e))?]
    };
    if args.min_d > args.max_d || args.min_d == 0 {
        bail!("degree range {}..={} is empty", args.min_d, args.max_d);
    }
    let options = VerifyOptions {
        seeds: args.seeds,
        max_n: args.max_n,
        min_d: args.min_d,
        max_d: args.max_d,
        ..VerifyOptions::default()
    };
    let (graphs, corpus_notices) = verify::corpus(&options);
    let mut all_passed = true;
    let mut reports = Vec::new();
    for notice in &corpus_notices {
        eprintln!("notice: {notice}");
    }
    for suite in suites {
        let report = verify::run_suite(suite, &graphs, &options);
        let status = if report.passed() { "PASS" } else { "FAIL" };
        let mut text = format!("{status} {} checks={} failures={}\n", suite, report.checks, report.failures.len());
        for notice in &report.notices {
            text.push_str(&format!("  notice: {notice}\n"));
        }
        for failure in &report.failures {
            text.push_str(&format!("  violation [{}]: {}\n", failure.graph, failure.detail));
        }
        if !report.passed() {
            all_passed = false;
            for script in dump_reproducers(&args.dump_dir, &report)? {
                text.push_str(&format!("  reproducer: {}\n", script.display()));
            }
        }
        if !args.json {
            emit(&text)?;
        }
        reports.push(report);
    }
    if args.json {
        emit(&report::to_json(&reports))?;
    }
    Ok(all_passed)
}

fn cmd_atlas(command: AtlasCommand) -> Result<()> {
    match command {
        AtlasCommand::List => {
            let mut text = String::new();
            for (name, params, description) in atlas::CATALOG {
                let params: String = params.iter().map(|p| format!(" <{p}>")).collect();
                text.push_str(&format!("{:<36}{description}\n", format!("{name}{params}")));
            }
            emit(&text)
        }
        AtlasCommand::Emit { name, params, format } => emit(&graph_text(&atlas::by_name(&name, &params)?, format)),
    }
}

#[derive(Serialize)]
struct ProbeRow {
    x: VertexId,
    y: VertexId,
    product: String,
    g: String,
    h: String,
    minimum: String,
}

fn cmd_probe(args: ProbeArgs) -> Result<()> {
    let g = read_graph(&args.g)?;
    let h = read_graph(&args.h)?;
    let samples = if args.at.is_empty() { vec![(0, 0)] } else { args.at };
    let render = |v: f64| decimal_f64(v, PLACES as usize);
    let mut rows = Vec::new();
    for (x, y) in samples {
        let p = match product(&g, &h, args.kind) {
            Ok(p) => p,
            Err(curvlab::products::ProductError::Disconnected { .. }) => product_component(&g, &h, args.kind, (x, y))?,
            Err(e) => return Err(e.into()),
        };
        let v = p.vertex(x, y).ok_or_else(|| anyhow!("({x},{y}) is not a product vertex"))?;
        let k = |graph: &Graph, v: VertexId| -> Result<f64> {
            Ok(bakry_emery::curvature(graph, v, Dimension::Infinite)?.value)
        };
        let (kp, kg, kh) = (k(&p.graph, v)?, k(&g, x)?, k(&h, y)?);
        rows.push(ProbeRow { x, y, product: render(kp), g: render(kg), h: render(kh), minimum: render(kg.min(kh)) });
    }
    emit(&report::to_json(&rows))
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(anyhow!("--jobs must be at least 1").into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().map_err(anyhow::Error::from)?;
    }
    let ok = match cli.command {
        Command::Curvature(args) => cmd_curvature(args).map(|_| true)?,
        Command::Flatness(args) => cmd_flatness(args).map(|_| true)?,
        Command::CheckCertificate(args) => cmd_check(args)?,
        Command::Product(args) => cmd_product(args).map(|_| true)?,
        Command::Verify(args) => cmd_verify(args)?,
        Command::Atlas { command } => cmd_atlas(command).map(|_| true)?,
        Command::Probe(args) => cmd_probe(args).map(|_| true)?,
    };
    if ok {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
