//! Command-line front end: graph input, token-graph construction, statistics,
//! the verification suite, chain analysis and export.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::analysis::{degree_histogram, DEFAULT_ORACLE_CAP};
use crate::chain::chain_report;
use crate::combinatorics::binomial;
use crate::corpus;
use crate::error::{Error, Result};
use crate::graph::{generate_from_spec, SimpleGraph};
use crate::kpg::{edge_count_closed_form, BuildOptions, TokenGraph, DEFAULT_MAX_CONFIGS};
use crate::marked::{build_marked, marked_vertex_count, MarkedTokenGraph};
use crate::verify::{self, Finding, Limits, Status};

pub const CAPS_ENV: &str = "TOKENGRAPH_CAPS";
pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_TOL: f64 = 1e-6;
pub const DOT_RENDER_CAP: usize = 2000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_CAP: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Build the token graph and write it as JSON.
    Build,
    /// Vertex and edge counts, degree profile and closed-form cross-checks.
    Stats,
    /// Run every applicable check and emit one finding per check.
    Verify {
        /// Verify the shipped corpus instead of a single graph.
        #[arg(long)]
        corpus: bool,
    },
    /// Exclusion-chain structure, stationary law per boundary class and lumpability.
    Chain,
    /// Render the token graph (DOT by default).
    Export,
}

#[derive(Debug, Parser)]
#[command(name = "tokengraph", version, about = "Token graphs of small simple graphs")]
pub struct Cli {
    /// Edge-list file: a header line `n m` followed by `m` lines `u v`.
    #[arg(long, global = true, value_name = "FILE")]
    pub graph: Option<std::path::PathBuf>,
    /// Generator spec such as `cycle:4`, `star:5`, `circulant:8,1,3` or `petersen`.
    #[arg(long = "gen", global = true, value_name = "SPEC")]
    pub generator: Option<String>,
    /// Number of particles.
    #[arg(short = 'k', global = true)]
    pub k: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub max_configs: Option<u128>,
    #[arg(long, global = true)]
    pub oracle_cap: Option<usize>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Build token graphs of disconnected graphs instead of rejecting them.
    #[arg(long, global = true)]
    pub allow_disconnected: bool,
    /// Use distinguishable particles.
    #[arg(long, global = true)]
    pub marked: bool,
    /// Shuffle the corpus order with this seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_configs: u128,
    pub oracle_cap: usize,
}

/// Reads `max_configs=N,oracle_cap=M` (either key may be omitted).
pub fn parse_caps(text: &str, mut caps: Caps) -> Result<Caps> {
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("{CAPS_ENV}: expected key=value, got `{part}`")))?;
        let bad = || Error::InvalidParameter(format!("{CAPS_ENV}: `{value}` is not a positive integer"));
        match key.trim() {
            "max_configs" => caps.max_configs = value.trim().parse().map_err(|_| bad())?,
            "oracle_cap" => caps.oracle_cap = value.trim().parse().map_err(|_| bad())?,
            other => return Err(Error::InvalidParameter(format!("{CAPS_ENV}: unknown key `{other}`"))),
        }
    }
    Ok(caps)
}

/// Parses the edge-list format: `n m`, then `m` lines `u v`.
pub fn parse_graph(text: &str) -> Result<SimpleGraph> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("missing header".into()))?;
    let [n, m] = parse_pair(header).ok_or_else(|| Error::Parse(format!("malformed header `{header}`")))?;
    let mut g = SimpleGraph::empty(n)?;
    let mut seen = 0;
    for line in lines {
        let [u, v] = parse_pair(line).ok_or_else(|| Error::Parse(format!("malformed edge line `{line}`")))?;
        g.add_edge(u, v)?;
        seen += 1;
    }
    if seen != m {
        return Err(Error::Parse(format!("header announces {m} edges, found {seen}")));
    }
    Ok(g)
}

fn parse_pair(line: &str) -> Option<[usize; 2]> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Some([a, b]),
        _ => None,
    }
}

/// Undirected DOT with one node per config and edges in lexicographic order.
pub fn export_dot(labels: &[String], edges: &[[usize; 2]]) -> Result<String> {
    if labels.len() > DOT_RENDER_CAP {
        return Err(Error::CapExceeded { what: "rendered vertices", needed: labels.len() as u128, cap: DOT_RENDER_CAP as u128 });
    }
    let mut s = String::from("graph kpg {\n");
    for (i, l) in labels.iter().enumerate() {
        s.push_str(&format!("  {i} [label=\"{l}\"];\n"));
    }
    for [a, b] in edges {
        s.push_str(&format!("  {a} -- {b};\n"));
    }
    s.push_str("}\n");
    Ok(s)
}

pub fn token_graph_dot(tg: &TokenGraph) -> Result<String> {
    let labels: Vec<String> = tg.configs().iter().map(|c| c.label()).collect();
    export_dot(&labels, &tg.edges())
}

pub fn marked_dot(m: &MarkedTokenGraph) -> Result<String> {
    let labels: Vec<String> = m.configs().iter().map(|c| c.label()).collect();
    export_dot(&labels, &m.edges())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_PRECONDITION,
    }
}

/// Parses `args` (program name first) and runs the command, returning the exit code.
pub fn run<I, T>(args: I, caps_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PRECONDITION } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli, caps_env, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn limits(cli: &Cli, caps_env: Option<&str>) -> Result<Limits> {
    let mut caps = Caps { max_configs: DEFAULT_MAX_CONFIGS, oracle_cap: DEFAULT_ORACLE_CAP };
    if let Some(text) = caps_env {
        caps = parse_caps(text, caps)?;
    }
    caps.max_configs = cli.max_configs.unwrap_or(caps.max_configs);
    caps.oracle_cap = cli.oracle_cap.unwrap_or(caps.oracle_cap);
    if caps.max_configs == 0 || caps.oracle_cap == 0 {
        return Err(Error::InvalidParameter("caps must be positive".into()));
    }
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    if !(tol > 0.0 && tol <= MAX_TOL) {
        return Err(Error::InvalidParameter(format!("tol = {tol} outside (0, {MAX_TOL}]")));
    }
    Ok(Limits { max_configs: caps.max_configs, oracle_cap: caps.oracle_cap, tol, ..Limits::default() })
}

fn input(cli: &Cli) -> Result<(String, SimpleGraph)> {
    match (&cli.graph, &cli.generator) {
        (Some(_), Some(_)) => Err(Error::InvalidParameter("give either --graph or --gen, not both".into())),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Ok((path.display().to_string(), parse_graph(&text)?))
        }
        (None, Some(spec)) => Ok((spec.clone(), generate_from_spec(spec)?)),
        (None, None) => Err(Error::InvalidParameter("an input graph is required (--graph or --gen)".into())),
    }
}

fn require_k(cli: &Cli) -> Result<usize> {
    cli.k.ok_or_else(|| Error::InvalidParameter("-k is required for this command".into()))
}

fn format_for(cli: &Cli, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = cli.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Error::InvalidParameter(format!("format {f:?} is not available for this command").to_lowercase()))
    }
}

fn write_json(out: &mut dyn Write, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string(value).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{text}").map_err(io)
}

fn write_edges_csv(out: &mut dyn Write, labels: &[String], edges: &[[usize; 2]]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let map = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["source", "target", "source_config", "target_config"]).map_err(map)?;
    for [a, b] in edges {
        w.write_record([a.to_string(), b.to_string(), labels[*a].clone(), labels[*b].clone()]).map_err(map)?;
    }
    w.flush().map_err(io)
}

fn execute(cli: &Cli, caps_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let limits = limits(cli, caps_env)?;
    if let Command::Verify { corpus: true } = cli.command {
        let format = format_for(cli, Format::Json, &[Format::Json, Format::Csv])?;
        let entries = match cli.seed {
            Some(seed) => corpus::shuffled(seed),
            None => corpus::shipped(),
        };
        let findings = verify::verify_corpus(&entries, &limits);
        return emit_findings(&findings, format, out, err);
    }
    let (name, g) = input(cli)?;
    let opts = BuildOptions { max_configs: limits.max_configs, allow_disconnected: cli.allow_disconnected };
    match cli.command {
        Command::Verify { .. } => {
            let format = format_for(cli, Format::Json, &[Format::Json, Format::Csv])?;
            let findings = verify::number(verify::verify_graph(&name, &g, cli.k, &limits));
            emit_findings(&findings, format, out, err)
        }
        Command::Build => {
            let k = require_k(cli)?;
            let format = format_for(cli, Format::Json, &[Format::Json, Format::Csv])?;
            if cli.marked {
                let m = marked_for(&g, k, &limits, cli.allow_disconnected)?;
                match format {
                    Format::Json => write_json(out, &m.to_json())?,
                    _ => write_edges_csv(out, &m.configs().iter().map(|c| c.label()).collect::<Vec<_>>(), &m.edges())?,
                }
            } else {
                let tg = TokenGraph::build(&g, k, opts)?;
                match format {
                    Format::Json => write_json(out, &tg.to_json())?,
                    _ => write_edges_csv(out, &tg.configs().iter().map(|c| c.label()).collect::<Vec<_>>(), &tg.edges())?,
                }
            }
            Ok(EXIT_OK)
        }
        Command::Export => {
            let k = require_k(cli)?;
            let format = format_for(cli, Format::Dot, &[Format::Dot, Format::Json, Format::Csv])?;
            let (labels, edges, json) = if cli.marked {
                let m = marked_for(&g, k, &limits, cli.allow_disconnected)?;
                let labels = m.configs().iter().map(|c| c.label()).collect::<Vec<_>>();
                (labels, m.edges(), serde_json::to_value(m.to_json()))
            } else {
                let tg = TokenGraph::build(&g, k, opts)?;
                let labels = tg.configs().iter().map(|c| c.label()).collect::<Vec<_>>();
                (labels, tg.edges(), serde_json::to_value(tg.to_json()))
            };
            match format {
                Format::Dot => out.write_all(export_dot(&labels, &edges)?.as_bytes()).map_err(io)?,
                Format::Json => write_json(out, &json.map_err(|e| Error::Io(e.to_string()))?)?,
                Format::Csv => write_edges_csv(out, &labels, &edges)?,
            }
            Ok(EXIT_OK)
        }
        Command::Stats => {
            let k = require_k(cli)?;
            let format = format_for(cli, Format::Json, &[Format::Json, Format::Csv])?;
            let stats = if cli.marked {
                let m = marked_for(&g, k, &limits, cli.allow_disconnected)?;
                json!({
                    "n": g.n(),
                    "k": k,
                    "marked": true,
                    "vertices": m.len(),
                    "edges": m.edge_count(),
                    "connected": m.is_connected(),
                    "vertex_count_formula": marked_vertex_count(g.n(), k)?,
                })
            } else {
                let tg = TokenGraph::build(&g, k, opts)?;
                stats_json(&tg)?
            };
            match format {
                Format::Json => write_json(out, &stats)?,
                _ => write_stats_csv(out, &stats)?,
            }
            Ok(EXIT_OK)
        }
        Command::Chain => {
            let k = require_k(cli)?;
            let format = format_for(cli, Format::Json, &[Format::Json, Format::Csv])?;
            let tg = TokenGraph::build(&g, k, opts)?;
            if tg.len() > limits.oracle_cap {
                return Err(Error::CapExceeded { what: "chain states", needed: tg.len() as u128, cap: limits.oracle_cap as u128 });
            }
            let report = chain_report(&tg)?;
            match format {
                Format::Json => write_json(out, &report)?,
                _ => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    let map = |e: csv::Error| Error::Io(e.to_string());
                    w.write_record(["certificate", "size", "pi", "pi_spread"]).map_err(map)?;
                    for c in &report.classes {
                        w.write_record([c.certificate.clone(), c.size.to_string(), c.pi.to_string(), c.pi_spread.to_string()])
                            .map_err(map)?;
                    }
                    w.flush().map_err(io)?;
                    drop(w);
                    writeln!(err, "irreducible={} period={} lumpable={}", report.irreducible, report.period, report.lumpable)
                        .map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
    }
}

fn marked_for(g: &SimpleGraph, k: usize, limits: &Limits, allow_disconnected: bool) -> Result<MarkedTokenGraph> {
    if !allow_disconnected && !g.is_connected() {
        return Err(Error::Disconnected);
    }
    build_marked(g, k, limits.max_configs)
}

fn stats_json(tg: &TokenGraph) -> Result<serde_json::Value> {
    let g = tg.underlying();
    let (n, k) = (g.n(), tg.k());
    let hist = degree_histogram(tg);
    let per_edge = binomial(n as u64 - 2, k as u64 - 1) * g.edge_count() as u128;
    let mut checks = serde_json::Map::new();
    checks.insert("edges_per_underlying_edge".into(), json!({"value": per_edge, "agree": per_edge == tg.edge_count() as u128}));
    if let Some(d) = g.regular_degree() {
        let f = edge_count_closed_form(n, k, d)?;
        let direct = tg.edge_count() as u128;
        checks.insert(
            "closed_form_edge_count".into(),
            json!({"short_form": f.short_form, "sum_form": f.sum_form, "agree": f.short_form == direct && f.sum_form == direct}),
        );
        if let Ok(ratio) = tg.avg_degree_ratio() {
            checks.insert("avg_degree_ratio".into(), json!({"value": ratio.to_string(), "expected": format!("{d}/{}", n - 1)}));
        }
    }
    Ok(json!({
        "n": n,
        "k": k,
        "vertices": tg.len(),
        "edges": tg.edge_count(),
        "min_degree": tg.min_degree(),
        "degree_set": hist.keys().collect::<Vec<_>>(),
        "level_counts": hist,
        "checks": checks,
    }))
}

fn write_stats_csv(out: &mut dyn Write, stats: &serde_json::Value) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let map = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["key", "value"]).map_err(map)?;
    if let Some(obj) = stats.as_object() {
        for (key, value) in obj {
            let text = match value {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            w.write_record([key.as_str(), text.as_str()]).map_err(map)?;
        }
    }
    w.flush().map_err(io)
}

fn emit_findings(findings: &[Finding], format: Format, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            let map = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(["seq", "check", "status", "inputs", "expected", "actual"]).map_err(map)?;
            for f in findings {
                let status = serde_json::to_value(f.status).map_err(|e| Error::Io(e.to_string()))?;
                w.write_record([
                    f.seq.to_string(),
                    f.check.clone(),
                    status.as_str().unwrap_or_default().to_string(),
                    f.inputs.to_string(),
                    f.expected.to_string(),
                    f.actual.to_string(),
                ])
                .map_err(map)?;
            }
            w.flush().map_err(io)?;
        }
        _ => {
            for f in findings {
                write_json(out, f)?;
            }
        }
    }
    let s = verify::summarize(findings);
    writeln!(err, "pass={} fail={} reported={}", s.pass, s.fail, s.reported).map_err(io)?;
    Ok(if findings.iter().any(|f| f.status == Status::Fail) { EXIT_VERIFY_FAILED } else { EXIT_OK })
}
