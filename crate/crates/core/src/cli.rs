//! The `qdeck` command line.
//!
//! Reports are JSON by default; `--format table` flattens the same document
//! into `path: value` lines. Exit codes: 0 success / not refuted, 2 illegitimate
//! (or a failed Kelly probe), 1 error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bits::k_subsets;
use crate::deck::{self, extract_deck, parse_card_json, parse_document, DeckSource};
use crate::dense::{self, build_state, partial_trace, DenseState};
use crate::enumerator::{cut_relation_residuals, even_weight_sum, shadow_coefficients, WeightDistribution};
use crate::graph::{kelly_check, Graph, Hypergraph};
use crate::legitimacy::{judge_document, Assumptions};
use crate::rational::render;
use crate::reconstruct::{reconstruct_from_card, verify_reconstruction};
use crate::stabilizer::{classify_type, generators, marginal_mixture, weight_distribution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "qdeck", version, about = "Weight distributions, deck legitimacy and reconstruction for graph states")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full weight distribution and graph-state type of a (hyper)graph file.
    Weights { graph: PathBuf },
    /// Deck extraction and legitimacy checks.
    Deck {
        #[command(subcommand)]
        action: DeckCommand,
    },
    /// Rebuild the joint graph state from one (n-1)-qubit card.
    Reconstruct {
        card: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Kelly's condition on a directory of classical cards.
    Kelly {
        deckdir: PathBuf,
        #[arg(long)]
        probe: PathBuf,
    },
    /// Cross-check the stabilizer engine against the dense oracle.
    Oracle {
        #[command(subcommand)]
        action: OracleCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum DeckCommand {
    /// Write the complete m-deck of a graph file or a dense state (JSON card).
    Extract {
        source: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Judge a deck, weights or reduced-weights file.
    Check {
        deck: PathBuf,
        /// Assume the joint state is pure.
        #[arg(long)]
        pure: bool,
        /// Assume the joint state is a graph state.
        #[arg(long)]
        graph_state: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    Verify { graph: PathBuf },
}

struct Outcome {
    code: i32,
    report: Value,
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// Text graph format, or the JSON hypergraph object used in deck files.
pub fn read_hypergraph(path: &Path) -> Result<Hypergraph, String> {
    let text = read(path)?;
    let parsed = if text.trim_start().starts_with('{') {
        serde_json::from_str(&text).map_err(|e| e.to_string())
    } else {
        Hypergraph::parse(&text).map_err(|e| e.to_string())
    };
    parsed.map_err(|e| format!("{}: {e}", path.display()))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn weights_report(h: &Hypergraph) -> Result<Value, String> {
    let (a, engine): (WeightDistribution, &str) = match h.to_marked_graph() {
        Ok(mg) => (weight_distribution(&generators(&mg.graph)).map_err(|e| e.to_string())?, "stabilizer"),
        Err(_) => {
            let state = build_state(h).map_err(|e| e.to_string())?;
            (dense::weight_distribution_dense(&state).map_err(|e| e.to_string())?, "dense")
        }
    };
    let shadow = shadow_coefficients(&a).map_err(|e| e.to_string())?;
    let residuals = cut_relation_residuals(&a).map_err(|e| e.to_string())?;
    Ok(json!({
        "n": a.n(),
        "engine": engine,
        "exact": a.is_exact(),
        "weights": a.to_strings(),
        "even_weight_sum": render(&even_weight_sum(&a)),
        "type": classify_type(&a).to_string(),
        "shadow": shadow.iter().map(render).collect::<Vec<_>>(),
        "cut_residuals": residuals.iter().map(render).collect::<Vec<_>>(),
    }))
}

fn extract(source: &Path, m: usize, seed: u64) -> Result<Value, String> {
    let text = read(source)?;
    let deck = if text.trim_start().starts_with('{') && text.contains("\"form\"") {
        let card = parse_card_json(&text).map_err(|e| e.to_string())?;
        let state: DenseState = card.to_dense().map_err(|e| e.to_string())?;
        extract_deck(DeckSource::Dense(&state), m, seed)
    } else {
        let h = read_hypergraph(source)?;
        extract_deck(DeckSource::Hypergraph(&h), m, seed)
    };
    Ok(deck::deck_to_json(&deck.map_err(|e| e.to_string())?))
}

fn oracle_verify(h: &Hypergraph) -> Result<Outcome, String> {
    let mg = h.to_marked_graph().map_err(|e| e.to_string())?;
    let g = &mg.graph;
    let n = g.n();
    let engine = weight_distribution(&generators(g)).map_err(|e| e.to_string())?;
    let state = build_state(h).map_err(|e| e.to_string())?;
    let oracle = dense::weight_distribution_dense(&state).map_err(|e| e.to_string())?;
    let weights_agree = engine.values() == oracle.values();
    let mut worst = 0.0f64;
    let plain = build_state(&g.to_hypergraph()).map_err(|e| e.to_string())?;
    for k in 1..n {
        for s in k_subsets(n, k) {
            let terms: Vec<(f64, DenseState)> = marginal_mixture(g, s)
                .map_err(|e| e.to_string())?
                .into_iter()
                .map(|(w, t)| Ok((crate::rational::to_f64(&w), build_state(&t.to_hypergraph())?)))
                .collect::<Result<_, dense::DenseError>>()
                .map_err(|e| e.to_string())?;
            let mix = DenseState::mixture(&terms).map_err(|e| e.to_string())?.density_matrix();
            let direct = partial_trace(&plain, s).map_err(|e| e.to_string())?.density_matrix();
            let diff = (mix - direct).iter().map(|z| z.norm()).fold(0.0, f64::max);
            worst = worst.max(diff);
        }
    }
    let marginals_agree = worst <= dense::TOL;
    Ok(Outcome {
        code: if weights_agree && marginals_agree { 0 } else { 1 },
        report: json!({
            "n": n,
            "engine_weights": engine.to_strings(),
            "oracle_weights": oracle.to_strings(),
            "weights_agree": weights_agree,
            "marginal_max_deviation": worst,
            "marginals_agree": marginals_agree,
        }),
    })
}

fn kelly(deckdir: &Path, probe: &Path) -> Result<Outcome, String> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(deckdir)
        .map_err(|e| format!("{}: {e}", deckdir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    let cards = paths
        .iter()
        .map(|p| read_hypergraph(p)?.to_marked_graph().map(|m| m.graph).map_err(|e| format!("{}: {e}", p.display())))
        .collect::<Result<Vec<Graph>, _>>()?;
    let probe = read_hypergraph(probe)?.to_marked_graph().map_err(|e| e.to_string())?.graph;
    let n = cards.first().map(|c| c.n() + 1).ok_or("empty deck directory")?;
    let res = kelly_check(&cards, &probe, n).map_err(|e| e.to_string())?;
    Ok(Outcome {
        code: if res.pass { 0 } else { 2 },
        report: json!({"n": n, "cards": cards.len(), "probe_vertices": probe.n(), "value": render(&res.value), "pass": res.pass}),
    })
}

fn dispatch(cli: &Cli) -> Result<Outcome, String> {
    let ok = |report: Value| Outcome { code: 0, report };
    match &cli.command {
        Command::Weights { graph } => weights_report(&read_hypergraph(graph)?).map(ok),
        Command::Deck { action: DeckCommand::Extract { source, m, seed } } => extract(source, *m, *seed).map(ok),
        Command::Deck { action: DeckCommand::Check { deck, pure, graph_state } } => {
            let doc = parse_document(&read(deck)?).map_err(|e| format!("{}: {e}", deck.display()))?;
            let report = judge_document(&doc, Assumptions { pure: *pure, graph_state: *graph_state }).map_err(|e| e.to_string())?;
            Ok(Outcome { code: report.verdict.exit_code(), report: to_value(&report) })
        }
        Command::Reconstruct { card, n } => {
            let card = parse_card_json(&read(card)?).map_err(|e| e.to_string())?;
            let result = reconstruct_from_card(&card, *n).map_err(|e| e.to_string())?;
            let verified = verify_reconstruction(&result, &card).map_err(|e| e.to_string())?;
            Ok(Outcome { code: if verified { 0 } else { 1 }, report: to_value(&result.view(Some(verified))) })
        }
        Command::Kelly { deckdir, probe } => kelly(deckdir, probe),
        Command::Oracle { action: OracleCommand::Verify { graph } } => oracle_verify(&read_hypergraph(graph)?),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(items) if items.iter().any(Value::is_object) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::Array(items) => {
            let cells: Vec<String> = items.iter().map(scalar).collect();
            out.push(format!("{prefix}: [{}]", cells.join(", ")));
        }
        other => out.push(format!("{prefix}: {}", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

pub fn render_report(report: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("report serializes"),
        Format::Table => {
            let mut lines = Vec::new();
            flatten("", report, &mut lines);
            lines.join("\n")
        }
    }
}

/// Runs a parsed command; the report goes to `stdout` (or `--out`), errors to `stderr`.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    match dispatch(cli) {
        Ok(outcome) => {
            let text = render_report(&outcome.report, cli.format) + "\n";
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => outcome.code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    1
                }
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

/// Parses `args` (including the program name) and runs; clap usage errors exit 1.
pub fn run_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdout, stderr),
        Err(e) => {
            let is_info = matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            if is_info {
                let _ = write!(stdout, "{e}");
                0
            } else {
                let _ = write!(stderr, "{e}");
                1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_args(std::iter::once("qdeck").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn weights_on_triangle() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("k3.txt");
        std::fs::write(&p, "n=3\n0 1\n1 2\n0 2\n").unwrap();
        let (code, out, _) = run_cli(&["weights", p.to_str().unwrap()]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["weights"], json!(["1", "0", "3", "4"]));
        assert_eq!(v["type"], "type I");
        let (_, table, _) = run_cli(&["weights", p.to_str().unwrap(), "--format", "table"]);
        assert!(table.contains("weights: [1, 0, 3, 4]"));
    }

    #[test]
    fn errors_exit_one() {
        let (code, _, err) = run_cli(&["weights", "/nonexistent/graph.txt"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error:"));
        let (code, _, _) = run_cli(&["deck", "check"]);
        assert_eq!(code, 1);
    }
}
