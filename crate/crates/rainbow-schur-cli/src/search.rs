//! `rschur search`: exhaustive and annealed maximization.

use std::path::PathBuf;

use clap::{Args, Subcommand};
use serde::Serialize;

use rainbow_schur::search::{
    anneal_max, exhaustive_max, AnnealSchedule, ExhaustiveOptions, SearchResult,
};

use crate::report::{fraction_display, push_kv, sha256_hex, CmdOutput};

#[derive(Subcommand)]
pub enum SearchCmd {
    /// Complete canonical enumeration with pruning; optionally checkpointed.
    Exhaustive(ExhaustiveArgs),
    /// Seeded simulated annealing with restarts.
    Anneal(AnnealArgs),
}

#[derive(Args)]
pub struct ExhaustiveArgs {
    #[arg(long, value_name = "N")]
    pub n: usize,
    /// Worker threads; the result is identical for every count.
    #[arg(long, value_name = "T")]
    pub threads: Option<usize>,
    /// Progress file: written at the cadence below, resumed from if present.
    #[arg(long, value_name = "FILE")]
    pub checkpoint: Option<PathBuf>,
    /// Checkpoint cadence in visited nodes.
    #[arg(long, value_name = "NODES", default_value_t = 10_000_000)]
    pub checkpoint_every: u64,
    /// Stop at the next chunk boundary once this many nodes were visited;
    /// the run then reports partial = true and a resume cursor.
    #[arg(long, value_name = "NODES")]
    pub node_budget: Option<u64>,
    /// Collect every optimal coloring instead of a single witness.
    #[arg(long)]
    pub all_optima: bool,
}

#[derive(Args)]
pub struct AnnealArgs {
    #[arg(long, value_name = "N")]
    pub n: usize,
    /// Generator seed; equal seeds reproduce the run exactly.
    #[arg(long, value_name = "SEED", default_value_t = 0)]
    pub seed: u64,
    /// Proposed moves per restart.
    #[arg(long, value_name = "I", default_value_t = 50_000)]
    pub iters: u64,
    #[arg(long, value_name = "R", default_value_t = 8)]
    pub restarts: u32,
    /// Starting temperature; calibrated per restart when absent.
    #[arg(long, value_name = "T0")]
    pub t0: Option<f64>,
    /// Final temperature as a fraction of T0.
    #[arg(long, value_name = "RATIO", default_value_t = 1e-4)]
    pub t_end_ratio: f64,
}

#[derive(Serialize)]
struct SearchPayload {
    /// True when a node budget stopped the run before completion.
    partial: bool,
    #[serde(flatten)]
    result: SearchResult,
}

fn render(result: &SearchResult, kind: &str) -> (String, serde_json::Value) {
    let total = (result.n * result.n.saturating_sub(1) / 2) as u64;
    let mut human = format!("{kind} search\n");
    push_kv(&mut human, "n", result.n);
    push_kv(&mut human, "best rainbow count", result.best_count);
    push_kv(&mut human, "fraction of total", fraction_display(result.best_count, total));
    push_kv(&mut human, "nodes visited", result.nodes_visited);
    push_kv(&mut human, "pruned branches", result.pruned);
    push_kv(&mut human, "status", if result.complete { "complete" } else { "partial" });
    if let Some(cursor) = &result.cursor {
        push_kv(&mut human, "resume cursor", cursor);
    }
    if let Some(seed) = result.seed {
        push_kv(&mut human, "seed", seed);
    }
    if let Some(iters) = result.iterations {
        push_kv(&mut human, "iterations", iters);
    }
    let shown = result.optima.len().min(10);
    push_kv(
        &mut human,
        "optima",
        format!(
            "{}{}",
            result.optima.len(),
            if result.truncated { " (list capped)" } else { "" }
        ),
    );
    for witness in &result.optima[..shown] {
        human.push_str(&format!("    {witness}\n"));
    }
    if result.optima.len() > shown {
        human.push_str(&format!("    … and {} more\n", result.optima.len() - shown));
    }

    let payload = SearchPayload { partial: !result.complete, result: result.clone() };
    (human, serde_json::to_value(payload).expect("search results serialize"))
}

pub fn run(cmd: &SearchCmd) -> anyhow::Result<CmdOutput> {
    match cmd {
        SearchCmd::Exhaustive(args) => {
            let resume_from = args
                .checkpoint
                .as_ref()
                .filter(|p| p.exists())
                .cloned();
            let resume_digest = match &resume_from {
                Some(path) => format!("sha256:{}", sha256_hex(&std::fs::read(path)?)),
                None => "none".to_string(),
            };
            let options = ExhaustiveOptions {
                collect_all_optima: args.all_optima,
                threads: args.threads,
                checkpoint_path: args.checkpoint.clone(),
                checkpoint_every_nodes: args.checkpoint_every,
                node_budget: args.node_budget,
                resume_from,
            };
            let result = exhaustive_max(args.n, &options)?;
            let (human, payload) = render(&result, "exhaustive");
            let input_desc = format!(
                "search-exhaustive n={} all-optima={} node-budget={} resume={}",
                args.n,
                args.all_optima,
                args.node_budget.map_or("none".to_string(), |b| b.to_string()),
                resume_digest,
            );
            Ok(CmdOutput::new(payload, human, input_desc))
        }
        SearchCmd::Anneal(args) => {
            let schedule = AnnealSchedule {
                iterations: args.iters,
                restarts: args.restarts,
                t0: args.t0,
                t_end_ratio: args.t_end_ratio,
            };
            let result = anneal_max(args.n, args.seed, &schedule)?;
            let (human, payload) = render(&result, "annealed");
            let input_desc = format!(
                "search-anneal n={} seed={} iters={} restarts={} t0={} t-end-ratio={}",
                args.n,
                args.seed,
                args.iters,
                args.restarts,
                args.t0.map_or("auto".to_string(), |t| t.to_string()),
                args.t_end_ratio,
            );
            Ok(CmdOutput::new(payload, human, input_desc))
        }
    }
}
