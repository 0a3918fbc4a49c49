//! Exhaustive branch-and-bound over canonical colorings.
//!
//! The tree is split at depth PREFIX_DEPTH into independent subtrees, one
//! per canonical prefix, processed in fixed-size chunks: subtrees inside a
//! chunk run in parallel against the same incumbent, results merge serially
//! in enumeration order, and the incumbent advances only between chunks.
//! Every quantity a subtree reports is a pure function of (prefix,
//! incumbent, node cap), so the merged result cannot depend on thread
//! scheduling.  Budget stops and checkpoint cursors land on chunk
//! boundaries for the same reason: a resumed run re-creates the exact chunk
//! sequence of an uninterrupted one, node counts included.
//!
//! The initial incumbent is the exact rainbow count of the 0.4-construction
//! — sound because its canonical form is itself enumerated — which prunes
//! most of the tree before anything interesting is found.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{canonicalize, suffix_potential, SearchResult, OPTIMA_CAP};
use crate::constructions::build_c0;
use crate::schur::classify;
use crate::{Error, Result};

/// Depth of the subtree split.  365 canonical prefixes at depth 7: enough
/// parallelism for any thread count, coarse enough that per-subtree
/// overhead is noise.
const PREFIX_DEPTH: usize = 7;

/// Subtrees per chunk; fixed so chunk boundaries never depend on the
/// thread count.
const CHUNK: usize = 32;

/// Tuning knobs for [`exhaustive_max`].
#[derive(Clone, Debug)]
pub struct ExhaustiveOptions {
    /// Collect every optimal canonical coloring (up to the cap) instead of
    /// a single witness.
    pub collect_all_optima: bool,
    /// Run inside a dedicated pool of this many threads; `None` uses the
    /// ambient pool.  The result is identical either way.
    pub threads: Option<usize>,
    /// Where to persist progress, if anywhere.
    pub checkpoint_path: Option<PathBuf>,
    /// Checkpoint cadence in visited nodes (checked at chunk boundaries).
    pub checkpoint_every_nodes: u64,
    /// Soft cap on nodes visited by this call (resumed work not counted).
    /// The run stops at the next chunk boundary once exceeded; a chunk
    /// aborted mid-flight is discarded whole and re-done on resume.
    pub node_budget: Option<u64>,
    /// Resume from a checkpoint previously written by this searcher.  Use
    /// the same `collect_all_optima` mode as the original run.
    pub resume_from: Option<PathBuf>,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        Self {
            collect_all_optima: true,
            threads: None,
            checkpoint_path: None,
            checkpoint_every_nodes: 10_000_000,
            node_budget: None,
            resume_from: None,
        }
    }
}

/// On-disk resume state.  `next_prefix` is the first unprocessed subtree
/// prefix, or empty once the search has completed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub n: usize,
    pub best_count: u64,
    pub optima: Vec<String>,
    pub next_prefix: String,
    pub nodes_visited: u64,
    /// Carried so a resumed run's final totals equal an uninterrupted run's.
    pub pruned: u64,
}

/// Reads and structurally validates a checkpoint file.
pub fn load_checkpoint(path: &Path) -> Result<Checkpoint> {
    let data = std::fs::read_to_string(path)?;
    let ck: Checkpoint =
        serde_json::from_str(&data).map_err(|e| Error::CorruptCheckpoint(e.to_string()))?;
    for s in &ck.optima {
        if s.len() != ck.n || !s.bytes().all(|b| (b'1'..=b'3').contains(&b)) {
            return Err(Error::CorruptCheckpoint(format!(
                "optimum {s:?} is not a 3-coloring digit string of length {}",
                ck.n
            )));
        }
    }
    if !ck.next_prefix.is_empty()
        && !ck.next_prefix.bytes().all(|b| (b'1'..=b'3').contains(&b))
    {
        return Err(Error::CorruptCheckpoint(format!(
            "cursor {:?} is not a color digit string",
            ck.next_prefix
        )));
    }
    Ok(ck)
}

fn write_checkpoint(path: &Path, ck: &Checkpoint) -> Result<()> {
    let json = serde_json::to_string_pretty(ck).expect("plain data serializes");
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, json)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// All restricted-growth strings of this length over {1,2,3}, in
/// lexicographic order.
fn canonical_prefixes(len: usize) -> Vec<Vec<u8>> {
    fn rec(buf: &mut Vec<u8>, len: usize, max_used: u8, out: &mut Vec<Vec<u8>>) {
        if buf.len() == len {
            out.push(buf.clone());
            return;
        }
        for c in 1..=(max_used + 1).min(3) {
            buf.push(c);
            rec(buf, len, max_used.max(c), out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(len), len, 0, &mut out);
    out
}

fn digit_string(colors: &[u8]) -> String {
    colors.iter().map(|&c| char::from(b'0' + c)).collect()
}

/// Rainbow triples fully inside the prefix.
fn prefix_score(prefix: &[u8]) -> u64 {
    let mut score = 0;
    for z in 2..=prefix.len() {
        let c = prefix[z - 1];
        for x in 1..z {
            let (a, b) = (prefix[x - 1], prefix[z - 1 - x]);
            score += u64::from(a != b && a != c && b != c);
        }
    }
    score
}

struct SubtreeOutcome {
    best: u64,
    optima: Vec<String>,
    nodes: u64,
    pruned: u64,
    truncated: bool,
    aborted: bool,
}

struct Subtree<'a> {
    n: usize,
    collect_all: bool,
    node_cap: u64,
    suffix: &'a [u64],
    colors: Vec<u8>,
    best: u64,
    optima: Vec<String>,
    nodes: u64,
    pruned: u64,
    truncated: bool,
    aborted: bool,
}

impl Subtree<'_> {
    fn witness_limit(&self) -> usize {
        if self.collect_all {
            OPTIMA_CAP
        } else {
            1
        }
    }

    fn push_witness(&mut self) {
        if self.optima.len() < self.witness_limit() {
            self.optima.push(digit_string(&self.colors));
        } else {
            self.truncated = true;
        }
    }

    fn dfs(&mut self, depth: usize, score: u64, max_used: u8) {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            self.aborted = true;
            return;
        }
        if depth == self.n {
            if score > self.best {
                self.best = score;
                self.optima.clear();
                self.truncated = false;
                self.push_witness();
            } else if score == self.best {
                self.push_witness();
            }
            return;
        }
        let z = depth + 1;
        for c in 1..=(max_used + 1).min(3) {
            let mut gain = 0;
            for x in 1..z {
                let (a, b) = (self.colors[x - 1], self.colors[z - 1 - x]);
                gain += u64::from(a != b && a != c && b != c);
            }
            let next = score + gain;
            let bound = next + self.suffix[z];
            // Ties must survive when every optimum is wanted; otherwise a
            // branch that can at best equal the incumbent is dead weight
            // (the incumbent always has a witness by the time it is set —
            // the construction floor's witness is its canonical form).
            let cut = if self.collect_all { bound < self.best } else { bound <= self.best };
            if cut {
                self.pruned += 1;
                continue;
            }
            self.colors[depth] = c;
            self.dfs(depth + 1, next, max_used.max(c));
            if self.aborted {
                return;
            }
        }
    }
}

fn search_subtree(
    n: usize,
    prefix: &[u8],
    incumbent: u64,
    collect_all: bool,
    suffix: &[u64],
    node_cap: u64,
) -> SubtreeOutcome {
    let mut colors = vec![1u8; n];
    colors[..prefix.len()].copy_from_slice(prefix);
    let mut subtree = Subtree {
        n,
        collect_all,
        node_cap,
        suffix,
        colors,
        best: incumbent,
        optima: Vec::new(),
        nodes: 0,
        pruned: 0,
        truncated: false,
        aborted: false,
    };
    let max_used = *prefix.iter().max().expect("prefixes are nonempty");
    subtree.dfs(prefix.len(), prefix_score(prefix), max_used);
    SubtreeOutcome {
        best: subtree.best,
        optima: subtree.optima,
        nodes: subtree.nodes,
        pruned: subtree.pruned,
        truncated: subtree.truncated,
        aborted: subtree.aborted,
    }
}

/// Exact maximum rainbow count over all 3-colorings of [n], with the
/// canonical optima that attain it.
///
/// See the module docs for the determinism contract; see
/// [`ExhaustiveOptions`] for budgets and checkpointing.  A budget stop
/// returns `Ok` with `complete = false` and a resume cursor, never an
/// error.
pub fn exhaustive_max(n: usize, options: &ExhaustiveOptions) -> Result<SearchResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("search needs n >= 1".into()));
    }
    match options.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
            .install(|| run(n, options)),
        None => run(n, options),
    }
}

fn run(n: usize, options: &ExhaustiveOptions) -> Result<SearchResult> {
    let prefixes = canonical_prefixes(n.min(PREFIX_DEPTH));
    let suffix = suffix_potential(n);
    let witness_limit = if options.collect_all_optima { OPTIMA_CAP } else { 1 };

    let floor_coloring = build_c0(n);
    let floor = classify(&floor_coloring).rainbow;

    let mut best = floor;
    let mut optima: Vec<String> = Vec::new();
    let mut nodes_total = 0u64;
    let mut pruned_total = 0u64;
    let mut truncated = false;
    let mut start_idx = 0usize;

    if let Some(path) = &options.resume_from {
        let ck = load_checkpoint(path)?;
        if ck.n != n {
            return Err(Error::CorruptCheckpoint(format!(
                "checkpoint is for n = {}, requested n = {n}",
                ck.n
            )));
        }
        if ck.best_count < floor {
            return Err(Error::CorruptCheckpoint(format!(
                "best_count {} is below the construction floor {floor}",
                ck.best_count
            )));
        }
        if ck.next_prefix.is_empty() {
            // The recorded search already finished.
            return Ok(SearchResult {
                n,
                best_count: ck.best_count,
                optima: ck.optima,
                nodes_visited: ck.nodes_visited,
                pruned: ck.pruned,
                complete: true,
                cursor: None,
                seed: None,
                iterations: None,
                truncated: false,
            });
        }
        let bytes: Vec<u8> = ck.next_prefix.bytes().map(|b| b - b'0').collect();
        start_idx = prefixes
            .iter()
            .position(|p| *p == bytes)
            .ok_or_else(|| {
                Error::CorruptCheckpoint(format!("cursor {:?} is not a canonical prefix", ck.next_prefix))
            })?;
        best = ck.best_count;
        optima = ck.optima;
        truncated = optima.len() >= witness_limit && options.collect_all_optima;
        nodes_total = ck.nodes_visited;
        pruned_total = ck.pruned;
    }

    let mut run_nodes = 0u64;
    let mut since_checkpoint = 0u64;
    let mut cursor: Option<String> = None;
    let mut idx = start_idx;

    while idx < prefixes.len() {
        let remaining = options.node_budget.map_or(u64::MAX, |b| b.saturating_sub(run_nodes));
        if remaining == 0 {
            cursor = Some(digit_string(&prefixes[idx]));
            break;
        }
        let chunk_end = (idx + CHUNK).min(prefixes.len());
        let incumbent = best;
        let outcomes: Vec<SubtreeOutcome> = prefixes[idx..chunk_end]
            .par_iter()
            .map(|p| {
                search_subtree(n, p, incumbent, options.collect_all_optima, &suffix, remaining)
            })
            .collect();
        if outcomes.iter().any(|o| o.aborted) {
            // Discard the whole chunk so the cursor stays chunk-aligned and
            // a resumed run replays the identical chunk sequence.
            cursor = Some(digit_string(&prefixes[idx]));
            break;
        }
        for out in outcomes {
            nodes_total += out.nodes;
            run_nodes += out.nodes;
            since_checkpoint += out.nodes;
            pruned_total += out.pruned;
            if out.best > best {
                best = out.best;
                optima = out.optima;
                truncated = out.truncated;
            } else if out.best == best {
                truncated |= out.truncated;
                for w in out.optima {
                    if optima.len() < witness_limit {
                        optima.push(w);
                    } else {
                        truncated = true;
                        break;
                    }
                }
            }
        }
        idx = chunk_end;
        if let Some(path) = &options.checkpoint_path {
            if since_checkpoint >= options.checkpoint_every_nodes && idx < prefixes.len() {
                let next_prefix = digit_string(&prefixes[idx]);
                write_checkpoint(
                    path,
                    &Checkpoint {
                        n,
                        best_count: best,
                        optima: optima.clone(),
                        next_prefix,
                        nodes_visited: nodes_total,
                        pruned: pruned_total,
                    },
                )?;
                since_checkpoint = 0;
            }
        }
    }

    // A run where no subtree strictly improved never materialized a witness
    // in single-witness mode; the floor's canonical form is one.
    if !options.collect_all_optima && optima.is_empty() {
        optima.push(canonicalize(&floor_coloring).to_digit_string());
    }

    if let Some(path) = &options.checkpoint_path {
        write_checkpoint(
            path,
            &Checkpoint {
                n,
                best_count: best,
                optima: optima.clone(),
                next_prefix: cursor.clone().unwrap_or_default(),
                nodes_visited: nodes_total,
                pruned: pruned_total,
            },
        )?;
    }

    Ok(SearchResult {
        n,
        best_count: best,
        optima,
        nodes_visited: nodes_total,
        pruned: pruned_total,
        complete: cursor.is_none(),
        cursor,
        seed: None,
        iterations: None,
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::Coloring;

    /// Brute-force maximum by classifying every canonical coloring.
    fn naive_max(n: usize) -> (u64, Vec<String>) {
        let mut best = 0;
        let mut optima = Vec::new();
        let mut stack = vec![(vec![1u8], 1u8)];
        while let Some((prefix, max_used)) = stack.pop() {
            if prefix.len() == n {
                let count = classify(&Coloring::new(prefix.clone()).unwrap()).rainbow;
                if count > best {
                    best = count;
                    optima.clear();
                }
                if count == best {
                    optima.push(digit_string(&prefix));
                }
                continue;
            }
            for c in 1..=(max_used + 1).min(3) {
                let mut next = prefix.clone();
                next.push(c);
                stack.push((next, max_used.max(c)));
            }
        }
        optima.sort();
        (best, optima)
    }

    #[test]
    fn known_maxima_through_n_8() {
        let expected = [0, 2, 4, 6, 8, 12, 14];
        for (i, &want) in expected.iter().enumerate() {
            let n = i + 2;
            let result = exhaustive_max(n, &ExhaustiveOptions::default()).unwrap();
            assert_eq!(result.best_count, want, "n = {n}");
            assert!(result.complete);
            assert!(!result.optima.is_empty());
        }
    }

    #[test]
    fn unique_optima_at_n_3_and_4() {
        let result = exhaustive_max(3, &ExhaustiveOptions::default()).unwrap();
        assert_eq!(result.optima, vec!["123".to_string()]);
        let result = exhaustive_max(4, &ExhaustiveOptions::default()).unwrap();
        assert_eq!(result.optima, vec!["1232".to_string()]);
    }

    #[test]
    fn pruned_search_equals_plain_enumeration() {
        for n in 1..=11 {
            let (best, optima) = naive_max(n);
            let result = exhaustive_max(n, &ExhaustiveOptions::default()).unwrap();
            assert_eq!(result.best_count, best, "n = {n}");
            assert_eq!(result.optima, optima, "n = {n}");
            assert!(!result.truncated);
        }
    }

    #[test]
    fn maximum_is_monotone_in_n() {
        let mut prev = 0;
        for n in 2..=14 {
            let result = exhaustive_max(n, &ExhaustiveOptions::default()).unwrap();
            assert!(
                result.best_count >= prev,
                "max dropped from {prev} to {} at n = {n}",
                result.best_count
            );
            assert!(result.best_count >= classify(&build_c0(n)).rainbow);
            prev = result.best_count;
        }
    }

    #[test]
    fn results_are_thread_count_invariant() {
        let mut reference: Option<String> = None;
        for threads in [1, 2, 8] {
            let options = ExhaustiveOptions { threads: Some(threads), ..Default::default() };
            let result = exhaustive_max(12, &options).unwrap();
            let encoded = serde_json::to_string(&result).unwrap();
            match &reference {
                None => reference = Some(encoded),
                Some(r) => assert_eq!(r, &encoded, "threads = {threads}"),
            }
        }
    }

    #[test]
    fn single_witness_mode_agrees_on_the_count() {
        for n in [6, 9, 12] {
            let all = exhaustive_max(n, &ExhaustiveOptions::default()).unwrap();
            let one = exhaustive_max(
                n,
                &ExhaustiveOptions { collect_all_optima: false, ..Default::default() },
            )
            .unwrap();
            assert_eq!(all.best_count, one.best_count);
            assert_eq!(one.optima.len(), 1);
            // The witness really attains the count.
            let witness = Coloring::from_digit_string(&one.optima[0]).unwrap();
            assert_eq!(classify(&witness).rainbow, one.best_count);
        }
    }

    #[test]
    fn zero_budget_stops_before_the_first_chunk() {
        let options = ExhaustiveOptions { node_budget: Some(0), ..Default::default() };
        let result = exhaustive_max(10, &options).unwrap();
        assert!(!result.complete);
        assert_eq!(result.cursor.as_deref(), Some("1111111"));
        assert_eq!(result.nodes_visited, 0);
        // Partial results still honor the construction floor.
        assert_eq!(result.best_count, classify(&build_c0(10)).rainbow);
    }

    #[test]
    fn budgeted_runs_are_reproducible_and_resumable() {
        let dir = tempfile::tempdir().unwrap();
        let ck_path = dir.path().join("state.json");
        // Parameters sized so the budget always covers at least one chunk
        // (guaranteeing progress per round) yet the whole tree needs
        // several rounds: at n = 14 the full search visits ~61k nodes and
        // no chunk costs anywhere near 20k.
        let n = 14;
        let budget = 20_000;

        let full = exhaustive_max(n, &ExhaustiveOptions::default()).unwrap();

        let budgeted = ExhaustiveOptions {
            node_budget: Some(budget),
            checkpoint_path: Some(ck_path.clone()),
            checkpoint_every_nodes: 1,
            ..Default::default()
        };
        let first = exhaustive_max(n, &budgeted).unwrap();
        let again = exhaustive_max(n, &budgeted).unwrap();
        assert_eq!(first, again, "same budget twice must reproduce exactly");
        assert!(!first.complete);
        assert!(first.cursor.is_some());

        let mut rounds = 0;
        let mut last = first;
        while !last.complete {
            let resume = ExhaustiveOptions {
                node_budget: Some(budget),
                checkpoint_path: Some(ck_path.clone()),
                checkpoint_every_nodes: 1,
                resume_from: Some(ck_path.clone()),
                ..Default::default()
            };
            last = exhaustive_max(n, &resume).unwrap();
            rounds += 1;
            assert!(rounds < 1000, "resume loop failed to make progress");
        }
        assert_eq!(last.n, full.n);
        assert_eq!(last.best_count, full.best_count);
        assert_eq!(last.optima, full.optima);
        assert_eq!(last.nodes_visited, full.nodes_visited);
        assert_eq!(last.pruned, full.pruned);
    }

    #[test]
    fn resuming_a_finished_checkpoint_is_idempotent() {
        let dir = tempfile::tempdir().unwrap();
        let ck_path = dir.path().join("done.json");
        let options = ExhaustiveOptions {
            checkpoint_path: Some(ck_path.clone()),
            ..Default::default()
        };
        let done = exhaustive_max(9, &options).unwrap();
        assert!(done.complete);
        let resumed = exhaustive_max(
            9,
            &ExhaustiveOptions { resume_from: Some(ck_path), ..Default::default() },
        )
        .unwrap();
        assert!(resumed.complete);
        assert_eq!(resumed.best_count, done.best_count);
        assert_eq!(resumed.optima, done.optima);
        assert_eq!(resumed.nodes_visited, done.nodes_visited);
        assert_eq!(resumed.pruned, done.pruned);
    }

    #[test]
    fn checkpoint_keys_are_stable() {
        let ck = Checkpoint {
            n: 5,
            best_count: 6,
            optima: vec!["12321".into()],
            next_prefix: "11213".into(),
            nodes_visited: 42,
            pruned: 17,
        };
        let json = serde_json::to_string(&ck).unwrap();
        // Exact key set, emitted in declaration order.
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let mut keys: Vec<&str> =
            value.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["best_count", "n", "next_prefix", "nodes_visited", "optima", "pruned"]);
        let order: Vec<usize> = ["\"n\"", "\"best_count\"", "\"optima\"", "\"next_prefix\"", "\"nodes_visited\"", "\"pruned\""]
            .iter()
            .map(|k| json.find(k).unwrap())
            .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]), "key order drifted: {json}");
    }

    #[test]
    fn corrupt_checkpoints_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");

        std::fs::write(&path, "{ not json").unwrap();
        let err = exhaustive_max(
            8,
            &ExhaustiveOptions { resume_from: Some(path.clone()), ..Default::default() },
        )
        .unwrap_err();
        assert!(matches!(err, Error::CorruptCheckpoint(_)), "{err}");

        // Wrong n.
        let ck = Checkpoint {
            n: 6,
            best_count: 8,
            optima: vec![],
            next_prefix: "111112".into(),
            nodes_visited: 10,
            pruned: 0,
        };
        std::fs::write(&path, serde_json::to_string(&ck).unwrap()).unwrap();
        let err = exhaustive_max(
            8,
            &ExhaustiveOptions { resume_from: Some(path.clone()), ..Default::default() },
        )
        .unwrap_err();
        assert!(matches!(err, Error::CorruptCheckpoint(_)), "{err}");

        // Cursor that is not a canonical prefix.
        let ck = Checkpoint {
            n: 8,
            best_count: 14,
            optima: vec![],
            next_prefix: "3111111".into(),
            nodes_visited: 10,
            pruned: 0,
        };
        std::fs::write(&path, serde_json::to_string(&ck).unwrap()).unwrap();
        let err = exhaustive_max(
            8,
            &ExhaustiveOptions { resume_from: Some(path), ..Default::default() },
        )
        .unwrap_err();
        assert!(matches!(err, Error::CorruptCheckpoint(_)), "{err}");
    }

    #[test]
    fn rejects_n_zero() {
        assert!(matches!(
            exhaustive_max(0, &ExhaustiveOptions::default()),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn tiny_n_edge_cases() {
        let one = exhaustive_max(1, &ExhaustiveOptions::default()).unwrap();
        assert_eq!(one.best_count, 0);
        assert_eq!(one.optima, vec!["1".to_string()]);
        let two = exhaustive_max(2, &ExhaustiveOptions::default()).unwrap();
        assert_eq!(two.best_count, 0);
        // Every canonical 2-coloring attains zero rainbow triples.
        assert_eq!(two.optima, vec!["11".to_string(), "12".to_string()]);
    }
}
