// SPDX-License-Identifier: Apache-2.0

//! Monte Carlo layout scans: deal many seeded boards, decide each one, and
//! report the unsolvable fraction and solve-time percentiles.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::board::Layout;
use crate::error::BoardError;
use crate::shuffle::{derive_seed, shuffle};
use crate::solver::{random_difficulty, solve_group_directed, Heuristic};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub layout: String,
    pub n: u64,
    pub seed: u64,
    pub unsolvable_count: u64,
    /// `None` when `n == 0`.
    pub unsolvable_fraction: Option<f64>,
    pub p50_ms: Option<f64>,
    pub p99_ms: Option<f64>,
    pub max_ms: Option<f64>,
    /// Mean share of winning random playouts over the solvable boards; only
    /// measured when requested.
    pub random_success_fraction: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub workers: usize,
    /// Playouts per solvable board for the difficulty measure; `None` skips it.
    pub difficulty_attempts: Option<u64>,
    /// Leave the timing fields empty so reports compare byte for byte.
    pub timing: bool,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            workers: 1,
            difficulty_attempts: None,
            timing: true,
        }
    }
}

/// Outcome for one dealt board.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoardOutcome {
    pub index: u64,
    pub seed: u64,
    pub solvable: bool,
    pub millis: f64,
    pub random_success: Option<f64>,
}

/// Board `i` is `shuffle(layout, sizes, derive_seed(seed, i))`, decided by the
/// adaptive group-directed search. Outcomes are returned in index order
/// whatever the worker count.
pub fn scan_boards(
    layout: &Arc<Layout>,
    group_sizes: &[usize],
    n: u64,
    seed: u64,
    config: &ScanConfig,
) -> Result<Vec<BoardOutcome>, BoardError> {
    // Surface size errors before spawning anything.
    shuffle(layout, group_sizes, seed)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .expect("thread pool");
    let outcomes = pool.install(|| {
        (0..n)
            .into_par_iter()
            .map(|i| {
                let board_seed = derive_seed(seed, i);
                let board = shuffle(layout, group_sizes, board_seed).expect("sizes checked above");
                let start = Instant::now();
                let solvable = solve_group_directed(&board, Heuristic::Adaptive).is_solvable();
                let millis = start.elapsed().as_secs_f64() * 1e3;
                let random_success = match config.difficulty_attempts {
                    Some(a) if solvable => {
                        random_difficulty(&board, a, derive_seed(board_seed, 1)).success_fraction()
                    }
                    _ => None,
                };
                BoardOutcome {
                    index: i,
                    seed: board_seed,
                    solvable,
                    millis,
                    random_success,
                }
            })
            .collect()
    });
    Ok(outcomes)
}

pub fn scan_layout(
    name: &str,
    layout: &Arc<Layout>,
    group_sizes: &[usize],
    n: u64,
    seed: u64,
    config: &ScanConfig,
) -> Result<ScanReport, BoardError> {
    let outcomes = scan_boards(layout, group_sizes, n, seed, config)?;
    Ok(summarize(name, seed, &outcomes, config.timing))
}

pub fn summarize(name: &str, seed: u64, outcomes: &[BoardOutcome], timing: bool) -> ScanReport {
    let n = outcomes.len() as u64;
    let unsolvable_count = outcomes.iter().filter(|o| !o.solvable).count() as u64;
    let mut times: Vec<f64> = outcomes.iter().map(|o| o.millis).collect();
    times.sort_by(f64::total_cmp);
    let pct = |p: f64| timing.then(|| nearest_rank(&times, p)).flatten();
    let diffs: Vec<f64> = outcomes.iter().filter_map(|o| o.random_success).collect();
    ScanReport {
        layout: name.to_string(),
        n,
        seed,
        unsolvable_count,
        unsolvable_fraction: (n > 0).then(|| unsolvable_count as f64 / n as f64),
        p50_ms: pct(50.0),
        p99_ms: pct(99.0),
        max_ms: pct(100.0),
        random_success_fraction: (!diffs.is_empty())
            .then(|| diffs.iter().sum::<f64>() / diffs.len() as f64),
    }
}

/// Smallest value with at least `p` percent of the sample at or below it.
pub fn nearest_rank(sorted: &[f64], p: f64) -> Option<f64> {
    if sorted.is_empty() {
        return None;
    }
    let rank = ((p / 100.0) * sorted.len() as f64).ceil().max(1.0) as usize;
    Some(sorted[rank.min(sorted.len()) - 1])
}
