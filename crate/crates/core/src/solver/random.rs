// SPDX-License-Identifier: Apache-2.0

use rand::seq::SliceRandom;

use crate::board::Board;
use crate::scan::{PairingAssignment, Scanner};
use crate::shuffle::{rng, SeededRng};

use super::clean::clean_constrained;
use super::Solution;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RandomVerdict {
    Solvable(Solution),
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomOutcome {
    pub verdict: RandomVerdict,
    /// Playouts actually run; zero when the initial scan already fails.
    pub playouts: u64,
    pub successes: u64,
}

impl RandomOutcome {
    /// Share of playouts that cleared the board; a difficulty measure for
    /// solvable boards.
    pub fn success_fraction(&self) -> Option<f64> {
        (self.playouts > 0).then(|| self.successes as f64 / self.playouts as f64)
    }
}

/// `floor(1.2^g)` where `g` counts groups that still have four tiles.
pub fn default_attempts(board: &Board) -> u64 {
    attempts_for(board.full_groups() as u32)
}

pub(crate) fn attempts_for(groups: u32) -> u64 {
    // 6^g / 5^g in integers while it fits.
    if groups <= 49 {
        (6u128.pow(groups) / 5u128.pow(groups)) as u64
    } else {
        1.2f64.powi(groups as i32).floor().min(u64::MAX as f64) as u64
    }
}

/// Random playouts with cleaning, stopping at the first win.
pub fn random_solve(board: &Board, attempts: u64, seed: u64) -> RandomOutcome {
    run(board, attempts, seed, true)
}

/// Runs every playout regardless of wins, for [`RandomOutcome::success_fraction`].
pub fn random_difficulty(board: &Board, attempts: u64, seed: u64) -> RandomOutcome {
    run(board, attempts, seed, false)
}

fn run(board: &Board, attempts: u64, seed: u64, stop_at_first: bool) -> RandomOutcome {
    let mut outcome = RandomOutcome {
        verdict: RandomVerdict::Unknown,
        playouts: 0,
        successes: 0,
    };
    if !Scanner::new(board).run(&PairingAssignment::empty(board), None) {
        return outcome;
    }
    let mut r = rng(seed);
    for _ in 0..attempts {
        outcome.playouts += 1;
        if let Some(moves) = playout(board, &mut r) {
            outcome.successes += 1;
            if outcome.verdict == RandomVerdict::Unknown {
                outcome.verdict = RandomVerdict::Solvable(Solution(
                    moves.iter().map(|&(a, b)| board.to_move(a, b)).collect(),
                ));
            }
            if stop_at_first {
                break;
            }
        }
    }
    outcome
}

fn playout(board: &Board, r: &mut SeededRng) -> Option<Vec<(usize, usize)>> {
    let mut b = board.clone();
    let mut moves = Vec::with_capacity(b.remaining() / 2);
    loop {
        clean_constrained(&mut b, |_, _| true, &mut moves);
        if b.is_cleared() {
            return Some(moves);
        }
        let &(x, y) = b.legal_pairs().choose(r)?;
        b.remove_pair(x, y);
        moves.push((x, y));
    }
}
