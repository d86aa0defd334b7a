// SPDX-License-Identifier: Apache-2.0

//! Solving engines.
//!
//! * [`solve_group_directed`]: backtracking over per-group pairings, pruned by
//!   the relaxed scan. The engine to use.
//! * [`solve_match_directed`]: backtracking over individual matches with
//!   cleaning and group-order canonicalization. Baseline.
//! * [`random_solve`]: repeated random playouts. May answer `Unknown`.
//! * [`oracle_solve`]: exhaustive search for small boards, used as ground truth.

mod clean;
mod group;
mod matching;
mod oracle;
mod random;

pub use clean::{clean, clean_step};
pub use group::{
    solve_group_directed, GroupSearch, Heuristic, SearchEntry, SearchStats, TraceEvent,
};
pub use matching::solve_match_directed;
pub use oracle::{oracle_solve, oracle_solve_bounded, DEFAULT_ORACLE_GROUPS};
pub use random::{default_attempts, random_difficulty, random_solve, RandomOutcome, RandomVerdict};

use crate::board::{Board, Move};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Solution(pub Vec<Move>);

impl Solution {
    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Solvable(Solution),
    Unsolvable,
}

impl Verdict {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Verdict::Solvable(_))
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            Verdict::Solvable(s) => Some(s),
            Verdict::Unsolvable => None,
        }
    }
}

/// True iff every move is legal in sequence and the board ends up empty.
pub fn verify_solution(board: &Board, solution: &Solution) -> bool {
    let mut b = board.clone();
    solution.0.iter().all(|&m| b.apply_move(m).is_ok()) && b.is_cleared()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::fixtures::{row4, stacks};
    use crate::board::Slot;

    #[test]
    fn verify_cases() {
        let b = row4();
        let ends = Move::new(Slot::new(0, 0, 0), Slot::new(6, 0, 0));
        let mids = Move::new(Slot::new(2, 0, 0), Slot::new(4, 0, 0));
        assert!(verify_solution(&b, &Solution(vec![ends, mids])));
        assert!(!verify_solution(&b, &Solution(vec![mids, ends])));
        assert!(!verify_solution(&b, &Solution(vec![ends])));
        let mut empty = stacks(&[&[0], &[0]]);
        let only = empty.legal_moves()[0];
        empty.apply_move(only).unwrap();
        assert!(verify_solution(&empty, &Solution::default()));
    }

    #[test]
    fn engines_agree_with_oracle_on_micro_boards() {
        for board in crate::micro::micro_suite(160, 6, 11) {
            let truth = oracle_solve(&board).unwrap().is_solvable();
            let verdicts = [
                solve_group_directed(&board, Heuristic::Adaptive),
                solve_group_directed(&board, Heuristic::MinPairings),
                solve_match_directed(&board),
            ];
            for v in verdicts {
                assert_eq!(
                    v.is_solvable(),
                    truth,
                    "{}",
                    crate::format::serialize_board(&board)
                );
                if let Some(s) = v.solution() {
                    assert!(verify_solution(&board, s));
                }
            }
        }
    }
}
