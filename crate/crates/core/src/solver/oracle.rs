// SPDX-License-Identifier: Apache-2.0

use std::collections::HashSet;

use crate::board::{Board, SlotSet};
use crate::error::SolveError;

use super::{Solution, Verdict};

pub const DEFAULT_ORACLE_GROUPS: usize = 8;

/// Exhaustive search over every legal move, memoizing dead positions by
/// removed-set. Limited to [`DEFAULT_ORACLE_GROUPS`] groups.
pub fn oracle_solve(board: &Board) -> Result<Verdict, SolveError> {
    oracle_solve_bounded(board, DEFAULT_ORACLE_GROUPS)
}

pub fn oracle_solve_bounded(board: &Board, max_groups: usize) -> Result<Verdict, SolveError> {
    if board.group_count() > max_groups {
        return Err(SolveError::TooManyGroups {
            groups: board.group_count(),
            limit: max_groups,
        });
    }
    let mut b = board.clone();
    let mut dead = HashSet::new();
    let mut path = Vec::new();
    Ok(if dfs(&mut b, &mut dead, &mut path) {
        Verdict::Solvable(Solution(
            path.iter().map(|&(x, y)| b.to_move(x, y)).collect(),
        ))
    } else {
        Verdict::Unsolvable
    })
}

fn dfs(b: &mut Board, dead: &mut HashSet<SlotSet>, path: &mut Vec<(usize, usize)>) -> bool {
    if b.is_cleared() {
        return true;
    }
    if dead.contains(b.removed()) {
        return false;
    }
    for (x, y) in b.legal_pairs() {
        b.remove_pair(x, y);
        path.push((x, y));
        if dfs(b, dead, path) {
            return true;
        }
        path.pop();
        b.restore_pair(x, y);
    }
    dead.insert(b.removed().clone());
    false
}
