// SPDX-License-Identifier: Apache-2.0

//! Boards made of isolated stacks at most two tiles high.
//!
//! Such a board is winnable exactly when it has no blocked cycle: two-tile
//! groups `p1 .. pk` where a tile of each `pi` lies on a tile of `p(i+1)` and
//! a tile of `pk` lies on a tile of `p1`. A group stacked on itself is the
//! case `k = 1`. Any group with a match has a match that creates no new
//! blocked cycle, so greedy play wins whenever winning is possible.

use crate::board::{Board, GroupId, Move, Slot};
use crate::error::SolveError;
use crate::solver::{Solution, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockedCycle {
    pub groups: Vec<GroupId>,
    /// `(top, bottom)` of the stack where `groups[i]` lies on `groups[i+1]`.
    pub stacks: Vec<(Slot, Slot)>,
}

/// The present tile directly below `i`, if any.
fn beneath(board: &Board, i: usize) -> Option<usize> {
    board
        .layout()
        .below(i)
        .iter()
        .copied()
        .find(|&j| !board.is_removed(j))
}

fn above(board: &Board, i: usize) -> Option<usize> {
    board
        .layout()
        .above(i)
        .iter()
        .copied()
        .find(|&j| !board.is_removed(j))
}

fn check_low(board: &Board) -> Result<(), SolveError> {
    if !board.layout().is_isolated_stacks(2) {
        return Err(SolveError::Precondition(
            "layout must be isolated stacks of height at most 2",
        ));
    }
    for g in 0..board.group_count() {
        if !matches!(board.present_count(GroupId::from(g)), 0 | 2 | 4) {
            return Err(SolveError::Precondition(
                "every group must have 0, 2 or 4 tiles left",
            ));
        }
    }
    Ok(())
}

pub fn detect_blocked_cycle(board: &Board) -> Result<Option<BlockedCycle>, SolveError> {
    check_low(board)?;
    Ok(find_cycle(board))
}

fn find_cycle(board: &Board) -> Option<BlockedCycle> {
    let n = board.group_count();
    // succ[p] = (top tile of p, tile below it) for qualifying two-tile groups.
    let mut succ: Vec<Option<(usize, usize)>> = vec![None; n];
    for (g, s) in succ.iter_mut().enumerate() {
        let live: Vec<usize> = board.present_members(GroupId::from(g)).collect();
        let [a, b] = live[..] else { continue };
        for (top, bottom) in [(a, b), (b, a)] {
            if let (Some(under), Some(_)) = (beneath(board, top), above(board, bottom)) {
                *s = Some((top, under));
                break;
            }
        }
    }
    let next = |g: usize| succ[g].map(|(_, under)| board.group_of(under).index());
    // Colors: 0 unvisited, 1 on the current walk, 2 done.
    let mut color = vec![0u8; n];
    for start in 0..n {
        let mut walk = Vec::new();
        let mut g = start;
        while color[g] == 0 {
            color[g] = 1;
            walk.push(g);
            match next(g) {
                Some(h) => g = h,
                None => break,
            }
        }
        if color[g] == 1 && succ[g].is_some() && next(*walk.last().unwrap()) == Some(g) {
            let from = walk.iter().position(|&h| h == g).unwrap();
            let groups: Vec<usize> = walk[from..].to_vec();
            let layout = board.layout();
            return Some(BlockedCycle {
                stacks: groups
                    .iter()
                    .map(|&h| {
                        let (t, u) = succ[h].unwrap();
                        (layout.slot(t), layout.slot(u))
                    })
                    .collect(),
                groups: groups.into_iter().map(GroupId::from).collect(),
            });
        }
        for h in walk {
            color[h] = 2;
        }
    }
    None
}

/// Polynomial-time solver with full information. Plays, for the lowest group
/// with a match, the first of its matches that leaves no blocked cycle.
pub fn solve_low_peek(board: &Board) -> Result<Verdict, SolveError> {
    check_low(board)?;
    if find_cycle(board).is_some() {
        return Ok(Verdict::Unsolvable);
    }
    let mut b = board.clone();
    let mut moves = Vec::new();
    while !b.is_cleared() {
        let Some(m) = next_move(&b) else {
            // Ruled out by the theorem; kept as a defensive answer.
            debug_assert!(false, "cycle-free low board without a move");
            return Ok(Verdict::Unsolvable);
        };
        b.apply_move(m).expect("chosen move is legal");
        moves.push(m);
    }
    Ok(Verdict::Solvable(Solution(moves)))
}

fn next_move(b: &Board) -> Option<Move> {
    let pairs = b.legal_pairs();
    let g = pairs.iter().map(|&(x, _)| b.group_of(x)).min()?;
    let of_g: Vec<(usize, usize)> = pairs
        .into_iter()
        .filter(|&(x, _)| b.group_of(x) == g)
        .collect();
    let mut trial = b.clone();
    let safe = of_g.iter().copied().find(|&(x, y)| {
        trial.remove_pair(x, y);
        let ok = find_cycle(&trial).is_none();
        trial.restore_pair(x, y);
        ok
    });
    let (x, y) = safe.unwrap_or(of_g[0]);
    Some(b.to_move(x, y))
}
