// SPDX-License-Identifier: Apache-2.0

//! Match-directed baseline search.
//!
//! Matches of different groups commute, so the search only plays a match of
//! group `g` if no lower group is being skipped for good: every lower group
//! with exactly one available match has that pairing forbidden below this
//! node, and a lower group with more than one available match rules `g` out
//! entirely (forbidding all of them would forbid every pairing).

use crate::board::{Board, GroupId};
use crate::scan::{PairingAssignment, Partition, Scanner};

use super::clean::{clean_constrained, partition_with};
use super::{Solution, Verdict};

pub fn solve_match_directed(board: &Board) -> Verdict {
    let mut b = board.clone();
    let mut forbidden = vec![Vec::new(); board.group_count()];
    let mut moves = Vec::new();
    if search(&mut b, &mut forbidden, &mut moves) {
        Verdict::Solvable(Solution(
            moves.iter().map(|&(x, y)| board.to_move(x, y)).collect(),
        ))
    } else {
        Verdict::Unsolvable
    }
}

fn partition_of(b: &Board, g: GroupId, x: usize, y: usize) -> Partition {
    let members = b.members(g);
    if members.len() == 4 {
        partition_with(members, x, y)
    } else {
        [(x, y), (x, y)]
    }
}

/// Available matches of each group whose pairing is still allowed.
fn allowed_matches(b: &Board, forbidden: &[Vec<Partition>]) -> Vec<Vec<(usize, usize, Partition)>> {
    (0..b.group_count())
        .map(|g| {
            let gid = GroupId::from(g);
            let free = b.playable_members(gid);
            let mut out = Vec::new();
            for i in 0..free.len() {
                for j in i + 1..free.len() {
                    let p = partition_of(b, gid, free[i], free[j]);
                    if !forbidden[g].contains(&p) {
                        out.push((free[i], free[j], p));
                    }
                }
            }
            out
        })
        .collect()
}

fn search(
    b: &mut Board,
    forbidden: &mut [Vec<Partition>],
    moves: &mut Vec<(usize, usize)>,
) -> bool {
    let mark = moves.len();
    if explore(b, forbidden, moves) {
        return true;
    }
    for &(x, y) in &moves[mark..] {
        b.restore_pair(x, y);
    }
    moves.truncate(mark);
    false
}

fn explore(
    b: &mut Board,
    forbidden: &mut [Vec<Partition>],
    moves: &mut Vec<(usize, usize)>,
) -> bool {
    if !clean_constrained(b, |g, p| !forbidden[g.index()].contains(p), moves) {
        return false;
    }
    if b.is_cleared() {
        return true;
    }
    if !Scanner::new(b).run(&PairingAssignment::empty(b), None) {
        return false;
    }
    let matches = allowed_matches(b, forbidden);
    for g in 0..b.group_count() {
        if matches[g].is_empty() {
            continue;
        }
        for &(x, y, _) in &matches[g] {
            let mut added = Vec::new();
            for (h, hm) in matches[..g].iter().enumerate() {
                if hm.len() == 1 {
                    forbidden[h].push(hm[0].2);
                    added.push(h);
                }
            }
            b.remove_pair(x, y);
            moves.push((x, y));
            let won = search(b, forbidden, moves);
            if won {
                return true;
            }
            moves.pop();
            b.restore_pair(x, y);
            for h in added {
                forbidden[h].pop();
            }
        }
        // Groups above `g` may only skip it if forbidding its single match
        // still leaves `g` some pairing.
        let gid = GroupId::from(g);
        let last_pairing = b.present_count(gid) != 4 || forbidden[g].len() >= 2;
        if matches[g].len() > 1 || last_pairing {
            break;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::fixtures::{row4, stacks};
    use crate::solver::{oracle_solve, verify_solution};

    #[test]
    fn basic_verdicts() {
        assert_eq!(
            solve_match_directed(&stacks(&[&[0, 0]])),
            Verdict::Unsolvable
        );
        let b = row4();
        let v = solve_match_directed(&b);
        assert_eq!(v.solution().unwrap().len(), 2);
        assert!(verify_solution(&b, v.solution().unwrap()));
        let mut empty = stacks(&[&[0], &[0]]);
        let m = empty.legal_moves()[0];
        empty.apply_move(m).unwrap();
        assert_eq!(
            solve_match_directed(&empty),
            Verdict::Solvable(Solution::default())
        );
    }

    /// Two groups of four dealt onto isolated stacks of the given heights.
    fn two_group_boards(heights: &[usize]) -> Vec<crate::board::Board> {
        let mut out = Vec::new();
        for code in 0..(1u32 << 8) {
            if code.count_ones() != 4 {
                continue;
            }
            let mut g = (0..8).map(|i| (code >> i) & 1);
            let st: Vec<Vec<u32>> = heights
                .iter()
                .map(|&h| g.by_ref().take(h).collect())
                .collect();
            let refs: Vec<&[u32]> = st.iter().map(|v| v.as_slice()).collect();
            out.push(stacks(&refs));
        }
        out
    }

    #[test]
    fn lowest_group_first_is_not_forced() {
        // Boards the oracle solves, but not after the first listed legal move.
        let mut traps = 0;
        for heights in [
            [2, 2, 2, 2].as_slice(),
            &[3, 3, 2],
            &[3, 3, 1, 1],
            &[3, 2, 2, 1],
        ] {
            for b in two_group_boards(heights) {
                let oracle = oracle_solve(&b).unwrap().is_solvable();
                let v = solve_match_directed(&b);
                assert_eq!(v.is_solvable(), oracle);
                if let Some(s) = v.solution() {
                    assert!(verify_solution(&b, s));
                }
                let Some(&first) = b.legal_moves().first() else {
                    continue;
                };
                let mut after = b.clone();
                after.apply_move(first).unwrap();
                if oracle && !oracle_solve(&after).unwrap().is_solvable() {
                    traps += 1;
                }
            }
        }
        assert!(traps > 0);
    }
}
