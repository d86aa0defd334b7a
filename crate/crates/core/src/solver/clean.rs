// SPDX-License-Identifier: Apache-2.0

use crate::board::{Board, GroupId, Move};
use crate::scan::Partition;

/// Plays the two safe move patterns until neither applies:
///
/// 1. every remaining tile of a group is playable: remove the whole group;
/// 2. a group has three playable tiles and one of them blocks nothing: remove
///    the other two.
///
/// Neither pattern can turn a winnable board into a lost one.
pub fn clean(board: &mut Board) -> Vec<Move> {
    let mut pairs = Vec::new();
    clean_constrained(board, |_, _| true, &mut pairs);
    pairs
        .into_iter()
        .map(|(a, b)| board.to_move(a, b))
        .collect()
}

/// One cleaning move, if any pattern applies.
pub fn clean_step(board: &Board) -> Option<Move> {
    let mut b = board.clone();
    let mut pairs = Vec::new();
    (0..b.group_count()).find_map(|g| {
        let g = GroupId::from(g);
        match step_group(&mut b, g, &mut |_, _| true, &mut pairs) {
            Step::Played => Some(board.to_move(pairs[0].0, pairs[0].1)),
            _ => None,
        }
    })
}

pub(crate) enum Step {
    None,
    Played,
    /// Rule 1 applies but every way to pair the group is disallowed.
    Dead,
}

/// `allowed(group, partition)` decides whether a group may be split into the
/// given pairs; for a group with two tiles left the partition's second pair is
/// the already-played one. Returns false when some group can no longer be
/// removed under the constraint.
pub(crate) fn clean_constrained(
    board: &mut Board,
    mut allowed: impl FnMut(GroupId, &Partition) -> bool,
    out: &mut Vec<(usize, usize)>,
) -> bool {
    loop {
        let mut progress = false;
        for g in 0..board.group_count() {
            match step_group(board, GroupId::from(g), &mut allowed, out) {
                Step::None => {}
                Step::Played => progress = true,
                Step::Dead => return false,
            }
        }
        if !progress {
            return true;
        }
    }
}

/// The partition of a four-tile group containing the pair `(a, b)`.
pub(crate) fn partition_with(members: &[usize], a: usize, b: usize) -> Partition {
    let rest: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&i| i != a && i != b)
        .collect();
    let mut p = [
        (a.min(b), a.max(b)),
        (rest[0].min(rest[1]), rest[0].max(rest[1])),
    ];
    p.sort();
    p
}

pub(crate) fn step_group(
    board: &mut Board,
    g: GroupId,
    allowed: &mut impl FnMut(GroupId, &Partition) -> bool,
    out: &mut Vec<(usize, usize)>,
) -> Step {
    let members = board.members(g).to_vec();
    let live: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&i| !board.is_removed(i))
        .collect();
    if live.is_empty() {
        return Step::None;
    }
    let free: Vec<usize> = live
        .iter()
        .copied()
        .filter(|&i| board.is_playable(i))
        .collect();

    if free.len() == live.len() {
        if live.len() == 2 {
            let p = if members.len() == 4 {
                partition_with(&members, live[0], live[1])
            } else {
                [(live[0], live[1]), (live[0], live[1])]
            };
            if !allowed(g, &p) {
                return Step::Dead;
            }
            board.remove_pair(live[0], live[1]);
            out.push((live[0], live[1]));
            return Step::Played;
        }
        let choice = [(1, 2, 3), (2, 1, 3), (3, 1, 2)]
            .into_iter()
            .map(|(j, k, l)| [(live[0], live[j]), (live[k], live[l])])
            .find(|p| allowed(g, &partition_with(&members, p[0].0, p[0].1)));
        let Some([p, q]) = choice else {
            return Step::Dead;
        };
        board.remove_pair(p.0, p.1);
        board.remove_pair(q.0, q.1);
        out.push(p);
        out.push(q);
        return Step::Played;
    }

    if live.len() == 4 && free.len() == 3 {
        for &keep in &free {
            if board.blocks_any(keep) {
                continue;
            }
            let pair: Vec<usize> = free.iter().copied().filter(|&i| i != keep).collect();
            if allowed(g, &partition_with(&members, pair[0], pair[1])) {
                board.remove_pair(pair[0], pair[1]);
                out.push((pair[0], pair[1]));
                return Step::Played;
            }
        }
    }
    Step::None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::fixtures::{row4, stacks};
    use crate::board::Slot;

    #[test]
    fn whole_group_removed() {
        let mut b = stacks(&[&[0], &[0], &[0], &[0]]);
        let moves = clean(&mut b);
        assert_eq!(moves.len(), 2);
        assert!(b.is_cleared());
    }

    #[test]
    fn three_playable_one_harmless() {
        // Group 0: three stack tops (two covering a group-1 tile, one on the
        // ground covering nothing) and a fourth buried under group 1.
        let mut b = stacks(&[&[0, 1], &[0, 1], &[0], &[1, 1, 0]]);
        let orig = b.clone();
        let moves = clean(&mut b);
        assert_eq!(moves[0], Move::new(Slot::new(0, 0, 1), Slot::new(4, 0, 1)));
        assert!(crate::solver::verify_solution(
            &orig,
            &crate::solver::Solution({
                let mut all = moves.clone();
                let mut rest = b.clone();
                while !rest.is_cleared() {
                    let m = rest.legal_moves()[0];
                    rest.apply_move(m).unwrap();
                    all.push(m);
                }
                all
            })
        ));
    }

    #[test]
    fn nothing_to_clean() {
        let mut b = row4();
        assert!(clean(&mut b).is_empty());
        assert_eq!(b.remaining(), 4);
        assert_eq!(clean_step(&b), None);
    }

    #[test]
    fn step_reports_first_move() {
        let b = stacks(&[&[0], &[0]]);
        assert_eq!(
            clean_step(&b),
            Some(Move::new(Slot::new(0, 0, 0), Slot::new(4, 0, 0)))
        );
    }

    #[test]
    fn cleaning_keeps_oracle_verdict() {
        for board in crate::micro::micro_suite(200, 6, 21) {
            let before = crate::solver::oracle_solve(&board).unwrap().is_solvable();
            let mut b = board.clone();
            let moves = clean(&mut b);
            let mut replay = board.clone();
            for m in &moves {
                replay.apply_move(*m).unwrap();
            }
            assert_eq!(replay, b);
            assert_eq!(
                crate::solver::oracle_solve(&b).unwrap().is_solvable(),
                before
            );
        }
    }
}
