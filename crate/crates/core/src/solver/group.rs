// SPDX-License-Identifier: Apache-2.0

//! Group-directed search.
//!
//! Instead of playing matches, the search fixes one pairing per group and
//! asks the relaxed scan whether the board can still be cleared. The search
//! path is a list of `(group, pairing)` entries; every four-tile group
//! eventually sits on it, and a clearing scan with all of them fixed is a
//! winning move sequence.
//!
//! With the adaptive heuristic, after every successful pairing change the
//! search keeps appending groups at pairing one until the scan fails. It then
//! walks back over the groups it just appended (except the last), dropping
//! each one whose removal keeps the scan failing. Dropped groups get their
//! tiles two to four rotated, so they come back with a different first
//! pairing. The last appended group is the one considered critical and moves
//! on to its next pairing. Dropped groups also go to the back of the
//! order in which groups are appended, so the next run tries fresh groups
//! before coming back to them.

use crate::board::{Board, GroupId};
use crate::scan::{PairingAssignment, PairingIndex, Partition, ScanEvent, Scanner};

use super::{Solution, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Heuristic {
    /// Append groups in id order and trim back to the critical ones.
    Adaptive,
    /// Pick the group that admits the fewest pairings under the scan.
    MinPairings,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchEntry {
    pub group: GroupId,
    pub pairing: PairingIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceEvent {
    /// The group was given a pairing, either freshly appended or advanced.
    Assign {
        group: GroupId,
        pairing: PairingIndex,
        partition: Partition,
    },
    /// Dropped by the backward trim.
    Trim { group: GroupId },
    /// Exhausted all three pairings and left the path.
    Pop { group: GroupId },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub scans: u64,
    pub assignments: u64,
    pub trims: u64,
}

pub fn solve_group_directed(board: &Board, heuristic: Heuristic) -> Verdict {
    GroupSearch::new(board, heuristic).run()
}

pub struct GroupSearch<'b> {
    scanner: Scanner<'b>,
    assignment: PairingAssignment,
    path: Vec<SearchEntry>,
    trimmed: Vec<u32>,
    /// Adaptive order: starts as the group id and moves past every other
    /// group whenever the group is trimmed.
    rank: Vec<u64>,
    tick: u64,
    heuristic: Heuristic,
    trace: Option<Vec<TraceEvent>>,
    stats: SearchStats,
}

impl<'b> GroupSearch<'b> {
    pub fn new(board: &'b Board, heuristic: Heuristic) -> Self {
        GroupSearch {
            scanner: Scanner::new(board),
            assignment: PairingAssignment::empty(board),
            path: Vec::new(),
            trimmed: vec![0; board.group_count()],
            rank: (0..board.group_count() as u64).collect(),
            tick: board.group_count() as u64,
            heuristic,
            trace: None,
            stats: SearchStats::default(),
        }
    }

    /// Records every path change; see [`GroupSearch::trace`].
    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn trace(&self) -> &[TraceEvent] {
        self.trace.as_deref().unwrap_or(&[])
    }

    pub fn stats(&self) -> SearchStats {
        SearchStats {
            scans: self.scanner.scans(),
            ..self.stats
        }
    }

    pub fn run(&mut self) -> Verdict {
        if !self.scan() {
            return Verdict::Unsolvable;
        }
        loop {
            // The current path scans clean: append pairing-one groups until
            // the scan fails or nothing is left to assign.
            let run_start = self.path.len();
            loop {
                let Some(g) = self.choose() else {
                    return Verdict::Solvable(self.reconstruct());
                };
                self.push(g);
                if !self.scan() {
                    break;
                }
            }
            self.trim(run_start);
            loop {
                let Some(last) = self.path.last().copied() else {
                    return Verdict::Unsolvable;
                };
                match last.pairing.next() {
                    None => self.pop(),
                    Some(k) => {
                        self.set_last(k);
                        if self.scan() {
                            break;
                        }
                    }
                }
            }
        }
    }

    fn scan(&mut self) -> bool {
        self.scanner.run(&self.assignment, None)
    }

    fn candidates(&self) -> impl Iterator<Item = GroupId> + '_ {
        (0..self.scanner.board().group_count())
            .map(GroupId::from)
            .filter(|&g| self.assignment.is_assignable(g) && self.assignment.get(g).is_none())
    }

    fn choose(&mut self) -> Option<GroupId> {
        match self.heuristic {
            Heuristic::Adaptive => self.candidates().min_by_key(|g| self.rank[g.index()]),
            Heuristic::MinPairings => {
                let groups: Vec<GroupId> = self.candidates().collect();
                let mut best: Option<(u32, GroupId)> = None;
                for &g in &groups {
                    let mask = self
                        .scanner
                        .feasibility(&mut self.assignment, g)
                        .expect("candidate is assignable");
                    let n = mask.count_ones();
                    if best.is_none_or(|(m, _)| n < m) {
                        best = Some((n, g));
                    }
                }
                let (n, g) = best?;
                if n < 3 {
                    return Some(g);
                }
                let stubborn = groups
                    .iter()
                    .copied()
                    .find(|&g| !self.scanner.all_four_playable(&self.assignment, g));
                Some(stubborn.unwrap_or(groups[0]))
            }
        }
    }

    fn record(&mut self, ev: TraceEvent) {
        if let Some(t) = self.trace.as_mut() {
            t.push(ev);
        }
    }

    fn record_assign(&mut self, group: GroupId, pairing: PairingIndex) {
        self.stats.assignments += 1;
        if self.trace.is_some() {
            let partition = self.assignment.order(group).partition(pairing);
            self.record(TraceEvent::Assign {
                group,
                pairing,
                partition,
            });
        }
    }

    fn push(&mut self, group: GroupId) {
        self.assignment.assign(group, PairingIndex::One);
        self.path.push(SearchEntry {
            group,
            pairing: PairingIndex::One,
        });
        self.record_assign(group, PairingIndex::One);
    }

    fn set_last(&mut self, k: PairingIndex) {
        let e = self.path.last_mut().expect("non-empty path");
        e.pairing = k;
        let group = e.group;
        self.assignment.assign(group, k);
        self.record_assign(group, k);
    }

    fn pop(&mut self) {
        let e = self.path.pop().expect("non-empty path");
        self.assignment.unassign(e.group);
        self.record(TraceEvent::Pop { group: e.group });
    }

    /// Walks back over the pairing-one entries appended since `start`,
    /// skipping the last one, and drops those the failing scan does not need.
    fn trim(&mut self, start: usize) {
        let last = self.path.len() - 1;
        for i in (start..last).rev() {
            let g = self.path[i].group;
            debug_assert_eq!(self.path[i].pairing, PairingIndex::One);
            self.assignment.unassign(g);
            if self.scan() {
                self.assignment.assign(g, PairingIndex::One);
                continue;
            }
            self.path.remove(i);
            self.stats.trims += 1;
            self.rank[g.index()] = self.tick;
            self.tick += 1;
            let n = &mut self.trimmed[g.index()];
            *n += 1;
            let order = self.assignment.order_mut(g);
            if *n % 2 == 1 {
                order.cycle_forward();
            } else {
                order.cycle_backward();
            }
            self.record(TraceEvent::Trim { group: g });
        }
    }

    /// Replays the final scan; with every four-tile group fixed, each of its
    /// events is a pair removal that is legal at that point.
    fn reconstruct(&mut self) -> Solution {
        let mut events = Vec::new();
        let cleared = self.scanner.run(&self.assignment, Some(&mut events));
        debug_assert!(cleared);
        let board = self.scanner.board();
        Solution(
            events
                .into_iter()
                .map(|e| match e {
                    ScanEvent::Pair(_, a, b) => board.to_move(a, b),
                    ScanEvent::Single(..) => {
                        unreachable!("unassigned four-tile group in a full assignment")
                    }
                })
                .collect(),
        )
    }
}
