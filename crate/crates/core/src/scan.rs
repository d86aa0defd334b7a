// SPDX-License-Identifier: Apache-2.0

//! The relaxed-rules pruning scan.
//!
//! Under the relaxed rules a group that still has four tiles removes any two
//! simultaneously playable tiles first and afterwards removes its other tiles
//! one at a time as they become playable. A group with two tiles left removes
//! them together. A group with a fixed pairing removes exactly its two pairs,
//! each once both tiles are playable.
//!
//! Every removal only frees other tiles, so the system is monotone and its
//! fixpoint does not depend on processing order. If the fixpoint leaves tiles
//! behind, the real game cannot be won under the same pairing constraints.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::board::{Board, GroupId, Slot, SlotSet};

/// One of the three ways to split a group of four into two pairs.
///
/// For a tile order `(t1, t2, t3, t4)`: `One` is `{t1,t2}{t3,t4}`, `Two` is
/// `{t1,t3}{t2,t4}` and `Three` is `{t1,t4}{t2,t3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairingIndex {
    One = 1,
    Two = 2,
    Three = 3,
}

impl PairingIndex {
    pub const ALL: [PairingIndex; 3] = [PairingIndex::One, PairingIndex::Two, PairingIndex::Three];

    pub fn next(self) -> Option<PairingIndex> {
        match self {
            PairingIndex::One => Some(PairingIndex::Two),
            PairingIndex::Two => Some(PairingIndex::Three),
            PairingIndex::Three => None,
        }
    }

    pub fn bit(self) -> u8 {
        1 << (self as u8 - 1)
    }
}

impl fmt::Display for PairingIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        (*self as u8).fmt(f)
    }
}

/// A group's tiles in the order pairings are read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileOrder(Vec<usize>);

/// A partition of four slots into two pairs, normalized so it can be compared
/// across tile orders.
pub type Partition = [(usize, usize); 2];

impl TileOrder {
    pub fn new(slots: Vec<usize>) -> Self {
        TileOrder(slots)
    }

    pub fn slots(&self) -> &[usize] {
        &self.0
    }

    pub fn pairs(&self, k: PairingIndex) -> Partition {
        let t = &self.0;
        match k {
            PairingIndex::One => [(t[0], t[1]), (t[2], t[3])],
            PairingIndex::Two => [(t[0], t[2]), (t[1], t[3])],
            PairingIndex::Three => [(t[0], t[3]), (t[1], t[2])],
        }
    }

    pub fn partition(&self, k: PairingIndex) -> Partition {
        let mut p = self.pairs(k).map(|(a, b)| (a.min(b), a.max(b)));
        p.sort();
        p
    }

    /// `(t1, t2, t3, t4)` becomes `(t1, t4, t2, t3)`.
    pub fn cycle_forward(&mut self) {
        self.0[1..4].rotate_right(1);
    }

    /// `(t1, t2, t3, t4)` becomes `(t1, t3, t4, t2)`.
    pub fn cycle_backward(&mut self) {
        self.0[1..4].rotate_left(1);
    }
}

/// Partial map from groups to pairings, together with each group's tile order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingAssignment {
    pairing: Vec<Option<PairingIndex>>,
    order: Vec<TileOrder>,
}

impl PairingAssignment {
    /// No group assigned; tile orders follow ascending slot index over the
    /// tiles still on the board.
    pub fn empty(board: &Board) -> Self {
        let order = (0..board.group_count())
            .map(|g| TileOrder::new(board.present_members(GroupId::from(g)).collect()))
            .collect();
        PairingAssignment {
            pairing: vec![None; board.group_count()],
            order,
        }
    }

    /// Only groups with all four tiles present can take a pairing.
    pub fn is_assignable(&self, g: GroupId) -> bool {
        self.order[g.index()].0.len() == 4
    }

    pub fn assign(&mut self, g: GroupId, k: PairingIndex) {
        assert!(self.is_assignable(g), "group {g} does not have four tiles");
        self.pairing[g.index()] = Some(k);
    }

    pub fn unassign(&mut self, g: GroupId) {
        self.pairing[g.index()] = None;
    }

    pub fn get(&self, g: GroupId) -> Option<PairingIndex> {
        self.pairing[g.index()]
    }

    pub fn order(&self, g: GroupId) -> &TileOrder {
        &self.order[g.index()]
    }

    pub fn order_mut(&mut self, g: GroupId) -> &mut TileOrder {
        &mut self.order[g.index()]
    }

    pub fn assigned_count(&self) -> usize {
        self.pairing.iter().filter(|p| p.is_some()).count()
    }

    /// Designated pairs of an assigned group.
    pub fn pairs(&self, g: GroupId) -> Option<Partition> {
        self.get(g).map(|k| self.order[g.index()].pairs(k))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanEvent {
    Pair(GroupId, usize, usize),
    Single(GroupId, usize),
}

impl ScanEvent {
    pub fn group(&self) -> GroupId {
        match *self {
            ScanEvent::Pair(g, ..) | ScanEvent::Single(g, _) => g,
        }
    }

    /// `scan: group <g> removes <slots>` for verbose traces.
    pub fn describe(&self, board: &Board) -> String {
        let s = |i: usize| -> Slot { board.layout().slot(i) };
        match *self {
            ScanEvent::Pair(g, a, b) => format!("scan: group {g} removes {} {}", s(a), s(b)),
            ScanEvent::Single(g, a) => format!("scan: group {g} removes {}", s(a)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanResult {
    pub cleared: bool,
    /// Slots still present at the fixpoint.
    pub remaining: SlotSet,
    /// Removal events in the order they were applied.
    pub trace: Vec<ScanEvent>,
}

/// Runs the scan once. See the module docs for the relaxed rules.
pub fn prune_scan(board: &Board, assignment: &PairingAssignment) -> ScanResult {
    let mut scanner = Scanner::new(board);
    let mut trace = Vec::new();
    let cleared = scanner.run(assignment, Some(&mut trace));
    ScanResult {
        cleared,
        remaining: scanner.remaining_set(),
        trace,
    }
}

/// Bit `k-1` is set iff the scan clears once `g` is fixed to pairing `k`.
/// `None` when `g` is already assigned or no longer has four tiles.
pub fn pairing_feasibility(
    board: &Board,
    assignment: &PairingAssignment,
    g: GroupId,
) -> Option<u8> {
    let mut scanner = Scanner::new(board);
    let mut a = assignment.clone();
    scanner.feasibility(&mut a, g)
}

/// For each group with four tiles and no pairing: can all four of its tiles
/// be playable at the same time during the scan? Other groups are false.
pub fn simultaneous_removal_flags(board: &Board, assignment: &PairingAssignment) -> Vec<bool> {
    let mut scanner = Scanner::new(board);
    (0..board.group_count())
        .map(|g| scanner.all_four_playable(assignment, GroupId::from(g)))
        .collect()
}

/// Reusable scan state for one board. Solvers keep one of these around and
/// run many scans against different assignments.
pub struct Scanner<'b> {
    board: &'b Board,
    base_cover: Vec<u8>,
    base_left: Vec<u8>,
    base_right: Vec<u8>,
    base_group_left: Vec<u8>,
    base_remaining: usize,

    cover: Vec<u8>,
    left: Vec<u8>,
    right: Vec<u8>,
    present: Vec<bool>,
    group_left: Vec<u8>,
    unlocked: Vec<bool>,
    queued: Vec<bool>,
    queue: Vec<u32>,
    remaining: usize,
    scans: u64,
}

impl<'b> Scanner<'b> {
    pub fn new(board: &'b Board) -> Self {
        let layout = board.layout();
        let n = layout.len();
        let live = |v: &[usize]| v.iter().filter(|&&j| !board.is_removed(j)).count() as u8;
        let base_cover = (0..n).map(|i| live(layout.above(i))).collect();
        let base_left = (0..n).map(|i| live(layout.left(i))).collect();
        let base_right = (0..n).map(|i| live(layout.right(i))).collect();
        let g = board.group_count();
        let base_group_left = (0..g)
            .map(|k| board.present_count(GroupId::from(k)) as u8)
            .collect();
        Scanner {
            board,
            base_cover,
            base_left,
            base_right,
            base_group_left,
            base_remaining: board.remaining(),
            cover: vec![0; n],
            left: vec![0; n],
            right: vec![0; n],
            present: vec![false; n],
            group_left: vec![0; g],
            unlocked: vec![false; g],
            queued: vec![false; g],
            queue: Vec::with_capacity(g),
            remaining: 0,
            scans: 0,
        }
    }

    pub fn board(&self) -> &'b Board {
        self.board
    }

    /// Number of scans run so far.
    pub fn scans(&self) -> u64 {
        self.scans
    }

    /// Slots left over by the last run.
    pub fn remaining_set(&self) -> SlotSet {
        let mut s = SlotSet::with_capacity(self.present.len());
        for (i, &p) in self.present.iter().enumerate() {
            s.set(i, p);
        }
        s
    }

    pub fn run(
        &mut self,
        assignment: &PairingAssignment,
        trace: Option<&mut Vec<ScanEvent>>,
    ) -> bool {
        self.fixpoint(assignment, None, trace);
        self.remaining == 0
    }

    pub fn feasibility(&mut self, assignment: &mut PairingAssignment, g: GroupId) -> Option<u8> {
        if assignment.get(g).is_some() || !assignment.is_assignable(g) {
            return None;
        }
        let mut mask = 0;
        for k in PairingIndex::ALL {
            assignment.assign(g, k);
            if self.run(assignment, None) {
                mask |= k.bit();
            }
        }
        assignment.unassign(g);
        Some(mask)
    }

    /// Holds `g` back entirely and checks whether all four of its tiles end
    /// up playable at the fixpoint. Holding a group back until its last tile
    /// frees up is the only way the four can be removable at once.
    pub fn all_four_playable(&mut self, assignment: &PairingAssignment, g: GroupId) -> bool {
        if assignment.get(g).is_some() || self.base_group_left[g.index()] != 4 {
            return false;
        }
        self.fixpoint(assignment, Some(g), None);
        self.board.members(g).iter().all(|&i| self.playable(i))
    }

    fn reset(&mut self) {
        self.cover.copy_from_slice(&self.base_cover);
        self.left.copy_from_slice(&self.base_left);
        self.right.copy_from_slice(&self.base_right);
        let removed = self.board.removed();
        for (i, p) in self.present.iter_mut().enumerate() {
            *p = !removed[i];
        }
        self.group_left.copy_from_slice(&self.base_group_left);
        self.unlocked.iter_mut().for_each(|u| *u = false);
        self.remaining = self.base_remaining;
        self.queue.clear();
        for g in 0..self.group_left.len() {
            let live = self.group_left[g] > 0;
            self.queued[g] = live;
            if live {
                self.queue.push(g as u32);
            }
        }
    }

    #[inline]
    fn playable(&self, i: usize) -> bool {
        self.cover[i] == 0 && (self.left[i] == 0 || self.right[i] == 0)
    }

    #[inline]
    fn enqueue(&mut self, i: usize) {
        if self.present[i] {
            let g = self.board.group_of(i).index();
            if !self.queued[g] {
                self.queued[g] = true;
                self.queue.push(g as u32);
            }
        }
    }

    fn remove(&mut self, i: usize) {
        self.present[i] = false;
        self.remaining -= 1;
        self.group_left[self.board.group_of(i).index()] -= 1;
        let layout = self.board.layout();
        for &b in layout.below(i) {
            self.cover[b] -= 1;
            if self.cover[b] == 0 {
                self.enqueue(b);
            }
        }
        // `i` is the left neighbour of everything on its right, and vice versa.
        for &r in layout.right(i) {
            self.left[r] -= 1;
            if self.left[r] == 0 {
                self.enqueue(r);
            }
        }
        for &l in layout.left(i) {
            self.right[l] -= 1;
            if self.right[l] == 0 {
                self.enqueue(l);
            }
        }
    }

    fn fixpoint(
        &mut self,
        assignment: &PairingAssignment,
        frozen: Option<GroupId>,
        mut trace: Option<&mut Vec<ScanEvent>>,
    ) {
        self.scans += 1;
        self.reset();
        let board = self.board;
        while let Some(g) = self.queue.pop() {
            let g = g as usize;
            self.queued[g] = false;
            let gid = GroupId::from(g);
            if frozen == Some(gid) || self.group_left[g] == 0 {
                continue;
            }
            if let Some(pairs) = assignment.pairs(gid) {
                for (a, b) in pairs {
                    if self.present[a] && self.present[b] && self.playable(a) && self.playable(b) {
                        self.remove(a);
                        self.remove(b);
                        if let Some(t) = trace.as_deref_mut() {
                            t.push(ScanEvent::Pair(gid, a, b));
                        }
                    }
                }
                continue;
            }
            let members = board.members(gid);
            if self.base_group_left[g] == 2 {
                let mut live = members.iter().copied().filter(|&i| self.present[i]);
                let (a, b) = (live.next().unwrap(), live.next().unwrap());
                if self.playable(a) && self.playable(b) {
                    self.remove(a);
                    self.remove(b);
                    if let Some(t) = trace.as_deref_mut() {
                        t.push(ScanEvent::Pair(gid, a, b));
                    }
                }
                continue;
            }
            if !self.unlocked[g] {
                let mut first = [0usize; 2];
                let mut n = 0;
                for &i in members {
                    if self.present[i] && self.playable(i) {
                        if n < 2 {
                            first[n] = i;
                        }
                        n += 1;
                    }
                }
                if n < 2 {
                    continue;
                }
                self.unlocked[g] = true;
                self.remove(first[0]);
                self.remove(first[1]);
                if let Some(t) = trace.as_deref_mut() {
                    t.push(ScanEvent::Pair(gid, first[0], first[1]));
                }
            }
            for &i in members {
                if self.present[i] && self.playable(i) {
                    self.remove(i);
                    if let Some(t) = trace.as_deref_mut() {
                        t.push(ScanEvent::Single(gid, i));
                    }
                }
            }
        }
    }
}

/// Straightforward implementation of the same relaxed rules that applies one
/// randomly chosen eligible removal at a time. Recomputes playability from
/// scratch at every step; intended for cross-checking [`prune_scan`].
pub fn reference_scan<R: Rng>(
    board: &Board,
    assignment: &PairingAssignment,
    rng: &mut R,
) -> (bool, SlotSet) {
    let layout = board.layout();
    let n = layout.len();
    let mut present: Vec<bool> = (0..n).map(|i| !board.is_removed(i)).collect();
    let start: Vec<usize> = (0..board.group_count())
        .map(|g| board.present_count(GroupId::from(g)))
        .collect();
    let playable = |present: &[bool], i: usize| {
        let clear = |v: &[usize]| v.iter().all(|&j| !present[j]);
        clear(layout.above(i)) && (clear(layout.left(i)) || clear(layout.right(i)))
    };
    loop {
        let mut events: Vec<Vec<usize>> = Vec::new();
        for (g, &initial) in start.iter().enumerate() {
            let gid = GroupId::from(g);
            let live: Vec<usize> = board
                .members(gid)
                .iter()
                .copied()
                .filter(|&i| present[i])
                .collect();
            if live.is_empty() {
                continue;
            }
            let free: Vec<usize> = live
                .iter()
                .copied()
                .filter(|&i| playable(&present, i))
                .collect();
            if let Some(pairs) = assignment.pairs(gid) {
                for (a, b) in pairs {
                    if present[a] && present[b] && free.contains(&a) && free.contains(&b) {
                        events.push(vec![a, b]);
                    }
                }
            } else if initial == 2 || live.len() == 4 {
                for x in 0..free.len() {
                    for y in x + 1..free.len() {
                        events.push(vec![free[x], free[y]]);
                    }
                }
            } else {
                events.extend(free.iter().map(|&i| vec![i]));
            }
        }
        let Some(ev) = events.choose(rng) else { break };
        for &i in ev {
            present[i] = false;
        }
    }
    let mut remaining = SlotSet::with_capacity(n);
    for (i, &p) in present.iter().enumerate() {
        remaining.set(i, p);
    }
    (remaining.count_ones(..) == 0, remaining)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::fixtures::{row4, stacks};
    use crate::shuffle::rng;

    fn assign(board: &Board, g: u32, k: PairingIndex) -> PairingAssignment {
        let mut a = PairingAssignment::empty(board);
        a.assign(GroupId(g), k);
        a
    }

    #[test]
    fn row_clears_unassigned() {
        let b = row4();
        let r = prune_scan(&b, &PairingAssignment::empty(&b));
        assert!(r.cleared);
        assert!(r.remaining.count_ones(..) == 0);
        assert_eq!(r.trace[0], ScanEvent::Pair(GroupId(0), 0, 3));
    }

    #[test]
    fn row_pairings() {
        let b = row4();
        assert!(!prune_scan(&b, &assign(&b, 0, PairingIndex::One)).cleared);
        assert!(!prune_scan(&b, &assign(&b, 0, PairingIndex::Two)).cleared);
        assert!(prune_scan(&b, &assign(&b, 0, PairingIndex::Three)).cleared);
        assert_eq!(
            pairing_feasibility(&b, &PairingAssignment::empty(&b), GroupId(0)),
            Some(PairingIndex::Three.bit())
        );
    }

    #[test]
    fn self_stacked_pair_never_clears() {
        let b = stacks(&[&[0, 0]]);
        let r = prune_scan(&b, &PairingAssignment::empty(&b));
        assert!(!r.cleared);
        assert_eq!(r.remaining.count_ones(..), 2);
    }

    #[test]
    fn isolated_group_feasibility_and_flags() {
        let b = stacks(&[&[0], &[0], &[0], &[0]]);
        let a = PairingAssignment::empty(&b);
        assert_eq!(pairing_feasibility(&b, &a, GroupId(0)), Some(0b111));
        assert_eq!(simultaneous_removal_flags(&b, &a), vec![true]);
    }

    #[test]
    fn feasibility_zero_when_already_blocked() {
        // Group 1 is a pair stacked on itself; nothing can help.
        let b = stacks(&[&[0], &[0], &[0], &[0], &[1, 1]]);
        let a = PairingAssignment::empty(&b);
        assert!(!prune_scan(&b, &a).cleared);
        assert_eq!(pairing_feasibility(&b, &a, GroupId(0)), Some(0));
        assert_eq!(pairing_feasibility(&b, &a, GroupId(1)), None);
    }

    #[test]
    fn simultaneity_flags() {
        // Row: middles only free up after the ends leave.
        let b = row4();
        assert_eq!(
            simultaneous_removal_flags(&b, &PairingAssignment::empty(&b)),
            vec![false]
        );
        // Group 0 has a tile buried under a self-stacked pair of group 1.
        let b = stacks(&[&[1, 1, 0], &[0], &[0], &[0]]);
        let flags = simultaneous_removal_flags(&b, &PairingAssignment::empty(&b));
        assert_eq!(flags, vec![false, false]);
    }

    #[test]
    fn tile_cycling_permutes_partitions() {
        let mut o = TileOrder::new(vec![10, 11, 12, 13]);
        let all = |o: &TileOrder| -> Vec<Partition> {
            let mut v: Vec<Partition> = PairingIndex::ALL.iter().map(|&k| o.partition(k)).collect();
            v.sort();
            v
        };
        let before = all(&o);
        let first = o.partition(PairingIndex::One);
        o.cycle_forward();
        assert_eq!(o.slots(), &[10, 13, 11, 12]);
        assert_eq!(all(&o), before);
        assert_ne!(o.partition(PairingIndex::One), first);
        o.cycle_backward();
        assert_eq!(o.slots(), &[10, 11, 12, 13]);
        o.cycle_backward();
        assert_eq!(o.slots(), &[10, 12, 13, 11]);
        assert_eq!(all(&o), before);
    }

    #[test]
    fn fast_scan_matches_reference_on_turtle() {
        let layout = crate::layouts::turtle_arc();
        let mut r = rng(5);
        for seed in 0..20 {
            let board = crate::shuffle::shuffle(&layout, &[4; 36], seed).unwrap();
            let mut a = PairingAssignment::empty(&board);
            for g in 0..36u32 {
                if g % 3 == (seed as u32) % 3 {
                    a.assign(
                        GroupId(g),
                        PairingIndex::ALL[(g as usize + seed as usize) % 3],
                    );
                }
            }
            let fast = prune_scan(&board, &a);
            let (cleared, rest) = reference_scan(&board, &a, &mut r);
            assert_eq!(fast.cleared, cleared);
            assert_eq!(fast.remaining, rest);
        }
    }

    /// Random pairings for roughly a third of the assignable groups.
    fn random_assignment(board: &Board, r: &mut impl Rng) -> PairingAssignment {
        let mut a = PairingAssignment::empty(board);
        for g in 0..board.group_count() {
            let g = GroupId::from(g);
            if a.is_assignable(g) && r.gen_bool(0.3) {
                a.assign(g, *PairingIndex::ALL.choose(r).unwrap());
            }
        }
        a
    }

    #[test]
    fn sound_against_oracle() {
        for board in crate::micro::micro_suite(200, 6, 3) {
            if crate::solver::oracle_solve(&board).unwrap().is_solvable() {
                assert!(prune_scan(&board, &PairingAssignment::empty(&board)).cleared);
            }
        }
    }

    #[test]
    fn confluent_under_random_orders() {
        let mut r = rng(8);
        for board in crate::micro::micro_suite(120, 7, 4) {
            let a = if r.gen_bool(0.5) {
                PairingAssignment::empty(&board)
            } else {
                random_assignment(&board, &mut r)
            };
            let fast = prune_scan(&board, &a);
            for _ in 0..10 {
                let (cleared, rest) = reference_scan(&board, &a, &mut r);
                assert_eq!((cleared, &rest), (fast.cleared, &fast.remaining));
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn more_pairings_never_help(seed in 0u64..10_000) {
            let mut r = rng(seed);
            let kind = crate::micro::MicroKind::ALL[(seed % 4) as usize];
            let board = crate::micro::micro_board(kind, 7, seed);
            let small = random_assignment(&board, &mut r);
            let mut large = small.clone();
            for g in 0..board.group_count() {
                let g = GroupId::from(g);
                if large.is_assignable(g) && large.get(g).is_none() && r.gen_bool(0.5) {
                    large.assign(g, *PairingIndex::ALL.choose(&mut r).unwrap());
                }
            }
            let (s, l) = (prune_scan(&board, &small), prune_scan(&board, &large));
            proptest::prop_assert!(s.cleared || !l.cleared);
            // The removed set can only shrink.
            proptest::prop_assert!(s.remaining.is_subset(&l.remaining));
        }
    }
}
