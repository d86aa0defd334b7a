// SPDX-License-Identifier: Apache-2.0

//! Board geometry, playability and move application.
//!
//! Slots live on a half-unit grid: a tile at `(x, y, z)` occupies the square
//! `[x, x+2) × [y, y+2)` on level `z`. A tile is playable when nothing on the
//! level above overlaps its footprint and at least one of its horizontal sides
//! is free at its own level.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{BoardError, LayoutError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub x: i32,
    pub y: i32,
    pub z: i32,
}

impl Slot {
    pub const fn new(x: i32, y: i32, z: i32) -> Self {
        Slot { x, y, z }
    }

    /// Footprints intersect, ignoring levels.
    pub fn overlaps(&self, other: &Slot) -> bool {
        (self.x - other.x).abs() < 2 && (self.y - other.y).abs() < 2
    }

    fn rows_overlap(&self, other: &Slot) -> bool {
        (self.y - other.y).abs() < 2
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupId(pub u32);

impl GroupId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for GroupId {
    fn from(i: usize) -> Self {
        GroupId(i as u32)
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A validated set of slots with precomputed neighbourhoods.
///
/// Slots are kept sorted, so two layouts built from the same slot set compare
/// equal regardless of input order.
#[derive(Debug, Clone)]
pub struct Layout {
    slots: Vec<Slot>,
    index: HashMap<Slot, usize>,
    /// Slots one level up whose footprint overlaps.
    above: Vec<Vec<usize>>,
    /// Slots one level down whose footprint overlaps.
    below: Vec<Vec<usize>>,
    /// Same-level slots touching the left side.
    left: Vec<Vec<usize>>,
    /// Same-level slots touching the right side.
    right: Vec<Vec<usize>>,
}

impl PartialEq for Layout {
    fn eq(&self, other: &Self) -> bool {
        self.slots == other.slots
    }
}

impl Eq for Layout {}

impl Layout {
    pub fn new(input: Vec<Slot>) -> Result<Layout, LayoutError> {
        for (i, s) in input.iter().enumerate() {
            if s.z < 0 {
                return Err(LayoutError::NegativeLevel { index: i, slot: *s });
            }
        }
        for i in 0..input.len() {
            for j in i + 1..input.len() {
                let (a, b) = (&input[i], &input[j]);
                if a.z == b.z && a.overlaps(b) {
                    return Err(LayoutError::Overlap {
                        first: i,
                        second: j,
                        first_slot: *a,
                        second_slot: *b,
                    });
                }
            }
        }
        for (i, s) in input.iter().enumerate() {
            if s.z > 0 && !input.iter().any(|t| t.z == s.z - 1 && t.overlaps(s)) {
                return Err(LayoutError::Unsupported { index: i, slot: *s });
            }
        }
        if !input.len().is_multiple_of(2) {
            return Err(LayoutError::OddCount(input.len()));
        }

        let mut slots = input;
        slots.sort();
        let n = slots.len();
        let index = slots.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut above = vec![Vec::new(); n];
        let mut below = vec![Vec::new(); n];
        let mut left = vec![Vec::new(); n];
        let mut right = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (&slots[i], &slots[j]);
                if b.z == a.z + 1 && a.overlaps(b) {
                    above[i].push(j);
                    below[j].push(i);
                }
                if b.z == a.z && a.rows_overlap(b) {
                    if b.x + 2 == a.x {
                        left[i].push(j);
                    } else if b.x == a.x + 2 {
                        right[i].push(j);
                    }
                }
            }
        }
        Ok(Layout {
            slots,
            index,
            above,
            below,
            left,
            right,
        })
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slot(&self, i: usize) -> Slot {
        self.slots[i]
    }

    pub fn index_of(&self, s: Slot) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn above(&self, i: usize) -> &[usize] {
        &self.above[i]
    }

    pub fn below(&self, i: usize) -> &[usize] {
        &self.below[i]
    }

    pub fn left(&self, i: usize) -> &[usize] {
        &self.left[i]
    }

    pub fn right(&self, i: usize) -> &[usize] {
        &self.right[i]
    }

    /// True when every slot forms part of a plain vertical column that touches
    /// no other column, with no column taller than `max_height`.
    pub fn is_isolated_stacks(&self, max_height: i32) -> bool {
        (0..self.len()).all(|i| {
            let s = self.slots[i];
            let aligned = |&j: &usize| {
                let t = self.slots[j];
                t.x == s.x && t.y == s.y
            };
            s.z < max_height
                && self.left[i].is_empty()
                && self.right[i].is_empty()
                && self.above[i].iter().all(aligned)
                && self.below[i].iter().all(aligned)
        })
    }
}

/// Dense set of slot indices.
pub type SlotSet = FixedBitSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub a: Slot,
    pub b: Slot,
}

impl Move {
    pub fn new(a: Slot, b: Slot) -> Self {
        Move { a, b }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "play {} {} {} {} {} {}",
            self.a.x, self.a.y, self.a.z, self.b.x, self.b.y, self.b.z
        )
    }
}

/// A layout with a group assigned to every slot and a set of removed slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Board {
    layout: Arc<Layout>,
    groups: Vec<GroupId>,
    members: Vec<Vec<usize>>,
    removed: SlotSet,
}

impl Board {
    /// `groups[i]` is the group of `layout.slot(i)`.
    pub fn new(layout: Arc<Layout>, groups: Vec<GroupId>) -> Result<Board, BoardError> {
        if groups.len() != layout.len() {
            return Err(BoardError::AssignmentLength {
                assigned: groups.len(),
                slots: layout.len(),
            });
        }
        let count = groups.iter().map(|g| g.index() + 1).max().unwrap_or(0);
        let mut members = vec![Vec::new(); count];
        for (i, g) in groups.iter().enumerate() {
            members[g.index()].push(i);
        }
        for (g, m) in members.iter().enumerate() {
            match m.len() {
                0 => return Err(BoardError::SparseGroups(GroupId::from(g))),
                2 | 4 => {}
                size => {
                    return Err(BoardError::GroupSize {
                        group: GroupId::from(g),
                        size,
                    })
                }
            }
        }
        let removed = SlotSet::with_capacity(layout.len());
        Ok(Board {
            layout,
            groups,
            members,
            removed,
        })
    }

    /// Builds a board from explicit `(slot, group)` pairs.
    pub fn from_tiles(tiles: &[(Slot, GroupId)]) -> Result<Board, BoardError> {
        let layout = Arc::new(Layout::new(tiles.iter().map(|t| t.0).collect())?);
        let mut groups = vec![GroupId(0); layout.len()];
        for &(s, g) in tiles {
            groups[layout.index_of(s).expect("slot just inserted")] = g;
        }
        Board::new(layout, groups)
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    pub fn group_count(&self) -> usize {
        self.members.len()
    }

    pub fn group_of(&self, i: usize) -> GroupId {
        self.groups[i]
    }

    pub fn groups(&self) -> &[GroupId] {
        &self.groups
    }

    /// All slot indices of a group, removed or not, ascending.
    pub fn members(&self, g: GroupId) -> &[usize] {
        &self.members[g.index()]
    }

    pub fn present_members(&self, g: GroupId) -> impl Iterator<Item = usize> + '_ {
        self.members[g.index()]
            .iter()
            .copied()
            .filter(move |&i| !self.removed[i])
    }

    pub fn present_count(&self, g: GroupId) -> usize {
        self.present_members(g).count()
    }

    pub fn removed(&self) -> &SlotSet {
        &self.removed
    }

    pub fn is_removed(&self, i: usize) -> bool {
        self.removed[i]
    }

    pub fn remaining(&self) -> usize {
        self.layout.len() - self.removed.count_ones(..)
    }

    pub fn is_cleared(&self) -> bool {
        self.remaining() == 0
    }

    /// Number of groups that still have all four tiles.
    pub fn full_groups(&self) -> usize {
        (0..self.group_count())
            .filter(|&g| {
                self.members[g].len() == 4 && self.members[g].iter().all(|&i| !self.removed[i])
            })
            .count()
    }

    pub fn index_of(&self, s: Slot) -> Result<usize, BoardError> {
        self.layout.index_of(s).ok_or(BoardError::UnknownSlot(s))
    }

    pub fn playable(&self, s: Slot) -> Result<bool, BoardError> {
        let i = self.index_of(s)?;
        if self.removed[i] {
            return Err(BoardError::RemovedSlot(s));
        }
        Ok(self.is_playable(i))
    }

    /// Playability of a present slot by index.
    pub fn is_playable(&self, i: usize) -> bool {
        let gone = |v: &[usize]| v.iter().all(|&j| self.removed[j]);
        gone(self.layout.above(i)) && (gone(self.layout.left(i)) || gone(self.layout.right(i)))
    }

    /// True when the present tile at `i` covers or side-touches another present tile.
    pub fn blocks_any(&self, i: usize) -> bool {
        let l = &self.layout;
        l.below(i)
            .iter()
            .chain(l.left(i))
            .chain(l.right(i))
            .any(|&j| !self.removed[j])
    }

    /// Present, playable tiles of one group, ascending by slot.
    pub fn playable_members(&self, g: GroupId) -> Vec<usize> {
        self.present_members(g)
            .filter(|&i| self.is_playable(i))
            .collect()
    }

    /// Every playable same-group pair, each once, ordered by group and then
    /// by slot coordinates.
    pub fn legal_moves(&self) -> Vec<Move> {
        self.legal_pairs()
            .into_iter()
            .map(|(a, b)| self.to_move(a, b))
            .collect()
    }

    /// Index form of [`Board::legal_moves`].
    pub fn legal_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for g in 0..self.group_count() {
            let p = self.playable_members(GroupId::from(g));
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    out.push((p[i], p[j]));
                }
            }
        }
        out
    }

    pub fn to_move(&self, a: usize, b: usize) -> Move {
        Move::new(self.layout.slot(a), self.layout.slot(b))
    }

    pub fn apply_move(&mut self, m: Move) -> Result<(), BoardError> {
        let a = self.index_of(m.a)?;
        let b = self.index_of(m.b)?;
        let illegal = |reason| BoardError::IllegalMove {
            a: m.a,
            b: m.b,
            reason,
        };
        if a == b {
            return Err(illegal("both ends are the same slot"));
        }
        if self.removed[a] || self.removed[b] {
            return Err(illegal("slot already removed"));
        }
        if self.groups[a] != self.groups[b] {
            return Err(illegal("tiles belong to different groups"));
        }
        if !self.is_playable(a) || !self.is_playable(b) {
            return Err(illegal("tile not playable"));
        }
        self.remove_pair(a, b);
        Ok(())
    }

    pub fn undo_move(&mut self, m: Move) -> Result<(), BoardError> {
        let a = self.index_of(m.a)?;
        let b = self.index_of(m.b)?;
        if a == b || !self.removed[a] || !self.removed[b] || self.groups[a] != self.groups[b] {
            return Err(BoardError::IllegalMove {
                a: m.a,
                b: m.b,
                reason: "not a removed same-group pair",
            });
        }
        self.restore_pair(a, b);
        Ok(())
    }

    /// Unchecked removal for solver inner loops.
    pub(crate) fn remove_pair(&mut self, a: usize, b: usize) {
        self.removed.insert(a);
        self.removed.insert(b);
    }

    pub(crate) fn restore_pair(&mut self, a: usize, b: usize) {
        self.removed.set(a, false);
        self.removed.set(b, false);
    }

    /// The board with every tile back in place.
    pub fn reset(&self) -> Board {
        Board {
            removed: SlotSet::with_capacity(self.layout.len()),
            ..self.clone()
        }
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Tiles of one group in a contiguous ground row.
    pub fn row4() -> Board {
        Board::from_tiles(&[
            (Slot::new(0, 0, 0), GroupId(0)),
            (Slot::new(2, 0, 0), GroupId(0)),
            (Slot::new(4, 0, 0), GroupId(0)),
            (Slot::new(6, 0, 0), GroupId(0)),
        ])
        .unwrap()
    }

    /// Isolated stacks, each listed top to bottom, placed 4 half-units apart.
    pub fn stacks(stacks: &[&[u32]]) -> Board {
        let mut tiles = Vec::new();
        for (n, st) in stacks.iter().enumerate() {
            let h = st.len() as i32;
            for (k, &g) in st.iter().enumerate() {
                tiles.push((Slot::new(4 * n as i32, 0, h - 1 - k as i32), GroupId(g)));
            }
        }
        Board::from_tiles(&tiles).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn stack_only_top_is_playable() {
        let b = stacks(&[&[0, 1, 1], &[1, 0, 0], &[0], &[1]]);
        assert!(b.playable(Slot::new(0, 0, 2)).unwrap());
        assert!(!b.playable(Slot::new(0, 0, 1)).unwrap());
        assert!(!b.playable(Slot::new(0, 0, 0)).unwrap());
    }

    #[test]
    fn row_only_ends_are_playable() {
        let b = row4();
        let p: Vec<bool> = (0..4).map(|i| b.is_playable(i)).collect();
        assert_eq!(p, vec![true, false, false, true]);
    }

    #[test]
    fn half_offset_cover_blocks() {
        let b = Board::from_tiles(&[
            (Slot::new(0, 0, 0), GroupId(0)),
            (Slot::new(4, 0, 0), GroupId(0)),
            (Slot::new(1, 0, 1), GroupId(0)),
            (Slot::new(8, 0, 0), GroupId(0)),
        ])
        .unwrap();
        assert!(!b.playable(Slot::new(0, 0, 0)).unwrap());
        assert!(b.playable(Slot::new(1, 0, 1)).unwrap());
    }

    #[test]
    fn playable_rejects_removed_and_unknown() {
        let mut b = row4();
        assert_eq!(
            b.playable(Slot::new(9, 9, 0)),
            Err(BoardError::UnknownSlot(Slot::new(9, 9, 0)))
        );
        b.apply_move(Move::new(Slot::new(0, 0, 0), Slot::new(6, 0, 0)))
            .unwrap();
        assert!(matches!(
            b.playable(Slot::new(0, 0, 0)),
            Err(BoardError::RemovedSlot(_))
        ));
    }

    #[test]
    fn legal_moves_cases() {
        let b = row4();
        assert_eq!(
            b.legal_moves(),
            vec![Move::new(Slot::new(0, 0, 0), Slot::new(6, 0, 0))]
        );
        let two = Board::from_tiles(&[
            (Slot::new(0, 0, 0), GroupId(0)),
            (Slot::new(8, 0, 0), GroupId(0)),
        ])
        .unwrap();
        assert_eq!(two.legal_moves().len(), 1);
        let mut cleared = two.clone();
        cleared
            .apply_move(Move::new(Slot::new(8, 0, 0), Slot::new(0, 0, 0)))
            .unwrap();
        assert!(cleared.legal_moves().is_empty());
        assert!(cleared.is_cleared());
        assert_eq!(cleared.group_count(), 1);
        assert_eq!(cleared.present_count(GroupId(0)), 0);
    }

    #[test]
    fn apply_then_undo_restores() {
        let mut b = row4();
        let orig = b.clone();
        let m = b.legal_moves()[0];
        b.apply_move(m).unwrap();
        assert_eq!(
            b.legal_moves(),
            vec![Move::new(Slot::new(2, 0, 0), Slot::new(4, 0, 0))]
        );
        b.undo_move(m).unwrap();
        assert_eq!(b, orig);
    }

    #[test]
    fn illegal_moves_are_rejected() {
        let mut b = row4();
        let bad = Move::new(Slot::new(0, 0, 0), Slot::new(2, 0, 0));
        assert!(matches!(
            b.apply_move(bad),
            Err(BoardError::IllegalMove { .. })
        ));
        assert!(b.undo_move(bad).is_err());
        let mixed = stacks(&[&[0], &[1], &[0], &[1]]);
        let m = Move::new(Slot::new(0, 0, 0), Slot::new(4, 0, 0));
        assert!(mixed.clone().apply_move(m).is_err());
    }

    #[test]
    fn layout_invariants() {
        assert!(matches!(
            Layout::new(vec![Slot::new(0, 0, 0), Slot::new(1, 1, 0)]),
            Err(LayoutError::Overlap {
                first: 0,
                second: 1,
                ..
            })
        ));
        assert!(matches!(
            Layout::new(vec![Slot::new(0, 0, 0), Slot::new(4, 0, 1)]),
            Err(LayoutError::Unsupported { index: 1, .. })
        ));
        assert!(matches!(
            Layout::new(vec![Slot::new(0, 0, 0)]),
            Err(LayoutError::OddCount(1))
        ));
        assert!(matches!(
            Layout::new(vec![Slot::new(0, 0, -1), Slot::new(4, 0, 0)]),
            Err(LayoutError::NegativeLevel { .. })
        ));
    }

    #[test]
    fn group_sizes_validated() {
        let err = Board::from_tiles(&[
            (Slot::new(0, 0, 0), GroupId(0)),
            (Slot::new(4, 0, 0), GroupId(0)),
            (Slot::new(8, 0, 0), GroupId(0)),
            (Slot::new(12, 0, 0), GroupId(2)),
        ]);
        assert!(err.is_err());
    }

    #[test]
    fn isolated_stack_detection() {
        assert!(stacks(&[&[0, 1], &[1, 0]]).layout().is_isolated_stacks(2));
        assert!(!stacks(&[&[0, 1, 1], &[1, 0, 0], &[0], &[1]])
            .layout()
            .is_isolated_stacks(2));
        assert!(!row4().layout().is_isolated_stacks(2));
    }
}
