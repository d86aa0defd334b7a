// SPDX-License-Identifier: Apache-2.0

//! Playing low stacks without peeking: covered tiles are face down.
//!
//! On isolated stacks of height at most two the only covered tiles are the
//! bottoms of two-stacks. [`no_peek_policy`] is the greedy strategy (lowest
//! group with a match, preferring tiles off the ground); the expectimax
//! functions compute exact win probabilities over all deals for tiny layouts
//! so the policy can be compared against the optimum.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::Ratio;

use crate::board::{Board, GroupId, Layout, Move};
use crate::error::SolveError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tile {
    Removed,
    /// Present but covered, identity unknown.
    Hidden,
    Known(GroupId),
}

/// What a player without peeking sees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisibleBoard {
    layout: Arc<Layout>,
    tiles: Vec<Tile>,
}

impl VisibleBoard {
    pub fn from_board(board: &Board) -> Self {
        let layout = board.layout().clone();
        let tiles = (0..layout.len())
            .map(|i| {
                if board.is_removed(i) {
                    Tile::Removed
                } else if layout.above(i).iter().any(|&j| !board.is_removed(j)) {
                    Tile::Hidden
                } else {
                    Tile::Known(board.group_of(i))
                }
            })
            .collect();
        VisibleBoard { layout, tiles }
    }

    pub fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    fn present(&self, i: usize) -> bool {
        self.tiles[i] != Tile::Removed
    }

    fn playable(&self, i: usize) -> bool {
        let l = &self.layout;
        let clear = |v: &[usize]| v.iter().all(|&j| !self.present(j));
        self.present(i) && clear(l.above(i)) && (clear(l.left(i)) || clear(l.right(i)))
    }
}

/// Lowest-id group with a match; among its matches the one with the most
/// tiles above the ground, ties going to the lexicographically smallest slot
/// pair. `None` when no group has a match.
pub fn no_peek_policy(visible: &VisibleBoard) -> Option<Move> {
    let (a, b) = policy_pair(visible)?;
    Some(Move::new(visible.layout.slot(a), visible.layout.slot(b)))
}

fn policy_pair(visible: &VisibleBoard) -> Option<(usize, usize)> {
    let free: Vec<(GroupId, usize)> = (0..visible.tiles.len())
        .filter(|&i| visible.playable(i))
        .filter_map(|i| match visible.tiles[i] {
            Tile::Known(g) => Some((g, i)),
            _ => None,
        })
        .collect();
    let mut best: Option<(GroupId, usize, (usize, usize))> = None;
    let slot = |i: usize| visible.layout.slot(i);
    for (x, &(g, a)) in free.iter().enumerate() {
        for &(h, b) in &free[x + 1..] {
            if g != h {
                continue;
            }
            let up = (slot(a).z > 0) as usize + (slot(b).z > 0) as usize;
            let pair = if slot(a) <= slot(b) { (a, b) } else { (b, a) };
            let better = match best {
                None => true,
                Some((bg, bu, bp)) => {
                    g < bg
                        || (g == bg
                            && (up > bu
                                || (up == bu
                                    && (slot(pair.0), slot(pair.1)) < (slot(bp.0), slot(bp.1)))))
                }
            };
            if better {
                best = Some((g, up, pair));
            }
        }
    }
    best.map(|(_, _, p)| p)
}

pub const EXPECTIMAX_MAX_GROUPS: usize = 3;
pub const EXPECTIMAX_MAX_TILES: usize = 12;

type World = Vec<u8>;

fn worlds(layout: &Arc<Layout>, group_sizes: &[usize]) -> Result<Vec<World>, SolveError> {
    if group_sizes.len() > EXPECTIMAX_MAX_GROUPS || layout.len() > EXPECTIMAX_MAX_TILES {
        return Err(SolveError::Precondition(
            "expectimax is limited to 3 groups and 12 tiles",
        ));
    }
    if !layout.is_isolated_stacks(2) {
        return Err(SolveError::Precondition(
            "layout must be isolated stacks of height at most 2",
        ));
    }
    if group_sizes.iter().any(|&s| s != 2 && s != 4)
        || group_sizes.iter().sum::<usize>() != layout.len()
    {
        return Err(SolveError::Precondition(
            "group sizes must be 2 or 4 and fill the layout",
        ));
    }
    let mut out = Vec::new();
    let mut left: Vec<usize> = group_sizes.to_vec();
    let mut cur = Vec::with_capacity(layout.len());
    deal(&mut left, &mut cur, layout.len(), &mut out);
    Ok(out)
}

fn deal(left: &mut [usize], cur: &mut World, n: usize, out: &mut Vec<World>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for g in 0..left.len() {
        if left[g] > 0 {
            left[g] -= 1;
            cur.push(g as u8);
            deal(left, cur, n, out);
            cur.pop();
            left[g] += 1;
        }
    }
}

fn board_for(layout: &Arc<Layout>, world: &World) -> Board {
    Board::new(
        layout.clone(),
        world.iter().map(|&g| GroupId(g as u32)).collect(),
    )
    .expect("dealt sizes are valid")
}

/// Win probability of [`no_peek_policy`] over all equally likely deals of
/// groups with the given sizes onto `layout`.
pub fn policy_value(layout: &Arc<Layout>, group_sizes: &[usize]) -> Result<Ratio<u64>, SolveError> {
    let all = worlds(layout, group_sizes)?;
    let wins = all
        .iter()
        .filter(|w| {
            let mut b = board_for(layout, w);
            while let Some((x, y)) = policy_pair(&VisibleBoard::from_board(&b)) {
                b.remove_pair(x, y);
            }
            b.is_cleared()
        })
        .count();
    Ok(Ratio::new(wins as u64, all.len() as u64))
}

/// Best achievable win probability without peeking, maximizing over moves
/// and averaging over the deals consistent with what has been seen.
pub fn expectimax_no_peek(
    layout: &Arc<Layout>,
    group_sizes: &[usize],
) -> Result<Ratio<u64>, SolveError> {
    let all = worlds(layout, group_sizes)?;
    let total = all.len() as u64;
    let mut search = Expectimax {
        layout: layout.clone(),
        memo: HashMap::new(),
    };
    let removed = 0u32;
    let wins: u64 = split(&search.layout, removed, &all)
        .into_values()
        .map(|part| search.wins(removed, part))
        .sum();
    Ok(Ratio::new(wins, total))
}

struct Expectimax {
    layout: Arc<Layout>,
    memo: HashMap<(u32, Vec<u8>), u64>,
}

const GONE: u8 = u8::MAX;
const FACE_DOWN: u8 = u8::MAX - 1;

fn covered(layout: &Layout, removed: u32, i: usize) -> bool {
    layout.above(i).iter().any(|&j| removed >> j & 1 == 0)
}

/// Groups deals by what they show: identities of uncovered present tiles.
fn split(layout: &Layout, removed: u32, worlds: &[World]) -> HashMap<Vec<u8>, Vec<World>> {
    let mut parts: HashMap<Vec<u8>, Vec<World>> = HashMap::new();
    for w in worlds {
        parts
            .entry(view(layout, removed, w))
            .or_default()
            .push(w.clone());
    }
    parts
}

fn view(layout: &Layout, removed: u32, w: &World) -> Vec<u8> {
    (0..w.len())
        .map(|i| {
            if removed >> i & 1 == 1 {
                GONE
            } else if covered(layout, removed, i) {
                FACE_DOWN
            } else {
                w[i]
            }
        })
        .collect()
}

impl Expectimax {
    /// Number of `worlds` (all showing the same view) won by optimal play.
    fn wins(&mut self, removed: u32, worlds: Vec<World>) -> u64 {
        let n = self.layout.len();
        if removed.count_ones() as usize == n {
            return worlds.len() as u64;
        }
        let shown = view(&self.layout, removed, &worlds[0]);
        // The multiset of face-down groups is fixed by the view plus the
        // removed tiles' groups, which are the same in every world here.
        let mut key_view = shown.clone();
        let mut down: Vec<u8> = (0..n)
            .filter(|&i| shown[i] == FACE_DOWN)
            .map(|i| worlds[0][i])
            .collect();
        down.sort();
        key_view.extend(down);
        let key = (removed, key_view);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let layout = self.layout.clone();
        let free: Vec<usize> = (0..n)
            .filter(|&i| shown[i] != GONE && shown[i] != FACE_DOWN)
            .filter(|&i| {
                let gone = |v: &[usize]| v.iter().all(|&j| removed >> j & 1 == 1);
                gone(layout.left(i)) || gone(layout.right(i))
            })
            .collect();
        let mut best = 0;
        for (x, &a) in free.iter().enumerate() {
            for &b in &free[x + 1..] {
                if shown[a] != shown[b] {
                    continue;
                }
                let next = removed | 1 << a | 1 << b;
                let value: u64 = split(&layout, next, &worlds)
                    .into_values()
                    .map(|part| self.wins(next, part))
                    .sum();
                best = best.max(value);
            }
        }
        self.memo.insert(key, best);
        best
    }
}

/// All layouts of `singles` one-tile stacks followed by `doubles` two-tile
/// stacks with every group-size list that fits the expectimax bounds.
pub fn micro_instances() -> Vec<(Arc<Layout>, Vec<usize>)> {
    let mut out = Vec::new();
    for doubles in 0..=6 {
        for singles in 0..=EXPECTIMAX_MAX_TILES - 2 * doubles {
            let tiles = singles + 2 * doubles;
            if tiles == 0 {
                continue;
            }
            let mut slots = Vec::new();
            for s in 0..singles {
                slots.push(crate::board::Slot::new(4 * s as i32, 0, 0));
            }
            for d in 0..doubles {
                let x = 4 * (singles + d) as i32;
                slots.push(crate::board::Slot::new(x, 0, 0));
                slots.push(crate::board::Slot::new(x, 0, 1));
            }
            let Ok(layout) = Layout::new(slots) else {
                continue;
            };
            let layout = Arc::new(layout);
            for sizes in size_lists(tiles) {
                out.push((layout.clone(), sizes));
            }
        }
    }
    out
}

fn size_lists(tiles: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 1..=EXPECTIMAX_MAX_GROUPS {
        for code in 0..1usize << k {
            let sizes: Vec<usize> = (0..k)
                .map(|i| if code >> i & 1 == 1 { 4 } else { 2 })
                .collect();
            if sizes.iter().sum::<usize>() == tiles {
                out.push(sizes);
            }
        }
    }
    out
}
