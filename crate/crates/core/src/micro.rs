// SPDX-License-Identifier: Apache-2.0

//! Small random boards, small enough for the exhaustive oracle.

use std::sync::Arc;

use rand::Rng;

use crate::board::{Board, Layout, Slot};
use crate::shuffle::{rng, shuffle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MicroKind {
    /// Every tile on the ground, nothing touching.
    Flat,
    /// Isolated stacks of random height.
    Stacks,
    /// Ground rows of random length.
    Rows,
    /// Tiles dropped at random half-unit positions onto a small area.
    Pile,
}

impl MicroKind {
    pub const ALL: [MicroKind; 4] = [
        MicroKind::Flat,
        MicroKind::Stacks,
        MicroKind::Rows,
        MicroKind::Pile,
    ];
}

/// A board of `2..=max_groups` groups (mostly fours, some twos) on a random
/// layout of the given kind. Deterministic in `seed`.
pub fn micro_board(kind: MicroKind, max_groups: usize, seed: u64) -> Board {
    let mut r = rng(seed);
    let groups = r.gen_range(2..=max_groups.max(2));
    let sizes: Vec<usize> = (0..groups)
        .map(|_| if r.gen_bool(0.25) { 2 } else { 4 })
        .collect();
    let tiles: usize = sizes.iter().sum();
    let layout = match kind {
        MicroKind::Flat => (0..tiles as i32).map(|i| Slot::new(4 * i, 0, 0)).collect(),
        MicroKind::Stacks => stacks(&mut r, tiles),
        MicroKind::Rows => rows(&mut r, tiles),
        MicroKind::Pile => pile(&mut r, tiles),
    };
    let layout = Arc::new(Layout::new(layout).expect("generated micro layout is valid"));
    shuffle(&layout, &sizes, r.gen()).expect("sizes match the layout")
}

/// Cycles through the kinds: board `i` has kind `ALL[i % 4]`.
pub fn micro_suite(n: usize, max_groups: usize, seed: u64) -> Vec<Board> {
    (0..n)
        .map(|i| {
            let kind = MicroKind::ALL[i % MicroKind::ALL.len()];
            micro_board(
                kind,
                max_groups,
                crate::shuffle::derive_seed(seed, i as u64),
            )
        })
        .collect()
}

fn stacks<R: Rng>(r: &mut R, tiles: usize) -> Vec<Slot> {
    let mut out = Vec::with_capacity(tiles);
    let mut x = 0;
    while out.len() < tiles {
        let h = r.gen_range(1..=4).min(tiles - out.len());
        out.extend((0..h as i32).map(|z| Slot::new(x, 0, z)));
        x += 4;
    }
    out
}

fn rows<R: Rng>(r: &mut R, tiles: usize) -> Vec<Slot> {
    let mut out = Vec::with_capacity(tiles);
    let mut y = 0;
    while out.len() < tiles {
        let len = r.gen_range(1..=6).min(tiles - out.len());
        let start = r.gen_range(0..=1);
        out.extend((0..len as i32).map(|i| Slot::new(start + 2 * i, y, 0)));
        y += 2;
    }
    out
}

fn pile<R: Rng>(r: &mut R, tiles: usize) -> Vec<Slot> {
    let mut out: Vec<Slot> = Vec::with_capacity(tiles);
    let width = 2 + tiles as i32 * 2 / 3;
    for _ in 0..tiles {
        let x = r.gen_range(0..=width);
        let y = r.gen_range(0..=3);
        let probe = Slot::new(x, y, 0);
        let z = out
            .iter()
            .filter(|s| s.overlaps(&probe))
            .map(|s| s.z + 1)
            .max()
            .unwrap_or(0);
        out.push(Slot::new(x, y, z));
    }
    out
}
