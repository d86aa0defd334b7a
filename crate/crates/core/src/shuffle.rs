// SPDX-License-Identifier: Apache-2.0

//! Seeded board generation.
//!
//! All randomness in the crate goes through [`rng`], a ChaCha8 stream seeded
//! from a `u64`. ChaCha8 output is specified independently of platform and
//! word size, so a seed reproduces the same board everywhere.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::board::{Board, GroupId, Layout};
use crate::error::BoardError;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer; a bijection on `u64`.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the `index`-th board of a scan. Injective in `index` for a fixed
/// master seed: an odd-stride walk followed by a bijective mix.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    mix64(master.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

/// Fisher–Yates over the tile multiset, walking from the top index down.
fn fisher_yates<T>(items: &mut [T], rng: &mut SeededRng) {
    for i in (1..items.len()).rev() {
        let j = rng.gen_range(0..=i);
        items.swap(i, j);
    }
}

/// Deals groups of the given sizes onto the layout uniformly at random.
pub fn shuffle(
    layout: &Arc<Layout>,
    group_sizes: &[usize],
    seed: u64,
) -> Result<Board, BoardError> {
    if let Some(&bad) = group_sizes.iter().find(|&&s| s != 2 && s != 4) {
        return Err(BoardError::BadGroupSize(bad));
    }
    let total: usize = group_sizes.iter().sum();
    if total != layout.len() {
        return Err(BoardError::SizeMismatch {
            total,
            slots: layout.len(),
        });
    }
    let mut tiles: Vec<GroupId> = group_sizes
        .iter()
        .enumerate()
        .flat_map(|(g, &n)| std::iter::repeat_n(GroupId::from(g), n))
        .collect();
    fisher_yates(&mut tiles, &mut rng(seed));
    Board::new(Arc::clone(layout), tiles)
}

/// Groups of four, plus one pair when the slot count is not a multiple of four.
pub fn default_group_sizes(slots: usize) -> Vec<usize> {
    let mut sizes = vec![4; slots / 4];
    if slots % 4 == 2 {
        sizes.push(2);
    }
    sizes
}
