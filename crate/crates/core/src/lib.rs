// SPDX-License-Identifier: Apache-2.0

//! Solvability engine for generalized Mahjong Solitaire with peeking.
//!
//! Any number of groups of 2 or 4 interchangeable tiles are laid out on a
//! half-unit grid; a pair of playable tiles of the same group can be removed.
//! The crate decides whether a board can be cleared and produces the winning
//! move sequence, generates hard boards from 3-SAT formulas, solves
//! two-level stack layouts in polynomial time, and estimates per-layout
//! unsolvable fractions by seeded Monte Carlo scans.

pub mod board;
pub mod error;
pub mod format;
pub mod harness;
pub mod layouts;
pub mod micro;
pub mod scan;
pub mod shuffle;
pub mod solver;
pub mod theory;

pub use board::{Board, GroupId, Layout, Move, Slot, SlotSet};
pub use error::{BoardError, DimacsError, LayoutError, ParseError, SolveError};
pub use format::{parse_board, parse_layout, serialize_board, serialize_layout};
pub use harness::{scan_layout, ScanConfig, ScanReport};
pub use scan::{prune_scan, PairingAssignment, PairingIndex, ScanResult};
pub use shuffle::shuffle;
pub use solver::{
    oracle_solve, random_solve, solve_group_directed, solve_match_directed, verify_solution,
    Heuristic, Solution, Verdict,
};
