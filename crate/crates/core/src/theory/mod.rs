// SPDX-License-Identifier: Apache-2.0

//! Complexity constructions and exactly solvable special cases.
//!
//! * [`reduce_3sat`] / [`one_level`]: boards that encode a 3-SAT formula.
//! * [`detect_blocked_cycle`] / [`solve_low_peek`]: stacks of height at most
//!   two, decided in polynomial time.
//! * [`no_peek_policy`] / [`expectimax_no_peek`]: the same stacks played
//!   without looking under tiles.

pub mod dimacs;
pub mod low;
pub mod nopeek;
pub mod reduction;

pub use dimacs::{canonical_formulas, parse_dimacs, CnfFormula, Literal};
pub use low::{detect_blocked_cycle, solve_low_peek, BlockedCycle};
pub use nopeek::{expectimax_no_peek, no_peek_policy, policy_value, Tile, VisibleBoard};
pub use reduction::{one_level, reduce_3sat, shape_audit, Reduction, ReductionTag};
