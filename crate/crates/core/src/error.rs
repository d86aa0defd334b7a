// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::board::{GroupId, Slot};

/// Violations of the layout invariants.
///
/// Positions refer to the order in which slots were handed to
/// [`Layout::new`](crate::Layout::new); the file parser maps them back to
/// line numbers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutError {
    #[error("slot {slot} has a negative level")]
    NegativeLevel { index: usize, slot: Slot },
    #[error("slots {first_slot} and {second_slot} overlap on the same level")]
    Overlap {
        first: usize,
        second: usize,
        first_slot: Slot,
        second_slot: Slot,
    },
    #[error("slot {slot} is not supported by any tile on the level below")]
    Unsupported { index: usize, slot: Slot },
    #[error("layout has an odd number of slots ({0})")]
    OddCount(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoardError {
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error("assignment covers {assigned} slots but the layout has {slots}")]
    AssignmentLength { assigned: usize, slots: usize },
    #[error("group {group} has {size} tiles; groups must have 2 or 4")]
    GroupSize { group: GroupId, size: usize },
    #[error("group ids are not dense: group {0} has no tiles")]
    SparseGroups(GroupId),
    #[error("slot {0} is not part of the layout")]
    UnknownSlot(Slot),
    #[error("slot {0} has already been removed")]
    RemovedSlot(Slot),
    #[error("illegal move {a} / {b}: {reason}")]
    IllegalMove {
        a: Slot,
        b: Slot,
        reason: &'static str,
    },
    #[error("group sizes sum to {total} but the layout has {slots} slots")]
    SizeMismatch { total: usize, slots: usize },
    #[error("unsupported group size {0}; sizes must be 2 or 4")]
    BadGroupSize(usize),
}

/// File-level diagnostics. Line numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("lines {first} and {second}: slots overlap on the same level")]
    Overlap { first: usize, second: usize },
    #[error("line {line}: slot is not supported by any tile below")]
    Unsupported { line: usize },
    #[error("line {line}: negative level")]
    NegativeLevel { line: usize },
    #[error("file has an odd number of slots ({0})")]
    OddCount(usize),
    #[error("group {group} has {size} tiles; groups must have 2 or 4")]
    GroupSize { group: GroupId, size: usize },
    #[error("group ids are not dense: group {0} has no tiles")]
    SparseGroups(GroupId),
    #[error("file contains no slots")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("board has {groups} groups; the exhaustive oracle is limited to {limit}")]
    TooManyGroups { groups: usize, limit: usize },
    #[error("board is outside the supported class: {0}")]
    Precondition(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: clause data before the `p cnf` header")]
    MissingHeader { line: usize },
    #[error("line {line}: malformed or repeated `p cnf <vars> <clauses>` header")]
    Header { line: usize },
    #[error("line {line}: `{token}` is not an integer")]
    Token { line: usize, token: String },
    #[error("formula declares no variables")]
    NoVariables,
    #[error("clause {clause} is empty")]
    EmptyClause { clause: usize },
    #[error("clause {clause} has {literals} literals; at most 3 are supported")]
    ClauseTooWide { clause: usize, literals: usize },
    #[error("clause {clause} uses variable {var} but only {declared} are declared")]
    VariableOutOfRange {
        clause: usize,
        var: usize,
        declared: usize,
    },
    #[error("last clause is not terminated by 0")]
    Unterminated,
    #[error("header declares {declared} clauses but {found} were given")]
    ClauseCount { declared: usize, found: usize },
}
