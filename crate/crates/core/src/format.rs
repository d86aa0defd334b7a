// SPDX-License-Identifier: Apache-2.0

//! Plain-text layout and board files.
//!
//! ```text
//! # layout: one slot per line
//! slot <x> <y> <z>
//! # board: one tile per line
//! tile <x> <y> <z> <group>
//! ```
//!
//! `#` starts a comment and blank lines are ignored.

use std::fmt::Write;
use std::sync::Arc;

use crate::board::{Board, GroupId, Layout, Slot};
use crate::error::{BoardError, LayoutError, ParseError};

fn records<'a>(text: &'a str) -> impl Iterator<Item = (usize, Vec<&'a str>)> + 'a {
    text.lines().enumerate().filter_map(|(n, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = line.split_whitespace().collect();
        (!fields.is_empty()).then_some((n + 1, fields))
    })
}

fn int(line: usize, what: &str, field: &str) -> Result<i64, ParseError> {
    field.parse().map_err(|_| ParseError::Syntax {
        line,
        message: format!("invalid {what} `{field}`"),
    })
}

fn coord(line: usize, what: &str, field: &str) -> Result<i32, ParseError> {
    let v = int(line, what, field)?;
    i32::try_from(v).map_err(|_| ParseError::Syntax {
        line,
        message: format!("{what} `{field}` out of range"),
    })
}

fn parse_slot(line: usize, f: &[&str]) -> Result<Slot, ParseError> {
    Ok(Slot::new(
        coord(line, "x", f[0])?,
        coord(line, "y", f[1])?,
        coord(line, "z", f[2])?,
    ))
}

fn expect(line: usize, fields: &[&str], keyword: &str, arity: usize) -> Result<(), ParseError> {
    if fields[0] != keyword {
        return Err(ParseError::Syntax {
            line,
            message: format!("expected `{keyword}`, found `{}`", fields[0]),
        });
    }
    if fields.len() != arity + 1 {
        return Err(ParseError::Syntax {
            line,
            message: format!(
                "`{keyword}` takes {arity} integers, found {}",
                fields.len() - 1
            ),
        });
    }
    Ok(())
}

fn layout_from(slots: Vec<Slot>, lines: &[usize]) -> Result<Layout, ParseError> {
    if slots.is_empty() {
        return Err(ParseError::Empty);
    }
    Layout::new(slots).map_err(|e| match e {
        LayoutError::Overlap { first, second, .. } => ParseError::Overlap {
            first: lines[first],
            second: lines[second],
        },
        LayoutError::Unsupported { index, .. } => ParseError::Unsupported { line: lines[index] },
        LayoutError::NegativeLevel { index, .. } => {
            ParseError::NegativeLevel { line: lines[index] }
        }
        LayoutError::OddCount(n) => ParseError::OddCount(n),
    })
}

pub fn parse_layout(text: &str) -> Result<Layout, ParseError> {
    let mut slots = Vec::new();
    let mut lines = Vec::new();
    for (line, fields) in records(text) {
        expect(line, &fields, "slot", 3)?;
        slots.push(parse_slot(line, &fields[1..])?);
        lines.push(line);
    }
    layout_from(slots, &lines)
}

pub fn parse_board(text: &str) -> Result<Board, ParseError> {
    let mut slots = Vec::new();
    let mut groups = Vec::new();
    let mut lines = Vec::new();
    for (line, fields) in records(text) {
        expect(line, &fields, "tile", 4)?;
        slots.push(parse_slot(line, &fields[1..4])?);
        let g = int(line, "group", fields[4])?;
        let g = u32::try_from(g).map_err(|_| ParseError::Syntax {
            line,
            message: format!("group `{}` must be a non-negative integer", fields[4]),
        })?;
        groups.push(GroupId(g));
        lines.push(line);
    }
    let layout = Arc::new(layout_from(slots.clone(), &lines)?);
    let mut by_index = vec![GroupId(0); layout.len()];
    for (s, g) in slots.iter().zip(&groups) {
        by_index[layout.index_of(*s).expect("layout built from these slots")] = *g;
    }
    Board::new(layout, by_index).map_err(|e| match e {
        BoardError::GroupSize { group, size } => ParseError::GroupSize { group, size },
        BoardError::SparseGroups(g) => ParseError::SparseGroups(g),
        other => unreachable!("board construction from parsed layout: {other}"),
    })
}

pub fn serialize_layout(layout: &Layout) -> String {
    let mut out = String::new();
    for s in layout.slots() {
        writeln!(out, "slot {} {} {}", s.x, s.y, s.z).unwrap();
    }
    out
}

/// Serializes every tile, removed or not.
pub fn serialize_board(board: &Board) -> String {
    serialize_board_with_comments(board, &[])
}

/// Like [`serialize_board`], prefixed with `# ` comment lines.
pub fn serialize_board_with_comments(board: &Board, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "# {c}").unwrap();
    }
    for (i, s) in board.layout().slots().iter().enumerate() {
        writeln!(out, "tile {} {} {} {}", s.x, s.y, s.z, board.group_of(i)).unwrap();
    }
    out
}
