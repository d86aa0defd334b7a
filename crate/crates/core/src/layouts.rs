// SPDX-License-Identifier: Apache-2.0

//! Built-in layouts.

use std::sync::{Arc, OnceLock};

use crate::board::{Layout, Slot};
use crate::format::parse_layout;

const TURTLE: &str = include_str!("../layouts/turtle.layout");

/// The 144-slot turtle, five levels with a half-offset apex.
pub fn turtle() -> Layout {
    parse_layout(TURTLE).expect("bundled turtle layout is valid")
}

pub fn turtle_arc() -> Arc<Layout> {
    static CELL: OnceLock<Arc<Layout>> = OnceLock::new();
    Arc::clone(CELL.get_or_init(|| Arc::new(turtle())))
}

#[derive(Debug, Clone)]
pub struct NamedLayout {
    pub name: &'static str,
    pub layout: Arc<Layout>,
    pub group_sizes: Vec<usize>,
}

pub const NAMES: [&str; 3] = ["turtle", "row4-demo", "two-stacks-demo"];

pub fn lookup(name: &str) -> Option<NamedLayout> {
    let (name, layout, group_sizes) = match name {
        "turtle" => ("turtle", turtle_arc(), vec![4; 36]),
        "row4-demo" => (
            "row4-demo",
            Arc::new(Layout::new((0..4).map(|i| Slot::new(2 * i, 0, 0)).collect()).ok()?),
            vec![4],
        ),
        "two-stacks-demo" => (
            "two-stacks-demo",
            Arc::new(
                Layout::new(vec![
                    Slot::new(0, 0, 0),
                    Slot::new(0, 0, 1),
                    Slot::new(4, 0, 0),
                    Slot::new(4, 0, 1),
                ])
                .ok()?,
            ),
            vec![2, 2],
        ),
        _ => return None,
    };
    Some(NamedLayout {
        name,
        layout,
        group_sizes,
    })
}
