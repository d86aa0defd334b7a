// SPDX-License-Identifier: Apache-2.0

//! Boards that encode 3-SAT formulas, built from isolated stacks of three
//! tiles of the forms `aab` and `abb` (listed top to bottom).
//!
//! The SAT group's first pair can only be released once every variable
//! gadget has committed to one side and every clause has a true literal;
//! after that the rest of the board falls apart.

use std::fmt;
use std::sync::Arc;

use crate::board::{Board, GroupId, Layout, Slot};

use super::dimacs::{CnfFormula, Literal};

/// The role a generated group plays in the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionTag {
    X(usize),
    Y(usize),
    Var(usize),
    /// `T(i, k)`: the k-th t-group of variable i.
    T(usize, usize),
    F(usize, usize),
    Clause(usize),
    Sat,
    /// Right-end blocker shared by four rows of the one-level variant.
    Blocker(usize),
}

impl fmt::Display for ReductionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionTag::X(i) => write!(f, "X({i})"),
            ReductionTag::Y(j) => write!(f, "Y({j})"),
            ReductionTag::Var(i) => write!(f, "Var({i})"),
            ReductionTag::T(i, k) => write!(f, "T({i},{k})"),
            ReductionTag::F(i, k) => write!(f, "F({i},{k})"),
            ReductionTag::Clause(j) => write!(f, "Clause({j})"),
            ReductionTag::Sat => write!(f, "Sat"),
            ReductionTag::Blocker(n) => write!(f, "Blocker({n})"),
        }
    }
}

/// A stack, top tile first.
pub type Stack = [GroupId; 3];

#[derive(Debug, Clone)]
pub struct Reduction {
    pub board: Board,
    /// Indexed by group id.
    pub tags: Vec<ReductionTag>,
    /// The stacks in placement order; stack `n` sits at `x = 4n`.
    pub stacks: Vec<Stack>,
}

impl Reduction {
    /// `group <id> tag <role>` lines for [`crate::format::serialize_board_with_comments`].
    pub fn tag_comments(&self) -> Vec<String> {
        self.tags
            .iter()
            .enumerate()
            .map(|(g, t)| format!("group {g} tag {t}"))
            .collect()
    }
}

#[derive(Default)]
struct Builder {
    tags: Vec<ReductionTag>,
    stacks: Vec<Stack>,
    xs: Vec<GroupId>,
    ys: Vec<GroupId>,
    ts: Vec<Vec<GroupId>>,
    fs: Vec<Vec<GroupId>>,
    vars: Vec<GroupId>,
    sat: Option<GroupId>,
}

impl Builder {
    fn group(&mut self, tag: ReductionTag) -> GroupId {
        self.tags.push(tag);
        GroupId::from(self.tags.len() - 1)
    }

    fn x(&mut self) -> GroupId {
        let g = self.group(ReductionTag::X(self.xs.len() + 1));
        self.xs.push(g);
        g
    }

    fn y(&mut self) -> GroupId {
        let g = self.group(ReductionTag::Y(self.ys.len() + 1));
        self.ys.push(g);
        g
    }

    fn remove(&mut self, s: Stack) {
        let at = self
            .stacks
            .iter()
            .position(|&t| t == s)
            .expect("construction removes an existing stack");
        self.stacks.remove(at);
    }

    fn add(&mut self, stacks: &[Stack]) {
        self.stacks.extend_from_slice(stacks);
    }

    fn sat(&self) -> GroupId {
        self.sat.expect("set up first")
    }

    fn initial(&mut self) {
        let (x1, x2) = (self.x(), self.x());
        let sat = self.group(ReductionTag::Sat);
        self.sat = Some(sat);
        let (y1, y2, y3) = (self.y(), self.y(), self.y());
        self.add(&[
            [x1, x1, x2],
            [x2, x1, x1],
            [x2, x2, sat],
            [sat, y1, y1],
            [y1, y2, y2],
            [y1, y3, y3],
            [y2, y2, sat],
            [y3, y3, sat],
        ]);
    }

    /// Replaces the last x-chain link `(x_m, x_m, SAT)` by four stacks with
    /// `key` on top of the new `x_{m+1}` pair.
    fn extend_x(&mut self, key: GroupId) {
        let sat = self.sat();
        let xm = *self.xs.last().unwrap();
        let (x1, x2) = (self.x(), self.x());
        self.remove([xm, xm, sat]);
        self.add(&[[xm, xm, x2], [key, x1, x1], [x1, x1, x2], [x2, x2, sat]]);
    }

    fn variable(&mut self, i: usize) {
        let sat = self.sat();
        let v = self.group(ReductionTag::Var(i));
        self.vars.push(v);
        self.extend_x(v);

        let yn = *self.ys.last().unwrap();
        let (y1, y2) = (self.y(), self.y());
        self.remove([yn, yn, sat]);
        self.add(&[[yn, y1, y1], [y1, y1, v], [yn, y2, y2], [y2, y2, sat]]);

        let t1 = self.group(ReductionTag::T(i, 1));
        let t2 = self.group(ReductionTag::T(i, 2));
        self.add(&[[v, t2, t2], [t1, t1, t2], [t2, t1, t1]]);
        self.ts.push(vec![t1, t2]);
        let f1 = self.group(ReductionTag::F(i, 1));
        let f2 = self.group(ReductionTag::F(i, 2));
        self.add(&[[v, f2, f2], [f1, f1, f2], [f2, f1, f1]]);
        self.fs.push(vec![f1, f2]);
    }

    fn clause(&mut self, j: usize, literals: &[Literal]) {
        let c = self.group(ReductionTag::Clause(j));
        self.extend_x(c);
        for &l in padded(literals).iter() {
            let i = l.var;
            let v = self.vars[i - 1];
            let family = if l.positive {
                &self.ts[i - 1]
            } else {
                &self.fs[i - 1]
            };
            let k = family.len();
            let tk = family[k - 1];
            let tag = |k| {
                if l.positive {
                    ReductionTag::T(i, k)
                } else {
                    ReductionTag::F(i, k)
                }
            };
            let t1 = self.group(tag(k + 1));
            let t2 = self.group(tag(k + 2));
            let family = if l.positive {
                &mut self.ts[i - 1]
            } else {
                &mut self.fs[i - 1]
            };
            family.extend([t1, t2]);
            self.remove([v, tk, tk]);
            self.add(&[[v, t2, t2], [t2, tk, tk], [t2, t1, t1], [t1, t1, c]]);
        }
    }
}

/// Pads a clause to three literals by repeating its first literal.
fn padded(literals: &[Literal]) -> [Literal; 3] {
    let first = literals[0];
    [
        first,
        literals.get(1).copied().unwrap_or(first),
        literals.get(2).copied().unwrap_or(first),
    ]
}

fn build(f: &CnfFormula) -> Builder {
    let mut b = Builder::default();
    b.initial();
    for i in 1..=f.variable_count {
        b.variable(i);
    }
    for (j, c) in f.clauses.iter().enumerate() {
        b.clause(j + 1, c);
    }
    b
}

/// Isolated three-tile stacks; solvable iff `f` is satisfiable.
pub fn reduce_3sat(f: &CnfFormula) -> Reduction {
    let b = build(f);
    let tiles: Vec<(Slot, GroupId)> = b
        .stacks
        .iter()
        .enumerate()
        .flat_map(|(n, s)| {
            let x = 4 * n as i32;
            (0..3).map(move |h| (Slot::new(x, 0, 2 - h as i32), s[h]))
        })
        .collect();
    Reduction {
        board: board_from(&tiles),
        tags: b.tags,
        stacks: b.stacks,
    }
}

/// Every stack `(a, b, c)` becomes a ground row `a b c k` read left to right,
/// where `k` is a blocker tile. Rows `4q .. 4q+3` share blocker group `q + 1`.
pub fn one_level(f: &CnfFormula) -> Reduction {
    let mut b = build(f);
    let blockers: Vec<GroupId> = (0..b.stacks.len().div_ceil(4))
        .map(|q| b.group(ReductionTag::Blocker(q + 1)))
        .collect();
    let tiles: Vec<(Slot, GroupId)> = b
        .stacks
        .iter()
        .enumerate()
        .flat_map(|(n, s)| {
            let x = 10 * n as i32;
            let row = [s[0], s[1], s[2], blockers[n / 4]];
            (0..4).map(move |i| (Slot::new(x + 2 * i as i32, 0, 0), row[i]))
        })
        .collect();
    Reduction {
        board: board_from(&tiles),
        tags: b.tags,
        stacks: b.stacks,
    }
}

fn board_from(tiles: &[(Slot, GroupId)]) -> Board {
    let layout =
        Layout::new(tiles.iter().map(|t| t.0).collect()).expect("generated layout is valid");
    let layout = Arc::new(layout);
    let mut groups = vec![GroupId(0); layout.len()];
    for &(s, g) in tiles {
        groups[layout.index_of(s).unwrap()] = g;
    }
    Board::new(layout, groups).expect("every generated group has four tiles")
}

/// Checks a [`reduce_3sat`] board against the construction's shape rules.
/// Returns one message per violation.
pub fn shape_audit(r: &Reduction, f: &CnfFormula) -> Vec<String> {
    let mut problems = Vec::new();
    let (v, c) = (f.variable_count, f.clauses.len());
    let board = &r.board;
    let expected_stacks = 8 + 12 * v + 12 * c;
    let expected_groups = 6 + 9 * v + 9 * c;
    let mut columns: std::collections::BTreeMap<(i32, i32), Vec<(i32, GroupId)>> =
        Default::default();
    for (i, s) in board.layout().slots().iter().enumerate() {
        columns
            .entry((s.x, s.y))
            .or_default()
            .push((s.z, board.group_of(i)));
    }
    if !board.layout().is_isolated_stacks(3) {
        problems.push("stacks are not isolated".to_string());
    }
    if columns.len() != expected_stacks {
        problems.push(format!(
            "{} stacks, expected {expected_stacks}",
            columns.len()
        ));
    }
    if board.group_count() != expected_groups {
        problems.push(format!(
            "{} groups, expected {expected_groups}",
            board.group_count()
        ));
    }
    for ((x, y), mut col) in columns {
        col.sort();
        let heights: Vec<i32> = col.iter().map(|t| t.0).collect();
        if heights != [0, 1, 2] {
            problems.push(format!("stack at ({x}, {y}) has levels {heights:?}"));
            continue;
        }
        let (bot, mid, top) = (col[0].1, col[1].1, col[2].1);
        let aab = top == mid && mid != bot;
        let abb = top != mid && mid == bot;
        if !(aab || abb) {
            problems.push(format!("stack at ({x}, {y}) is neither aab nor abb"));
        }
    }
    let sats: Vec<usize> = (0..r.tags.len())
        .filter(|&g| r.tags[g] == ReductionTag::Sat)
        .collect();
    if sats.len() != 1 {
        problems.push(format!("{} SAT groups", sats.len()));
    } else if board.members(GroupId::from(sats[0])).len() != 4 {
        problems.push("SAT group does not have four tiles".to_string());
    }
    if r.tags.len() != board.group_count() {
        problems.push("tag map does not cover every group".to_string());
    }
    problems
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{solve_group_directed, verify_solution, Heuristic};

    fn formula(v: usize, clauses: &[&[i32]]) -> CnfFormula {
        let cs = clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&l| Literal::new(l.unsigned_abs() as usize, l > 0))
                    .collect()
            })
            .collect();
        CnfFormula::new(v, cs).unwrap()
    }

    #[test]
    fn counts_and_shape() {
        for f in [
            formula(1, &[]),
            formula(1, &[&[1]]),
            formula(2, &[&[1, -2], &[-1, 2, 2]]),
        ] {
            let r = reduce_3sat(&f);
            assert_eq!(shape_audit(&r, &f), Vec::<String>::new());
            assert_eq!(
                r.stacks.len(),
                8 + 12 * f.variable_count + 12 * f.clauses.len()
            );
        }
    }

    #[test]
    fn tags_are_unique_and_serialized() {
        let r = reduce_3sat(&formula(2, &[&[1, -2]]));
        let mut seen = std::collections::HashSet::new();
        assert!(r.tags.iter().all(|t| seen.insert(*t)));
        let comments = r.tag_comments();
        assert_eq!(comments[2], "group 2 tag Sat");
        let text = crate::format::serialize_board_with_comments(&r.board, &comments);
        assert!(text.contains("# group 0 tag X(1)"));
        assert_eq!(crate::format::parse_board(&text).unwrap(), r.board);
    }

    #[test]
    fn single_literal_verdicts() {
        let sat = formula(1, &[&[1, 1, 1]]);
        let unsat = formula(1, &[&[1, 1, 1], &[-1, -1, -1]]);
        let r = reduce_3sat(&sat);
        let v = solve_group_directed(&r.board, Heuristic::Adaptive);
        assert!(verify_solution(&r.board, v.solution().unwrap()));
        assert!(
            !solve_group_directed(&reduce_3sat(&unsat).board, Heuristic::Adaptive).is_solvable()
        );
        assert!(solve_group_directed(&one_level(&sat).board, Heuristic::Adaptive).is_solvable());
    }

    #[test]
    fn one_level_rows() {
        let f = formula(1, &[&[1]]);
        let r = one_level(&f);
        let b = &r.board;
        assert!(b.layout().slots().iter().all(|s| s.z == 0));
        assert_eq!(b.layout().len(), 4 * r.stacks.len());
        for (n, s) in r.stacks.iter().enumerate() {
            let x = 10 * n as i32;
            let at = |i: i32| b.layout().index_of(Slot::new(x + 2 * i, 0, 0)).unwrap();
            assert_eq!(
                [b.group_of(at(0)), b.group_of(at(1)), b.group_of(at(2))],
                *s
            );
            assert!(b.is_playable(at(0)));
            assert!(!b.is_playable(at(1)) && !b.is_playable(at(2)));
        }
    }
}
