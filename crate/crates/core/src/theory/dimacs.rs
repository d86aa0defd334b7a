// SPDX-License-Identifier: Apache-2.0

//! A strict DIMACS CNF front end for formulas with at most three literals per
//! clause, plus brute-force satisfiability for small formulas.

use std::fmt::{self, Write};

use crate::error::DimacsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn new(var: usize, positive: bool) -> Self {
        Literal { var, positive }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.var)
        } else {
            write!(f, "-{}", self.var)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    pub variable_count: usize,
    pub clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    /// Checks the invariants that [`parse_dimacs`] enforces.
    pub fn new(variable_count: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, DimacsError> {
        if variable_count == 0 {
            return Err(DimacsError::NoVariables);
        }
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(DimacsError::EmptyClause { clause: i + 1 });
            }
            if c.len() > 3 {
                return Err(DimacsError::ClauseTooWide {
                    clause: i + 1,
                    literals: c.len(),
                });
            }
            if let Some(l) = c.iter().find(|l| l.var == 0 || l.var > variable_count) {
                return Err(DimacsError::VariableOutOfRange {
                    clause: i + 1,
                    var: l.var,
                    declared: variable_count,
                });
            }
        }
        Ok(CnfFormula {
            variable_count,
            clauses,
        })
    }

    /// Bit `i` of `assignment` is the value of variable `i + 1`.
    pub fn evaluate(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|l| ((assignment >> (l.var - 1)) & 1 == 1) == l.positive)
        })
    }

    /// Tries all `2^v` assignments. Only meant for small `v`.
    pub fn is_satisfiable(&self) -> bool {
        assert!(
            self.variable_count < 32,
            "brute force over {} variables",
            self.variable_count
        );
        (0..1u64 << self.variable_count).any(|a| self.evaluate(a))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p cnf {} {}", self.variable_count, self.clauses.len()).unwrap();
        for c in &self.clauses {
            for l in c {
                write!(out, "{l} ").unwrap();
            }
            out.push_str("0\n");
        }
        out
    }
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::Header { line: line_no });
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            let parsed = match f.as_slice() {
                ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or(DimacsError::Header { line: line_no })?);
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(DimacsError::MissingHeader { line: line_no });
        };
        for tok in line.split_whitespace() {
            let v: i64 = tok.parse().map_err(|_| DimacsError::Token {
                line: line_no,
                token: tok.to_string(),
            })?;
            if v == 0 {
                let clause = std::mem::take(&mut current);
                if clause.is_empty() {
                    return Err(DimacsError::EmptyClause {
                        clause: clauses.len() + 1,
                    });
                }
                clauses.push(clause);
                continue;
            }
            let var = v.unsigned_abs();
            if var > vars as u64 {
                return Err(DimacsError::VariableOutOfRange {
                    clause: clauses.len() + 1,
                    var: var.min(usize::MAX as u64) as usize,
                    declared: vars,
                });
            }
            current.push(Literal::new(var as usize, v > 0));
            if current.len() > 3 {
                return Err(DimacsError::ClauseTooWide {
                    clause: clauses.len() + 1,
                    literals: current.len(),
                });
            }
        }
    }
    let (vars, declared) = header.ok_or(DimacsError::MissingHeader { line: 0 })?;
    if !current.is_empty() {
        return Err(DimacsError::Unterminated);
    }
    if declared != clauses.len() {
        return Err(DimacsError::ClauseCount {
            declared,
            found: clauses.len(),
        });
    }
    CnfFormula::new(vars, clauses)
}

/// Every formula with `1..=max_vars` variables and `1..=max_clauses` distinct
/// clauses, each clause a non-empty set of at most three literals. Formulas
/// are listed once per clause set.
pub fn canonical_formulas(max_vars: usize, max_clauses: usize) -> Vec<CnfFormula> {
    let mut out = Vec::new();
    for v in 1..=max_vars {
        let literals: Vec<Literal> = (1..=v)
            .flat_map(|i| [Literal::new(i, true), Literal::new(i, false)])
            .collect();
        let clauses: Vec<Vec<Literal>> = (1u32..1 << literals.len())
            .filter(|m| m.count_ones() <= 3)
            .map(|m| {
                literals
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .map(|(_, &l)| l)
                    .collect()
            })
            .collect();
        for k in 1..=max_clauses {
            for pick in combinations(clauses.len(), k) {
                let cs = pick.iter().map(|&i| clauses[i].clone()).collect();
                out.push(CnfFormula::new(v, cs).expect("enumerated formula is valid"));
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for mut rest in combinations(n - first - 1, k - 1) {
            rest.iter_mut().for_each(|r| *r += first + 1);
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
