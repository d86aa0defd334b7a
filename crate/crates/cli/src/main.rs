// SPDX-License-Identifier: Apache-2.0

//! `mahsol`: solve, generate and scan Mahjong Solitaire boards.
//!
//! Exit codes: 0 solvable (or success), 1 unsolvable, 2 input error,
//! 3 unknown (random engine gave up).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mahsol::harness::{scan_layout, ScanConfig};
use mahsol::scan::prune_scan;
use mahsol::solver::{
    default_attempts, oracle_solve, random_solve, solve_group_directed, solve_match_directed,
    Heuristic, RandomVerdict, Solution, Verdict,
};
use mahsol::theory::{detect_blocked_cycle, one_level, parse_dimacs, reduce_3sat, solve_low_peek};
use mahsol::{format, layouts, shuffle, Board, Layout, PairingAssignment};

const EXIT_SOLVABLE: u8 = 0;
const EXIT_UNSOLVABLE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(
    name = "mahsol",
    version,
    about = "Mahjong Solitaire solvability tools"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a board and print a winning move sequence.
    Solve {
        board: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Group)]
        method: Method,
        #[arg(long, value_enum, default_value_t = HeuristicArg::Adaptive)]
        heuristic: HeuristicArg,
        /// Seed for the random engine.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Playouts for the random engine; defaults to floor(1.2^G).
        #[arg(long)]
        attempts: Option<u64>,
        /// Print the top-level pruning scan's removal events to stderr.
        #[arg(short, long)]
        verbose: bool,
    },
    /// Deal and decide many boards of one layout.
    Scan {
        #[command(flatten)]
        source: LayoutSource,
        #[arg(long)]
        boards: u64,
        #[arg(long)]
        seed: u64,
        /// Worker threads (default: MAHSOL_WORKERS, else available cores).
        #[arg(long, env = "MAHSOL_WORKERS")]
        workers: Option<usize>,
        /// Write the report as JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Also run this many random playouts per solvable board.
        #[arg(long)]
        difficulty: Option<u64>,
        /// Omit timing fields so reports compare byte for byte.
        #[arg(long)]
        no_timing: bool,
    },
    /// Build a board from a 3-SAT formula in DIMACS CNF.
    Gen {
        #[arg(long)]
        sat: PathBuf,
        /// Use one-level rows instead of three-tile stacks.
        #[arg(long)]
        one_level: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Deal one seeded board onto a layout.
    Shuffle {
        #[command(flatten)]
        source: LayoutSource,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Blocked-cycle check and solver for stacks of height at most two.
    Low { board: PathBuf },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct LayoutSource {
    /// Built-in layout: turtle, row4-demo, two-stacks-demo.
    #[arg(long)]
    layout: Option<String>,
    /// Layout file; dealt as groups of four plus one pair if needed.
    #[arg(long)]
    layout_file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Group,
    Match,
    Random,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum HeuristicArg {
    Adaptive,
    MinPairings,
}

impl From<HeuristicArg> for Heuristic {
    fn from(h: HeuristicArg) -> Self {
        match h {
            HeuristicArg::Adaptive => Heuristic::Adaptive,
            HeuristicArg::MinPairings => Heuristic::MinPairings,
        }
    }
}

/// An input problem, reported as one line with exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), InputError> {
    fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_board(path: &Path) -> Result<Board, InputError> {
    format::parse_board(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load_layout(source: &LayoutSource) -> Result<(String, Arc<Layout>, Vec<usize>), InputError> {
    if let Some(name) = &source.layout {
        let named = layouts::lookup(name).ok_or_else(|| {
            InputError(format!(
                "unknown layout `{name}` (known: {})",
                layouts::NAMES.join(", ")
            ))
        })?;
        return Ok((named.name.to_string(), named.layout, named.group_sizes));
    }
    let path = source
        .layout_file
        .as_ref()
        .expect("clap requires one source");
    let layout = format::parse_layout(&read(path)?)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let sizes = shuffle::default_group_sizes(layout.len());
    Ok((path.display().to_string(), Arc::new(layout), sizes))
}

fn print_solution(s: &Solution) {
    for m in s.moves() {
        println!("{m}");
    }
}

fn report(v: &Verdict) -> u8 {
    match v {
        Verdict::Solvable(s) => {
            print_solution(s);
            EXIT_SOLVABLE
        }
        Verdict::Unsolvable => {
            eprintln!("unsolvable");
            EXIT_UNSOLVABLE
        }
    }
}

fn run(command: Command) -> Result<u8, InputError> {
    match command {
        Command::Solve {
            board,
            method,
            heuristic,
            seed,
            attempts,
            verbose,
        } => {
            let board = load_board(&board)?;
            if verbose {
                let scan = prune_scan(&board, &PairingAssignment::empty(&board));
                for ev in &scan.trace {
                    eprintln!("{}", ev.describe(&board));
                }
            }
            Ok(match method {
                Method::Group => report(&solve_group_directed(&board, heuristic.into())),
                Method::Match => report(&solve_match_directed(&board)),
                Method::Oracle => report(&oracle_solve(&board)?),
                Method::Random => {
                    let attempts = attempts.unwrap_or_else(|| default_attempts(&board));
                    let out = random_solve(&board, attempts, seed);
                    match out.verdict {
                        RandomVerdict::Solvable(s) => {
                            print_solution(&s);
                            EXIT_SOLVABLE
                        }
                        RandomVerdict::Unknown => {
                            eprintln!("unknown after {} playouts", out.playouts);
                            EXIT_UNKNOWN
                        }
                    }
                }
            })
        }
        Command::Scan {
            source,
            boards,
            seed,
            workers,
            json,
            difficulty,
            no_timing,
        } => {
            let (name, layout, sizes) = load_layout(&source)?;
            let workers = workers
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            if workers == 0 {
                return Err(InputError("--workers must be at least 1".into()));
            }
            let config = ScanConfig {
                workers,
                difficulty_attempts: difficulty,
                timing: !no_timing,
            };
            let report = scan_layout(&name, &layout, &sizes, boards, seed, &config)?;
            let text = serde_json::to_string(&report)?;
            println!("{text}");
            if let Some(path) = json {
                write(&path, &format!("{text}\n"))?;
            }
            Ok(EXIT_SOLVABLE)
        }
        Command::Gen {
            sat,
            one_level: flat,
            out,
        } => {
            let formula = parse_dimacs(&read(&sat)?)
                .map_err(|e| InputError(format!("{}: {e}", sat.display())))?;
            let r = if flat {
                one_level(&formula)
            } else {
                reduce_3sat(&formula)
            };
            write(
                &out,
                &format::serialize_board_with_comments(&r.board, &r.tag_comments()),
            )?;
            Ok(EXIT_SOLVABLE)
        }
        Command::Shuffle { source, seed, out } => {
            let (_, layout, sizes) = load_layout(&source)?;
            let board = shuffle(&layout, &sizes, seed)?;
            write(&out, &format::serialize_board(&board))?;
            Ok(EXIT_SOLVABLE)
        }
        Command::Low { board } => {
            let board = load_board(&board)?;
            if let Some(cycle) = detect_blocked_cycle(&board)? {
                let groups: Vec<String> = cycle.groups.iter().map(|g| g.to_string()).collect();
                println!("blocked cycle: {}", groups.join(" "));
                return Ok(EXIT_UNSOLVABLE);
            }
            Ok(report(&solve_low_peek(&board)?))
        }
    }
}
