// SPDX-License-Identifier: Apache-2.0

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use mahsol::solver::{solve_match_directed, Heuristic};
use mahsol::theory::{canonical_formulas, reduce_3sat};
use mahsol::{layouts, prune_scan, shuffle, solve_group_directed, PairingAssignment};

fn turtle(seed: u64) -> mahsol::Board {
    let t = layouts::lookup("turtle").unwrap();
    shuffle(&t.layout, &t.group_sizes, seed).unwrap()
}

fn prune(c: &mut Criterion) {
    let board = turtle(1);
    let empty = PairingAssignment::empty(&board);
    c.bench_function("prune_scan/turtle", |b| {
        b.iter(|| prune_scan(black_box(&board), &empty))
    });
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("group_directed/turtle");
    g.sample_size(20);
    for seed in [0u64, 1, 2] {
        let board = turtle(seed);
        g.bench_with_input(BenchmarkId::new("adaptive", seed), &board, |b, board| {
            b.iter(|| solve_group_directed(board, Heuristic::Adaptive))
        });
        g.bench_with_input(
            BenchmarkId::new("min_pairings", seed),
            &board,
            |b, board| b.iter(|| solve_group_directed(board, Heuristic::MinPairings)),
        );
    }
    g.finish();
}

fn reductions(c: &mut Criterion) {
    let formulas = canonical_formulas(2, 2);
    let boards: Vec<_> = formulas.iter().map(|f| reduce_3sat(f).board).collect();
    c.bench_function("reduction/solve_all_canonical", |b| {
        b.iter(|| {
            boards
                .iter()
                .filter(|bd| solve_group_directed(bd, Heuristic::Adaptive).is_solvable())
                .count()
        })
    });
    c.bench_function("match_directed/turtle_seed_0", |b| {
        let board = turtle(0);
        b.iter(|| solve_match_directed(black_box(&board)))
    });
}

criterion_group!(benches, prune, search, reductions);
criterion_main!(benches);
