// SPDX-License-Identifier: Apache-2.0

//! Criterion benchmarks for `mahsol`; see `benches/solver.rs`.
