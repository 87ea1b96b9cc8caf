//! Criterion benchmarks for the decision engine live in `benches/`.
