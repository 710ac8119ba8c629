//! Benchmarks for the decision engine live in `benches/`.
