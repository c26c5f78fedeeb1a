//! Criterion benchmarks for triwidth-core; see `benches/`.
