//! Criterion benchmarks for the sl2char kernel live in `benches/`.
