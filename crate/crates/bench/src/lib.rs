//! Criterion benchmarks for `dirspace`; see `benches/`.
