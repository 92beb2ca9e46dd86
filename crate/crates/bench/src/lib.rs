//! Criterion benchmarks for `smult-core`; see `benches/`.
