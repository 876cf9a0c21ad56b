//! Criterion benchmarks for `indcomplex-core`; see `benches/`.
