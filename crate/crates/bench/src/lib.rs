//! Benchmarks for the `idemcode` kernels live in `benches/`.
