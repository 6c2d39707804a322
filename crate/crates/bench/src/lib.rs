//! Benchmarks for the enumeration and linear-algebra kernels live in `benches/`.
