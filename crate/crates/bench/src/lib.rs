//! Criterion benchmarks for the spectral kernels; see `benches/`.
