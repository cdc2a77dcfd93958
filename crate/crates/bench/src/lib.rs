//! Benchmarks for `maxpair-core`; see `benches/solvers.rs`.
