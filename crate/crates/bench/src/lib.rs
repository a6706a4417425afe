//! Benchmark-only crate; see `benches/kernels.rs`.
//!
//! Shared fixtures used by the benches live here so they compile once.

use fuzzy_cesaro::{AlphaGrid, FuzzyFunction, FuzzyNumber};

pub fn bench_grid() -> AlphaGrid {
    AlphaGrid::uniform(33).unwrap()
}

/// The triangular number with alpha-cuts [alpha, 2 - alpha].
pub fn triangular(grid: &AlphaGrid) -> FuzzyNumber {
    FuzzyNumber::from_endpoints(
        grid.clone(),
        grid.levels().to_vec(),
        grid.levels().iter().map(|a| 2.0 - a).collect(),
    )
    .unwrap()
}

pub fn oscillating(grid: &AlphaGrid) -> FuzzyFunction {
    fuzzy_cesaro::find("paper-example-1", grid).unwrap()
}
