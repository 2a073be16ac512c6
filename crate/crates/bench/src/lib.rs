//! Fixed inputs shared by the benchmarks.

use orthodontia::{Composition, Diagram, Permutation};

/// Rothe diagrams of a few permutations of increasing size.
pub fn rothe_fixtures() -> Vec<(String, Diagram)> {
    ["321", "31542", "2143", "351624", "4231"]
        .iter()
        .map(|w| {
            let w: Permutation = w.parse().expect("fixture permutation");
            (w.to_string(), Diagram::rothe(&w))
        })
        .collect()
}

/// Compositions whose Lascoux polynomials are moderately large.
pub fn lascoux_fixtures() -> Vec<Composition> {
    [vec![0, 1, 2], vec![0, 2, 1, 3], vec![1, 0, 3, 2], vec![0, 0, 2, 2]]
        .into_iter()
        .map(Composition::new)
        .collect()
}
