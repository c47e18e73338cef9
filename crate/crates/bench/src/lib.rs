//! Shared fixtures for the benchmark targets.

use ordwalk_core::{Ordinal, ProbeSet};

pub fn parse(s: &str) -> Ordinal {
    Ordinal::parse(s).unwrap()
}

/// Every pair `alpha <= beta` over the tier-2 probe set below `w^3`,
/// thinned to keep one pair in `stride`.
pub fn grid_pairs(stride: usize) -> Vec<(Ordinal, Ordinal)> {
    let probe = ProbeSet::new(&parse("w^3"), 2).unwrap();
    let mut pairs = Vec::new();
    for alpha in probe.iter() {
        for beta in probe.iter() {
            if alpha <= beta {
                pairs.push((alpha.clone(), beta.clone()));
            }
        }
    }
    pairs.into_iter().step_by(stride.max(1)).collect()
}

/// A few endpoint pairs with tall walks, outside the grid.
pub fn tall_pairs() -> Vec<(Ordinal, Ordinal)> {
    [
        ("3", "w^3 + w^2*2"),
        ("w + 1", "w^2 + w*3"),
        ("w^2 + 5", "w^(w)"),
        ("0", "w^(w^2)"),
    ]
    .iter()
    .map(|(a, b)| (parse(a), parse(b)))
    .collect()
}
