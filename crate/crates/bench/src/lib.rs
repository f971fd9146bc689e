//! Shared inputs for the criterion benches.

use turan_core::{ForestSpec, SmallGraph};

/// Forests exercised by the benches, one per formula family.
pub const SUITE: &[&str] = &["P4+P2", "P5+P3", "2*P4", "S3+S2", "3*S2", "P4+S3"];

pub fn suite() -> Vec<ForestSpec> {
    SUITE
        .iter()
        .map(|s| s.parse().expect("valid forest"))
        .collect()
}

/// Circulant `C_n(1..=r)`: vertex-transitive, so canonical labelling cannot
/// split cells by degree alone.
pub fn circulant(n: usize, r: usize) -> SmallGraph {
    let mut g = SmallGraph::empty(n).expect("n <= 62");
    for v in 0..n {
        for step in 1..=r {
            let u = (v + step) % n;
            if u != v {
                g.add_edge(v, u);
            }
        }
    }
    g
}
