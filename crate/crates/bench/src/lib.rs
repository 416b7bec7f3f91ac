//! Workloads shared by the benchmarks.

use g2net_core::net::tangle::TangleWord;
use g2net_core::Diagram;

/// Closed braids used as evaluation workloads, as `(name, strands, word)`.
pub const BRAIDS: [(&str, usize, &[i32]); 4] = [
    ("alternating-3x8", 3, &[1, -2, 1, -2, 1, -2, 1, -2]),
    ("positive-3x8", 3, &[1, 2, 1, 2, 1, 2, 1, 2]),
    ("alternating-4x8", 4, &[1, -2, 3, -2, 1, -2, 3, -2]),
    ("alternating-5x8", 5, &[1, -2, 3, -4, 1, -2, 3, -4]),
];

pub fn braid(strands: usize, word: &[i32]) -> Diagram {
    TangleWord::braid_closure(strands, word)
        .build()
        .expect("braid closures are valid diagrams")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_have_eight_crossings() {
        for (name, n, w) in BRAIDS {
            assert_eq!(braid(n, w).crossing_count(), 8, "{name}");
        }
    }
}
