//! Shared helpers for the benchmark targets.

use surjtop_core::IntMatrix;

/// Deterministic pseudo-random integer matrix (splitmix64 driven), so bench
/// runs are comparable across machines without pulling in an RNG crate.
pub fn pseudo_random_matrix(rows: usize, cols: usize, max_abs: i64, seed: u64) -> IntMatrix {
    let mut state = seed;
    let mut next = move || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };
    let span = (2 * max_abs + 1) as u64;
    IntMatrix::from_fn(rows, cols, |_, _| ((next() % span) as i64 - max_abs).into())
}
