//! Shared fixtures for the criterion benchmarks.

use lazycover::{Angle, Arc};
use std::f64::consts::TAU;

/// Deterministic pseudo-random arcs for the sweep benchmarks.
pub fn scattered_arcs(count: usize) -> Vec<Arc> {
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    (0..count)
        .map(|_| Arc::from_centroid(Angle::new(next() * TAU), next() * TAU / 4.0))
        .collect()
}
