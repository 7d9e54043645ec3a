//! Shared helpers for unit and property tests.

use crate::rng::unit_pair;
use crate::vec2::Vec2;

/// k-th point of a reproducible quasi-random sequence in [0,1)².
pub fn unit_point(seed: u64, k: u64) -> Vec2 {
    let (x, y) = unit_pair(seed, k);
    Vec2::new(x, y)
}
