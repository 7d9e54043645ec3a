//! Observable rotation vectors: averages of the displacement along finite
//! orbit segments, (F^T(x) − x) / T. For large T these cluster around the
//! rotation vectors of the measures that typical orbits equidistribute on,
//! which is usually a much smaller set than the full rotation set.
//!
//! Iteration keeps the full lift coordinate — no mod-1 reduction of the state
//! mid-orbit — so the segment vector is literally the displacement average.

use serde::Serialize;

use crate::exec;
use crate::maps::LiftedMap;
use crate::rng;
use crate::vec2::Vec2;

/// Orbit-segment length used by the standard experiments.
pub const DEFAULT_SEGMENT_LEN: u32 = 1000;
/// Number of random starts used by the standard experiments.
pub const DEFAULT_RANDOM_COUNT: u32 = 1000;
/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 1;
/// Quadrature side used by [`mean_rotation_vector`] when none is given.
pub const DEFAULT_QUADRATURE_SIDE: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbitError {
    #[error("orbit left the finite range at step {step}")]
    NonFiniteOrbit { step: u32 },
}

/// One orbit segment: start, length, and the segment rotation vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RotationSample {
    pub start: Vec2,
    pub len: u32,
    pub vector: Vec2,
}

/// How starting points are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartMode {
    /// `count` pseudo-random points, derived per-index from the seed.
    Random { count: u32 },
    /// All `side`² points of the uniform grid (i/side, j/side).
    Grid { side: u32 },
}

/// A deterministic set of orbit starts plus the segment length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplingPlan {
    pub mode: StartMode,
    pub len: u32,
    pub seed: u64,
}

impl SamplingPlan {
    /// `count` random starts, orbit length `len`. Panics on zero sizes.
    pub fn random(count: u32, len: u32, seed: u64) -> SamplingPlan {
        assert!(count >= 1 && len >= 1, "sampling plan must be non-empty");
        SamplingPlan { mode: StartMode::Random { count }, len, seed }
    }

    /// All grid points of side `side`, orbit length `len`. Panics on zero sizes.
    pub fn grid(side: u32, len: u32) -> SamplingPlan {
        assert!(side >= 1 && len >= 1, "sampling plan must be non-empty");
        SamplingPlan { mode: StartMode::Grid { side }, len, seed: DEFAULT_SEED }
    }

    pub fn start_count(&self) -> usize {
        match self.mode {
            StartMode::Random { count } => count as usize,
            StartMode::Grid { side } => side as usize * side as usize,
        }
    }

    /// The k-th starting point (canonical order; row-major for grids).
    pub fn start(&self, k: usize) -> Vec2 {
        match self.mode {
            StartMode::Random { .. } => {
                let (x, y) = rng::unit_pair(self.seed, k as u64);
                Vec2::new(x, y)
            }
            StartMode::Grid { side } => {
                let n = side as usize;
                let (i, j) = (k / n, k % n);
                Vec2::new(i as f64 / side as f64, j as f64 / side as f64)
            }
        }
    }
}

/// Average displacement over one orbit segment of length `len` from `start`.
pub fn orbit_rotation_vector(
    map: &LiftedMap,
    start: Vec2,
    len: u32,
) -> Result<RotationSample, OrbitError> {
    assert!(len >= 1, "segment length must be at least 1");
    let mut z = start;
    for step in 0..len {
        z = map.eval(z);
        if !z.is_finite() {
            return Err(OrbitError::NonFiniteOrbit { step });
        }
    }
    Ok(RotationSample { start, len, vector: (z - start) / len as f64 })
}

/// Segment rotation vectors for every start of the plan, in plan order.
pub fn sample_observable(
    map: &LiftedMap,
    plan: &SamplingPlan,
) -> Result<Vec<RotationSample>, OrbitError> {
    collect_samples(exec::map_indexed(plan.start_count(), |k| {
        orbit_rotation_vector(map, plan.start(k), plan.len)
    }))
}

/// Sequential reference path; output is identical to [`sample_observable`].
pub fn sample_observable_seq(
    map: &LiftedMap,
    plan: &SamplingPlan,
) -> Result<Vec<RotationSample>, OrbitError> {
    collect_samples(exec::map_indexed_seq(plan.start_count(), |k| {
        orbit_rotation_vector(map, plan.start(k), plan.len)
    }))
}

fn collect_samples(
    rows: Vec<Result<RotationSample, OrbitError>>,
) -> Result<Vec<RotationSample>, OrbitError> {
    rows.into_iter().collect()
}

/// Mean rotation vector with respect to Lebesgue measure: the displacement
/// integrated by the midpoint rule on a `side`×`side` grid of cell centers.
/// Converges spectrally fast in `side` for the analytic built-in maps.
pub fn mean_rotation_vector(map: &LiftedMap, side: u32) -> Vec2 {
    assert!(side >= 1, "quadrature side must be at least 1");
    let rows = exec::map_indexed(side as usize, |j| quadrature_row(map, side, j));
    reduce_rows(rows, side)
}

/// Sequential reference path; output is identical to [`mean_rotation_vector`].
pub fn mean_rotation_vector_seq(map: &LiftedMap, side: u32) -> Vec2 {
    let rows = exec::map_indexed_seq(side as usize, |j| quadrature_row(map, side, j));
    reduce_rows(rows, side)
}

fn quadrature_row(map: &LiftedMap, side: u32, j: usize) -> Vec2 {
    let n = side as f64;
    let y = (j as f64 + 0.5) / n;
    let mut acc = Vec2::ZERO;
    for i in 0..side {
        acc = acc + map.displacement(Vec2::new((i as f64 + 0.5) / n, y));
    }
    acc
}

fn reduce_rows(rows: Vec<Vec2>, side: u32) -> Vec2 {
    // Row sums arrive in index order; the final reduction is sequential, so
    // the result does not depend on the worker count.
    let total = rows.into_iter().fold(Vec2::ZERO, |a, b| a + b);
    total / (side as f64 * side as f64)
}

/// The segment vector of F^q over `len` steps alongside q times the segment
/// vector of F over q·len steps. The two sides traverse the same orbit, so
/// they agree up to division rounding — a cheap self-check of the power and
/// iteration plumbing.
pub fn power_scaling_pair(
    map: &LiftedMap,
    q: u32,
    start: Vec2,
    len: u32,
) -> Result<(Vec2, Vec2), OrbitError> {
    assert!(q >= 1, "power requires q >= 1");
    let total = q.checked_mul(len).expect("orbit length overflow");
    let powered = map.clone().power(q);
    let lhs = orbit_rotation_vector(&powered, start, len)?.vector;
    let rhs = orbit_rotation_vector(map, start, total)?.vector * q as f64;
    Ok((lhs, rhs))
}
