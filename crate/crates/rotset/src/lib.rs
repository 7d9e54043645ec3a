//! Rotation sets of lifted torus homeomorphisms, computed two ways.
//!
//! A *lifted map* is a map F: ℝ² → ℝ² commuting with integer translations,
//! the lift of a torus map. How far orbits drift per iterate — the rotation
//! vector — generally depends on the starting point, and the set of all such
//! vectors (the rotation set) is the object this crate approximates:
//!
//! * [`observable`] follows finite orbit segments and averages their
//!   displacement, sampling many starts: the statistically visible part of
//!   the rotation set.
//! * [`discretize`] restricts the torus map to an n×n grid of representable
//!   points, where every orbit falls into a cycle whose rotation vector is
//!   an exactly computable rational; the union over grid sizes recovers
//!   vectors that sampling misses.
//! * [`geometry`] compares the resulting point clouds against reference
//!   regions (convex hulls, Hausdorff distance, neighborhood checks).
//! * [`maps`] supplies the map algebra and the built-in example family;
//!   [`report`] reads and writes the CSV interchange format.
//!
//! With the default `parallel` feature, orbit sampling and grid builds fan
//! out over a rayon pool; results are assembled in index order, so output is
//! bitwise identical to the sequential fallback at any worker count.

pub mod discretize;
mod exec;
pub mod geometry;
pub mod maps;
pub mod observable;
pub mod rational;
pub mod report;
mod rng;
mod vec2;

#[cfg(test)]
pub(crate) mod testutil;

pub use rational::RationalVec;
pub use vec2::Vec2;
