//! Spatial discretization of a torus map and the exact rotation vectors of
//! the induced finite dynamics.
//!
//! The grid E_n consists of the n² torus points (i/n, j/n). Composing a map
//! with the projection that sends every point to its nearest grid node gives
//! a self-map of E_n — a functional graph, out-degree one — whose every orbit
//! falls into a cycle. A cycle of period p that winds (Sx, Sy) times around
//! the torus (in grid units: the summed per-step displacement) has rotation
//! vector (Sx, Sy)/(p·n), an exact rational. The set of these vectors
//! approximates the rotation set of the underlying map from within as n grows:
//! the only error source is one projection of at most half a grid cell per
//! step, and cycles average that error away to O(1/n).

use std::collections::BTreeMap;

use crate::exec;
use crate::maps::LiftedMap;
use crate::rational::RationalVec;
use crate::vec2::Vec2;

/// Largest supported grid side: node ids are u32 and steps i32.
pub const MAX_GRID_SIDE: u32 = 65_535;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiscretizeError {
    #[error("map image of grid node ({0}, {1}) is not finite")]
    NonFiniteImage(u32, u32),
}

/// The uniform n×n grid on the torus, nodes (i/n, j/n) indexed by i·n + j.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    side: u32,
}

impl Grid {
    /// Panics unless 1 ≤ side ≤ [`MAX_GRID_SIDE`].
    pub fn new(side: u32) -> Grid {
        assert!(side >= 1 && side <= MAX_GRID_SIDE, "grid side out of range");
        Grid { side }
    }

    pub fn side(&self) -> u32 {
        self.side
    }

    pub fn node_count(&self) -> usize {
        self.side as usize * self.side as usize
    }

    pub fn index(&self, i: u32, j: u32) -> usize {
        i as usize * self.side as usize + j as usize
    }

    pub fn unindex(&self, idx: usize) -> (u32, u32) {
        let n = self.side as usize;
        ((idx / n) as u32, (idx % n) as u32)
    }

    /// The torus point of node (i, j).
    pub fn point(&self, i: u32, j: u32) -> Vec2 {
        Vec2::new(i as f64 / self.side as f64, j as f64 / self.side as f64)
    }

    /// Nearest node of a torus point, halves rounding toward +∞ in each
    /// coordinate, wrapped mod n. project((0.05, 0.999), n=10) = (1, 0).
    pub fn project(&self, p: Vec2) -> (u32, u32) {
        (self.round_coord(p.x), self.round_coord(p.y))
    }

    fn round_coord(&self, t: f64) -> u32 {
        let n = self.side as i64;
        let r = (t * self.side as f64 + 0.5).floor() as i64;
        r.rem_euclid(n) as u32
    }
}

/// The finite map P_n ∘ F restricted to the grid: for each node, its
/// successor and the per-step integer displacement in grid units (i.e. the
/// lift of the step, un-wrapped).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscretizedMap {
    grid: Grid,
    succ: Vec<u32>,
    step: Vec<[i32; 2]>,
}

impl DiscretizedMap {
    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn successor(&self, idx: usize) -> u32 {
        self.succ[idx]
    }

    /// Integer displacement of node `idx` in grid units (may be negative or
    /// exceed n; wrapping it mod n recovers the successor).
    pub fn step(&self, idx: usize) -> [i32; 2] {
        self.step[idx]
    }

    /// Test-support constructor from raw tables; the step table must be
    /// consistent with the successors.
    #[cfg(test)]
    pub(crate) fn from_raw(grid: Grid, succ: Vec<u32>, step: Vec<[i32; 2]>) -> DiscretizedMap {
        assert_eq!(succ.len(), grid.node_count());
        assert_eq!(step.len(), grid.node_count());
        DiscretizedMap { grid, succ, step }
    }
}

/// Evaluate the map on every grid node and project the images back onto the
/// grid. Each node is independent, so the sweep is data-parallel; results are
/// assembled in node order and identical for any worker count.
pub fn build_discretized_map(
    map: &LiftedMap,
    grid: Grid,
) -> Result<DiscretizedMap, DiscretizeError> {
    assemble(grid, exec::map_indexed(grid.node_count(), |idx| node_entry(map, grid, idx)))
}

/// Sequential reference path; output is identical to [`build_discretized_map`].
pub fn build_discretized_map_seq(
    map: &LiftedMap,
    grid: Grid,
) -> Result<DiscretizedMap, DiscretizeError> {
    assemble(grid, exec::map_indexed_seq(grid.node_count(), |idx| node_entry(map, grid, idx)))
}

fn node_entry(
    map: &LiftedMap,
    grid: Grid,
    idx: usize,
) -> Result<(u32, [i32; 2]), DiscretizeError> {
    let (i, j) = grid.unindex(idx);
    let image = map.eval(grid.point(i, j));
    if !image.is_finite() {
        return Err(DiscretizeError::NonFiniteImage(i, j));
    }
    let n = grid.side() as i64;
    let rx = (image.x * grid.side() as f64 + 0.5).floor() as i64;
    let ry = (image.y * grid.side() as f64 + 0.5).floor() as i64;
    let step = [(rx - i as i64) as i32, (ry - j as i64) as i32];
    let succ = grid.index(rx.rem_euclid(n) as u32, ry.rem_euclid(n) as u32) as u32;
    Ok((succ, step))
}

fn assemble(
    grid: Grid,
    entries: Vec<Result<(u32, [i32; 2]), DiscretizeError>>,
) -> Result<DiscretizedMap, DiscretizeError> {
    let mut succ = Vec::with_capacity(entries.len());
    let mut step = Vec::with_capacity(entries.len());
    for entry in entries {
        let (s, d) = entry?;
        succ.push(s);
        step.push(d);
    }
    Ok(DiscretizedMap { grid, succ, step })
}

/// One cycle of the discretized map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleRecord {
    /// Cycle length.
    pub period: usize,
    /// Node ids in successor order, rotated to start at the smallest id.
    pub nodes: Vec<u32>,
    /// Summed per-step displacement around the cycle, in grid units.
    /// Always ≡ (0, 0) mod n — a cycle closes up on the torus.
    pub total_step: [i64; 2],
    /// total_step / (period · n), reduced.
    pub rotation_vector: RationalVec,
    /// Number of grid nodes whose forward orbit ends on this cycle
    /// (cycle nodes included). Basin sizes partition the n² nodes.
    pub basin_size: usize,
}

/// All cycles of the functional graph, found by a single pass with a
/// three-state coloring; linear in the number of nodes, no recursion.
/// Cycles are ordered by their smallest node id.
pub fn find_cycles(dm: &DiscretizedMap) -> Vec<CycleRecord> {
    const UNSEEN: u8 = 0;
    const ON_PATH: u8 = 1;
    const DONE: u8 = 2;

    let n_nodes = dm.succ.len();
    let mut state = vec![UNSEEN; n_nodes];
    // Which cycle each node drains into; indexes `cycles` in discovery order.
    let mut cycle_of = vec![u32::MAX; n_nodes];
    let mut basin = Vec::new();
    let mut cycles: Vec<(usize, Vec<u32>, [i64; 2])> = Vec::new();
    let mut path = Vec::new();

    for start in 0..n_nodes {
        if state[start] != UNSEEN {
            continue;
        }
        path.clear();
        let mut v = start;
        while state[v] == UNSEEN {
            state[v] = ON_PATH;
            path.push(v as u32);
            v = dm.succ[v] as usize;
        }
        let id = if state[v] == ON_PATH {
            // Walked into our own path: the suffix from v is a new cycle.
            let cut = path.iter().rposition(|&u| u as usize == v).unwrap();
            let mut nodes: Vec<u32> = path[cut..].to_vec();
            let mut total = [0i64, 0i64];
            for &u in &nodes {
                let s = dm.step[u as usize];
                total[0] += s[0] as i64;
                total[1] += s[1] as i64;
            }
            rotate_to_min(&mut nodes);
            let id = cycles.len() as u32;
            cycles.push((nodes.len(), nodes, total));
            basin.push(0usize);
            id
        } else {
            cycle_of[v]
        };
        for &u in &path {
            state[u as usize] = DONE;
            cycle_of[u as usize] = id;
        }
        basin[id as usize] += path.len();
    }

    let n = dm.grid.side() as i64;
    let mut records: Vec<CycleRecord> = cycles
        .into_iter()
        .zip(basin)
        .map(|((period, nodes, total_step), basin_size)| {
            debug_assert!(total_step[0].rem_euclid(n) == 0 && total_step[1].rem_euclid(n) == 0);
            let den = period as i64 * n;
            CycleRecord {
                period,
                rotation_vector: RationalVec::new(total_step[0], total_step[1], den),
                nodes,
                total_step,
                basin_size,
            }
        })
        .collect();
    records.sort_by_key(|c| c.nodes[0]);
    records
}

fn rotate_to_min(nodes: &mut Vec<u32>) {
    let min_pos = nodes.iter().enumerate().min_by_key(|(_, &v)| v).unwrap().0;
    nodes.rotate_left(min_pos);
}

/// A deduplicated rotation vector of the discretized map, with how many
/// cycles realize it and how much of the grid drains into those cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorEntry {
    pub vector: RationalVec,
    pub multiplicity: usize,
    /// Smallest period among the cycles realizing this vector.
    pub min_period: usize,
    pub basin_size: usize,
}

/// The rotation set of one discretization: all cycles plus the deduplicated
/// vector list, sorted by value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscretizedRotationSet {
    pub side: u32,
    pub cycles: Vec<CycleRecord>,
    pub vectors: Vec<VectorEntry>,
}

impl DiscretizedRotationSet {
    pub fn vector_points(&self) -> Vec<Vec2> {
        self.vectors.iter().map(|e| e.vector.to_vec2()).collect()
    }
}

/// Discretize `map` on the n×n grid and compute the exact rotation vectors
/// of every cycle.
pub fn discretized_rotation_set(
    map: &LiftedMap,
    side: u32,
) -> Result<DiscretizedRotationSet, DiscretizeError> {
    let dm = build_discretized_map(map, Grid::new(side))?;
    let cycles = find_cycles(&dm);
    let mut dedup: BTreeMap<RationalVec, VectorEntry> = BTreeMap::new();
    for c in &cycles {
        let entry = dedup.entry(c.rotation_vector).or_insert(VectorEntry {
            vector: c.rotation_vector,
            multiplicity: 0,
            min_period: c.period,
            basin_size: 0,
        });
        entry.multiplicity += 1;
        entry.min_period = entry.min_period.min(c.period);
        entry.basin_size += c.basin_size;
    }
    Ok(DiscretizedRotationSet { side, cycles, vectors: dedup.into_values().collect() })
}

/// A rotation vector present in at least one grid of a side range, with the
/// number of grids realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionEntry {
    pub vector: RationalVec,
    pub grid_count: usize,
}

/// Rotation sets across a range of grid sides and their union. The union
/// over growing sides recovers the full rotation set in the limit; per-side
/// results are kept for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsymptoticUnion {
    pub sets: Vec<DiscretizedRotationSet>,
    pub union: Vec<UnionEntry>,
}

/// Compute [`discretized_rotation_set`] for side = min_side, min_side + step,
/// … up to max_side, and the deduplicated union of all vectors.
pub fn asymptotic_union(
    map: &LiftedMap,
    min_side: u32,
    max_side: u32,
    step: u32,
) -> Result<AsymptoticUnion, DiscretizeError> {
    assert!(step >= 1, "side step must be at least 1");
    assert!((1..=max_side).contains(&min_side), "side range must be non-empty and start at 1+");
    let mut sets = Vec::new();
    let mut union: BTreeMap<RationalVec, usize> = BTreeMap::new();
    let mut side = min_side;
    while side <= max_side {
        let set = discretized_rotation_set(map, side)?;
        for e in &set.vectors {
            *union.entry(e.vector).or_insert(0) += 1;
        }
        sets.push(set);
        side = match side.checked_add(step) {
            Some(s) => s,
            None => break,
        };
    }
    let union = union
        .into_iter()
        .map(|(vector, grid_count)| UnionEntry { vector, grid_count })
        .collect();
    Ok(AsymptoticUnion { sets, union })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{builtin, LiftedMap};
    use crate::rng;
    use proptest::prelude::*;

    /// Brute-force oracle: iterate each node until the orbit must have
    /// entered a cycle, then walk the cycle once. Quadratic, test-only.
    fn exhaustive_cycles(dm: &DiscretizedMap) -> Vec<(usize, u32, [i64; 2], usize)> {
        let n_nodes = dm.grid().node_count();
        let mut reps: BTreeMap<u32, (usize, [i64; 2], usize)> = BTreeMap::new();
        for start in 0..n_nodes {
            let mut v = start;
            for _ in 0..n_nodes {
                v = dm.successor(v) as usize;
            }
            // v is on the eventual cycle; find its smallest node and data.
            let mut rep = v as u32;
            let mut period = 0usize;
            let mut total = [0i64, 0i64];
            let mut u = v;
            loop {
                rep = rep.min(u as u32);
                let s = dm.step(u);
                total[0] += s[0] as i64;
                total[1] += s[1] as i64;
                u = dm.successor(u) as usize;
                period += 1;
                if u == v {
                    break;
                }
            }
            let entry = reps.entry(rep).or_insert((period, total, 0));
            entry.2 += 1;
        }
        reps.into_iter().map(|(rep, (p, t, b))| (p, rep, t, b)).collect()
    }

    fn assert_matches_oracle(dm: &DiscretizedMap) {
        let fast = find_cycles(dm);
        let slow = exhaustive_cycles(dm);
        assert_eq!(fast.len(), slow.len());
        for (rec, (period, rep, total, basin)) in fast.iter().zip(slow) {
            assert_eq!(rec.period, period);
            assert_eq!(rec.nodes[0], rep);
            assert_eq!(rec.total_step, total);
            assert_eq!(rec.basin_size, basin);
        }
    }

    #[test]
    fn projection_rounds_half_up_and_wraps() {
        let g = Grid::new(10);
        assert_eq!(g.project(Vec2::new(0.05, 0.999)), (1, 0));
        assert_eq!(g.project(Vec2::new(0.9999, 0.04999)), (0, 0));
        assert_eq!(g.project(Vec2::new(-0.06, 1.26)), (9, 3));
        assert_eq!(g.project(Vec2::new(0.3, 0.7)), (3, 7));
    }

    #[test]
    fn grid_points_project_to_themselves() {
        for side in [1u32, 2, 7, 64, 101] {
            let g = Grid::new(side);
            for idx in (0..g.node_count()).step_by(7) {
                let (i, j) = g.unindex(idx);
                assert_eq!(g.project(g.point(i, j)), (i, j));
            }
        }
    }

    #[test]
    fn identity_discretizes_to_fixed_points() {
        let set = discretized_rotation_set(&LiftedMap::identity(), 8).unwrap();
        assert_eq!(set.cycles.len(), 64);
        assert_eq!(set.vectors.len(), 1);
        let e = &set.vectors[0];
        assert_eq!(e.vector, RationalVec::new(0, 0, 1));
        assert_eq!(e.multiplicity, 64);
        assert_eq!(e.basin_size, 64);
    }

    #[test]
    fn rational_translation_gives_exactly_its_vector() {
        // (p/q, r/q) with q | n: every node lies on a q-cycle with rotation
        // vector exactly (p/q, r/q).
        let cases = [(1i64, 1, 3, 9u32), (1, 3, 4, 8), (2, 1, 5, 10), (0, 1, 2, 8)];
        for (p, r, q, n) in cases {
            let m = LiftedMap::translation(
                RationalVec::new(p, r, q).to_vec2(),
            );
            let set = discretized_rotation_set(&m, n).unwrap();
            assert_eq!(set.vectors.len(), 1, "p/q = {p}/{q}, n = {n}");
            assert_eq!(set.vectors[0].vector, RationalVec::new(p, r, q));
            for c in &set.cycles {
                assert_eq!(c.period as i64, q / gcd_i64(gcd_i64(p, r), q));
            }
            let total: usize = set.cycles.iter().map(|c| c.basin_size).sum();
            assert_eq!(total, n as usize * n as usize);
        }
    }

    fn gcd_i64(a: i64, b: i64) -> i64 {
        let (mut a, mut b) = (a.abs(), b.abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }

    #[test]
    fn cycle_finder_matches_brute_force_on_builtins() {
        for name in crate::maps::BUILTIN_NAMES {
            let m = if name == "translation" {
                builtin(name, &[("dx", 0.23), ("dy", -0.61)]).unwrap()
            } else {
                builtin(name, &[]).unwrap()
            };
            for side in 1..=8u32 {
                let dm = build_discretized_map(&m, Grid::new(side)).unwrap();
                assert_matches_oracle(&dm);
            }
        }
    }

    #[test]
    fn example2_table_matches_straightforward_reimplementation() {
        // Independent of the map machinery: recompute the full successor
        // table for (x, y) ↦ (x + cos 2πx, y) on the 8-grid by hand.
        let m = builtin("example2", &[]).unwrap();
        let g = Grid::new(8);
        let dm = build_discretized_map(&m, g).unwrap();
        for i in 0..8u32 {
            for j in 0..8u32 {
                let x = i as f64 / 8.0;
                let image_x = x + (std::f64::consts::TAU * x).cos();
                let rx = (image_x * 8.0 + 0.5).floor() as i64;
                let idx = g.index(i, j);
                assert_eq!(dm.step(idx), [(rx - i as i64) as i32, 0]);
                assert_eq!(dm.successor(idx), g.index(rx.rem_euclid(8) as u32, j) as u32);
            }
        }
    }

    #[test]
    fn non_finite_images_are_reported_with_the_node() {
        let m = LiftedMap::translation(Vec2::new(f64::INFINITY, 0.0));
        let err = build_discretized_map(&m, Grid::new(4)).unwrap_err();
        assert_eq!(err, DiscretizeError::NonFiniteImage(0, 0));
    }

    #[test]
    fn parallel_and_sequential_builds_agree_exactly() {
        let f1 = builtin("f1", &[]).unwrap();
        let par = build_discretized_map(&f1, Grid::new(73)).unwrap();
        let seq = build_discretized_map_seq(&f1, Grid::new(73)).unwrap();
        assert_eq!(par, seq);
    }

    #[test]
    fn asymptotic_union_accumulates_vectors() {
        let m = LiftedMap::translation(Vec2::new(0.25, 0.25));
        let au = asymptotic_union(&m, 4, 12, 4).unwrap();
        assert_eq!(au.sets.len(), 3);
        assert_eq!(au.union.len(), 1);
        assert_eq!(au.union[0].vector, RationalVec::new(1, 1, 4));
        assert_eq!(au.union[0].grid_count, 3);
    }

    proptest! {
        // Random step tables (successors derived from them) across assorted
        // side lengths: the linear-time cycle finder must agree with the
        // brute-force oracle, basins must partition the grid, and every
        // cycle's total step must vanish mod n.
        #[test]
        fn random_functional_graphs_match_oracle(
            side in 1u32..=6,
            seed in 0u64..1_000,
        ) {
            let g = Grid::new(side);
            let n = side as i64;
            let mut succ = Vec::with_capacity(g.node_count());
            let mut step = Vec::with_capacity(g.node_count());
            for idx in 0..g.node_count() {
                let (a, b) = rng::unit_pair(seed, idx as u64);
                let sx = (a * 15.0).floor() as i64 - 7;
                let sy = (b * 15.0).floor() as i64 - 7;
                let (i, j) = g.unindex(idx);
                let si = (i as i64 + sx).rem_euclid(n) as u32;
                let sj = (j as i64 + sy).rem_euclid(n) as u32;
                succ.push(g.index(si, sj) as u32);
                step.push([sx as i32, sy as i32]);
            }
            let dm = DiscretizedMap::from_raw(g, succ, step);
            assert_matches_oracle(&dm);

            let cycles = find_cycles(&dm);
            let basin_total: usize = cycles.iter().map(|c| c.basin_size).sum();
            prop_assert_eq!(basin_total, g.node_count());
            for c in &cycles {
                prop_assert_eq!(c.total_step[0].rem_euclid(n), 0);
                prop_assert_eq!(c.total_step[1].rem_euclid(n), 0);
                prop_assert_eq!(c.nodes.len(), c.period);
            }
        }
    }
}
