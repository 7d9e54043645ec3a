//! The nine reference experiments, their parameters, and their pass/fail
//! checks. Parameters live in this one table; `--scale`/`--full` rescale the
//! start-set sizes at run time. Checks carry thresholds validated at the
//! reference scale, so a rescaled run reports but does not judge.

use rotset::geometry::{convex_hull, hausdorff, ConvexPolygon, SetRef};
use rotset::observable::RotationSample;
use rotset::Vec2;

use crate::report::CheckOutcome;

pub struct Preset {
    pub fig: u8,
    pub action: Action,
}

pub enum Action {
    /// Orbit segments from random starts.
    ObsRandom { map: &'static str, count: u32, len: u32, check: Option<ObsCheck> },
    /// Orbit segments from every point of a side² grid; `full_side` is the
    /// reference size, scaled by 0.2 unless `--full`/`--scale` says otherwise.
    ObsGrid { map: &'static str, full_side: u32, len: u32 },
    /// One grid discretization.
    Disc { map: &'static str, n: u32, hull_eps: Option<f64> },
    /// Union of discretizations over (min, max, step); desk/full ranges.
    Union {
        map: &'static str,
        desk: (u32, u32, u32),
        full: (u32, u32, u32),
        hull_eps: f64,
        vertex_eps: f64,
    },
}

#[derive(Clone, Copy)]
pub enum ObsCheck {
    /// ≥95% of vectors within 0.15 of (1/2, 1/2).
    CenterCluster,
    /// ≥90% within 0.15 of a square vertex or the center; ≥3 vertices
    /// individually attract ≥1% of the vectors.
    FiveClusters,
}

pub fn preset(fig: u8) -> Option<Preset> {
    let action = match fig {
        1 => Action::ObsRandom {
            map: "f1",
            count: 1000,
            len: 1000,
            check: Some(ObsCheck::CenterCluster),
        },
        2 => Action::ObsGrid { map: "f1", full_side: 500, len: 1000 },
        3 => Action::ObsGrid { map: "f1", full_side: 750, len: 1000 },
        4 => Action::ObsGrid { map: "f1", full_side: 1000, len: 1000 },
        5 => Action::Disc { map: "f1", n: 100, hull_eps: Some(0.05) },
        6 => Action::Disc { map: "f1", n: 1000, hull_eps: Some(0.05) },
        7 => Action::Union {
            map: "f1",
            desk: (100, 200, 10),
            full: (100, 1000, 1),
            hull_eps: 0.05,
            vertex_eps: 0.02,
        },
        8 => Action::ObsRandom {
            map: "f2",
            count: 1000,
            len: 1000,
            check: Some(ObsCheck::FiveClusters),
        },
        9 => Action::Disc { map: "f2", n: 1000, hull_eps: Some(0.05) },
        _ => return None,
    };
    Some(Preset { fig, action })
}

const SQUARE_VERTICES: [Vec2; 4] =
    [Vec2::ZERO, Vec2 { x: 1.0, y: 0.0 }, Vec2 { x: 0.0, y: 1.0 }, Vec2 { x: 1.0, y: 1.0 }];

pub fn check_center_cluster(samples: &[RotationSample]) -> CheckOutcome {
    let center = Vec2::new(0.5, 0.5);
    let near = samples.iter().filter(|s| s.vector.dist(center) <= 0.15).count();
    let frac = near as f64 / samples.len() as f64;
    CheckOutcome {
        ok: frac >= 0.95,
        detail: format!(
            "{:.1}% of {} vectors within 0.15 of (0.5, 0.5); need ≥95%",
            frac * 100.0,
            samples.len()
        ),
    }
}

pub fn check_five_clusters(samples: &[RotationSample]) -> CheckOutcome {
    let mut near_any = 0usize;
    let mut per_vertex = [0usize; 4];
    for s in samples {
        let mut close = s.vector.dist(Vec2::new(0.5, 0.5)) <= 0.15;
        for (k, v) in SQUARE_VERTICES.iter().enumerate() {
            if s.vector.dist(*v) <= 0.15 {
                per_vertex[k] += 1;
                close = true;
            }
        }
        near_any += close as usize;
    }
    let frac = near_any as f64 / samples.len() as f64;
    let strong = per_vertex.iter().filter(|&&c| c * 100 >= samples.len()).count();
    CheckOutcome {
        ok: frac >= 0.90 && strong >= 3,
        detail: format!(
            "{:.1}% of {} vectors within 0.15 of the five anchors (need ≥90%); \
             vertex shares {per_vertex:?}, {strong} vertices ≥1% (need ≥3)",
            frac * 100.0,
            samples.len()
        ),
    }
}

pub fn check_hull_near_square(points: &[Vec2], eps: f64) -> CheckOutcome {
    let hull = convex_hull(points).expect("non-empty vector set");
    let d = hausdorff(SetRef::Region(&hull), SetRef::Region(&ConvexPolygon::unit_square()))
        .expect("non-empty");
    CheckOutcome {
        ok: d <= eps,
        detail: format!("Hausdorff(hull, unit square) = {d:.4}; need ≤ {eps}"),
    }
}

pub fn check_vertices_hit(points: &[Vec2], eps: f64) -> CheckOutcome {
    let worst = SQUARE_VERTICES
        .iter()
        .map(|v| points.iter().map(|p| p.dist(*v)).fold(f64::INFINITY, f64::min))
        .fold(0.0f64, f64::max);
    CheckOutcome {
        ok: worst <= eps,
        detail: format!("worst distance from a square vertex to the set = {worst:.4}; need ≤ {eps}"),
    }
}

pub fn merge(a: CheckOutcome, b: CheckOutcome) -> CheckOutcome {
    CheckOutcome { ok: a.ok && b.ok, detail: format!("{}; {}", a.detail, b.detail) }
}
