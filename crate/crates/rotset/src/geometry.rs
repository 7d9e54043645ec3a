//! Planar geometry for comparing computed rotation sets against references:
//! convex hulls, Hausdorff distances, and neighborhood checks.
//!
//! Rotation sets of the maps under study are convex regions (here: the unit
//! square or a segment), while computations produce finite point sets, so the
//! comparisons mix finite sets and filled convex polygons. A polygon operand
//! always means boundary plus interior — the distance from a point inside a
//! region is zero.

use serde::Serialize;

use crate::vec2::Vec2;

/// Tolerance for collinearity (cross products) and duplicate merging.
/// Absolute, adequate for the O(1)-sized sets this crate compares.
pub const COLLINEAR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("geometric comparison on an empty point set")]
    EmptyInput,
}

/// A convex polygon, vertices in counter-clockwise order with strictly
/// convex corners. Degenerate inputs collapse to 2 vertices (a segment) or
/// 1 (a point); such polygons still act as regions in every comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexPolygon {
    vertices: Vec<Vec2>,
}

impl ConvexPolygon {
    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    /// [0,1]², the reference rotation set of the standard examples.
    pub fn unit_square() -> ConvexPolygon {
        ConvexPolygon {
            vertices: vec![
                Vec2::ZERO,
                Vec2::new(1.0, 0.0),
                Vec2::new(1.0, 1.0),
                Vec2::new(0.0, 1.0),
            ],
        }
    }

    /// The segment from `a` to `b` as a degenerate region.
    pub fn segment(a: Vec2, b: Vec2) -> ConvexPolygon {
        if a == b {
            ConvexPolygon { vertices: vec![a] }
        } else {
            ConvexPolygon { vertices: vec![a, b] }
        }
    }

    /// Whether `p` lies in the closed region (within [`COLLINEAR_TOL`]).
    pub fn contains(&self, p: Vec2) -> bool {
        match self.vertices.len() {
            1 => p.dist(self.vertices[0]) <= COLLINEAR_TOL,
            2 => segment_distance(p, self.vertices[0], self.vertices[1]) <= COLLINEAR_TOL,
            _ => self.edges().all(|(a, b)| (b - a).cross(p - a) >= -COLLINEAR_TOL),
        }
    }

    /// Euclidean distance from `p` to the region (0 inside).
    pub fn distance_to(&self, p: Vec2) -> f64 {
        match self.vertices.len() {
            1 => p.dist(self.vertices[0]),
            2 => segment_distance(p, self.vertices[0], self.vertices[1]),
            _ => {
                if self.contains(p) {
                    0.0
                } else {
                    self.edges()
                        .map(|(a, b)| segment_distance(p, a, b))
                        .fold(f64::INFINITY, f64::min)
                }
            }
        }
    }

    fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max(a.dist(*b));
            }
        }
        d
    }
}

fn segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Convex hull by monotone chain: sort, build lower and upper chains,
/// popping non-left turns. Near-duplicate inputs (within [`COLLINEAR_TOL`])
/// are merged first; collinear points are dropped, so corners are strict.
pub fn convex_hull(points: &[Vec2]) -> Result<ConvexPolygon, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).expect("finite coordinates"));
    pts.dedup_by(|a, b| a.dist(*b) <= COLLINEAR_TOL);

    if pts.len() == 1 {
        return Ok(ConvexPolygon { vertices: pts });
    }

    let mut lower: Vec<Vec2> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 {
            let (a, b) = (lower[lower.len() - 2], lower[lower.len() - 1]);
            if (b - a).cross(p - a) <= COLLINEAR_TOL {
                lower.pop();
            } else {
                break;
            }
        }
        lower.push(p);
    }
    let mut upper: Vec<Vec2> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 {
            let (a, b) = (upper[upper.len() - 2], upper[upper.len() - 1]);
            if (b - a).cross(p - a) <= COLLINEAR_TOL {
                upper.pop();
            } else {
                break;
            }
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(ConvexPolygon { vertices: lower })
}

/// One side of a comparison: a finite point set or a filled convex region.
#[derive(Debug, Clone, Copy)]
pub enum SetRef<'a> {
    Points(&'a [Vec2]),
    Region(&'a ConvexPolygon),
}

impl SetRef<'_> {
    fn check_nonempty(&self) -> Result<(), GeometryError> {
        match self {
            SetRef::Points(ps) if ps.is_empty() => Err(GeometryError::EmptyInput),
            _ => Ok(()),
        }
    }
}

/// Hausdorff distance, symmetric: max over both directed distances.
///
/// Directed distances are exact except region → finite-set, where the
/// supremum over the filled region is estimated by sampling the region at
/// pitch diameter/256 (vertices and edges included, so e.g. the distance
/// from the unit square to its center point is the exact corner distance).
pub fn hausdorff(a: SetRef, b: SetRef) -> Result<f64, GeometryError> {
    a.check_nonempty()?;
    b.check_nonempty()?;
    Ok(directed(a, b).max(directed(b, a)))
}

fn directed(a: SetRef, b: SetRef) -> f64 {
    match (a, b) {
        (SetRef::Points(ps), _) => {
            ps.iter().map(|&p| point_to_set(p, b)).fold(0.0, f64::max)
        }
        (SetRef::Region(ra), SetRef::Region(rb)) => {
            // Distance-to-a-convex-region is convex, so the max over a convex
            // region is attained at a vertex: exact.
            ra.vertices().iter().map(|&v| rb.distance_to(v)).fold(0.0, f64::max)
        }
        (SetRef::Region(ra), SetRef::Points(_)) => {
            // Min-distance to a finite set is not convex; sample the region.
            region_samples(ra)
                .into_iter()
                .map(|p| point_to_set(p, b))
                .fold(0.0, f64::max)
        }
    }
}

fn point_to_set(p: Vec2, s: SetRef) -> f64 {
    match s {
        SetRef::Points(qs) => qs.iter().map(|&q| p.dist(q)).fold(f64::INFINITY, f64::min),
        SetRef::Region(r) => r.distance_to(p),
    }
}

fn region_samples(r: &ConvexPolygon) -> Vec<Vec2> {
    let mut out = r.vertices().to_vec();
    let h = (r.diameter() / 256.0).max(1e-9);
    for (a, b) in r.edges() {
        let steps = (a.dist(b) / h).ceil() as usize;
        for k in 1..steps {
            out.push(a + (b - a) * (k as f64 / steps as f64));
        }
    }
    if r.vertices().len() >= 3 {
        let (mut lo, mut hi) = (r.vertices()[0], r.vertices()[0]);
        for v in r.vertices() {
            lo = Vec2::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Vec2::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        let mut y = lo.y + h;
        while y < hi.y {
            let mut x = lo.x + h;
            while x < hi.x {
                let p = Vec2::new(x, y);
                if r.contains(p) {
                    out.push(p);
                }
                x += h;
            }
            y += h;
        }
    }
    out
}

/// Result of a neighborhood check: is every point within `eps` of the target?
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NeighborhoodCheck {
    pub ok: bool,
    pub worst_distance: f64,
    pub worst_point: Vec2,
}

/// Check that every point lies within `eps` of the target set, reporting the
/// worst offender. Exact (point-to-set distances only).
pub fn within_neighborhood(
    points: &[Vec2],
    target: SetRef,
    eps: f64,
) -> Result<NeighborhoodCheck, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    target.check_nonempty()?;
    let mut worst = (0.0f64, points[0]);
    for &p in points {
        let d = point_to_set(p, target);
        if d > worst.0 {
            worst = (d, p);
        }
    }
    Ok(NeighborhoodCheck { ok: worst.0 <= eps, worst_distance: worst.0, worst_point: worst.1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::unit_point;
    use proptest::prelude::*;

    fn square_with_noise() -> Vec<Vec2> {
        let mut pts = ConvexPolygon::unit_square().vertices().to_vec();
        for k in 0..40 {
            pts.push(unit_point(3, k)); // interior points
        }
        pts
    }

    #[test]
    fn hull_of_square_cloud_is_the_square() {
        let hull = convex_hull(&square_with_noise()).unwrap();
        assert_eq!(hull.vertices().len(), 4);
        assert_eq!(hull.vertices()[0], Vec2::ZERO); // starts at lexicographic min
        assert!(!hull.is_degenerate());
    }

    #[test]
    fn collinear_inputs_collapse_to_a_segment() {
        let pts: Vec<Vec2> = (0..7).map(|i| Vec2::new(i as f64 * 0.125, 0.0)).collect();
        let hull = convex_hull(&pts).unwrap();
        assert!(hull.is_degenerate());
        assert_eq!(hull.vertices(), &[Vec2::ZERO, Vec2::new(0.75, 0.0)]);
    }

    #[test]
    fn coincident_inputs_collapse_to_a_point() {
        let p = Vec2::new(0.25, -0.5);
        let hull = convex_hull(&[p, p, p]).unwrap();
        assert!(hull.is_degenerate());
        assert_eq!(hull.vertices(), &[p]);
        assert!(convex_hull(&[]).is_err());
    }

    #[test]
    fn region_distance_is_zero_inside_and_euclidean_outside() {
        let sq = ConvexPolygon::unit_square();
        assert_eq!(sq.distance_to(Vec2::new(0.5, 0.5)), 0.0);
        assert_eq!(sq.distance_to(Vec2::new(0.5, 1.0)), 0.0);
        assert!((sq.distance_to(Vec2::new(1.5, 0.5)) - 0.5).abs() < 1e-15);
        assert!((sq.distance_to(Vec2::new(-0.3, -0.4)) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn square_to_center_singleton_is_the_corner_distance() {
        let sq = ConvexPolygon::unit_square();
        let center = [Vec2::new(0.5, 0.5)];
        let d = hausdorff(SetRef::Region(&sq), SetRef::Points(&center)).unwrap();
        assert!((d - 0.5 * std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn translated_squares_are_translation_apart() {
        let a = ConvexPolygon::unit_square();
        let shifted: Vec<Vec2> =
            a.vertices().iter().map(|&v| v + Vec2::new(0.3, 0.0)).collect();
        let b = convex_hull(&shifted).unwrap();
        let d = hausdorff(SetRef::Region(&a), SetRef::Region(&b)).unwrap();
        assert!((d - 0.3).abs() < 1e-12);
    }

    #[test]
    fn segment_region_distances() {
        let seg = ConvexPolygon::segment(Vec2::new(-1.0, 0.0), Vec2::new(1.0, 0.0));
        // reprojection of an interior point rounds, so "on the segment" is ≈ 0
        assert!(seg.distance_to(Vec2::new(0.3, 0.0)) < 1e-15);
        assert!((seg.distance_to(Vec2::new(0.0, 0.5)) - 0.5).abs() < 1e-15);
        assert!((seg.distance_to(Vec2::new(2.0, 0.0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn neighborhood_check_reports_the_worst_point() {
        let sq = ConvexPolygon::unit_square();
        let pts = [Vec2::new(0.5, 0.5), Vec2::new(1.02, 0.5), Vec2::new(0.5, -0.07)];
        let ok = within_neighborhood(&pts, SetRef::Region(&sq), 0.1).unwrap();
        assert!(ok.ok);
        assert!((ok.worst_distance - 0.07).abs() < 1e-12);
        assert_eq!(ok.worst_point, Vec2::new(0.5, -0.07));
        let tight = within_neighborhood(&pts, SetRef::Region(&sq), 0.05).unwrap();
        assert!(!tight.ok);
    }

    fn random_set(seed: u64, len: usize) -> Vec<Vec2> {
        (0..len as u64).map(|k| unit_point(seed, k)).collect()
    }

    proptest! {
        #[test]
        fn hull_contains_every_input(seed in 0u64..500, len in 1usize..60) {
            let pts = random_set(seed, len);
            let hull = convex_hull(&pts).unwrap();
            for p in &pts {
                prop_assert!(hull.distance_to(*p) <= 1e-9);
            }
        }

        #[test]
        fn hull_vertices_are_inputs_and_strictly_convex(seed in 0u64..500, len in 3usize..60) {
            let pts = random_set(seed, len);
            let hull = convex_hull(&pts).unwrap();
            for v in hull.vertices() {
                prop_assert!(pts.contains(v));
            }
            let vs = hull.vertices();
            if vs.len() >= 3 {
                for i in 0..vs.len() {
                    let (a, b, c) = (vs[i], vs[(i + 1) % vs.len()], vs[(i + 2) % vs.len()]);
                    prop_assert!((b - a).cross(c - a) > COLLINEAR_TOL);
                }
            }
        }

        #[test]
        fn hull_is_idempotent(seed in 0u64..500, len in 1usize..60) {
            let pts = random_set(seed, len);
            let hull = convex_hull(&pts).unwrap();
            let again = convex_hull(hull.vertices()).unwrap();
            prop_assert_eq!(hull, again);
        }

        #[test]
        fn hausdorff_is_a_metric_on_finite_sets(
            sa in 0u64..200, sb in 300u64..500, sc in 600u64..800,
            la in 1usize..20, lb in 1usize..20, lc in 1usize..20,
        ) {
            let (a, b, c) = (random_set(sa, la), random_set(sb, lb), random_set(sc, lc));
            let (pa, pb, pc) = (SetRef::Points(&a), SetRef::Points(&b), SetRef::Points(&c));
            prop_assert_eq!(hausdorff(pa, pa).unwrap(), 0.0);
            let ab = hausdorff(pa, pb).unwrap();
            prop_assert_eq!(ab, hausdorff(pb, pa).unwrap());
            let (bc, ac) = (hausdorff(pb, pc).unwrap(), hausdorff(pa, pc).unwrap());
            prop_assert!(ac <= ab + bc + 1e-12);
        }
    }
}
