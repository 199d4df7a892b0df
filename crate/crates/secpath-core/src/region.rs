//! Boolean region operations over arrangements: covered-area measurement,
//! union boundary extraction, and the sampled weak-visibility region of a
//! path.

use crate::geometry::{GeomError, PathPolyline, Point, PolygonalDomain, Ring, SegmentMeet};
use crate::scalar::{scalar_int, Scalar};
use crate::subdivision::Subdivision;
use crate::visibility::{visibility_polygon, SightCache};
use num::{Signed, Zero};
use std::collections::BTreeSet;

/// Total area of the faces whose interior satisfies `covered`.
pub fn covered_area(sub: &Subdivision, covered: impl Fn(usize, &Point) -> bool) -> Scalar {
    let mut acc = Scalar::zero();
    for f in 0..sub.faces.len() {
        let p = sub.face_interior_point(f);
        if covered(f, &p) {
            acc += &sub.faces[f].area;
        }
    }
    acc
}

/// Extracts the union of the covered faces as a polygon with holes.
/// Fails when the union is disconnected or pinches at a vertex.
pub fn covered_region(
    sub: &Subdivision,
    covered: &[bool],
) -> Result<PolygonalDomain, GeomError> {
    let face_covered = |f: Option<usize>| f.map_or(false, |f| covered[f]);
    // Boundary half-edges: covered face on the left, uncovered on the right.
    let is_boundary = |h: usize| -> bool {
        let he = &sub.halfedges[h];
        let left = sub.cycles[he.cycle].face;
        let right = sub.cycles[sub.halfedges[he.twin].cycle].face;
        face_covered(left) && !face_covered(right)
    };

    let mut visited = vec![false; sub.halfedges.len()];
    let mut rings: Vec<Vec<Point>> = Vec::new();
    for h0 in 0..sub.halfedges.len() {
        if visited[h0] || !is_boundary(h0) {
            continue;
        }
        let mut ring = Vec::new();
        let mut h = h0;
        loop {
            visited[h] = true;
            ring.push(sub.vertices[sub.halfedges[h].origin].clone());
            // Successor: rotate through covered faces around the target
            // vertex until the boundary continues.
            let mut g = sub.halfedges[h].next;
            while !is_boundary(g) {
                g = sub.halfedges[sub.halfedges[g].twin].next;
                if g == sub.halfedges[h].next {
                    return Err(GeomError::Degenerate(
                        "region boundary walk did not close".into(),
                    ));
                }
            }
            h = g;
            if h == h0 {
                break;
            }
        }
        rings.push(simplify_ring(ring));
    }

    let mut outer: Option<Ring> = None;
    let mut holes: Vec<Ring> = Vec::new();
    for r in rings {
        let ring = Ring::new(r).map_err(|_| {
            GeomError::Degenerate("union boundary pinches or degenerates".into())
        })?;
        if ring.is_ccw() {
            if outer.is_some() {
                return Err(GeomError::Degenerate("union region is disconnected".into()));
            }
            outer = Some(ring);
        } else {
            holes.push(ring);
        }
    }
    let outer = outer.ok_or_else(|| GeomError::Degenerate("empty union region".into()))?;
    PolygonalDomain::new(outer, holes)
}

/// Drops vertices collinear with their ring neighbours.
fn simplify_ring(ring: Vec<Point>) -> Vec<Point> {
    let n = ring.len();
    if n < 3 {
        return ring;
    }
    let mut out: Vec<Point> = Vec::with_capacity(n);
    for i in 0..n {
        let prev = &ring[(i + n - 1) % n];
        let cur = &ring[i];
        let next = &ring[(i + 1) % n];
        if crate::geometry::orient(prev, cur, next) != 0 {
            out.push(cur.clone());
        }
    }
    out
}

/// The union of a set of simple polygons, built through an exact
/// arrangement of all their edges.
pub fn union_of_polygons(polys: &[Vec<Point>]) -> Result<PolygonalDomain, GeomError> {
    let mut segs: Vec<(Point, Point)> = Vec::new();
    for poly in polys {
        let n = poly.len();
        for i in 0..n {
            segs.push((poly[i].clone(), poly[(i + 1) % n].clone()));
        }
    }
    let sub = Subdivision::from_segments(&segs);
    let covered: Vec<bool> = (0..sub.faces.len())
        .map(|f| {
            let p = sub.face_interior_point(f);
            polys.iter().any(|poly| point_in_simple_polygon(poly, &p))
        })
        .collect();
    covered_region(&sub, &covered)
}

/// Even-odd containment in a simple polygon given as a vertex list.
pub fn point_in_simple_polygon(poly: &[Point], p: &Point) -> bool {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if crate::geometry::on_segment(a, b, p) {
            return true; // closed containment
        }
        let a_above = a.y > p.y;
        let b_above = b.y > p.y;
        if a_above != b_above {
            let o = crate::geometry::orient(a, b, p);
            if (b.y > a.y && o < 0) || (b.y <= a.y && o > 0) {
                inside = !inside;
            }
        }
    }
    inside
}

/// Sampled weak-visibility machinery for one domain: the visibility
/// decomposition is built once and shared across path evaluations.
pub struct WeakVisibilityEvaluator<'a> {
    pub domain: &'a PolygonalDomain,
    pub decomposition: Subdivision,
    sight: SightCache<'a>,
}

impl<'a> WeakVisibilityEvaluator<'a> {
    pub fn new(domain: &'a PolygonalDomain) -> Result<Self, GeomError> {
        let decomposition = crate::subdivision::visibility_decomposition(domain)?;
        Ok(WeakVisibilityEvaluator {
            domain,
            decomposition,
            sight: SightCache::new(domain),
        })
    }

    /// Uses an existing decomposition (callers that already built one).
    pub fn with_decomposition(domain: &'a PolygonalDomain, decomposition: Subdivision) -> Self {
        WeakVisibilityEvaluator { domain, decomposition, sight: SightCache::new(domain) }
    }

    /// Sample points along the path: its vertices, its crossings with the
    /// decomposition edges, and `refinement - 1` evenly spaced interior
    /// points per resulting sub-segment.
    pub fn sample_points(&self, path: &PathPolyline, refinement: u32) -> Vec<Point> {
        let refinement = refinement.max(1);
        let mut samples: BTreeSet<Point> = BTreeSet::new();
        for v in &path.vertices {
            samples.insert(v.clone());
        }
        for (a, b) in path.segments() {
            let d = b.sub(a);
            let dd = d.norm_sq();
            let mut params: Vec<Scalar> = vec![Scalar::zero(), Scalar::from_integer(1.into())];
            for &(u, v, _, _) in &self.decomposition.edges {
                let eu = &self.decomposition.vertices[u];
                let ev = &self.decomposition.vertices[v];
                match crate::geometry::segment_intersection(a, b, eu, ev) {
                    SegmentMeet::None => {}
                    SegmentMeet::At(p) => {
                        params.push(p.sub(a).dot(&d) / dd.clone());
                    }
                    SegmentMeet::Overlap(p, q) => {
                        params.push(p.sub(a).dot(&d) / dd.clone());
                        params.push(q.sub(a).dot(&d) / dd.clone());
                    }
                }
            }
            params.sort();
            params.dedup();
            let r = scalar_int(refinement as i64);
            for w in params.windows(2) {
                for k in 1..refinement {
                    let t = &w[0] + (&w[1] - &w[0]) * scalar_int(k as i64) / r.clone();
                    samples.insert(a.lerp(b, &t));
                }
                samples.insert(a.lerp(b, &w[0]));
                samples.insert(a.lerp(b, &w[1]));
            }
        }
        samples.into_iter().collect()
    }

    /// Area of the union of the visibility polygons of the sample points:
    /// a certified lower bound on the weakly visible area of the path.
    pub fn weak_visibility_area(
        &self,
        path: &PathPolyline,
        refinement: u32,
    ) -> Result<Scalar, GeomError> {
        path.validate_in(self.domain)?;
        let samples = self.sample_points(path, refinement);
        self.union_area_of_viewpoints(&samples)
    }

    /// Area of the union of `V(p)` over the given viewpoints.
    pub fn union_area_of_viewpoints(&self, viewpoints: &[Point]) -> Result<Scalar, GeomError> {
        if viewpoints.is_empty() {
            return Ok(Scalar::zero());
        }
        // The union boundary consists of domain edges and window chords of
        // the individual visibility polygons.
        let mut segs = self.domain.edges();
        for p in viewpoints {
            let v = visibility_polygon(self.domain, p)?;
            segs.extend(v.window_chords());
        }
        let mut sub = Subdivision::from_segments(&segs);
        sub.mark_domain(self.domain);
        let mut acc = Scalar::zero();
        for f in sub.domain_faces() {
            let probe = sub.face_interior_point(f);
            if viewpoints.iter().any(|p| self.sight.sees(p, &probe)) {
                acc += &sub.faces[f].area;
            }
        }
        Ok(acc)
    }
}

/// One-shot sampled weak visibility area; builds the decomposition
/// internally. Prefer [`WeakVisibilityEvaluator`] for repeated queries.
pub fn weak_visibility_area(
    domain: &PolygonalDomain,
    path: &PathPolyline,
    refinement: u32,
) -> Result<Scalar, GeomError> {
    WeakVisibilityEvaluator::new(domain)?.weak_visibility_area(path, refinement)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{scalar_int, scalar_ratio, to_f64};

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn union_of_two_overlapping_squares() {
        let a = vec![pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)];
        let b = vec![pt(1, 1), pt(3, 1), pt(3, 3), pt(1, 3)];
        let u = union_of_polygons(&[a, b]).unwrap();
        // 4 + 4 - 1 overlap
        assert_eq!(u.area(), scalar_int(7));
        assert!(u.holes.is_empty());
    }

    #[test]
    fn union_creating_a_hole() {
        // Four overlapping bars forming a square annulus.
        let bars = vec![
            vec![pt(0, 0), pt(4, 0), pt(4, 1), pt(0, 1)],
            vec![pt(3, 0), pt(4, 0), pt(4, 4), pt(3, 4)],
            vec![pt(0, 3), pt(4, 3), pt(4, 4), pt(0, 4)],
            vec![pt(0, 0), pt(1, 0), pt(1, 4), pt(0, 4)],
        ];
        let u = union_of_polygons(&bars).unwrap();
        assert_eq!(u.holes.len(), 1);
        assert_eq!(u.area(), scalar_int(12));
        assert_eq!(u.holes[0].area(), scalar_int(4));
    }

    #[test]
    fn weak_visibility_convex_is_whole_area() {
        let d = PolygonalDomain::from_int_rings(&[(0, 0), (4, 0), (4, 3), (0, 3)], &[]).unwrap();
        let ev = WeakVisibilityEvaluator::new(&d).unwrap();
        let path = PathPolyline::new(vec![pt(1, 1), pt(3, 2)]).unwrap();
        for refinement in [1, 2, 4] {
            assert_eq!(ev.weak_visibility_area(&path, refinement).unwrap(), scalar_int(12));
        }
    }

    #[test]
    fn weak_visibility_single_point_is_visible_area() {
        let d = PolygonalDomain::from_int_rings(
            &[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)],
            &[],
        )
        .unwrap();
        let p = Point::new(scalar_ratio(7, 4), scalar_ratio(1, 2));
        let ev = WeakVisibilityEvaluator::new(&d).unwrap();
        let path = PathPolyline::single(p.clone());
        let w = ev.weak_visibility_area(&path, 3).unwrap();
        let v = crate::visibility::visible_area(&d, &p).unwrap();
        assert_eq!(w, v);
    }

    #[test]
    fn weak_visibility_monotone_in_refinement() {
        let d = PolygonalDomain::from_int_rings(
            &[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)],
            &[],
        )
        .unwrap();
        let ev = WeakVisibilityEvaluator::new(&d).unwrap();
        let path = PathPolyline::new(vec![
            Point::new(scalar_ratio(7, 4), scalar_ratio(1, 2)),
            Point::new(scalar_ratio(1, 4), scalar_ratio(7, 4)),
        ])
        .unwrap();
        // The path must stay inside: go around the corner.
        let path = PathPolyline::new(vec![
            path.vertices[0].clone(),
            Point::new(scalar_ratio(1, 2), scalar_ratio(1, 2)),
            path.vertices[1].clone(),
        ])
        .unwrap();
        let total = d.area();
        let mut prev = Scalar::zero();
        for refinement in [1, 2, 4] {
            let w = ev.weak_visibility_area(&path, refinement).unwrap();
            assert!(w >= prev, "weak visibility decreased under refinement");
            assert!(w <= total);
            prev = w;
        }
        // This particular path sees the entire L-shape already.
        assert!(to_f64(&prev) > 2.9);
    }

    #[test]
    fn weak_visibility_partial_in_hole_domain() {
        let d = PolygonalDomain::from_int_rings(
            &[(0, 0), (6, 0), (6, 6), (0, 6)],
            &[vec![(2, 2), (4, 2), (4, 4), (2, 4)]],
        )
        .unwrap();
        // A short path hugging the left wall cannot see behind the hole.
        let path = PathPolyline::new(vec![pt(1, 2), pt(1, 4)]).unwrap();
        let ev = WeakVisibilityEvaluator::new(&d).unwrap();
        let w = ev.weak_visibility_area(&path, 2).unwrap();
        assert!(w < d.area());
        assert!(w > scalar_int(16)); // sees well over half of the 32-unit domain
    }
}
