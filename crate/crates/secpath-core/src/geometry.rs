//! Exact geometric kernel: points, predicates, rings and polygonal domains.

use crate::scalar::{is_integer, sign, to_f64, Scalar};
use num::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// A point with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(crate::scalar::scalar_int(x), crate::scalar::scalar_int(y))
    }

    pub fn approx(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }

    pub fn sub(&self, other: &Point) -> Vector {
        Vector {
            x: &self.x - &other.x,
            y: &self.y - &other.y,
        }
    }

    pub fn add(&self, v: &Vector) -> Point {
        Point::new(&self.x + &v.x, &self.y + &v.y)
    }

    /// Point on the segment `self..other` at parameter `t` (0 = self, 1 = other).
    pub fn lerp(&self, other: &Point, t: &Scalar) -> Point {
        let d = other.sub(self);
        Point::new(&self.x + &d.x * t, &self.y + &d.y * t)
    }

    pub fn dist_f64(&self, other: &Point) -> f64 {
        let (ax, ay) = self.approx();
        let (bx, by) = other.approx();
        ((ax - bx).powi(2) + (ay - by).powi(2)).sqrt()
    }
}

/// A displacement with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vector {
    pub x: Scalar,
    pub y: Scalar,
}

impl Vector {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Vector { x, y }
    }

    pub fn cross(&self, other: &Vector) -> Scalar {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn perp(&self) -> Vector {
        Vector::new(-self.y.clone(), self.x.clone())
    }

    pub fn neg(&self) -> Vector {
        Vector::new(-self.x.clone(), -self.y.clone())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector::new(&self.x * s, &self.y * s)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn norm_sq(&self) -> Scalar {
        self.dot(self)
    }

    pub fn norm_f64(&self) -> f64 {
        to_f64(&self.norm_sq()).sqrt()
    }
}

/// Sign of twice the signed area of the triangle `abc`: +1 for a left turn,
/// -1 for a right turn, 0 for collinear points. Exact.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i32 {
    let v = b.sub(a).cross(&c.sub(a));
    sign(&v)
}

/// Twice the signed area of the triangle `abc`, exact.
pub fn cross2(a: &Point, b: &Point, c: &Point) -> Scalar {
    b.sub(a).cross(&c.sub(a))
}

/// True when `p` lies on the closed segment `ab`.
pub fn on_segment(a: &Point, b: &Point, p: &Point) -> bool {
    if orient(a, b, p) != 0 {
        return false;
    }
    let d = b.sub(a);
    let t = p.sub(a).dot(&d);
    !t.is_negative() && t <= d.norm_sq()
}

/// How two closed segments meet.
#[derive(Clone, Debug, PartialEq)]
pub enum SegmentMeet {
    /// Disjoint segments.
    None,
    /// A single meeting point (proper crossing, T-junction or shared endpoint).
    At(Point),
    /// Collinear segments sharing a positive-length overlap.
    Overlap(Point, Point),
}

/// Exact intersection of the closed segments `ab` and `cd`.
pub fn segment_intersection(a: &Point, b: &Point, c: &Point, d: &Point) -> SegmentMeet {
    let r = b.sub(a);
    let s = d.sub(c);
    let denom = r.cross(&s);
    let qp = c.sub(a);
    if denom.is_zero() {
        if !qp.cross(&r).is_zero() {
            return SegmentMeet::None; // parallel, not collinear
        }
        // Collinear: project onto ab.
        let rr = r.norm_sq();
        if rr.is_zero() {
            // `ab` degenerates to a point.
            return if on_segment(c, d, a) {
                SegmentMeet::At(a.clone())
            } else {
                SegmentMeet::None
            };
        }
        let t0 = qp.dot(&r);
        let t1 = d.sub(a).dot(&r);
        let (lo, hi, plo, phi) = if t0 <= t1 {
            (t0, t1, c, d)
        } else {
            (t1, t0, d, c)
        };
        let zero = Scalar::zero();
        if hi < zero || lo > rr {
            return SegmentMeet::None;
        }
        let start = if lo <= zero { a.clone() } else { plo.clone() };
        let end = if hi >= rr { b.clone() } else { phi.clone() };
        if start == end {
            SegmentMeet::At(start)
        } else {
            SegmentMeet::Overlap(start, end)
        }
    } else {
        let t = qp.cross(&s) / denom.clone();
        let u = qp.cross(&r) / denom;
        let zero = Scalar::zero();
        let one = Scalar::from_integer(1.into());
        if t < zero || t > one || u < zero || u > one {
            SegmentMeet::None
        } else {
            SegmentMeet::At(a.lerp(b, &t))
        }
    }
}

/// True when the open interiors of `ab` and `cd` cross at a single point.
pub fn segments_properly_cross(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    d1 * d2 < 0 && d3 * d4 < 0
}

/// Errors raised while building or querying geometric structures.
#[derive(Debug, thiserror::Error)]
pub enum GeomError {
    #[error("ring has fewer than 3 vertices")]
    TooFewVertices,
    #[error("ring is not simple")]
    NonSimpleRing,
    #[error("ring has zero area")]
    ZeroAreaRing,
    #[error("hole is not strictly interior to the outer ring")]
    HoleNotInterior,
    #[error("rings touch or intersect")]
    TouchingRings,
    #[error("point lies outside the domain")]
    OutsideDomain,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// A simple closed vertex ring. Edges run between consecutive vertices,
/// wrapping around at the end.
#[derive(Clone, Debug, PartialEq)]
pub struct Ring {
    pub vertices: Vec<Point>,
}

impl Ring {
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeomError> {
        let ring = Ring { vertices };
        ring.check_simple()?;
        Ok(ring)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge(&self, i: usize) -> (&Point, &Point) {
        let n = self.vertices.len();
        (&self.vertices[i], &self.vertices[(i + 1) % n])
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        (0..self.vertices.len()).map(move |i| self.edge(i))
    }

    /// Twice the signed area; positive for counterclockwise orientation.
    pub fn signed_area2(&self) -> Scalar {
        let mut acc = Scalar::zero();
        let n = self.vertices.len();
        for i in 0..n {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % n];
            acc += &a.x * &b.y - &b.x * &a.y;
        }
        acc
    }

    pub fn area(&self) -> Scalar {
        self.signed_area2().abs() / crate::scalar::scalar_int(2)
    }

    pub fn is_ccw(&self) -> bool {
        self.signed_area2().is_positive()
    }

    pub fn reversed(&self) -> Ring {
        let mut v = self.vertices.clone();
        v.reverse();
        Ring { vertices: v }
    }

    fn check_simple(&self) -> Result<(), GeomError> {
        let n = self.vertices.len();
        if n < 3 {
            return Err(GeomError::TooFewVertices);
        }
        for i in 0..n {
            if self.vertices[i] == self.vertices[(i + 1) % n] {
                return Err(GeomError::NonSimpleRing);
            }
        }
        for i in 0..n {
            let (a, b) = self.edge(i);
            for j in (i + 1)..n {
                let (c, d) = self.edge(j);
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                match segment_intersection(a, b, c, d) {
                    SegmentMeet::None => {}
                    SegmentMeet::At(p) => {
                        if adjacent {
                            // Adjacent edges may share exactly the common vertex.
                            let shared = if j == i + 1 { b } else { a };
                            if &p != shared {
                                return Err(GeomError::NonSimpleRing);
                            }
                        } else {
                            return Err(GeomError::NonSimpleRing);
                        }
                    }
                    SegmentMeet::Overlap(_, _) => return Err(GeomError::NonSimpleRing),
                }
            }
        }
        if self.signed_area2().is_zero() {
            return Err(GeomError::ZeroAreaRing);
        }
        Ok(())
    }

    /// Exact point-in-ring parity test. Points on the boundary are reported
    /// as `Boundary`.
    pub fn classify(&self, p: &Point) -> Location {
        let n = self.vertices.len();
        for i in 0..n {
            let (a, b) = self.edge(i);
            if on_segment(a, b, p) {
                return Location::Boundary;
            }
        }
        // Crossing count of a rightward ray with half-open edge rule.
        let mut inside = false;
        for i in 0..n {
            let (a, b) = self.edge(i);
            let a_above = a.y > p.y;
            let b_above = b.y > p.y;
            if a_above != b_above {
                // Edge crosses the horizontal line through p; which side?
                let o = orient(a, b, p);
                let crosses_right = if b.y > a.y { o < 0 } else { o > 0 };
                if crosses_right {
                    inside = !inside;
                }
            }
        }
        if inside {
            Location::Interior
        } else {
            Location::Exterior
        }
    }
}

/// Result of locating a point against a region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// A polygon with holes: the universe of all computations.
///
/// The outer ring is stored counterclockwise and holes clockwise, so the
/// domain interior always lies locally to the left of each directed edge.
#[derive(Clone, Debug)]
pub struct PolygonalDomain {
    pub outer: Ring,
    pub holes: Vec<Ring>,
}

impl PolygonalDomain {
    /// Builds a domain, normalizing ring orientations. Rings that touch each
    /// other or leave the outer ring are rejected.
    pub fn new(outer: Ring, holes: Vec<Ring>) -> Result<Self, GeomError> {
        let outer = if outer.is_ccw() { outer } else { outer.reversed() };
        let holes: Vec<Ring> = holes
            .into_iter()
            .map(|h| if h.is_ccw() { h.reversed() } else { h })
            .collect();
        for h in &holes {
            for v in &h.vertices {
                if outer.classify(v) != Location::Interior {
                    return Err(GeomError::HoleNotInterior);
                }
            }
            // No edge crossings with the outer ring (vertex containment alone
            // misses rings that poke out between vertices).
            for (a, b) in h.edges() {
                for (c, d) in outer.edges() {
                    if segment_intersection(a, b, c, d) != SegmentMeet::None {
                        return Err(GeomError::TouchingRings);
                    }
                }
            }
        }
        for i in 0..holes.len() {
            for j in (i + 1)..holes.len() {
                for (a, b) in holes[i].edges() {
                    for (c, d) in holes[j].edges() {
                        if segment_intersection(a, b, c, d) != SegmentMeet::None {
                            return Err(GeomError::TouchingRings);
                        }
                    }
                }
                // Disjoint edge sets still admit full containment.
                if holes[i].classify(&holes[j].vertices[0]) == Location::Interior
                    || holes[j].classify(&holes[i].vertices[0]) == Location::Interior
                {
                    return Err(GeomError::TouchingRings);
                }
            }
        }
        Ok(PolygonalDomain { outer, holes })
    }

    pub fn from_int_rings(outer: &[(i64, i64)], holes: &[Vec<(i64, i64)>]) -> Result<Self, GeomError> {
        let to_ring = |pts: &[(i64, i64)]| {
            Ring::new(pts.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
        };
        let outer = to_ring(outer)?;
        let holes = holes.iter().map(|h| to_ring(h)).collect::<Result<_, _>>()?;
        PolygonalDomain::new(outer, holes)
    }

    /// Total vertex count over all rings.
    pub fn vertex_count(&self) -> usize {
        self.outer.len() + self.holes.iter().map(|h| h.len()).sum::<usize>()
    }

    /// Largest absolute coordinate over all vertices.
    pub fn max_abs_coord(&self) -> Scalar {
        let mut best = Scalar::zero();
        for v in self.all_vertices() {
            for c in [&v.x, &v.y] {
                let a = c.abs();
                if a > best {
                    best = a;
                }
            }
        }
        best
    }

    /// True when every vertex has integer coordinates (required for the
    /// lattice-triangle area lower bound).
    pub fn has_integer_coords(&self) -> bool {
        self.all_vertices().all(|v| is_integer(&v.x) && is_integer(&v.y))
    }

    pub fn rings(&self) -> impl Iterator<Item = &Ring> {
        std::iter::once(&self.outer).chain(self.holes.iter())
    }

    pub fn all_vertices(&self) -> impl Iterator<Item = &Point> {
        self.rings().flat_map(|r| r.vertices.iter())
    }

    /// All boundary edges as point pairs, interior to the left.
    pub fn edges(&self) -> Vec<(Point, Point)> {
        let mut out = Vec::new();
        for r in self.rings() {
            for (a, b) in r.edges() {
                out.push((a.clone(), b.clone()));
            }
        }
        out
    }

    /// Exact area: outer area minus hole areas.
    pub fn area(&self) -> Scalar {
        let mut a = self.outer.area();
        for h in &self.holes {
            a -= h.area();
        }
        a
    }

    /// Exact classification of a point against the closed domain.
    pub fn locate_point(&self, p: &Point) -> Location {
        match self.outer.classify(p) {
            Location::Exterior => return Location::Exterior,
            Location::Boundary => return Location::Boundary,
            Location::Interior => {}
        }
        for h in &self.holes {
            match h.classify(p) {
                Location::Interior => return Location::Exterior,
                Location::Boundary => return Location::Boundary,
                Location::Exterior => {}
            }
        }
        Location::Interior
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.locate_point(p) != Location::Exterior
    }

    /// True when the closed segment `ab` stays inside the closed domain.
    pub fn contains_segment(&self, a: &Point, b: &Point) -> bool {
        if !self.contains(a) || !self.contains(b) {
            return false;
        }
        if a == b {
            return true;
        }
        // Split at every boundary contact and check one interior point of
        // each piece.
        let d = b.sub(a);
        let dd = d.norm_sq();
        let mut params: Vec<Scalar> = vec![Scalar::zero(), Scalar::from_integer(1.into())];
        for (ea, eb) in self.edges() {
            match segment_intersection(a, b, &ea, &eb) {
                SegmentMeet::None => {}
                SegmentMeet::At(p) => params.push(p.sub(a).dot(&d) / dd.clone()),
                SegmentMeet::Overlap(p, q) => {
                    params.push(p.sub(a).dot(&d) / dd.clone());
                    params.push(q.sub(a).dot(&d) / dd.clone());
                }
            }
        }
        params.sort();
        params.dedup();
        let two = crate::scalar::scalar_int(2);
        for w in params.windows(2) {
            let mid = (&w[0] + &w[1]) / two.clone();
            let m = a.lerp(b, &mid);
            if self.locate_point(&m) == Location::Exterior {
                return false;
            }
        }
        true
    }
}

/// An s-t path as an ordered polyline.
#[derive(Clone, Debug, PartialEq)]
pub struct PathPolyline {
    pub vertices: Vec<Point>,
}

impl PathPolyline {
    /// A path must have at least one vertex and no zero-length segments.
    /// Single-vertex paths (s = t) are allowed.
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeomError> {
        if vertices.is_empty() {
            return Err(GeomError::InvalidParameter("empty path".into()));
        }
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(GeomError::Degenerate("repeated path vertex".into()));
            }
        }
        Ok(PathPolyline { vertices })
    }

    pub fn single(p: Point) -> Self {
        PathPolyline { vertices: vec![p] }
    }

    pub fn start(&self) -> &Point {
        self.vertices.first().unwrap()
    }

    pub fn end(&self) -> &Point {
        self.vertices.last().unwrap()
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point, &Point)> {
        self.vertices.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn length_f64(&self) -> f64 {
        self.segments().map(|(a, b)| a.dist_f64(b)).sum()
    }

    /// Checks that every segment lies inside the closed domain.
    pub fn validate_in(&self, domain: &PolygonalDomain) -> Result<(), GeomError> {
        if self.vertices.len() == 1 {
            if !domain.contains(&self.vertices[0]) {
                return Err(GeomError::OutsideDomain);
            }
            return Ok(());
        }
        for (a, b) in self.segments() {
            if !domain.contains_segment(a, b) {
                return Err(GeomError::OutsideDomain);
            }
        }
        Ok(())
    }

    /// Drops interior vertices collinear with their neighbours.
    pub fn simplified(&self) -> PathPolyline {
        if self.vertices.len() <= 2 {
            return self.clone();
        }
        let mut out = vec![self.vertices[0].clone()];
        for i in 1..self.vertices.len() - 1 {
            let prev = out.last().unwrap();
            let cur = &self.vertices[i];
            let next = &self.vertices[i + 1];
            if orient(prev, cur, next) != 0 {
                out.push(cur.clone());
            }
        }
        out.push(self.vertices.last().unwrap().clone());
        PathPolyline { vertices: out }
    }
}

/// Orders directions counterclockwise starting from the positive x-axis.
/// Directions must be non-zero. Equal directions compare equal.
pub fn compare_directions(a: &Vector, b: &Vector) -> Ordering {
    let ha = direction_half(a);
    let hb = direction_half(b);
    if ha != hb {
        return ha.cmp(&hb);
    }
    let c = a.cross(b);
    if c.is_positive() {
        Ordering::Less
    } else if c.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

fn direction_half(d: &Vector) -> u8 {
    // 0: upper half-plane including the positive x-axis; 1: the rest.
    if d.y.is_positive() || (d.y.is_zero() && d.x.is_positive()) {
        0
    } else {
        1
    }
}

/// True when direction `d` lies in the closed counterclockwise cone from
/// `from` to `to`. A zero-width cone contains only its own direction; the
/// degenerate case `from == -to` is treated as the closed half-plane left
/// of `from`.
pub fn direction_in_ccw_cone(from: &Vector, to: &Vector, d: &Vector) -> bool {
    let c = from.cross(to);
    if c.is_positive() {
        !from.cross(d).is_negative() && !d.cross(to).is_negative()
    } else if c.is_negative() {
        // Reflex cone: complement of the open cw cone from `from` to `to`.
        !(to.cross(d).is_positive() && d.cross(from).is_positive())
    } else if from.dot(to).is_positive() {
        // Same direction: zero-width cone.
        from.cross(d).is_zero() && from.dot(d).is_positive()
    } else {
        // Opposite directions: the closed half-plane left of `from`,
        // including both bounding rays.
        !from.cross(d).is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{scalar_int, scalar_ratio};

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn orient_basic() {
        assert_eq!(orient(&pt(0, 0), &pt(1, 0), &pt(0, 1)), 1);
        assert_eq!(orient(&pt(0, 0), &pt(1, 1), &pt(2, 2)), 0);
        assert_eq!(orient(&pt(0, 0), &pt(1, 1), &pt(2, 0)), -1);
    }

    #[test]
    fn orient_antisymmetric() {
        let a = pt(3, -2);
        let b = pt(-1, 5);
        let c = pt(7, 11);
        assert_eq!(orient(&a, &b, &c), -orient(&b, &a, &c));
        assert_eq!(orient(&a, &b, &c), -orient(&a, &c, &b));
        assert_eq!(orient(&a, &b, &c), -orient(&c, &b, &a));
    }

    #[test]
    fn segment_meet_cases() {
        // Proper crossing at (1, 1).
        match segment_intersection(&pt(0, 0), &pt(2, 2), &pt(0, 2), &pt(2, 0)) {
            SegmentMeet::At(p) => assert_eq!(p, pt(1, 1)),
            other => panic!("expected point, got {other:?}"),
        }
        // Shared endpoint.
        match segment_intersection(&pt(0, 0), &pt(1, 0), &pt(1, 0), &pt(2, 5)) {
            SegmentMeet::At(p) => assert_eq!(p, pt(1, 0)),
            other => panic!("expected point, got {other:?}"),
        }
        // Collinear overlap.
        match segment_intersection(&pt(0, 0), &pt(4, 0), &pt(2, 0), &pt(6, 0)) {
            SegmentMeet::Overlap(p, q) => {
                assert_eq!(p, pt(2, 0));
                assert_eq!(q, pt(4, 0));
            }
            other => panic!("expected overlap, got {other:?}"),
        }
        // Disjoint.
        assert_eq!(
            segment_intersection(&pt(0, 0), &pt(1, 0), &pt(0, 1), &pt(1, 1)),
            SegmentMeet::None
        );
    }

    fn unit_square() -> PolygonalDomain {
        PolygonalDomain::from_int_rings(&[(0, 0), (1, 0), (1, 1), (0, 1)], &[]).unwrap()
    }

    fn square_with_hole() -> PolygonalDomain {
        // 3x3 square with a unit hole => area 8.
        PolygonalDomain::from_int_rings(
            &[(0, 0), (3, 0), (3, 3), (0, 3)],
            &[vec![(1, 1), (2, 1), (2, 2), (1, 2)]],
        )
        .unwrap()
    }

    #[test]
    fn areas() {
        assert_eq!(unit_square().area(), scalar_int(1));
        let tri =
            PolygonalDomain::from_int_rings(&[(0, 0), (1, 0), (0, 1)], &[]).unwrap();
        assert_eq!(tri.area(), scalar_ratio(1, 2));
        // 3x3 square with unit hole => 8.
        let d = square_with_hole();
        assert_eq!(d.area(), scalar_int(8));
    }

    #[test]
    fn hole_orientation_normalized() {
        let d = square_with_hole();
        assert!(d.outer.is_ccw());
        assert!(!d.holes[0].is_ccw());
    }

    #[test]
    fn locate_point_cases() {
        let d = square_with_hole();
        let half = scalar_ratio(1, 2);
        assert_eq!(
            d.locate_point(&Point::new(half.clone(), half.clone())),
            Location::Interior
        );
        assert_eq!(d.locate_point(&pt(0, 0)), Location::Boundary);
        // Inside the hole is outside the domain.
        assert_eq!(
            d.locate_point(&Point::new(
                scalar_ratio(3, 2),
                scalar_ratio(3, 2)
            )),
            Location::Exterior
        );
        assert_eq!(d.locate_point(&pt(5, 5)), Location::Exterior);
    }

    #[test]
    fn touching_hole_rejected() {
        let r = PolygonalDomain::from_int_rings(
            &[(0, 0), (4, 0), (4, 4), (0, 4)],
            &[vec![(0, 1), (1, 1), (1, 2)]], // vertex on the outer boundary
        );
        assert!(r.is_err());
    }

    #[test]
    fn non_simple_ring_rejected() {
        let r = Ring::new(vec![pt(0, 0), pt(2, 2), pt(2, 0), pt(0, 2)]);
        assert!(r.is_err());
    }

    #[test]
    fn segment_containment() {
        let d = square_with_hole();
        // Straight across below the hole: inside.
        assert!(d.contains_segment(&Point::new(scalar_int(0), scalar_ratio(1, 2)), &Point::new(scalar_int(3), scalar_ratio(1, 2))));
        // Through the hole: outside.
        assert!(!d.contains_segment(&pt(0, 0), &pt(3, 3)));
        // Along the boundary: inside the closed domain.
        assert!(d.contains_segment(&pt(0, 0), &pt(3, 0)));
    }

    #[test]
    fn cone_membership() {
        let e1 = Vector::new(scalar_int(1), scalar_int(0));
        let e2 = Vector::new(scalar_int(0), scalar_int(1));
        // Quarter cone from +x to +y.
        assert!(direction_in_ccw_cone(&e1, &e2, &Vector::new(scalar_int(1), scalar_int(1))));
        assert!(!direction_in_ccw_cone(&e1, &e2, &Vector::new(scalar_int(1), scalar_int(-1))));
        // Reflex cone from +y to +x contains -x.
        assert!(direction_in_ccw_cone(&e2, &e1, &Vector::new(scalar_int(-1), scalar_int(0))));
        assert!(!direction_in_ccw_cone(&e2, &e1, &Vector::new(scalar_int(1), scalar_int(1))));
    }

    #[test]
    fn path_simplify() {
        let p = PathPolyline::new(vec![pt(0, 0), pt(1, 0), pt(2, 0), pt(2, 1)]).unwrap();
        assert_eq!(p.simplified().vertices.len(), 3);
    }
}
