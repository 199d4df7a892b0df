//! Polygon triangulation by ear clipping, with hole bridging for domains
//! with holes.

use crate::geometry::{
    cross2, on_segment, orient, segments_properly_cross, GeomError, Point, PolygonalDomain,
};
use crate::scalar::{scalar_int, Scalar};
use num::Signed;

/// A triangulation of a domain: triangles index into `points`, and
/// `neighbors[t][k]` is the triangle across the edge opposite... rather,
/// across the edge `(tri[k], tri[(k+1)%3])`, if any.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub points: Vec<Point>,
    pub triangles: Vec<[usize; 3]>,
    pub neighbors: Vec<[Option<usize>; 3]>,
}

impl Triangulation {
    pub fn triangle_points(&self, t: usize) -> [&Point; 3] {
        let [a, b, c] = self.triangles[t];
        [&self.points[a], &self.points[b], &self.points[c]]
    }

    pub fn triangle_area(&self, t: usize) -> Scalar {
        let [a, b, c] = self.triangle_points(t);
        cross2(a, b, c).abs() / scalar_int(2)
    }

    pub fn total_area(&self) -> Scalar {
        (0..self.triangles.len()).map(|t| self.triangle_area(t)).sum()
    }

    /// Index of a triangle whose closure contains `p`.
    pub fn locate(&self, p: &Point) -> Option<usize> {
        (0..self.triangles.len()).find(|&t| {
            let [a, b, c] = self.triangle_points(t);
            point_in_triangle(a, b, c, p)
        })
    }
}

/// Closed-triangle containment for a counterclockwise triangle.
pub fn point_in_triangle(a: &Point, b: &Point, c: &Point, p: &Point) -> bool {
    orient(a, b, p) >= 0 && orient(b, c, p) >= 0 && orient(c, a, p) >= 0
}

/// Triangulates a polygonal domain. Holes are first merged into the outer
/// ring through bridge edges, then the resulting simple ring is ear-clipped.
pub fn triangulate(domain: &PolygonalDomain) -> Result<Triangulation, GeomError> {
    let mut ring: Vec<Point> = domain.outer.vertices.clone();

    // Integrate holes rightmost-first so bridges never cross a pending hole.
    let mut holes: Vec<Vec<Point>> = domain.holes.iter().map(|h| h.vertices.clone()).collect();
    holes.sort_by(|a, b| {
        let ma = a.iter().map(|p| p.x.clone()).max().unwrap();
        let mb = b.iter().map(|p| p.x.clone()).max().unwrap();
        mb.cmp(&ma)
    });
    for hole in &holes {
        ring = bridge_hole(&ring, hole)?;
    }

    let triangles = ear_clip(&ring)?;
    // Re-index into a deduplicated point list (bridging duplicates vertices).
    let mut points: Vec<Point> = Vec::new();
    let index_of = |p: &Point, points: &mut Vec<Point>| -> usize {
        if let Some(i) = points.iter().position(|q| q == p) {
            i
        } else {
            points.push(p.clone());
            points.len() - 1
        }
    };
    let mut tris: Vec<[usize; 3]> = Vec::new();
    for t in &triangles {
        let a = index_of(&ring[t[0]], &mut points);
        let b = index_of(&ring[t[1]], &mut points);
        let c = index_of(&ring[t[2]], &mut points);
        tris.push([a, b, c]);
    }

    let neighbors = build_neighbors(&tris);
    Ok(Triangulation { points, triangles: tris, neighbors })
}

fn build_neighbors(tris: &[[usize; 3]]) -> Vec<[Option<usize>; 3]> {
    let mut by_edge: std::collections::BTreeMap<(usize, usize), Vec<(usize, usize)>> =
        std::collections::BTreeMap::new();
    for (t, tri) in tris.iter().enumerate() {
        for k in 0..3 {
            let u = tri[k];
            let v = tri[(k + 1) % 3];
            let key = (u.min(v), u.max(v));
            by_edge.entry(key).or_default().push((t, k));
        }
    }
    let mut neighbors = vec![[None; 3]; tris.len()];
    for (_, owners) in by_edge {
        if owners.len() == 2 {
            let (t1, k1) = owners[0];
            let (t2, k2) = owners[1];
            neighbors[t1][k1] = Some(t2);
            neighbors[t2][k2] = Some(t1);
        }
    }
    neighbors
}

/// Connects a clockwise hole ring into a counterclockwise outer ring through
/// a two-way bridge at a mutually visible vertex pair.
fn bridge_hole(outer: &[Point], hole: &[Point]) -> Result<Vec<Point>, GeomError> {
    // Rightmost hole vertex.
    let hi = (0..hole.len())
        .max_by(|&i, &j| (&hole[i].x, &hole[i].y).cmp(&(&hole[j].x, &hole[j].y)))
        .unwrap();
    let hv = &hole[hi];

    // Candidate outer vertices, nearest-feeling first: sorted by squared
    // distance, connect to the first one visible against both rings.
    let mut candidates: Vec<usize> = (0..outer.len()).collect();
    candidates.sort_by_key(|&i| outer[i].sub(hv).norm_sq());
    let visible = |a: &Point, b: &Point| -> bool {
        let rings: [&[Point]; 2] = [outer, hole];
        for ring in rings {
            let n = ring.len();
            for i in 0..n {
                let c = &ring[i];
                let d = &ring[(i + 1) % n];
                if segments_properly_cross(a, b, c, d) {
                    return false;
                }
                // An interior touch that is not one of the bridge endpoints
                // blocks the bridge.
                if c != a && c != b && on_segment(a, b, c) {
                    return false;
                }
            }
        }
        true
    };
    let oi = candidates
        .into_iter()
        .find(|&i| visible(&outer[i], hv))
        .ok_or_else(|| GeomError::Degenerate("no visible bridge for hole".into()))?;

    // Splice: outer[0..=oi], hole[hi..], hole[..=hi], outer[oi..].
    let mut merged = Vec::with_capacity(outer.len() + hole.len() + 2);
    merged.extend_from_slice(&outer[..=oi]);
    for k in 0..hole.len() {
        merged.push(hole[(hi + k) % hole.len()].clone());
    }
    merged.push(hole[hi].clone());
    merged.extend_from_slice(&outer[oi..]);
    Ok(merged)
}

/// Ear clipping on a counterclockwise ring. Tolerates collinear vertices and
/// the duplicate vertices introduced by hole bridges.
fn ear_clip(ring: &[Point]) -> Result<Vec<[usize; 3]>, GeomError> {
    let n = ring.len();
    if n < 3 {
        return Err(GeomError::TooFewVertices);
    }
    let mut idx: Vec<usize> = (0..n).collect();
    let mut tris = Vec::with_capacity(n - 2);

    while idx.len() > 3 {
        let m = idx.len();
        let mut clipped = false;
        for k in 0..m {
            let ia = idx[(k + m - 1) % m];
            let ib = idx[k];
            let ic = idx[(k + 1) % m];
            let (a, b, c) = (&ring[ia], &ring[ib], &ring[ic]);
            let o = orient(a, b, c);
            if o < 0 {
                continue; // reflex corner
            }
            if o == 0 {
                // Collinear: degenerate ear, drop the middle vertex.
                // Only safe if a and c are distinct and b lies between them.
                if a != c && on_segment(a, c, b) {
                    idx.remove(k);
                    clipped = true;
                    break;
                }
                continue;
            }
            // No other ring vertex may lie inside the candidate ear.
            let mut blocked = false;
            for &j in &idx {
                if j == ia || j == ib || j == ic {
                    continue;
                }
                let p = &ring[j];
                if p == a || p == b || p == c {
                    continue; // duplicates from bridges
                }
                if point_in_triangle(a, b, c, p) {
                    blocked = true;
                    break;
                }
            }
            if blocked {
                continue;
            }
            tris.push([ia, ib, ic]);
            idx.remove(k);
            clipped = true;
            break;
        }
        if !clipped {
            return Err(GeomError::Degenerate("ear clipping stalled".into()));
        }
    }
    let (a, b, c) = (idx[0], idx[1], idx[2]);
    if orient(&ring[a], &ring[b], &ring[c]) > 0 {
        tris.push([a, b, c]);
    }
    Ok(tris)
}

/// Ear-clips an arbitrary simple ring given directly (used for convex
/// splitting of arrangement faces). The ring may wind either way.
pub fn triangulate_ring(vertices: &[Point]) -> Result<Vec<[Point; 3]>, GeomError> {
    let mut ring: Vec<Point> = vertices.to_vec();
    let mut area2 = Scalar::from_integer(0.into());
    let n = ring.len();
    for i in 0..n {
        let a = &ring[i];
        let b = &ring[(i + 1) % n];
        area2 += &a.x * &b.y - &b.x * &a.y;
    }
    if area2.is_negative() {
        ring.reverse();
    }
    let tris = ear_clip(&ring)?;
    Ok(tris
        .into_iter()
        .map(|[a, b, c]| [ring[a].clone(), ring[b].clone(), ring[c].clone()])
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{scalar_int, scalar_ratio};

    fn domain(outer: &[(i64, i64)], holes: &[Vec<(i64, i64)>]) -> PolygonalDomain {
        PolygonalDomain::from_int_rings(outer, holes).unwrap()
    }

    #[test]
    fn triangle_is_itself() {
        let d = domain(&[(0, 0), (4, 0), (0, 4)], &[]);
        let t = triangulate(&d).unwrap();
        assert_eq!(t.triangles.len(), 1);
        assert_eq!(t.total_area(), d.area());
    }

    #[test]
    fn convex_ngon_has_n_minus_2_triangles() {
        let d = domain(&[(0, 0), (4, 0), (6, 3), (4, 6), (0, 6), (-2, 3)], &[]);
        let t = triangulate(&d).unwrap();
        assert_eq!(t.triangles.len(), d.vertex_count() - 2);
        assert_eq!(t.total_area(), d.area());
    }

    #[test]
    fn l_shape() {
        let d = domain(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)], &[]);
        let t = triangulate(&d).unwrap();
        assert_eq!(t.total_area(), d.area());
        assert_eq!(t.total_area(), scalar_int(3));
    }

    #[test]
    fn square_with_hole_area_is_exact() {
        let d = domain(
            &[(0, 0), (4, 0), (4, 4), (0, 4)],
            &[vec![(1, 1), (2, 1), (2, 2), (1, 2)]],
        );
        let t = triangulate(&d).unwrap();
        assert_eq!(t.total_area(), d.area());
        assert_eq!(t.total_area(), scalar_int(15));
    }

    #[test]
    fn hole_domain_fractional() {
        // 2x2 with centered unit hole: area exactly 3.
        let half = scalar_ratio(1, 2);
        let outer = crate::geometry::Ring::new(
            [(0, 0), (2, 0), (2, 2), (0, 2)]
                .iter()
                .map(|&(x, y)| Point::from_ints(x, y))
                .collect(),
        )
        .unwrap();
        let hole = crate::geometry::Ring::new(vec![
            Point::new(half.clone(), half.clone()),
            Point::new(&half + &scalar_int(1), half.clone()),
            Point::new(&half + &scalar_int(1), &half + &scalar_int(1)),
            Point::new(half.clone(), &half + &scalar_int(1)),
        ])
        .unwrap();
        let d = PolygonalDomain::new(outer, vec![hole]).unwrap();
        let t = triangulate(&d).unwrap();
        assert_eq!(t.total_area(), scalar_int(3));
    }

    #[test]
    fn two_holes() {
        let d = domain(
            &[(0, 0), (8, 0), (8, 4), (0, 4)],
            &[
                vec![(1, 1), (2, 1), (2, 2), (1, 2)],
                vec![(5, 1), (6, 1), (6, 3), (5, 3)],
            ],
        );
        let t = triangulate(&d).unwrap();
        assert_eq!(t.total_area(), d.area());
    }
}
