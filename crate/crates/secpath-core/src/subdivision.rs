//! Exact planar arrangements of segments: the visibility decomposition,
//! its refinements, and boolean region extraction all build on this.
//!
//! Arrangements are constructed by splitting every input segment at all of
//! its intersection points and tracing face cycles through a half-edge
//! structure. Coordinates stay rational throughout, so the combinatorics
//! are exact; an f64 bounding-box prefilter keeps the pairwise intersection
//! pass fast.

use crate::geometry::{
    compare_directions, GeomError, Location, Point, PolygonalDomain, SegmentMeet, Vector,
};
use crate::scalar::{scalar_int, Scalar};
use crate::visibility::VisibilityGraph;
use num::{Signed, Zero};
use std::collections::BTreeMap;

/// A maximal straight segment inside the domain passing through at least
/// one domain vertex; the extension of a visibility-graph edge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Chord {
    pub a: Point,
    pub b: Point,
}

#[derive(Clone, Debug)]
pub struct HalfEdge {
    pub origin: usize,
    pub target: usize,
    pub twin: usize,
    pub next: usize,
    pub cycle: usize,
}

#[derive(Clone, Debug)]
pub struct Cycle {
    pub halfedges: Vec<usize>,
    /// Twice the signed area: positive cycles bound a face from inside.
    pub signed_area2: Scalar,
    /// Face owning this cycle; `None` for cycles of the unbounded face.
    pub face: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Face {
    pub outer_cycle: usize,
    pub hole_cycles: Vec<usize>,
    pub area: Scalar,
    /// Cached f64 bounding box (xmin, ymin, xmax, ymax).
    pub bbox: (f64, f64, f64, f64),
    /// True when the face lies inside the polygonal domain the subdivision
    /// was built for (false for hole interiors).
    pub in_domain: bool,
}

/// A planar subdivision with full adjacency.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub vertices: Vec<Point>,
    /// Undirected edges as vertex-id pairs (a < b), with the incident faces
    /// (left of a->b, left of b->a); `None` marks the unbounded face.
    pub edges: Vec<(usize, usize, Option<usize>, Option<usize>)>,
    pub halfedges: Vec<HalfEdge>,
    pub cycles: Vec<Cycle>,
    pub faces: Vec<Face>,
}

impl Subdivision {
    /// Builds the arrangement of a set of segments. Zero-length segments are
    /// ignored; collinear overlaps merge into shared edges.
    pub fn from_segments(segments: &[(Point, Point)]) -> Subdivision {
        let segs: Vec<(Point, Point)> = segments
            .iter()
            .filter(|(a, b)| a != b)
            .cloned()
            .collect();
        let boxes: Vec<(f64, f64, f64, f64)> = segs.iter().map(|(a, b)| seg_bbox(a, b)).collect();

        // Collect split points per segment.
        let mut cuts: Vec<Vec<Point>> = segs
            .iter()
            .map(|(a, b)| vec![a.clone(), b.clone()])
            .collect();
        for i in 0..segs.len() {
            for j in (i + 1)..segs.len() {
                if !boxes_meet(&boxes[i], &boxes[j]) {
                    continue;
                }
                let (a, b) = &segs[i];
                let (c, d) = &segs[j];
                match crate::geometry::segment_intersection(a, b, c, d) {
                    SegmentMeet::None => {}
                    SegmentMeet::At(p) => {
                        cuts[i].push(p.clone());
                        cuts[j].push(p);
                    }
                    SegmentMeet::Overlap(p, q) => {
                        cuts[i].push(p.clone());
                        cuts[i].push(q.clone());
                        cuts[j].push(p);
                        cuts[j].push(q);
                    }
                }
            }
        }

        // Vertex table and deduplicated sub-edges.
        let mut vid: BTreeMap<Point, usize> = BTreeMap::new();
        let mut vertices: Vec<Point> = Vec::new();
        let mut intern = |p: Point, vertices: &mut Vec<Point>, vid: &mut BTreeMap<Point, usize>| {
            *vid.entry(p.clone()).or_insert_with(|| {
                vertices.push(p);
                vertices.len() - 1
            })
        };
        let mut edge_set: BTreeMap<(usize, usize), ()> = BTreeMap::new();
        for (k, (a, b)) in segs.iter().enumerate() {
            let d = b.sub(a);
            let dd = d.norm_sq();
            let mut pts: Vec<(Scalar, Point)> = cuts[k]
                .drain(..)
                .map(|p| (p.sub(a).dot(&d) / dd.clone(), p))
                .collect();
            pts.sort_by(|x, y| x.0.cmp(&y.0));
            pts.dedup_by(|x, y| x.1 == y.1);
            for w in pts.windows(2) {
                let u = intern(w[0].1.clone(), &mut vertices, &mut vid);
                let v = intern(w[1].1.clone(), &mut vertices, &mut vid);
                if u != v {
                    edge_set.insert((u.min(v), u.max(v)), ());
                }
            }
        }
        let undirected: Vec<(usize, usize)> = edge_set.into_keys().collect();

        // Half-edges, paired with twins.
        let mut halfedges: Vec<HalfEdge> = Vec::with_capacity(undirected.len() * 2);
        for &(u, v) in &undirected {
            let h = halfedges.len();
            halfedges.push(HalfEdge { origin: u, target: v, twin: h + 1, next: usize::MAX, cycle: usize::MAX });
            halfedges.push(HalfEdge { origin: v, target: u, twin: h, next: usize::MAX, cycle: usize::MAX });
        }

        // Sort outgoing half-edges counterclockwise around every vertex.
        let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
        for (h, he) in halfedges.iter().enumerate() {
            outgoing[he.origin].push(h);
        }
        for (v, out) in outgoing.iter_mut().enumerate() {
            out.sort_by(|&h1, &h2| {
                let d1 = vertices[halfedges[h1].target].sub(&vertices[v]);
                let d2 = vertices[halfedges[h2].target].sub(&vertices[v]);
                compare_directions(&d1, &d2)
            });
        }
        // next(u->v) is the clockwise predecessor of (v->u) around v, which
        // traces every face with its interior on the left.
        let mut pos_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (v, out) in outgoing.iter().enumerate() {
            for (k, &h) in out.iter().enumerate() {
                pos_of.insert((v, h), k);
            }
        }
        for h in 0..halfedges.len() {
            let tw = halfedges[h].twin;
            let v = halfedges[h].target;
            let out = &outgoing[v];
            let k = pos_of[&(v, tw)];
            let prev = out[(k + out.len() - 1) % out.len()];
            halfedges[h].next = prev;
        }

        // Trace cycles.
        let mut cycles: Vec<Cycle> = Vec::new();
        let mut seen = vec![false; halfedges.len()];
        for h0 in 0..halfedges.len() {
            if seen[h0] {
                continue;
            }
            let cid = cycles.len();
            let mut cyc = Vec::new();
            let mut area2 = Scalar::zero();
            let mut h = h0;
            loop {
                seen[h] = true;
                halfedges[h].cycle = cid;
                cyc.push(h);
                let a = &vertices[halfedges[h].origin];
                let b = &vertices[halfedges[h].target];
                area2 += &a.x * &b.y - &b.x * &a.y;
                h = halfedges[h].next;
                if h == h0 {
                    break;
                }
            }
            cycles.push(Cycle { halfedges: cyc, signed_area2: area2, face: None });
        }

        // Connected components (over vertices) for hole assignment.
        let mut comp = (0..vertices.len()).collect::<Vec<usize>>();
        fn find(comp: &mut Vec<usize>, mut x: usize) -> usize {
            while comp[x] != x {
                comp[x] = comp[comp[x]];
                x = comp[x];
            }
            x
        }
        for &(u, v) in &undirected {
            let (ru, rv) = (find(&mut comp, u), find(&mut comp, v));
            if ru != rv {
                comp[ru] = rv;
            }
        }
        let cycle_comp: Vec<usize> = cycles
            .iter()
            .map(|c| {
                let h = c.halfedges[0];
                find(&mut comp, halfedges[h].origin)
            })
            .collect();

        // Faces from positive cycles, ordered by discovery.
        let mut faces: Vec<Face> = Vec::new();
        for (cid, c) in cycles.iter().enumerate() {
            if c.signed_area2.is_positive() {
                faces.push(Face {
                    outer_cycle: cid,
                    hole_cycles: Vec::new(),
                    area: Scalar::zero(),
                    bbox: (0.0, 0.0, 0.0, 0.0),
                    in_domain: true,
                });
            }
        }
        for (f, face) in faces.iter_mut().enumerate() {
            cycles[face.outer_cycle].face = Some(f);
        }

        // Assign every negative cycle to the smallest positive cycle of a
        // different component strictly containing it.
        let neg: Vec<usize> = (0..cycles.len())
            .filter(|&c| !cycles[c].signed_area2.is_positive())
            .collect();
        let mut pos_sorted: Vec<usize> = (0..cycles.len())
            .filter(|&c| cycles[c].signed_area2.is_positive())
            .collect();
        pos_sorted.sort_by(|&a, &b| cycles[a].signed_area2.cmp(&cycles[b].signed_area2));
        for &nc in &neg {
            let sample = vertices[halfedges[cycles[nc].halfedges[0]].origin].clone();
            let mut owner: Option<usize> = None;
            for &pc in &pos_sorted {
                if cycle_comp[pc] == cycle_comp[nc] {
                    continue;
                }
                if cycle_contains(&cycles[pc], &halfedges, &vertices, &sample) {
                    owner = Some(pc);
                    break;
                }
            }
            if let Some(pc) = owner {
                let f = cycles[pc].face.unwrap();
                faces[f].hole_cycles.push(nc);
                cycles[nc].face = Some(f);
            }
        }

        // Face areas and bounding boxes.
        for f in 0..faces.len() {
            let mut a2 = cycles[faces[f].outer_cycle].signed_area2.clone();
            for &hc in &faces[f].hole_cycles {
                a2 += &cycles[hc].signed_area2;
            }
            faces[f].area = a2 / scalar_int(2);
            faces[f].bbox = face_bbox(&cycles[faces[f].outer_cycle], &halfedges, &vertices);
        }

        // Undirected edge table with incident faces.
        let mut edges = Vec::with_capacity(undirected.len());
        for (k, &(u, v)) in undirected.iter().enumerate() {
            let h = 2 * k;
            let f1 = cycles[halfedges[h].cycle].face;
            let f2 = cycles[halfedges[h + 1].cycle].face;
            edges.push((u, v, f1, f2));
        }

        Subdivision { vertices, edges, halfedges, cycles, faces }
    }

    /// Marks which faces lie inside `domain` (a hole interior or an exterior
    /// pocket is not a cell).
    pub fn mark_domain(&mut self, domain: &PolygonalDomain) {
        for f in 0..self.faces.len() {
            let p = self.face_interior_point(f);
            self.faces[f].in_domain = domain.locate_point(&p) == Location::Interior;
        }
    }

    /// Ids of faces inside the domain.
    pub fn domain_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(move |&f| self.faces[f].in_domain)
    }

    pub fn face_cycle_points(&self, cycle: usize) -> Vec<Point> {
        self.cycles[cycle]
            .halfedges
            .iter()
            .map(|&h| self.vertices[self.halfedges[h].origin].clone())
            .collect()
    }

    /// All boundary segments of a face (outer cycle plus holes).
    pub fn face_boundary_segments(&self, f: usize) -> Vec<(Point, Point)> {
        let mut out = Vec::new();
        let face = &self.faces[f];
        for &cid in std::iter::once(&face.outer_cycle).chain(face.hole_cycles.iter()) {
            for &h in &self.cycles[cid].halfedges {
                out.push((
                    self.vertices[self.halfedges[h].origin].clone(),
                    self.vertices[self.halfedges[h].target].clone(),
                ));
            }
        }
        out
    }

    /// An exact interior point of a face, found by cutting the face with a
    /// horizontal line strictly between two distinct boundary ordinates.
    pub fn face_interior_point(&self, f: usize) -> Point {
        let segs = self.face_boundary_segments(f);
        let mut ys: Vec<Scalar> = segs
            .iter()
            .flat_map(|(a, b)| [a.y.clone(), b.y.clone()])
            .collect();
        ys.sort();
        ys.dedup();
        let two = scalar_int(2);
        for w in ys.windows(2) {
            let y = (&w[0] + &w[1]) / two.clone();
            let mut xs: Vec<Scalar> = Vec::new();
            for (a, b) in &segs {
                if (a.y > y) != (b.y > y) {
                    // x at the crossing of the segment with the horizontal.
                    let t = (&y - &a.y) / (&b.y - &a.y);
                    xs.push(&a.x + (&b.x - &a.x) * t);
                }
            }
            xs.sort();
            let mut k = 0;
            while k + 1 < xs.len() {
                if xs[k + 1] > xs[k] {
                    return Point::new((&xs[k] + &xs[k + 1]) / two.clone(), y);
                }
                k += 2;
            }
        }
        panic!("face has no interior (zero area)");
    }

    /// Face containing `p`; boundary points resolve to the lowest incident
    /// face id. Exterior points (or points in holes) yield `None`.
    pub fn locate(&self, p: &Point) -> Option<usize> {
        let (px, py) = p.approx();
        let mut boundary_hit: Option<usize> = None;
        for f in 0..self.faces.len() {
            let (x0, y0, x1, y1) = self.faces[f].bbox;
            if px < x0 - 1e-9 || px > x1 + 1e-9 || py < y0 - 1e-9 || py > y1 + 1e-9 {
                continue;
            }
            match self.face_classify(f, p) {
                Location::Interior => return Some(f),
                Location::Boundary => {
                    if boundary_hit.is_none() {
                        boundary_hit = Some(f);
                    }
                }
                Location::Exterior => {}
            }
        }
        boundary_hit
    }

    /// Exact even-odd classification of `p` against a face.
    pub fn face_classify(&self, f: usize, p: &Point) -> Location {
        let segs = self.face_boundary_segments(f);
        let mut inside = false;
        for (a, b) in &segs {
            if crate::geometry::on_segment(a, b, p) {
                return Location::Boundary;
            }
            let a_above = a.y > p.y;
            let b_above = b.y > p.y;
            if a_above != b_above {
                let o = crate::geometry::orient(a, b, p);
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

    /// Number of connected components of the arrangement graph.
    pub fn component_count(&self) -> usize {
        let mut comp = (0..self.vertices.len()).collect::<Vec<usize>>();
        fn find(comp: &mut Vec<usize>, mut x: usize) -> usize {
            while comp[x] != x {
                comp[x] = comp[comp[x]];
                x = comp[x];
            }
            x
        }
        for &(u, v, _, _) in &self.edges {
            let (ru, rv) = (find(&mut comp, u), find(&mut comp, v));
            if ru != rv {
                comp[ru] = rv;
            }
        }
        (0..self.vertices.len())
            .filter(|&v| find(&mut comp, v) == v)
            .count()
    }

    /// Sum of all bounded face areas.
    pub fn total_face_area(&self) -> Scalar {
        self.faces.iter().map(|f| f.area.clone()).sum()
    }

    /// Sum of the areas of faces inside the domain.
    pub fn domain_area(&self) -> Scalar {
        self.domain_faces().map(|f| self.faces[f].area.clone()).sum()
    }
}

fn seg_bbox(a: &Point, b: &Point) -> (f64, f64, f64, f64) {
    let (ax, ay) = a.approx();
    let (bx, by) = b.approx();
    (ax.min(bx), ay.min(by), ax.max(bx), ay.max(by))
}

fn boxes_meet(p: &(f64, f64, f64, f64), q: &(f64, f64, f64, f64)) -> bool {
    let eps = 1e-9;
    p.0 <= q.2 + eps && q.0 <= p.2 + eps && p.1 <= q.3 + eps && q.1 <= p.3 + eps
}

fn face_bbox(cycle: &Cycle, halfedges: &[HalfEdge], vertices: &[Point]) -> (f64, f64, f64, f64) {
    let mut bb = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &h in &cycle.halfedges {
        let (x, y) = vertices[halfedges[h].origin].approx();
        bb.0 = bb.0.min(x);
        bb.1 = bb.1.min(y);
        bb.2 = bb.2.max(x);
        bb.3 = bb.3.max(y);
    }
    bb
}

fn cycle_contains(cycle: &Cycle, halfedges: &[HalfEdge], vertices: &[Point], p: &Point) -> bool {
    let mut inside = false;
    for &h in &cycle.halfedges {
        let a = &vertices[halfedges[h].origin];
        let b = &vertices[halfedges[h].target];
        if crate::geometry::on_segment(a, b, p) {
            return false; // touching components cannot nest strictly
        }
        let a_above = a.y > p.y;
        let b_above = b.y > p.y;
        if a_above != b_above {
            let o = crate::geometry::orient(a, b, p);
            let crosses_right = if b.y > a.y { o < 0 } else { o > 0 };
            if crosses_right {
                inside = !inside;
            }
        }
    }
    inside
}

/// Extends every visibility-graph edge maximally in both directions within
/// the domain, deduplicating coincident extensions.
pub fn extend_visibility_edges(domain: &PolygonalDomain, vg: &VisibilityGraph) -> Vec<Chord> {
    let mut set: std::collections::BTreeSet<(Point, Point)> = std::collections::BTreeSet::new();
    for &(i, j) in &vg.edges {
        let u = &vg.vertices[i];
        let v = &vg.vertices[j];
        let d = v.sub(u);
        let fwd = extend_from(domain, v, &d);
        let back = extend_from(domain, u, &d.neg());
        let (a, b) = if back <= fwd { (back, fwd) } else { (fwd, back) };
        let key = if a <= b { (a, b) } else { (b, a) };
        set.insert(key);
    }
    set.into_iter().map(|(a, b)| Chord { a, b }).collect()
}

/// Farthest point reachable from `start` along direction `d` within the
/// closed domain (the start itself if the boundary blocks immediately).
fn extend_from(domain: &PolygonalDomain, start: &Point, d: &Vector) -> Point {
    let neighbors = crate::visibility::vertex_neighbors(domain);
    // Departure check when starting at a vertex.
    if let Some((prev, next)) = neighbors.get(start) {
        let from = next.sub(start);
        let to = prev.sub(start);
        if !crate::geometry::direction_in_ccw_cone(&from, &to, d) {
            return start.clone();
        }
    }
    let edges = domain.edges();
    let dd = d.norm_sq();
    let mut on_ray: Vec<(Scalar, Point)> = Vec::new();
    for v in domain.all_vertices() {
        if v == start {
            continue;
        }
        if d.cross(&v.sub(start)).is_zero() {
            let t = v.sub(start).dot(d) / dd.clone();
            if t.is_positive() {
                on_ray.push((t, v.clone()));
            }
        }
    }
    on_ray.sort_by(|a, b| a.0.cmp(&b.0));
    match crate::visibility::ray_stop(&edges, &neighbors, start, d, &on_ray) {
        Some(t) => start.add(&d.scale(&t)),
        None => start.clone(),
    }
}

/// Builds the arrangement of the domain boundary plus the given segments and
/// marks the faces inside the domain.
pub fn build_arrangement(
    domain: &PolygonalDomain,
    segments: &[(Point, Point)],
) -> Result<Subdivision, GeomError> {
    let mut segs = domain.edges();
    segs.extend_from_slice(segments);
    let mut sub = Subdivision::from_segments(&segs);
    sub.mark_domain(domain);
    Ok(sub)
}

/// The visibility decomposition: the domain split by the maximal extensions
/// of all visibility-graph edges. Within each cell the visibility polygon
/// is combinatorially constant.
pub fn visibility_decomposition(domain: &PolygonalDomain) -> Result<Subdivision, GeomError> {
    let vg = crate::visibility::visibility_graph(domain);
    let chords = extend_visibility_edges(domain, &vg);
    let segs: Vec<(Point, Point)> = chords.into_iter().map(|c| (c.a, c.b)).collect();
    build_arrangement(domain, &segs)
}
