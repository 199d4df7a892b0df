//! Approximate weighted-region shortest paths: Steiner-point discretization
//! of a convex weighted subdivision plus a label-setting search.

use crate::geometry::{GeomError, Location, PathPolyline, Point};
use crate::scalar::{snap_floor, to_f64, Scalar};
use crate::subdivision::Subdivision;
use crate::weights::WeightedSubdivision;
use num::Zero;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::collections::BTreeMap;

/// Discretization of a weighted subdivision: nodes on subdivision edges
/// (plus the terminals), connected within each convex face.
pub struct SteinerGraph {
    pub nodes: Vec<Point>,
    node_xy: Vec<(f64, f64)>,
    /// Node ids on the boundary of each face (terminals included for their
    /// containing faces). Indexed by face id of the source subdivision.
    pub face_nodes: Vec<Vec<usize>>,
    /// Faces incident to each node.
    pub node_faces: Vec<Vec<usize>>,
    /// Subdivision edge ids each node lies on (empty for interior terminals).
    node_edges: Vec<Vec<usize>>,
    pub face_weight: Vec<f64>,
    /// For each subdivision edge: the lowest-id in-domain incident face,
    /// which owns travel along that edge.
    edge_owner: Vec<Option<usize>>,
    pub s: usize,
    pub t: usize,
}

impl SteinerGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> u64 {
        let mut arcs = 0u64;
        for nodes in &self.face_nodes {
            let k = nodes.len() as u64;
            arcs += k * (k - 1);
        }
        arcs
    }
}

/// Result of a weighted shortest-path query.
#[derive(Clone, Debug)]
pub struct WeightedPathResult {
    pub path: PathPolyline,
    /// Weighted length of the path (weight times Euclidean length per face).
    pub cost: f64,
    pub node_count: usize,
    pub arc_count: u64,
}

/// Places Steiner points on every subdivision edge with geometric spacing
/// from each endpoint.
///
/// The schedule is nested: the point set for a finer `eps` contains the set
/// for every coarser power-of-two multiple of it, so path costs are
/// monotone under refinement. Points per edge are capped at `ceil(4/eps)`,
/// truncating the finest generations first.
pub fn discretize(
    sub: &Subdivision,
    weights: &[Scalar],
    s: &Point,
    t: &Point,
    eps: f64,
) -> Result<SteinerGraph, GeomError> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(GeomError::InvalidParameter(format!(
            "eps must lie in (0, 1], got {eps}"
        )));
    }

    // Shortest incident edge length per vertex (f64; placement metric only).
    let mut min_len: BTreeMap<usize, f64> = BTreeMap::new();
    let edge_len: Vec<f64> = sub
        .edges
        .iter()
        .map(|&(u, v, _, _)| sub.vertices[u].dist_f64(&sub.vertices[v]))
        .collect();
    for (k, &(u, v, _, _)) in sub.edges.iter().enumerate() {
        for w in [u, v] {
            let e = min_len.entry(w).or_insert(f64::INFINITY);
            *e = e.min(edge_len[k]);
        }
    }

    // Active generations: eps_k = 2^-k down to the requested eps.
    let mut gens: Vec<f64> = Vec::new();
    let mut g = 1.0f64;
    while g >= eps {
        gens.push(g);
        g /= 2.0;
    }
    if *gens.last().unwrap() > eps {
        gens.push(eps.max(g));
    }
    let cap = (4.0 / eps).ceil() as usize;

    let mut nodes: Vec<Point> = Vec::new();
    let mut node_ids: BTreeMap<Point, usize> = BTreeMap::new();
    let mut node_edges: Vec<Vec<usize>> = Vec::new();
    let mut intern = |p: Point,
                      nodes: &mut Vec<Point>,
                      node_edges: &mut Vec<Vec<usize>>,
                      node_ids: &mut BTreeMap<Point, usize>|
     -> usize {
        *node_ids.entry(p.clone()).or_insert_with(|| {
            nodes.push(p);
            node_edges.push(Vec::new());
            nodes.len() - 1
        })
    };

    let mut edge_nodes: Vec<Vec<usize>> = vec![Vec::new(); sub.edges.len()];
    for (k, &(u, v, f1, f2)) in sub.edges.iter().enumerate() {
        let in_domain = |f: Option<usize>| f.map_or(false, |f| sub.faces[f].in_domain);
        if !in_domain(f1) && !in_domain(f2) {
            continue; // no travel on edges outside the domain
        }
        let pu = sub.vertices[u].clone();
        let pv = sub.vertices[v].clone();
        let len = edge_len[k];
        // Candidate parameters ordered coarse-to-fine for stable truncation.
        let mut params: Vec<(usize, u8, Scalar)> = Vec::new();
        for (gi, &ge) in gens.iter().enumerate() {
            for (side, d0base) in [(0u8, min_len[&u]), (1u8, min_len[&v])] {
                let mut dist = ge * d0base;
                let mut j = 0;
                while dist < len / 2.0 && j < cap {
                    let t_par = if side == 0 { dist / len } else { 1.0 - dist / len };
                    params.push((gi, side, snap_floor(t_par.clamp(0.0, 1.0), 30)));
                    dist *= 1.0 + ge;
                    j += 1;
                }
            }
        }
        params.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)).then_with(|| a.2.cmp(&b.2)));
        let mut taken: Vec<Scalar> = Vec::new();
        for (_, _, tp) in params {
            if taken.len() >= cap {
                break;
            }
            if tp.is_zero() || tp >= Scalar::from_integer(1.into()) {
                continue;
            }
            if !taken.contains(&tp) {
                taken.push(tp);
            }
        }
        let mut ids = vec![
            intern(pu.clone(), &mut nodes, &mut node_edges, &mut node_ids),
            intern(pv.clone(), &mut nodes, &mut node_edges, &mut node_ids),
        ];
        for tp in taken {
            let p = pu.lerp(&pv, &tp);
            ids.push(intern(p, &mut nodes, &mut node_edges, &mut node_ids));
        }
        ids.sort_unstable();
        ids.dedup();
        for &id in &ids {
            node_edges[id].push(k);
        }
        edge_nodes[k] = ids;
    }

    // Faces pick up the nodes of their boundary edges.
    let mut face_nodes: Vec<Vec<usize>> = vec![Vec::new(); sub.faces.len()];
    for (k, ids) in edge_nodes.iter().enumerate() {
        let (_, _, f1, f2) = sub.edges[k];
        for f in [f1, f2].into_iter().flatten() {
            if sub.faces[f].in_domain {
                face_nodes[f].extend(ids.iter().copied());
            }
        }
    }

    // Terminals join every face whose closure contains them.
    let mut place_terminal = |p: &Point,
                              nodes: &mut Vec<Point>,
                              node_edges: &mut Vec<Vec<usize>>,
                              node_ids: &mut BTreeMap<Point, usize>,
                              face_nodes: &mut Vec<Vec<usize>>|
     -> Result<usize, GeomError> {
        let id = intern(p.clone(), nodes, node_edges, node_ids);
        let mut hit = false;
        for f in sub.domain_faces() {
            if sub.face_classify(f, p) != Location::Exterior {
                if !face_nodes[f].contains(&id) {
                    face_nodes[f].push(id);
                }
                hit = true;
            }
        }
        if hit {
            Ok(id)
        } else {
            Err(GeomError::OutsideDomain)
        }
    };
    let s_id = place_terminal(s, &mut nodes, &mut node_edges, &mut node_ids, &mut face_nodes)?;
    let t_id = place_terminal(t, &mut nodes, &mut node_edges, &mut node_ids, &mut face_nodes)?;

    for ids in face_nodes.iter_mut() {
        ids.sort_unstable();
        ids.dedup();
    }
    let mut node_faces: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    for (f, ids) in face_nodes.iter().enumerate() {
        for &id in ids {
            node_faces[id].push(f);
        }
    }

    let edge_owner: Vec<Option<usize>> = sub
        .edges
        .iter()
        .map(|&(_, _, f1, f2)| {
            [f1, f2]
                .into_iter()
                .flatten()
                .filter(|&f| sub.faces[f].in_domain)
                .min()
        })
        .collect();

    let node_xy = nodes.iter().map(|p| p.approx()).collect();
    let face_weight = weights.iter().map(to_f64).collect();
    Ok(SteinerGraph {
        nodes,
        node_xy,
        face_nodes,
        node_faces,
        node_edges,
        face_weight,
        edge_owner,
        s: s_id,
        t: t_id,
    })
}

#[derive(PartialEq)]
struct QueueEntry {
    cost: f64,
    node: usize,
}

impl Eq for QueueEntry {}

impl Ord for QueueEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap by cost, then node id for determinism.
        other
            .cost
            .partial_cmp(&self.cost)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Minimum-cost s-t path in the Steiner graph (deterministic label-setting
/// search; arcs enumerated face by face).
pub fn shortest_weighted_path(g: &SteinerGraph) -> Result<WeightedPathResult, GeomError> {
    let n = g.nodes.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut prev = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[g.s] = 0.0;
    heap.push(QueueEntry { cost: 0.0, node: g.s });
    while let Some(QueueEntry { cost, node }) = heap.pop() {
        if done[node] {
            continue;
        }
        done[node] = true;
        if node == g.t {
            break;
        }
        let (ax, ay) = g.node_xy[node];
        for &f in &g.node_faces[node] {
            let w = g.face_weight[f];
            for &b in &g.face_nodes[f] {
                if b == node || done[b] {
                    continue;
                }
                // Travel along a shared edge belongs to the owning face.
                if let Some(shared) = common_edge(&g.node_edges[node], &g.node_edges[b]) {
                    if g.edge_owner[shared] != Some(f) {
                        continue;
                    }
                }
                let (bx, by) = g.node_xy[b];
                let step = w * ((ax - bx).powi(2) + (ay - by).powi(2)).sqrt();
                let nd = cost + step;
                if nd + 1e-15 < dist[b] {
                    dist[b] = nd;
                    prev[b] = node;
                    heap.push(QueueEntry { cost: nd, node: b });
                }
            }
        }
    }
    if !dist[g.t].is_finite() {
        return Err(GeomError::Degenerate("terminals are disconnected".into()));
    }
    let mut ids = vec![g.t];
    while *ids.last().unwrap() != g.s {
        ids.push(prev[*ids.last().unwrap()]);
    }
    ids.reverse();
    let mut pts: Vec<Point> = ids.into_iter().map(|i| g.nodes[i].clone()).collect();
    pts.dedup();
    let path = PathPolyline::new(pts)?.simplified();
    Ok(WeightedPathResult {
        path,
        cost: dist[g.t],
        node_count: g.node_count(),
        arc_count: g.arc_count(),
    })
}

fn common_edge(a: &[usize], b: &[usize]) -> Option<usize> {
    for x in a {
        if b.contains(x) {
            return Some(*x);
        }
    }
    None
}

/// Exact-clipping weighted cost of a polyline: the sum over faces of the
/// face weight times the length of the path inside it. Pieces running along
/// subdivision edges are charged to the lowest-id incident face.
pub fn path_cost(sub: &Subdivision, weights: &[Scalar], path: &PathPolyline) -> f64 {
    let two = crate::scalar::scalar_int(2);
    let mut acc = 0.0;
    for (a, b) in path.segments() {
        let d = b.sub(a);
        let dd = d.norm_sq();
        let mut params: Vec<Scalar> = vec![Scalar::zero(), Scalar::from_integer(1.into())];
        for &(u, v, _, _) in &sub.edges {
            let eu = &sub.vertices[u];
            let ev = &sub.vertices[v];
            match crate::geometry::segment_intersection(a, b, eu, ev) {
                crate::geometry::SegmentMeet::None => {}
                crate::geometry::SegmentMeet::At(p) => {
                    params.push(p.sub(a).dot(&d) / dd.clone())
                }
                crate::geometry::SegmentMeet::Overlap(p, q) => {
                    params.push(p.sub(a).dot(&d) / dd.clone());
                    params.push(q.sub(a).dot(&d) / dd.clone());
                }
            }
        }
        params.sort();
        params.dedup();
        let seg_len = a.dist_f64(b);
        for w in params.windows(2) {
            let mid = (&w[0] + &w[1]) / two.clone();
            let m = a.lerp(b, &mid);
            if let Some(f) = sub.locate(&m) {
                if sub.faces[f].in_domain {
                    let piece = to_f64(&(&w[1] - &w[0])) * seg_len;
                    acc += to_f64(&weights[f]) * piece;
                }
            }
        }
    }
    acc
}

impl WeightedSubdivision {
    pub fn discretize(&self, s: &Point, t: &Point, eps: f64) -> Result<SteinerGraph, GeomError> {
        discretize(&self.sub, &self.weights, s, t, eps)
    }

    pub fn path_cost(&self, path: &PathPolyline) -> f64 {
        path_cost(&self.sub, &self.weights, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PolygonalDomain;
    use crate::scalar::{scalar_int, scalar_ratio};
    use crate::subdivision::build_arrangement;

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    /// [0,2]^2 split at x = 1 with weights (left, right).
    fn two_region(left: i64, right: i64) -> (Subdivision, Vec<Scalar>) {
        let d = PolygonalDomain::from_int_rings(&[(0, 0), (2, 0), (2, 2), (0, 2)], &[]).unwrap();
        let sub = build_arrangement(&d, &[(pt(1, 0), pt(1, 2))]).unwrap();
        let weights: Vec<Scalar> = (0..sub.faces.len())
            .map(|f| {
                let p = sub.face_interior_point(f);
                if p.x < scalar_int(1) {
                    scalar_int(left)
                } else {
                    scalar_int(right)
                }
            })
            .collect();
        (sub, weights)
    }

    #[test]
    fn uniform_weight_straight_segment() {
        let d = PolygonalDomain::from_int_rings(&[(0, 0), (4, 0), (4, 3), (0, 3)], &[]).unwrap();
        let sub = build_arrangement(&d, &[]).unwrap();
        let weights = vec![scalar_int(1); sub.faces.len()];
        let s = Point::new(scalar_ratio(1, 2), scalar_ratio(1, 2));
        let t = Point::new(scalar_ratio(7, 2), scalar_ratio(5, 2));
        let g = discretize(&sub, &weights, &s, &t, 0.5).unwrap();
        let r = shortest_weighted_path(&g).unwrap();
        assert_eq!(r.path.vertices.len(), 2);
        let direct = s.dist_f64(&t);
        assert!((r.cost - direct).abs() < 1e-9);
        let pc = path_cost(&sub, &weights, &r.path);
        assert!((pc - r.cost).abs() < 1e-9);
    }

    #[test]
    fn two_region_matches_snell_oracle() {
        // s = (0, 1/2), t = (2, 1/2); crossing height y minimizes
        // 1*dist(s,(1,y)) + 4*dist((1,y),t).
        let (sub, weights) = two_region(1, 4);
        let s = Point::new(scalar_int(0), scalar_ratio(1, 2));
        let t = Point::new(scalar_int(2), scalar_ratio(1, 2));
        let oracle = {
            // Ternary search over the crossing height.
            let (sx, sy) = (0.0, 0.5);
            let (tx, ty) = (2.0, 0.5);
            let cost = |y: f64| {
                ((1.0 - sx).powi(2) + (y - sy).powi(2)).sqrt()
                    + 4.0 * ((tx - 1.0).powi(2) + (ty - y).powi(2)).sqrt()
            };
            let (mut lo, mut hi) = (0.0f64, 2.0f64);
            for _ in 0..200 {
                let m1 = lo + (hi - lo) / 3.0;
                let m2 = hi - (hi - lo) / 3.0;
                if cost(m1) < cost(m2) {
                    hi = m2;
                } else {
                    lo = m1;
                }
            }
            cost(0.5 * (lo + hi))
        };
        for eps in [0.5, 0.25] {
            let g = discretize(&sub, &weights, &s, &t, eps).unwrap();
            let r = shortest_weighted_path(&g).unwrap();
            assert!(
                r.cost <= (1.0 + eps) * oracle + 1e-9,
                "eps={eps}: {} vs oracle {oracle}",
                r.cost
            );
            assert!(r.cost >= oracle - 1e-9);
        }
    }

    #[test]
    fn cost_monotone_in_eps() {
        let (sub, weights) = two_region(1, 4);
        let s = Point::new(scalar_int(0), scalar_ratio(1, 2));
        let t = Point::new(scalar_int(2), scalar_ratio(3, 2));
        let mut last = f64::INFINITY;
        for eps in [1.0, 0.5, 0.25, 0.125] {
            let g = discretize(&sub, &weights, &s, &t, eps).unwrap();
            let r = shortest_weighted_path(&g).unwrap();
            assert!(
                r.cost <= last + 1e-12,
                "cost increased when eps shrank: {} -> {}",
                last,
                r.cost
            );
            last = r.cost;
        }
    }

    #[test]
    fn node_count_scales_inversely_with_eps() {
        let (sub, weights) = two_region(1, 1);
        let s = Point::new(scalar_ratio(1, 2), scalar_ratio(1, 2));
        let t = Point::new(scalar_ratio(3, 2), scalar_ratio(3, 2));
        let g1 = discretize(&sub, &weights, &s, &t, 0.5).unwrap();
        let g2 = discretize(&sub, &weights, &s, &t, 0.25).unwrap();
        let r = g2.node_count() as f64 / g1.node_count() as f64;
        assert!(r > 1.3 && r < 3.0, "unexpected growth ratio {r}");
    }

    #[test]
    fn arcs_stay_inside_their_face() {
        let (sub, weights) = two_region(1, 4);
        let s = Point::new(scalar_ratio(1, 2), scalar_int(1));
        let t = Point::new(scalar_ratio(3, 2), scalar_int(1));
        let g = discretize(&sub, &weights, &s, &t, 0.5).unwrap();
        let two = scalar_int(2);
        for (f, ids) in g.face_nodes.iter().enumerate() {
            if !sub.faces[f].in_domain {
                continue;
            }
            for (i, &a) in ids.iter().enumerate() {
                for &b in ids.iter().skip(i + 1) {
                    let mid = Point::new(
                        (&g.nodes[a].x + &g.nodes[b].x) / two.clone(),
                        (&g.nodes[a].y + &g.nodes[b].y) / two.clone(),
                    );
                    assert_ne!(
                        sub.face_classify(f, &mid),
                        Location::Exterior,
                        "arc escapes its face"
                    );
                }
            }
        }
    }

    #[test]
    fn segment_cost_examples() {
        let (sub, weights) = two_region(2, 2);
        // Length-3 diagonal-free segment in weight 2.
        let p = PathPolyline::new(vec![
            Point::new(scalar_ratio(1, 4), scalar_ratio(1, 2)),
            Point::new(scalar_ratio(1, 4), scalar_ratio(3, 2)),
        ])
        .unwrap();
        let c = path_cost(&sub, &weights, &p);
        assert!((c - 2.0).abs() < 1e-12);

        let (sub2, weights2) = two_region(1, 4);
        // Length-2 horizontal crossing the split at its midpoint: 1 + 4.
        let p2 = PathPolyline::new(vec![
            Point::new(scalar_int(0), scalar_int(1)),
            Point::new(scalar_int(2), scalar_int(1)),
        ])
        .unwrap();
        let c2 = path_cost(&sub2, &weights2, &p2);
        assert!((c2 - 5.0).abs() < 1e-12);
    }

    #[test]
    fn detour_around_expensive_strip() {
        // [0,6]x[0,3] with an expensive vertical strip [2,3]x[0,3].
        let d = PolygonalDomain::from_int_rings(&[(0, 0), (6, 0), (6, 3), (0, 3)], &[]).unwrap();
        let sub = build_arrangement(&d, &[(pt(2, 0), pt(2, 3)), (pt(3, 0), pt(3, 3))]).unwrap();
        let weights: Vec<Scalar> = (0..sub.faces.len())
            .map(|f| {
                let p = sub.face_interior_point(f);
                if p.x > scalar_int(2) && p.x < scalar_int(3) {
                    scalar_int(10)
                } else {
                    scalar_int(1)
                }
            })
            .collect();
        // Terminals on opposite sides, near the bottom; the strip spans the
        // full height, so the best the path can do is cross it straight.
        let s = Point::new(scalar_int(1), scalar_int(1));
        let t = Point::new(scalar_int(5), scalar_int(1));
        let g = discretize(&sub, &weights, &s, &t, 0.25).unwrap();
        let r = shortest_weighted_path(&g).unwrap();
        // Straight crossing: 4 units, one of them at weight 10 => 13.
        assert!((r.cost - 13.0).abs() < 0.2, "cost {}", r.cost);
        let pc = path_cost(&sub, &weights, &r.path);
        assert!((pc - r.cost).abs() < 1e-9);
    }
}
