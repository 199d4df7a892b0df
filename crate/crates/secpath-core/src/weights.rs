//! Piecewise-constant approximation of the visible-area function.
//!
//! Within one cell of the visibility decomposition the area |V(p)| equals a
//! cell constant plus/minus the areas of one triangle per rotating fan side.
//! Each such triangle area is a function delta = h^2/2 * x/y of the local
//! coordinates of p in the frame of its anchor vertex and base edge, so its
//! level sets are rays through the anchor. Overlaying rays for a geometric
//! sequence of levels yields faces on which a constant weight approximates
//! |V(p)| to within the prescribed factor.

use crate::geometry::{cross2, GeomError, Point, PolygonalDomain, Vector};
use crate::scalar::{scalar_int, to_f64, Scalar};
use crate::subdivision::{build_arrangement, Subdivision};
use crate::triangulate::triangulate_ring;
use crate::visibility::visibility_polygon;
use num::{Signed, Zero};
use std::collections::BTreeSet;

/// Geometric sequence of area levels `A_1, A_2, ...` with ratio at most
/// `1 + eps`, starting at (a snap of) `eps / (2n)` and ending at the first
/// value reaching `cap`.
///
/// Values are rounded down to denominator 2^24 so that the level rays keep
/// small rational coefficients; rounding never increases the step ratio, so
/// every approximation bound proved for the exact sequence still holds.
#[derive(Clone, Debug)]
pub struct LevelSequence {
    pub eps: f64,
    pub values: Vec<Scalar>,
}

const LEVEL_SNAP_BITS: u32 = 24;

impl LevelSequence {
    pub fn new(eps: f64, n: usize, cap: &Scalar) -> Result<Self, GeomError> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(GeomError::InvalidParameter(format!(
                "eps must lie in (0, 1], got {eps}"
            )));
        }
        if n == 0 {
            return Err(GeomError::InvalidParameter("empty domain".into()));
        }
        let eps_r = crate::scalar::rational_from_f64(eps);
        let a1 = &eps_r / scalar_int(2 * n as i64);
        let first = crate::scalar::snap_floor_rational(&a1, LEVEL_SNAP_BITS);
        if !first.is_positive() {
            return Err(GeomError::InvalidParameter(
                "eps too small for the level snap resolution".into(),
            ));
        }
        let ratio = Scalar::from_integer(1.into()) + &eps_r;
        let mut values = vec![first];
        while values.last().unwrap() < cap {
            let target = values.last().unwrap() * &ratio;
            let next = crate::scalar::snap_floor_rational(&target, LEVEL_SNAP_BITS);
            let prev = values.last().unwrap();
            assert!(&next > prev, "level snap resolution exhausted");
            values.push(next);
            assert!(values.len() < 100_000, "runaway level sequence");
        }
        Ok(LevelSequence { eps, values })
    }

    pub fn a1(&self) -> &Scalar {
        &self.values[0]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sector of a triangle area: index 0 and weight `A_1` for small areas
    /// (delta <= A_1), otherwise the first level at or above `delta`.
    pub fn sector_value(&self, delta: &Scalar) -> (usize, Scalar) {
        if delta <= &self.values[0] {
            return (0, self.values[0].clone());
        }
        match self.values.binary_search_by(|v| v.cmp(delta)) {
            Ok(i) => (i, self.values[i].clone()),
            Err(i) => {
                assert!(i < self.values.len(), "area beyond the level cap");
                (i, self.values[i].clone())
            }
        }
    }
}

/// Local frame of a rotating side: the anchor vertex together with the
/// supporting line of its base edge. `h2` is the squared distance from the
/// anchor to that line; the interior normal points from the base toward the
/// anchor's side.
#[derive(Clone, Debug)]
pub struct AnchorFrame {
    pub anchor: Point,
    pub base: (Point, Point),
    /// Direction along the base edge (interior to its left).
    pub along: Vector,
    /// Interior normal of the base edge.
    pub normal: Vector,
    /// Squared perpendicular distance from the anchor to the base line.
    pub h2: Scalar,
    /// Squared length of `along`.
    pub len2: Scalar,
}

impl AnchorFrame {
    pub fn new(anchor: Point, base: (Point, Point)) -> Result<Self, GeomError> {
        let along = base.1.sub(&base.0);
        if along.is_zero() {
            return Err(GeomError::Degenerate("zero-length base edge".into()));
        }
        let normal = along.perp();
        let len2 = along.norm_sq();
        let c = along.cross(&anchor.sub(&base.0));
        if !c.is_positive() {
            return Err(GeomError::Degenerate(
                "anchor not strictly on the interior side of the base".into(),
            ));
        }
        let h2 = &c * &c / len2.clone();
        Ok(AnchorFrame { anchor, base, along, normal, h2, len2 })
    }

    /// Local coordinates of `p` scaled by |along|: (x, y) with y > 0 on the
    /// anchor's far side of the base.
    fn local(&self, p: &Point) -> (Scalar, Scalar) {
        let d = p.sub(&self.anchor);
        (d.dot(&self.along), d.dot(&self.normal))
    }

    /// The rotating-triangle area delta = h^2/2 * |x|/y; the mirror image
    /// across the perpendicular through the anchor gives the same value.
    /// Fails when p is not strictly beyond the anchor (local y <= 0).
    pub fn delta(&self, p: &Point) -> Result<Scalar, GeomError> {
        let (x, y) = self.local(p);
        if !y.is_positive() {
            return Err(GeomError::InvalidParameter(
                "point not strictly beyond the anchor".into(),
            ));
        }
        Ok(&self.h2 * x.abs() / (scalar_int(2) * y))
    }

    /// Direction of the level ray with local slope `x/y = ratio` on the
    /// given side of the perpendicular (+1 or -1).
    pub fn ray_direction(&self, ratio: &Scalar, side: i32) -> Vector {
        let s = if side >= 0 { ratio.clone() } else { -ratio.clone() };
        self.along.scale(&(s / self.len2.clone())).add(&self.normal.scale(&(Scalar::from_integer(1.into()) / self.len2.clone())))
    }

    /// Foot of the perpendicular from the anchor onto the base line.
    pub fn foot(&self) -> Point {
        let t = self.anchor.sub(&self.base.0).dot(&self.along) / self.len2.clone();
        self.base.0.lerp(&self.base.1, &t)
    }

    /// Foot of the perpendicular from an arbitrary point onto the base line.
    pub fn foot_of(&self, p: &Point) -> Point {
        let t = p.sub(&self.base.0).dot(&self.along) / self.len2.clone();
        self.base.0.lerp(&self.base.1, &t)
    }

    /// Largest delta realizable while the rotating side still meets the base
    /// edge: h/2 * max |x| over the base endpoints, returned as its square
    /// to stay rational.
    pub fn max_delta_sq(&self) -> Scalar {
        let (x0, _) = self.local(&self.base.0);
        let (x1, _) = self.local(&self.base.1);
        let m = x0.abs().max(x1.abs());
        // (h * m / (2 |along|))^2 = h2 * m^2 / (4 len2)
        &self.h2 * &m * &m / (scalar_int(4) * self.len2.clone())
    }
}

/// Exact area of the triangle cut from the wedge `r_anchor, p, q_anchor`
/// by the base line: the triangle with apex `p` whose base is the span
/// between the two ray hits. Inputs must put `p` strictly off the base line
/// and both rays must meet it.
pub fn apex_triangle_area(
    p: &Point,
    r_anchor: &Point,
    q_anchor: &Point,
    base: (&Point, &Point),
) -> Result<Scalar, GeomError> {
    let u = base.1.sub(base.0);
    if u.is_zero() {
        return Err(GeomError::Degenerate("degenerate base line".into()));
    }
    let hit = |anchor: &Point| -> Result<Scalar, GeomError> {
        let d = anchor.sub(p);
        let denom = d.cross(&u);
        if denom.is_zero() {
            return Err(GeomError::Degenerate("ray parallel to the base line".into()));
        }
        // Parameter along the base line of the hit of ray p->anchor.
        let t = base.0.sub(p).cross(&d) / u.cross(&d);
        Ok(t)
    };
    let tr = hit(r_anchor)?;
    let tq = hit(q_anchor)?;
    // Height of p over the base line times |base|: |cross(u, p - base0)|.
    let h_scaled = u.cross(&p.sub(base.0)).abs();
    Ok(h_scaled * (tr - tq).abs() / scalar_int(2))
}

/// Abscissa x(y) of the level curve of the apex-triangle area in the
/// paper-style frame: base on the x-axis, r' = (a, b), q' = (0, d).
pub fn level_curve_abscissa(area: f64, a: f64, b: f64, d: f64, y: f64) -> Result<f64, GeomError> {
    if y == b || y == d {
        return Err(GeomError::InvalidParameter(
            "ordinate coincides with an anchor".into(),
        ));
    }
    let num = 2.0 * area / (y * y) + a / (y - b);
    let den = 1.0 / (y - b) - 1.0 / (y - d);
    Ok(num / den)
}

/// One signed rotating-side instance of a cell: the anchor vertex, its base
/// edge (index into the domain edge list), and whether its delta is added
/// or subtracted from the cell constant.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedAnchor {
    pub anchor: Point,
    pub edge: usize,
    pub positive: bool,
}

/// The visible-area formula of one cell: |V(p)| = c + sum(+delta) - sum(-delta).
#[derive(Clone, Debug)]
pub struct CellProfile {
    pub c: Scalar,
    pub anchors: Vec<SignedAnchor>,
}

impl CellProfile {
    /// Evaluates the cell formula at a point (exact).
    pub fn evaluate(&self, domain: &PolygonalDomain, p: &Point) -> Result<Scalar, GeomError> {
        let edges = domain.edges();
        let mut acc = self.c.clone();
        for sa in &self.anchors {
            let e = &edges[sa.edge];
            let frame = AnchorFrame::new(sa.anchor.clone(), (e.0.clone(), e.1.clone()))?;
            let d = frame.delta(p)?;
            if sa.positive {
                acc += d;
            } else {
                acc -= d;
            }
        }
        Ok(acc)
    }
}

/// Computes the cell constant and sign sets from the fan at one point.
///
/// Every fan triangle (p, a, b) with side anchors va, vb on base edge e
/// satisfies, with F* the perpendicular feet on the base line,
///   area(p,a,b) = area(p,va,Fa,Fb,vb) + signed(va,a,Fa) + signed(vb,Fb,b);
/// the pentagon terms sum to the cell constant and the signed triangles are
/// exactly the +/- delta contributions.
pub fn cell_profile_at(domain: &PolygonalDomain, p: &Point) -> Result<CellProfile, GeomError> {
    let vis = visibility_polygon(domain, p)?;
    let edges = domain.edges();
    let two = scalar_int(2);
    let mut c2 = Scalar::zero();
    let mut anchors = Vec::new();
    for t in &vis.fan {
        let e = &edges[t.edge];
        let u = e.1.sub(&e.0);
        let len2 = u.norm_sq();
        let foot = |v: &Point| -> Point {
            let s = v.sub(&e.0).dot(&u) / len2.clone();
            e.0.lerp(&e.1, &s)
        };
        let va = &t.start_side.anchor;
        let vb = &t.end_side.anchor;
        let fa = foot(va);
        let fb = foot(vb);
        // Pentagon p -> va -> Fa -> Fb -> vb (twice the signed area).
        c2 += shoelace2(&[p, va, &fa, &fb, vb]);
        let da = shoelace2(&[va, &t.a, &fa]);
        let db = shoelace2(&[vb, &fb, &t.b]);
        debug_assert_eq!(
            shoelace2(&[p, va, &fa, &fb, vb]) + &da + &db,
            cross2(p, &t.a, &t.b),
            "fan triangle decomposition failed"
        );
        for (v, d) in [(va, da), (vb, db)] {
            if !d.is_zero() {
                anchors.push(SignedAnchor {
                    anchor: v.clone(),
                    edge: t.edge,
                    positive: d.is_positive(),
                });
            }
        }
    }
    Ok(CellProfile { c: c2 / two, anchors })
}

fn shoelace2(pts: &[&Point]) -> Scalar {
    let mut acc = Scalar::zero();
    let n = pts.len();
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        acc += &a.x * &b.y - &b.x * &a.y;
    }
    acc
}

/// The refined visibility decomposition: the decomposition overlaid with,
/// for every realized (anchor, base-edge) pair, the maximal segments of the
/// line through the anchor perpendicular to the base, clipped to the domain.
#[derive(Clone, Debug)]
pub struct RefinedDecomposition {
    pub sub: Subdivision,
    /// Realized rotating pairs: anchor vertex and base edge index.
    pub pairs: Vec<(Point, usize)>,
    /// Segments of the base decomposition (chords) and of the refinement.
    pub chords: Vec<(Point, Point)>,
    pub perpendiculars: Vec<(Point, Point)>,
    /// Cell formulas, one per face of `sub` (domain faces only).
    pub profiles: Vec<Option<CellProfile>>,
}

/// Overlays the visibility decomposition with the perpendicular-feet
/// segments of every realized rotating pair.
pub fn refine_decomposition(
    domain: &PolygonalDomain,
    vd: &Subdivision,
) -> Result<RefinedDecomposition, GeomError> {
    // Realized (anchor, base) pairs, discovered per cell.
    let mut pairs: BTreeSet<(Point, usize)> = BTreeSet::new();
    for f in vd.domain_faces() {
        let sample = vd.face_interior_point(f);
        let vis = visibility_polygon(domain, &sample)?;
        for t in &vis.fan {
            for side in [&t.start_side, &t.end_side] {
                if side.kind == crate::visibility::SideKind::Rotating {
                    pairs.insert((side.anchor.clone(), t.edge));
                }
            }
        }
    }
    let pairs: Vec<(Point, usize)> = pairs.into_iter().collect();

    let edges = domain.edges();
    let mut perpendiculars = Vec::new();
    for (anchor, eidx) in &pairs {
        let e = &edges[*eidx];
        let frame = AnchorFrame::new(anchor.clone(), (e.0.clone(), e.1.clone()))?;
        perpendiculars.extend(clip_line_to_domain(domain, anchor, &frame.normal));
    }

    // Chords of the base decomposition: every non-boundary edge.
    let mut chords = Vec::new();
    for &(u, v, _, _) in &vd.edges {
        chords.push((vd.vertices[u].clone(), vd.vertices[v].clone()));
    }

    let mut segs = chords.clone();
    segs.extend(perpendiculars.iter().cloned());
    let sub = build_arrangement(domain, &segs)?;

    let mut profiles: Vec<Option<CellProfile>> = vec![None; sub.faces.len()];
    for f in sub.domain_faces() {
        let sample = sub.face_interior_point(f);
        profiles[f] = Some(cell_profile_at(domain, &sample)?);
    }

    Ok(RefinedDecomposition { sub, pairs, chords, perpendiculars, profiles })
}

/// Maximal pieces of the full line `origin + t * dir` inside the closed
/// domain.
pub fn clip_line_to_domain(
    domain: &PolygonalDomain,
    origin: &Point,
    dir: &Vector,
) -> Vec<(Point, Point)> {
    clip_parametric(domain, origin, dir, true)
}

/// Maximal pieces of the ray `origin + t * dir`, `t >= 0`, inside the
/// closed domain.
pub fn clip_ray_to_domain(
    domain: &PolygonalDomain,
    origin: &Point,
    dir: &Vector,
) -> Vec<(Point, Point)> {
    clip_parametric(domain, origin, dir, false)
}

fn clip_parametric(
    domain: &PolygonalDomain,
    origin: &Point,
    dir: &Vector,
    full_line: bool,
) -> Vec<(Point, Point)> {
    if dir.is_zero() {
        return Vec::new();
    }
    // Parameter bound covering the domain bounding box.
    let l = to_f64(&domain.max_abs_coord()).max(1.0);
    let (ox, oy) = origin.approx();
    let reach = (l + ox.abs() + oy.abs() + 1.0) * 4.0;
    let dn = dir.norm_f64().max(1e-12);
    let t_hi = scalar_int((reach / dn).ceil() as i64 + 1);
    let t_lo = if full_line { -t_hi.clone() } else { Scalar::zero() };

    let a = origin.add(&dir.scale(&t_lo));
    let b = origin.add(&dir.scale(&t_hi));
    let d = b.sub(&a);
    let dd = d.norm_sq();
    let mut params: Vec<Scalar> = vec![Scalar::zero(), Scalar::from_integer(1.into())];
    for (u, w) in domain.edges() {
        match crate::geometry::segment_intersection(&a, &b, &u, &w) {
            crate::geometry::SegmentMeet::None => {}
            crate::geometry::SegmentMeet::At(p) => params.push(p.sub(&a).dot(&d) / dd.clone()),
            crate::geometry::SegmentMeet::Overlap(p, q) => {
                params.push(p.sub(&a).dot(&d) / dd.clone());
                params.push(q.sub(&a).dot(&d) / dd.clone());
            }
        }
    }
    params.sort();
    params.dedup();
    let two = scalar_int(2);
    let mut out: Vec<(Point, Point)> = Vec::new();
    for w in params.windows(2) {
        let mid = (&w[0] + &w[1]) / two.clone();
        let m = a.lerp(&b, &mid);
        if domain.locate_point(&m) != crate::geometry::Location::Exterior {
            let p = a.lerp(&b, &w[0]);
            let q = a.lerp(&b, &w[1]);
            if p != q {
                // Merge with the previous piece when contiguous.
                if let Some(last) = out.last_mut() {
                    if last.1 == p {
                        last.1 = q;
                        continue;
                    }
                }
                out.push((p, q));
            }
        }
    }
    out
}

/// The weighted subdivision: a convex planar subdivision of the domain with
/// one weight per face approximating |V(p)| on that face.
#[derive(Clone, Debug)]
pub struct WeightedSubdivision {
    pub eps: f64,
    pub sub: Subdivision,
    /// Weight per face of `sub` (zero on non-domain faces).
    pub weights: Vec<Scalar>,
    pub levels: LevelSequence,
    pub refined: RefinedDecomposition,
    /// Refined-cell id per face of `sub`.
    pub face_cell: Vec<Option<usize>>,
}

impl WeightedSubdivision {
    /// Weight of the face containing `p` (boundary points resolve to the
    /// lowest incident face id).
    pub fn weight_at(&self, p: &Point) -> Result<Scalar, GeomError> {
        let f = self.sub.locate(p).ok_or(GeomError::OutsideDomain)?;
        if !self.sub.faces[f].in_domain {
            return Err(GeomError::OutsideDomain);
        }
        Ok(self.weights[f].clone())
    }
}

/// Builds the weighted subdivision for the given approximation parameter.
pub fn build_weighted_subdivision(
    domain: &PolygonalDomain,
    eps: f64,
) -> Result<WeightedSubdivision, GeomError> {
    let vd = crate::subdivision::visibility_decomposition(domain)?;
    build_weighted_subdivision_from(domain, &vd, eps)
}

/// As [`build_weighted_subdivision`], reusing a precomputed visibility
/// decomposition.
pub fn build_weighted_subdivision_from(
    domain: &PolygonalDomain,
    vd: &Subdivision,
    eps: f64,
) -> Result<WeightedSubdivision, GeomError> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(GeomError::InvalidParameter(format!(
            "eps must lie in (0, 1], got {eps}"
        )));
    }
    let refined = refine_decomposition(domain, vd)?;

    let n = domain.vertex_count();
    let l = domain.max_abs_coord();
    let cap = scalar_int(2) * scalar_int(n as i64) * &l * &l;
    let levels = LevelSequence::new(eps, n, &cap)?;

    // Level rays per realized pair, on both sides of each perpendicular,
    // stopping once the level exceeds the largest delta the pair can take.
    let edges = domain.edges();
    let mut rays: Vec<(Point, Point)> = Vec::new();
    for (anchor, eidx) in &refined.pairs {
        let e = &edges[*eidx];
        let frame = AnchorFrame::new(anchor.clone(), (e.0.clone(), e.1.clone()))?;
        let max_sq = frame.max_delta_sq();
        for (i, a) in levels.values.iter().enumerate() {
            if i > 0 {
                let prev = &levels.values[i - 1];
                if prev * prev >= max_sq {
                    break;
                }
            }
            let ratio = scalar_int(2) * a / frame.h2.clone();
            for side in [1, -1] {
                let dir = frame.ray_direction(&ratio, side);
                rays.extend(clip_ray_to_domain(domain, anchor, &dir));
            }
        }
    }

    // Provisional overlay.
    let mut segs = refined.chords.clone();
    segs.extend(refined.perpendiculars.iter().cloned());
    segs.extend(rays.iter().cloned());
    let provisional = build_arrangement(domain, &segs)?;

    // Convexity pass: split non-convex faces into triangles.
    let mut diagonals: Vec<(Point, Point)> = Vec::new();
    for f in provisional.domain_faces() {
        let cycle = provisional.face_cycle_points(provisional.faces[f].outer_cycle);
        if is_convex_cycle(&cycle) {
            continue;
        }
        let tris = triangulate_ring(&cycle)?;
        for t in &tris {
            for k in 0..3 {
                diagonals.push((t[k].clone(), t[(k + 1) % 3].clone()));
            }
        }
    }

    let sub = if diagonals.is_empty() {
        provisional
    } else {
        segs.extend(diagonals);
        build_arrangement(domain, &segs)?
    };

    // Weight per face: locate the refined cell, then apply its formula with
    // sector weights in place of the exact deltas.
    let mut weights = vec![Scalar::zero(); sub.faces.len()];
    let mut face_cell = vec![None; sub.faces.len()];
    for f in sub.domain_faces() {
        let sample = sub.face_interior_point(f);
        let cell = locate_domain_face(&refined.sub, &sample).ok_or_else(|| {
            GeomError::Degenerate("weighted face escaped the refined decomposition".into())
        })?;
        face_cell[f] = Some(cell);
        let profile = refined.profiles[cell]
            .as_ref()
            .expect("domain cell without profile");
        let mut w = profile.c.clone();
        for sa in &profile.anchors {
            let e = &edges[sa.edge];
            let frame = AnchorFrame::new(sa.anchor.clone(), (e.0.clone(), e.1.clone()))?;
            let delta = frame.delta(&sample)?;
            let (_, a) = levels.sector_value(&delta);
            if sa.positive {
                w += a;
            } else {
                w -= a;
            }
        }
        weights[f] = w;
    }

    Ok(WeightedSubdivision { eps, sub, weights, levels, refined, face_cell })
}

/// Locates a point among the domain faces of a subdivision (interior hits
/// only; the caller supplies strictly interior samples).
fn locate_domain_face(sub: &Subdivision, p: &Point) -> Option<usize> {
    let (px, py) = p.approx();
    for f in sub.domain_faces() {
        let (x0, y0, x1, y1) = sub.faces[f].bbox;
        if px < x0 - 1e-9 || px > x1 + 1e-9 || py < y0 - 1e-9 || py > y1 + 1e-9 {
            continue;
        }
        if sub.face_classify(f, p) != crate::geometry::Location::Exterior {
            return Some(f);
        }
    }
    None
}

fn is_convex_cycle(cycle: &[Point]) -> bool {
    let n = cycle.len();
    // Repeated vertices mean a pinched cycle, which is never convex.
    let mut sorted: Vec<&Point> = cycle.iter().collect();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    for i in 0..n {
        let a = &cycle[i];
        let b = &cycle[(i + 1) % n];
        let c = &cycle[(i + 2) % n];
        if crate::geometry::orient(a, b, c) < 0 {
            return false;
        }
    }
    true
}

/// Diagnostic pointwise weight in the style of the generic scheme: every
/// fan triangle's area rounded up to its level value. Satisfies
/// |V(p)| <= w31(p) <= (1 + 2 eps) |V(p)| on integer-coordinate domains.
pub fn pointwise_sector_weight(
    domain: &PolygonalDomain,
    levels: &LevelSequence,
    p: &Point,
) -> Result<Scalar, GeomError> {
    let vis = visibility_polygon(domain, p)?;
    let two = scalar_int(2);
    let mut acc = Scalar::zero();
    for t in &vis.fan {
        let area = cross2(&vis.center, &t.a, &t.b).abs() / two.clone();
        if area.is_zero() {
            continue;
        }
        let (_, a) = levels.sector_value(&area);
        acc += a;
    }
    Ok(acc)
}
