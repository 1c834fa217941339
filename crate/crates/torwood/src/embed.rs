//! Orthogonal surfaces spanned by region vectors, their geodesic
//! embeddings, and flat drawings obtained by projecting them.
//!
//! The point set is infinite but periodic, so every query ("is some vertex
//! strictly below this point?") is answered exactly by enumerating the
//! lattice translates that can fall in a bounded box. All predicates use
//! integer arithmetic; floating point only appears in [`winding_numbers`].

use std::collections::HashSet;

use crate::cover::{coordinates, lifted_face_corners, straight_line_scale, Coordinates, Lift, Point3};
use crate::error::{Error, Result};
use crate::torus_map::{Offset, TorusMap};
use crate::wood::{dual_wood, Wood};

fn sub(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn join(a: Point3, b: Point3) -> Point3 {
    [a[0].max(b[0]), a[1].max(b[1]), a[2].max(b[2])]
}

pub fn meet(a: Point3, b: Point3) -> Point3 {
    [a[0].min(b[0]), a[1].min(b[1]), a[2].min(b[2])]
}

/// Coordinatewise `a <= b`.
pub fn dominated(a: Point3, b: Point3) -> bool {
    (0..3).all(|i| a[i] <= b[i])
}

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -floor_div(-a, b)
}

/// The periodic point set `{p_v + k S + k' S'}`.
#[derive(Clone, Debug)]
pub struct Surface {
    pub base: Vec<Point3>,
    pub s: Point3,
    pub s_prime: Point3,
    /// Two coordinates in which `s` and `s_prime` are independent.
    minor: (usize, usize),
    det: i128,
    min_sum: i64,
    max_sum: i64,
    /// Search limit for unbounded queries.
    reach: i64,
}

impl Surface {
    pub fn new(c: &Coordinates) -> Result<Surface> {
        let (s, t) = (c.s, c.s_prime);
        let mut best = None;
        for (p, q) in [(0, 1), (1, 2), (0, 2)] {
            let d = s[p] as i128 * t[q] as i128 - s[q] as i128 * t[p] as i128;
            if d != 0 && best.map_or(true, |(_, _, bd): (usize, usize, i128)| d.abs() > bd.abs()) {
                best = Some((p, q, d));
            }
        }
        let (p, q, det) = best.ok_or_else(|| {
            Error::Inconsistent(format!("period vectors {:?} and {:?} are collinear", s, t))
        })?;
        let sums: Vec<i64> = c.points.iter().map(|x| x.iter().sum()).collect();
        let nf = c.scale * c.faces;
        Ok(Surface {
            base: c.points.clone(),
            s,
            s_prime: t,
            minor: (p, q),
            det,
            min_sum: *sums.iter().min().unwrap(),
            max_sum: *sums.iter().max().unwrap(),
            reach: 64 * nf.max(1) * (c.gamma.iter().copied().max().unwrap_or(1).max(1) + c.points.len() as i64),
        })
    }

    pub fn point(&self, x: Lift) -> Point3 {
        let p = self.base[x.v];
        let mut out = p;
        for i in 0..3 {
            out[i] += x.at.y * self.s[i] + x.at.x * self.s_prime[i];
        }
        out
    }

    /// Real coordinates of `p` in the basis `s`, `s_prime`, as fractions
    /// over `det`.
    fn lattice_coords(&self, p: Point3) -> (i128, i128) {
        let (a, b) = self.minor;
        let (s, t) = (self.s, self.s_prime);
        let (x, y) = (p[a] as i128, p[b] as i128);
        let k = x * t[b] as i128 - y * t[a] as i128;
        let kp = s[a] as i128 * y - s[b] as i128 * x;
        (k, kp)
    }

    /// Every lift whose point lies in the box `lo..=hi`.
    pub fn in_box(&self, lo: Point3, hi: Point3) -> Vec<(Lift, Point3)> {
        let mut out = Vec::new();
        if (0..3).any(|i| lo[i] > hi[i]) {
            return out;
        }
        let (a, b) = self.minor;
        for (v, &p) in self.base.iter().enumerate() {
            let mut kr = (i128::MAX, i128::MIN);
            let mut kpr = (i128::MAX, i128::MIN);
            for &xa in &[lo[a], hi[a]] {
                for &xb in &[lo[b], hi[b]] {
                    let mut c = [0; 3];
                    c[a] = xa - p[a];
                    c[b] = xb - p[b];
                    let (k, kp) = self.lattice_coords(c);
                    kr = (kr.0.min(k), kr.1.max(k));
                    kpr = (kpr.0.min(kp), kpr.1.max(kp));
                }
            }
            let d = self.det;
            let (k0, k1) = if d > 0 {
                (ceil_div(kr.0, d), floor_div(kr.1, d))
            } else {
                (ceil_div(kr.1, d), floor_div(kr.0, d))
            };
            let (l0, l1) = if d > 0 {
                (ceil_div(kpr.0, d), floor_div(kpr.1, d))
            } else {
                (ceil_div(kpr.1, d), floor_div(kpr.0, d))
            };
            for k in k0..=k1 {
                for kp in l0..=l1 {
                    let x = Lift { v, at: Offset::new(kp as i64, k as i64) };
                    let q = self.point(x);
                    if dominated(lo, q) && dominated(q, hi) {
                        out.push((x, q));
                    }
                }
            }
        }
        out
    }

    /// Some vertex strictly below `w` in every coordinate.
    pub fn strictly_below(&self, w: Point3) -> Option<(Lift, Point3)> {
        let hi = [w[0] - 1, w[1] - 1, w[2] - 1];
        let lo = [
            self.min_sum - hi[1] - hi[2],
            self.min_sum - hi[0] - hi[2],
            self.min_sum - hi[0] - hi[1],
        ];
        self.in_box(lo, hi).into_iter().next()
    }

    /// Vertices `x` with `x <= w`.
    pub fn below(&self, w: Point3) -> Vec<(Lift, Point3)> {
        let lo = [
            self.min_sum - w[1] - w[2],
            self.min_sum - w[0] - w[2],
            self.min_sum - w[0] - w[1],
        ];
        self.in_box(lo, w)
    }

    /// Vertices `x` with `x >= w`.
    pub fn above(&self, w: Point3) -> Vec<(Lift, Point3)> {
        let hi = [
            self.max_sum - w[1] - w[2],
            self.max_sum - w[0] - w[2],
            self.max_sum - w[0] - w[1],
        ];
        self.in_box(w, hi)
    }

    /// Whether `p` lies on the boundary of the region dominating the points.
    pub fn on_surface(&self, p: Point3) -> bool {
        self.strictly_below(p).is_none() && !self.below(p).is_empty()
    }

    /// Length of the orthogonal arc leaving `v` in direction `i`: the
    /// smallest `x_i - v_i` over points `x` strictly below `v` in the two
    /// other coordinates.
    pub fn arc_length(&self, v: Point3, i: usize) -> Option<i64> {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let mut len = self.reach / 64;
        while len <= self.reach {
            let mut lo = [0; 3];
            let mut hi = [0; 3];
            lo[i] = v[i] + 1;
            hi[i] = v[i] + len;
            hi[j] = v[j] - 1;
            hi[k] = v[k] - 1;
            lo[j] = self.min_sum - hi[i] - hi[k];
            lo[k] = self.min_sum - hi[i] - hi[j];
            if let Some(m) = self.in_box(lo, hi).iter().map(|(_, x)| x[i] - v[i]).min() {
                return Some(m);
            }
            len *= 2;
        }
        None
    }

    /// Length of the dual orthogonal arc leaving the maximal point `a`
    /// downwards in direction `i`. The ray stays on the surface as long as
    /// it dominates some vertex, so the arc ends at the smallest `x_i` among
    /// vertices below `a` in the two other coordinates.
    pub fn dual_arc_length(&self, a: Point3, i: usize) -> Option<i64> {
        self.below(a).iter().map(|(_, x)| a[i] - x[i]).max()
    }

    /// A point of the surface that no other surface point dominates.
    pub fn is_maximal(&self, p: Point3) -> bool {
        if self.strictly_below(p).is_some() {
            return false;
        }
        (0..3).all(|i| {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let mut hi = p;
            hi[j] -= 1;
            hi[k] -= 1;
            let mut lo = [0; 3];
            lo[i] = self.min_sum - hi[j] - hi[k];
            lo[j] = self.min_sum - hi[i] - hi[k];
            lo[k] = self.min_sum - hi[i] - hi[j];
            !self.in_box(lo, hi).is_empty()
        })
    }

    /// Representative of `p` modulo the period lattice.
    pub fn canonical(&self, p: Point3) -> Point3 {
        let (k, kp) = self.lattice_coords(p);
        let (a, b) = (floor_div(k, self.det) as i64, floor_div(kp, self.det) as i64);
        let mut out = p;
        for i in 0..3 {
            out[i] -= a * self.s[i] + b * self.s_prime[i];
        }
        out
    }

    /// Maximal points of the surface modulo the period lattice. A maximal
    /// point takes each coordinate from a vertex strictly below it in the
    /// two other coordinates, so it is `(a_0, b_1, m)` where `a` can be
    /// taken in copy (0, 0), `b` is within `reach` of `a` and `m` is the
    /// smallest admissible third coordinate.
    pub fn maximal_points(&self, reach: i64) -> Vec<Point3> {
        let mut found = HashSet::new();
        for &a in &self.base {
            let lo = [a[0] - reach, a[1] + 1, a[2] - reach];
            let hi = [a[0] - 1, a[1] + reach, a[2] + reach];
            for (_, b) in self.in_box(lo, hi) {
                // smallest x_2 with x_0 < a_0 and x_1 < b_1
                let mut len = reach.max(1);
                let mut m = None;
                while len <= 4 * self.reach && m.is_none() {
                    let hi = [a[0] - 1, b[1] - 1, a[2].max(b[2]) + len];
                    let lo = [
                        self.min_sum - hi[1] - hi[2],
                        self.min_sum - hi[0] - hi[2],
                        self.min_sum - hi[0] - hi[1],
                    ];
                    m = self.in_box(lo, hi).iter().map(|(_, x)| x[2]).min();
                    len *= 2;
                }
                if let Some(m) = m {
                    let p = [a[0], b[1], m];
                    if self.is_maximal(p) {
                        found.insert(self.canonical(p));
                    }
                }
            }
        }
        let mut v: Vec<Point3> = found.into_iter().collect();
        v.sort();
        v
    }
}

fn cross(a: [i128; 3], b: [i128; 3]) -> [i128; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot3(a: [i128; 3], b: [i128; 3]) -> i128 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn wide(p: Point3) -> [i128; 3] {
    [p[0] as i128, p[1] as i128, p[2] as i128]
}

/// Whether two closed segments share a point other than one of the points
/// in `allowed`. Works in any dimension up to three; pass 2D segments with
/// a zero third coordinate.
pub fn segments_conflict(p0: Point3, p1: Point3, q0: Point3, q1: Point3, allowed: &[Point3]) -> bool {
    let (p0w, q0w) = (wide(p0), wide(q0));
    let d1 = wide(sub(p1, p0));
    let d2 = wide(sub(q1, q0));
    let r = wide(sub(q0, p0));
    // a touching point `p0 + (num/den) d1` is fine if it is allowed
    let ok_at = |num: i128, den: i128| -> bool {
        allowed.iter().any(|&a| {
            let aw = wide(a);
            (0..3).all(|i| den * (aw[i] - p0w[i]) == num * d1[i])
        })
    };
    if d1 == [0; 3] || d2 == [0; 3] {
        // a point against a segment
        let (pt, a, d) = if d1 == [0; 3] { (p0w, q0w, d2) } else { (q0w, p0w, d1) };
        let rel = [pt[0] - a[0], pt[1] - a[1], pt[2] - a[2]];
        if cross(rel, d) != [0; 3] {
            return false;
        }
        let t = dot3(rel, d);
        let l = dot3(d, d);
        if l == 0 {
            if rel != [0; 3] {
                return false;
            }
        } else if t < 0 || t > l {
            return false;
        }
        return !allowed.iter().any(|&x| wide(x) == pt);
    }
    let n = cross(d1, d2);
    if n != [0; 3] {
        if dot3(r, n) != 0 {
            return false;
        }
        let nn = dot3(n, n);
        let s = dot3(cross(r, d2), n);
        let t = dot3(cross(r, d1), n);
        if s < 0 || s > nn || t < 0 || t > nn {
            return false;
        }
        return !ok_at(s, nn);
    }
    if cross(r, d1) != [0; 3] {
        return false;
    }
    // collinear: compare parameters along d1
    let l = dot3(d1, d1);
    let t0 = dot3(r, d1);
    let t1 = dot3(wide(sub(q1, p0)), d1);
    let (a, b) = (t0.min(t1).max(0), t0.max(t1).min(l));
    if a > b {
        return false;
    }
    if a < b {
        return true;
    }
    !ok_at(a, l)
}

/// A polyline of one or two segments with the vertices at its ends.
#[derive(Clone, Debug)]
pub struct Elbow {
    pub edge: usize,
    pub ends: [Lift; 2],
    pub points: [Point3; 3],
}

impl Elbow {
    pub fn bend(&self) -> Point3 {
        self.points[1]
    }
}

fn bbox(a: Point3, b: Point3) -> (Point3, Point3) {
    (meet(a, b), join(a, b))
}

/// First pair of polylines that cross or overlap, sharing only the listed
/// end points. `ends` gives, per polyline, the points where touching
/// another polyline is allowed when both list the point.
fn first_crossing(lines: &[[Point3; 3]], ends: &[[Point3; 2]]) -> Option<(usize, usize)> {
    let mut segs: Vec<(Point3, Point3, usize, Point3, Point3)> = Vec::new();
    for (k, l) in lines.iter().enumerate() {
        for (a, b) in [(l[0], l[1]), (l[1], l[2])] {
            if a != b {
                let (lo, hi) = bbox(a, b);
                segs.push((a, b, k, lo, hi));
            }
        }
    }
    segs.sort_by_key(|s| s.3[0]);
    for x in 0..segs.len() {
        for y in x + 1..segs.len() {
            let (a0, a1, ka, _, ahi) = segs[x];
            let (b0, b1, kb, blo, bhi) = segs[y];
            if blo[0] > ahi[0] {
                break;
            }
            if ka == kb || (0..3).any(|i| blo[i] > ahi[i] || bhi[i] < segs[x].3[i]) {
                continue;
            }
            let shared: Vec<Point3> =
                ends[ka].iter().copied().filter(|p| ends[kb].contains(p)).collect();
            if segments_conflict(a0, a1, b0, b1, &shared) {
                return Some((ka.min(kb), ka.max(kb)));
            }
        }
    }
    None
}

/// Vertices, edges and faces of the cover lifted to copies within `radius`
/// of copy (0, 0), placed on the orthogonal surface.
#[derive(Clone, Debug)]
pub struct GeodesicScene {
    pub radius: i64,
    pub surface: Surface,
    pub vertices: Vec<(Lift, Point3)>,
    pub elbows: Vec<Elbow>,
}

/// Lifted edges with their tail in a copy within `radius`.
fn window_edges(g: &TorusMap, radius: i64) -> Vec<(usize, Lift, Lift)> {
    let mut out = Vec::new();
    for px in -radius..=radius {
        for py in -radius..=radius {
            let at = Offset::new(px, py);
            for e in 0..g.m() {
                let d = 2 * e;
                out.push((
                    e,
                    Lift { v: g.origin(d), at },
                    Lift { v: g.target(d), at: at + g.offset(d) },
                ));
            }
        }
    }
    out
}

pub fn geodesic_scene(g: &TorusMap, c: &Coordinates, radius: i64) -> Result<GeodesicScene> {
    let surface = Surface::new(c)?;
    let mut vertices = Vec::new();
    for px in -radius..=radius {
        for py in -radius..=radius {
            for v in 0..g.n() {
                let x = Lift { v, at: Offset::new(px, py) };
                vertices.push((x, surface.point(x)));
            }
        }
    }
    let elbows = window_edges(g, radius)
        .into_iter()
        .map(|(e, a, b)| {
            let (pa, pb) = (surface.point(a), surface.point(b));
            Elbow { edge: e, ends: [a, b], points: [pa, join(pa, pb), pb] }
        })
        .collect();
    Ok(GeodesicScene { radius, surface, vertices, elbows })
}

fn violation(s: String) -> Error {
    Error::EmbeddingViolation(s)
}

/// Orthogonal arcs seen while checking an embedding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ArcReport {
    pub arcs: usize,
    /// Arcs that continue past the bend of their edge. This happens along
    /// flat parts of the surface, next to bi-oriented edges where two
    /// vertices share a coordinate.
    pub overrunning: usize,
}

/// Whether the elbow from `p` to `q` starts in direction `+e_i`.
fn leaves_along(p: Point3, q: Point3, i: usize) -> bool {
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    p[i] < q[i] && q[j] <= p[j] && q[k] <= p[k]
}

/// Check the four geodesic embedding conditions on the scene, plus the
/// bound `2Nf` on coordinate differences along edges.
pub fn check_geodesic(g: &TorusMap, w: &Wood, c: &Coordinates, scene: &GeodesicScene) -> Result<ArcReport> {
    let sf = &scene.surface;
    // D1: pairwise incomparable, checked against the whole periodic set
    let mut classes = HashSet::new();
    for (v, &p) in sf.base.iter().enumerate() {
        if !classes.insert(sf.canonical(p)) {
            return Err(violation(format!("vertex {} coincides with another vertex", v)));
        }
        for (x, q) in sf.below(p).into_iter().chain(sf.above(p)) {
            if q != p {
                return Err(violation(format!("vertex {} is comparable with {:?}", v, x)));
            }
        }
    }
    // D2: every bend is on the surface
    let bound = 2 * c.scale * c.faces;
    for el in &scene.elbows {
        if let Some((x, _)) = sf.strictly_below(el.bend()) {
            return Err(violation(format!(
                "bend of edge {} from {:?} lies above vertex {:?}",
                el.edge, el.ends[0], x
            )));
        }
        let (a, b) = (el.points[0], el.points[2]);
        if (0..3).any(|i| (a[i] - b[i]).abs() > bound) {
            return Err(violation(format!("edge {} is longer than 2Nf in some coordinate", el.edge)));
        }
    }
    // D3: the arc in direction i starts along the edge of colour i and
    // along no other edge
    let mut report = ArcReport::default();
    for v in 0..g.n() {
        let pv = sf.base[v];
        for i in 0..3u8 {
            let d = w
                .out_dart(g, v, i)
                .ok_or_else(|| Error::InconsistentWood(format!("vertex {} lacks colour {}", v, i)))?;
            let ii = i as usize;
            let pu = sf.point(Lift { v: g.target(d), at: g.offset(d) });
            if !leaves_along(pv, pu, ii) {
                return Err(violation(format!(
                    "edge of colour {} at vertex {} does not leave in direction {}",
                    i, v, i
                )));
            }
            for &other in g.rotation(v) {
                let q = sf.point(Lift { v: g.target(other), at: g.offset(other) });
                if other != d && leaves_along(pv, q, ii) {
                    return Err(violation(format!(
                        "arc of vertex {} in direction {} lies on two edges",
                        v, i
                    )));
                }
            }
            let len = sf.arc_length(pv, ii).ok_or_else(|| {
                violation(format!("arc of vertex {} in direction {} not bounded", v, i))
            })?;
            report.arcs += 1;
            if len < pu[ii] - pv[ii] {
                return Err(violation(format!(
                    "arc of vertex {} in direction {} stops after {}, before the bend at {}",
                    v,
                    i,
                    len,
                    pu[ii] - pv[ii]
                )));
            }
            if len > pu[ii] - pv[ii] {
                report.overrunning += 1;
            }
        }
    }
    // D4: no two elbows cross
    let lines: Vec<[Point3; 3]> = scene.elbows.iter().map(|e| e.points).collect();
    let ends: Vec<[Point3; 2]> = scene.elbows.iter().map(|e| [e.points[0], e.points[2]]).collect();
    if let Some((a, b)) = first_crossing(&lines, &ends) {
        let (ea, eb) = (&scene.elbows[a], &scene.elbows[b]);
        return Err(violation(format!(
            "edges {} at {:?} and {} at {:?} cross",
            ea.edge, ea.ends[0], eb.edge, eb.ends[0]
        )));
    }
    Ok(report)
}

/// Face points and dual elbows.
#[derive(Clone, Debug)]
pub struct DualScene {
    /// Point of every face with its anchor in copy (0, 0).
    pub face_points: Vec<Point3>,
    /// Dual elbow of every lifted primal edge of the primal scene, in the
    /// same order.
    pub elbows: Vec<Elbow>,
    pub dual_wood: Wood,
}

/// Point of a lifted face: the coordinatewise maximum of its corners.
pub fn face_point(g: &TorusMap, sf: &Surface, face: usize, at: Offset) -> Point3 {
    lifted_face_corners(g, face, at)
        .into_iter()
        .map(|x| sf.point(x))
        .reduce(join)
        .expect("faces have corners")
}

/// The two faces on either side of a lifted primal edge: left then right of
/// its `+` dart.
fn sides(g: &TorusMap, e: usize, tail: Lift) -> ((usize, Offset), (usize, Offset)) {
    let d = 2 * e;
    let l = (g.face_of(d), tail.at - g.corner_pos(d));
    let r = (g.face_of(d + 1), tail.at + g.offset(d) - g.corner_pos(d + 1));
    (l, r)
}

pub fn dual_scene(g: &TorusMap, w: &Wood, scene: &GeodesicScene) -> Result<DualScene> {
    let sf = &scene.surface;
    let face_points = (0..g.f()).map(|f| face_point(g, sf, f, Offset::ZERO)).collect();
    let elbows = scene
        .elbows
        .iter()
        .map(|el| {
            let (l, r) = sides(g, el.edge, el.ends[0]);
            let (a, b) = (face_point(g, sf, l.0, l.1), face_point(g, sf, r.0, r.1));
            // ends hold the faces as (face index, anchor copy)
            Elbow {
                edge: el.edge,
                ends: [Lift { v: l.0, at: l.1 }, Lift { v: r.0, at: r.1 }],
                points: [a, meet(a, b), b],
            }
        })
        .collect();
    Ok(DualScene { face_points, elbows, dual_wood: dual_wood(g, w)? })
}

/// Check the dual embedding conditions. With `exhaustive`, also list every
/// maximal point of the surface and compare with the face points.
pub fn check_dual(g: &TorusMap, c: &Coordinates, scene: &GeodesicScene, dual: &DualScene, exhaustive: bool) -> Result<ArcReport> {
    let sf = &scene.surface;
    let gd = g.dual();
    // D1*: face points are distinct maximal points
    let mut classes = HashSet::new();
    for (f, &p) in dual.face_points.iter().enumerate() {
        if !sf.is_maximal(p) {
            return Err(violation(format!("point of face {} is not a maximal point", f)));
        }
        if !classes.insert(sf.canonical(p)) {
            return Err(violation(format!("face {} shares its point with another face", f)));
        }
    }
    if exhaustive {
        let maxdeg = g.faces().iter().map(|f| f.len()).max().unwrap_or(3) as i64;
        let reach = 2 * c.scale * c.faces * maxdeg;
        let all = sf.maximal_points(reach);
        let mut faces: Vec<Point3> = classes.iter().copied().collect();
        faces.sort();
        if all != faces {
            return Err(violation(format!(
                "{} maximal points per period but {} faces",
                all.len(),
                faces.len()
            )));
        }
    }
    // D2*: dual bends on the surface
    for el in &dual.elbows {
        if !sf.on_surface(el.bend()) {
            return Err(violation(format!("dual bend across edge {} is off the surface", el.edge)));
        }
    }
    // D3*: the dual arc in direction i starts along the dual edge of
    // colour i and along no other dual edge
    let mut report = ArcReport::default();
    for f in 0..g.f() {
        let a = dual.face_points[f];
        for i in 0..3u8 {
            let d = dual.dual_wood.out_dart(&gd, f, i).ok_or_else(|| {
                Error::InconsistentWood(format!("dual vertex {} lacks colour {}", f, i))
            })?;
            let ii = i as usize;
            let b = face_point(g, sf, gd.target(d), gd.offset(d));
            let neg = |p: Point3| [-p[0], -p[1], -p[2]];
            if !leaves_along(neg(a), neg(b), ii) {
                return Err(violation(format!(
                    "dual edge of colour {} at face {} does not leave in direction {}",
                    i, f, i
                )));
            }
            for &other in gd.rotation(f) {
                let q = face_point(g, sf, gd.target(other), gd.offset(other));
                if other != d && leaves_along(neg(a), neg(q), ii) {
                    return Err(violation(format!(
                        "dual arc of face {} in direction {} lies on two dual edges",
                        f, i
                    )));
                }
            }
            let len = sf.dual_arc_length(a, ii).ok_or_else(|| {
                violation(format!("dual arc of face {} in direction {} not bounded", f, i))
            })?;
            report.arcs += 1;
            if len < a[ii] - b[ii] {
                return Err(violation(format!(
                    "dual arc of face {} in direction {} stops after {}, before the bend at {}",
                    f,
                    i,
                    len,
                    a[ii] - b[ii]
                )));
            }
            if len > a[ii] - b[ii] {
                report.overrunning += 1;
            }
        }
    }
    // D4*: no two dual elbows cross
    let lines: Vec<[Point3; 3]> = dual.elbows.iter().map(|e| e.points).collect();
    let ends: Vec<[Point3; 2]> = dual.elbows.iter().map(|e| [e.points[0], e.points[2]]).collect();
    if let Some((a, b)) = first_crossing(&lines, &ends) {
        return Err(violation(format!(
            "dual edges across {} and {} cross",
            dual.elbows[a].edge, dual.elbows[b].edge
        )));
    }
    Ok(report)
}

/// Exact projection along `normal` to integer plane coordinates. The map
/// keeps orientation as seen from the side `normal` points to.
pub fn project(p: Point3, normal: Point3) -> [i64; 2] {
    let c = [
        p[1] * normal[2] - p[2] * normal[1],
        p[2] * normal[0] - p[0] * normal[2],
        p[0] * normal[1] - p[1] * normal[0],
    ];
    if normal[2] != 0 {
        [c[0], c[1]]
    } else if normal[0] != 0 {
        [c[1], c[2]]
    } else {
        [c[2], c[0]]
    }
}

/// Signed orientation of a triangle seen from `normal`.
pub fn orientation(a: Point3, b: Point3, c: Point3, normal: Point3) -> i128 {
    dot3(cross(wide(sub(b, a)), wide(sub(c, a))), wide(normal))
}

fn to3(p: [i64; 2]) -> Point3 {
    [p[0], p[1], 0]
}

/// One drawn edge: from vertex `from` in copy (0, 0) to vertex `to` in copy
/// `to_at`, optionally through a bend.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrawnEdge {
    pub edge: usize,
    pub from: usize,
    pub to: usize,
    pub to_at: Offset,
    pub bend: Option<[i64; 2]>,
}

/// A periodic drawing in the plane.
#[derive(Clone, Debug)]
pub struct FlatDrawing {
    pub normal: Point3,
    pub points: Vec<[i64; 2]>,
    /// Images of one step up and one step right.
    pub periods: [[i64; 2]; 2],
    /// A reduced basis of the same lattice.
    pub reduced: [[i64; 2]; 2],
    pub edges: Vec<DrawnEdge>,
    pub dual_points: Vec<[i64; 2]>,
    pub dual_edges: Vec<DrawnEdge>,
    pub scale: i64,
    pub gamma: [i64; 3],
}

impl FlatDrawing {
    pub fn position(&self, v: usize, at: Offset) -> [i64; 2] {
        let p = self.points[v];
        let [s, t] = self.periods;
        [p[0] + at.y * s[0] + at.x * t[0], p[1] + at.y * s[1] + at.x * t[1]]
    }

    pub fn dual_position(&self, f: usize, at: Offset) -> [i64; 2] {
        let p = self.dual_points[f];
        let [s, t] = self.periods;
        [p[0] + at.y * s[0] + at.x * t[0], p[1] + at.y * s[1] + at.x * t[1]]
    }
}

fn drawing_from(g: &TorusMap, c: &Coordinates, normal: Point3) -> Result<FlatDrawing> {
    if normal.iter().any(|&x| x < 0) || normal == [0; 3] {
        return Err(Error::Inconsistent(format!("plane normal {:?} is not positive", normal)));
    }
    let (y, yp) = c.reduced_basis();
    let points = c.points.iter().map(|&p| project(p, normal)).collect();
    let edges = (0..g.m())
        .map(|e| DrawnEdge {
            edge: e,
            from: g.origin(2 * e),
            to: g.target(2 * e),
            to_at: g.offset(2 * e),
            bend: None,
        })
        .collect();
    Ok(FlatDrawing {
        normal,
        points,
        periods: [project(c.s, normal), project(c.s_prime, normal)],
        reduced: [project(y, normal), project(yp, normal)],
        edges,
        dual_points: Vec::new(),
        dual_edges: Vec::new(),
        scale: c.scale,
        gamma: c.gamma,
    })
}

/// Straight-line drawing of a triangulation: region vectors with the scale
/// `n + (5 min gamma + max gamma) f`, projected along `normal`. Every face
/// of the window is checked to be counterclockwise with a positive cross
/// product, and all edges of the window are checked for crossings.
pub fn straight_line_drawing(g: &TorusMap, w: &Wood, normal: Point3, radius: i64) -> Result<FlatDrawing> {
    if !g.is_triangulation() {
        return Err(Error::NotTriangulation("straight-line drawings need triangular faces".into()));
    }
    let c0 = coordinates(g, w, g.n() as i64)?;
    let scale = straight_line_scale(g, c0.gamma);
    let c = coordinates(g, w, scale)?;
    let d = drawing_from(g, &c, normal)?;
    check_faces(g, &c, radius)?;
    check_straight_crossings(g, &d, radius)?;
    Ok(d)
}

/// Every face `(u, v, w)` has `(v - u) x (w - u)` strictly positive in all
/// coordinates.
pub fn check_faces(g: &TorusMap, c: &Coordinates, radius: i64) -> Result<()> {
    for f in 0..g.f() {
        let corners = lifted_face_corners(g, f, Offset::ZERO);
        if corners.len() != 3 {
            return Err(Error::NotTriangulation(format!("face {} has {} corners", f, corners.len())));
        }
        let p: Vec<Point3> = corners.iter().map(|&x| c.point(x)).collect();
        let n = cross(wide(sub(p[1], p[0])), wide(sub(p[2], p[0])));
        if n.iter().any(|&x| x <= 0) {
            return Err(violation(format!("face {} has cross product {:?}", f, n)));
        }
    }
    // faces are periodic, so copy (0, 0) covers the window
    let _ = radius;
    Ok(())
}

/// Scan the projected edges of the window for crossings.
pub fn check_straight_crossings(g: &TorusMap, d: &FlatDrawing, radius: i64) -> Result<()> {
    let mut lines = Vec::new();
    let mut ends = Vec::new();
    let mut ids = Vec::new();
    for (e, a, b) in window_edges(g, radius) {
        let (pa, pb) = (to3(d.position(a.v, a.at)), to3(d.position(b.v, b.at)));
        lines.push([pa, pa, pb]);
        ends.push([pa, pb]);
        ids.push((e, a));
    }
    // a vertex lying inside an edge also counts as a crossing
    let mut vertex_lines = Vec::new();
    for px in -radius..=radius {
        for py in -radius..=radius {
            for v in 0..g.n() {
                let p = to3(d.position(v, Offset::new(px, py)));
                vertex_lines.push([p, p, p]);
            }
        }
    }
    if let Some((a, b)) = first_crossing(&lines, &ends) {
        return Err(violation(format!(
            "edges {} at {:?} and {} at {:?} cross in the drawing",
            ids[a].0, ids[a].1, ids[b].0, ids[b].1
        )));
    }
    for l in &lines {
        for vp in &vertex_lines {
            let p = vp[0];
            if p != l[0] && p != l[2] && segments_conflict(l[0], l[2], p, p, &[]) {
                return Err(violation(format!("a vertex lies on an edge at {:?}", p)));
            }
        }
    }
    Ok(())
}

/// Winding number of the neighbours around every vertex of a drawing, as
/// the total turning angle divided by a full turn.
pub fn winding_numbers(g: &TorusMap, d: &FlatDrawing) -> Vec<i64> {
    let dir = |dart: usize| -> (f64, f64) {
        let v = g.origin(dart);
        let a = d.position(v, Offset::ZERO);
        let b = d.position(g.target(dart), g.offset(dart));
        ((b[0] - a[0]) as f64, (b[1] - a[1]) as f64)
    };
    (0..g.n())
        .map(|v| {
            let r = g.rotation(v);
            let mut total = 0.0;
            for k in 0..r.len() {
                let (x0, y0) = dir(r[k]);
                let (x1, y1) = dir(r[(k + 1) % r.len()]);
                let mut a = (x0 * y1 - y0 * x1).atan2(x0 * x1 + y0 * y1);
                if a <= 0.0 {
                    a += std::f64::consts::TAU;
                }
                total += a;
            }
            (total / std::f64::consts::TAU).round() as i64
        })
        .collect()
}

/// Drawing of the primal and the dual with one bend per edge, from the
/// geodesic embeddings at the given scale.
pub fn one_bend_drawing(g: &TorusMap, w: &Wood, scale: i64, normal: Point3, radius: i64) -> Result<(FlatDrawing, OneBendReport)> {
    let c = coordinates(g, w, scale)?;
    let scene = geodesic_scene(g, &c, radius)?;
    check_geodesic(g, w, &c, &scene)?;
    let dual = dual_scene(g, w, &scene)?;
    check_dual(g, &c, &scene, &dual, false)?;
    let mut d = drawing_from(g, &c, normal)?;
    let sf = &scene.surface;
    for de in d.edges.iter_mut() {
        let a = sf.base[de.from];
        let b = sf.point(Lift { v: de.to, at: de.to_at });
        de.bend = Some(project(join(a, b), normal));
    }
    d.dual_points = dual.face_points.iter().map(|&p| project(p, normal)).collect();
    d.dual_edges = (0..g.m())
        .map(|e| {
            let (l, r) = sides(g, e, Lift { v: g.origin(2 * e), at: Offset::ZERO });
            let a = face_point(g, sf, l.0, l.1);
            let b = face_point(g, sf, r.0, r.1);
            // the bend is stored relative to the copy of the left face
            let shift = c.translation(l.1);
            DrawnEdge {
                edge: e,
                from: l.0,
                to: r.0,
                to_at: r.1 - l.1,
                bend: Some(project(sub(meet(a, b), shift), normal)),
            }
        })
        .collect();
    let report = check_one_bend(&d, &scene, &dual, normal)?;
    Ok((d, report))
}

/// What the one-bend drawing looks like up close.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OneBendReport {
    /// Edges whose primal and dual bends are projected on the same point.
    pub coincident_bends: usize,
}

/// Each projected primal elbow meets the projected dual elbow of the same
/// edge, and only at a bend of one of them.
fn check_one_bend(_d: &FlatDrawing, scene: &GeodesicScene, dual: &DualScene, normal: Point3) -> Result<OneBendReport> {
    let mut report = OneBendReport::default();
    for (pe, de) in scene.elbows.iter().zip(&dual.elbows) {
        let p: Vec<Point3> = pe.points.iter().map(|&x| to3(project(x, normal))).collect();
        let q: Vec<Point3> = de.points.iter().map(|&x| to3(project(x, normal))).collect();
        if p[1] == q[1] {
            report.coincident_bends += 1;
        }
        let bends = [p[1], q[1]];
        let mut meets = false;
        for (a0, a1) in [(p[0], p[1]), (p[1], p[2])] {
            for (b0, b1) in [(q[0], q[1]), (q[1], q[2])] {
                if segments_conflict(a0, a1, b0, b1, &[]) {
                    meets = true;
                    if segments_conflict(a0, a1, b0, b1, &bends) {
                        return Err(violation(format!(
                            "edge {} and its dual cross away from their bends",
                            pe.edge
                        )));
                    }
                }
            }
        }
        if !meets {
            return Err(violation(format!("edge {} and its dual do not cross", pe.edge)));
        }
    }
    Ok(report)
}

/// Sizes of a drawing compared with the bounds they are expected to obey.
#[derive(Clone, Debug, PartialEq)]
pub struct GridMetrics {
    pub y_len: f64,
    pub y_prime_len: f64,
    pub max_edge_len: f64,
    pub gamma: i64,
    pub scale: i64,
    pub n: usize,
    pub f: usize,
    /// `max(|Y|, |Y'|) / (gamma N f)`.
    pub ratio_gamma_nf: f64,
    /// `max edge length / (n f)`.
    pub ratio_nf: f64,
    /// `max(|Y|, |Y'|) / n^3`.
    pub ratio_n3: f64,
    /// `max(|Y|, |Y'|) / n^2`.
    pub ratio_n2: f64,
}

/// Lengths in the plane orthogonal to the drawing normal.
pub fn grid_metrics(g: &TorusMap, c: &Coordinates) -> GridMetrics {
    let (y, yp) = c.reduced_basis();
    let len = |p: Point3| (p.iter().map(|&x| (x as f64) * (x as f64)).sum::<f64>()).sqrt();
    let mut max_edge: f64 = 0.0;
    for e in 0..g.m() {
        let a = c.points[g.origin(2 * e)];
        let b = c.point(Lift { v: g.target(2 * e), at: g.offset(2 * e) });
        max_edge = max_edge.max(len(sub(b, a)));
    }
    let gamma = c.gamma.iter().copied().max().unwrap_or(0).max(1);
    let big = len(y).max(len(yp));
    let n = g.n() as f64;
    GridMetrics {
        y_len: len(y),
        y_prime_len: len(yp),
        max_edge_len: max_edge,
        gamma,
        scale: c.scale,
        n: g.n(),
        f: g.f(),
        ratio_gamma_nf: big / (gamma * c.scale * c.faces) as f64,
        ratio_nf: max_edge / (n * g.f() as f64),
        ratio_n3: big / (n * n * n),
        ratio_n2: big / (n * n),
    }
}

/// Check that the copies of a vertex moved along its own lines are where
/// the `Z` vectors put them.
pub fn check_copy_lattice(c: &Coordinates) -> Result<()> {
    let z = c.z_vectors();
    for i in 0..3 {
        let h = c.lines[i].class;
        let t = c.translation(h);
        let mz = [-z[i][0], -z[i][1], -z[i][2]];
        if t != z[i] && t != mz {
            return Err(violation(format!(
                "moving along colour {} adds {:?}, expected {:?}",
                i, t, z[i]
            )));
        }
    }
    Ok(())
}
