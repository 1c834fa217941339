//! The universal cover of a toroidal map and the region vectors of its
//! vertices with respect to a Schnyder wood.
//!
//! Lifts of monochromatic cycles are infinite lines in the cover. Lines of
//! one colour are pairwise disjoint and all parallel, so they are indexed by
//! a cycle and a period number. Region vectors are computed from signed face
//! counts of closed walks in the cover, which keeps every quantity exact.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::torus_map::{edge_of, LiftedDart, Offset, TorusMap};
use crate::wood::{all_mono_cycles, check_schnyder, next_color, prev_color, Color, MonoCycle, Wood, WoodType};

pub type Point3 = [i64; 3];

/// A lifted vertex: vertex `v` in copy `at`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lift {
    pub v: usize,
    pub at: Offset,
}

/// A line of the cover: lift of cycle `cycle` in period `period`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    pub cycle: usize,
    pub period: i64,
}

/// All lines of one colour.
#[derive(Clone, Debug)]
pub struct ColorLines {
    pub color: Color,
    /// Cycles ordered so that cycle `j + 1` is the first one to the right of
    /// cycle `j`.
    pub cycles: Vec<MonoCycle>,
    /// Common homotopy class of the cycles.
    pub class: Offset,
    /// Number of faces between cycle `j` and cycle `j + 1`.
    pub region_sizes: Vec<i64>,
    /// Translation of the reference lift of each cycle.
    pub shift: Vec<Offset>,
    /// Translation moving every line one period to the right.
    pub period_shift: Offset,
    /// Reference line, where the signed region count is zero.
    pub origin: Line,
    base_pos: Vec<Vec<Offset>>,
    on_cycle: Vec<Option<(usize, usize)>>,
}

fn psi(h: Offset, t: Offset) -> i64 {
    t.det(h)
}

impl ColorLines {
    pub fn build(g: &TorusMap, cycles: Vec<MonoCycle>, color: Color) -> Result<ColorLines> {
        if cycles.is_empty() {
            return Err(Error::InconsistentWood(format!("no cycle of colour {}", color)));
        }
        let class = cycles[0].class;
        if class.is_zero() {
            return Err(Error::InconsistentWood(format!("contractible {}-cycle", color)));
        }
        for c in &cycles {
            if c.class != class {
                return Err(Error::InconsistentWood(format!(
                    "{}-cycles with classes {} and {}",
                    color, class, c.class
                )));
            }
        }
        let mut on_cycle = vec![None; g.n()];
        let mut base_pos = Vec::new();
        let mut on_edge = vec![false; g.m()];
        let mut cycle_dart: HashMap<usize, (usize, usize)> = HashMap::new();
        for (j, c) in cycles.iter().enumerate() {
            let mut p = Offset::ZERO;
            let mut pos = Vec::new();
            for (k, (&v, &d)) in c.vertices.iter().zip(&c.darts).enumerate() {
                on_cycle[v] = Some((j, k));
                pos.push(p);
                p += g.offset(d);
                on_edge[edge_of(d)] = true;
                cycle_dart.insert(d, (j, k));
            }
            base_pos.push(pos);
        }
        // flood the strip to the right of each cycle
        let kk = cycles.len();
        let mut succ = vec![(0usize, Offset::ZERO); kk];
        let mut region_sizes = vec![0i64; kk];
        for j in 0..kk {
            let mut seen: HashMap<usize, Offset> = HashMap::new();
            let mut queue = VecDeque::new();
            for (k, &d) in cycles[j].darts.iter().enumerate() {
                let ld = LiftedDart { dart: d, at: base_pos[j][k] };
                let (fc, at) = g.lifted_face(g.lift_twin(ld));
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(fc) {
                    e.insert(at);
                    queue.push_back(fc);
                }
            }
            let mut found: Option<(usize, Offset)> = None;
            while let Some(fc) = queue.pop_front() {
                let at = seen[&fc];
                for &x in g.face(fc) {
                    let xat = at + g.corner_pos(x);
                    if on_edge[edge_of(x)] {
                        if let Some(&(j2, k2)) = cycle_dart.get(&x) {
                            let t = xat - base_pos[j2][k2];
                            let line = (j2, t);
                            match found {
                                None => found = Some(line),
                                Some((a, b)) => {
                                    if a != j2 || psi(class, t - b) != 0 {
                                        return Err(Error::Inconsistent(format!(
                                            "strip right of {}-cycle {} has two left borders",
                                            color, j
                                        )));
                                    }
                                }
                            }
                        }
                        continue;
                    }
                    let (nf, nat) = g.lifted_face(g.lift_twin(LiftedDart { dart: x, at: xat }));
                    if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(nf) {
                        e.insert(nat);
                        queue.push_back(nf);
                    }
                }
            }
            region_sizes[j] = seen.len() as i64;
            succ[j] = found.ok_or_else(|| {
                Error::Inconsistent(format!("strip right of {}-cycle {} has no border", color, j))
            })?;
        }
        // order cycles from cycle 0 going right
        let mut order = vec![0usize];
        let mut shift = vec![Offset::ZERO];
        let mut cur = 0usize;
        let mut acc = Offset::ZERO;
        for _ in 0..kk {
            let (nx, t) = succ[cur];
            acc += t;
            cur = nx;
            if order.len() < kk {
                order.push(nx);
                shift.push(acc);
            }
        }
        if cur != 0 || psi(class, acc) != 1 {
            return Err(Error::Inconsistent(format!(
                "{}-cycles do not close up after one period",
                color
            )));
        }
        let mut sorted_seen = order.clone();
        sorted_seen.sort();
        sorted_seen.dedup();
        if sorted_seen.len() != kk {
            return Err(Error::Inconsistent(format!("{}-cycles are not all consecutive", color)));
        }
        let cycles2: Vec<MonoCycle> = order.iter().map(|&j| cycles[j].clone()).collect();
        let sizes2: Vec<i64> = order.iter().map(|&j| region_sizes[j]).collect();
        let pos2: Vec<Vec<Offset>> = order.iter().map(|&j| base_pos[j].clone()).collect();
        let mut inv = vec![0; kk];
        for (new, &old) in order.iter().enumerate() {
            inv[old] = new;
        }
        let on2 = on_cycle.iter().map(|o| o.map(|(j, k)| (inv[j], k))).collect();
        Ok(ColorLines {
            color,
            cycles: cycles2,
            class,
            region_sizes: sizes2,
            shift,
            period_shift: acc,
            origin: Line { cycle: 0, period: 0 },
            base_pos: pos2,
            on_cycle: on2,
        })
    }

    /// Total number of faces in one period.
    pub fn faces_per_period(&self) -> i64 {
        self.region_sizes.iter().sum()
    }

    /// Index of a cycle once cycles are reordered; `None` if `v` is on no
    /// cycle of this colour.
    pub fn cycle_of(&self, v: usize) -> Option<usize> {
        self.on_cycle[v].map(|(j, _)| j)
    }

    /// Line through a lifted vertex and the position of the vertex on it.
    pub fn locate(&self, x: Lift) -> Option<(Line, i64)> {
        let (j, k) = self.on_cycle[x.v]?;
        let t = x.at - self.base_pos[j][k] - self.shift[j];
        let p = psi(self.class, t);
        let r = t - p * self.period_shift;
        let h = self.class;
        let lap = if h.x != 0 { r.x / h.x } else { r.y / h.y };
        debug_assert_eq!(lap * h, r);
        let len = self.cycles[j].vertices.len() as i64;
        Some((Line { cycle: j, period: p }, lap * len + k as i64))
    }

    pub fn vertex_at(&self, line: Line, pos: i64) -> Lift {
        let c = &self.cycles[line.cycle];
        let len = c.vertices.len() as i64;
        let k = pos.rem_euclid(len) as usize;
        let lap = pos.div_euclid(len);
        Lift {
            v: c.vertices[k],
            at: self.base_pos[line.cycle][k]
                + self.shift[line.cycle]
                + line.period * self.period_shift
                + lap * self.class,
        }
    }

    /// Lifted darts of `line` from position `a` up to position `b`.
    pub fn darts_between(&self, line: Line, a: i64, b: i64) -> Vec<LiftedDart> {
        let c = &self.cycles[line.cycle];
        let len = c.vertices.len() as i64;
        (a..b)
            .map(|p| {
                let x = self.vertex_at(line, p);
                LiftedDart { dart: c.darts[p.rem_euclid(len) as usize], at: x.at }
            })
            .collect()
    }

    /// Signed number of faces between the origin line and `line`, positive
    /// when `line` is to the right of the origin.
    pub fn signed_region(&self, line: Line) -> i64 {
        let prefix = |l: Line| -> i64 {
            l.period * self.faces_per_period()
                + self.region_sizes[..l.cycle].iter().sum::<i64>()
        };
        prefix(line) - prefix(self.origin)
    }

    pub fn contains(&self, x: Lift, line: Line) -> bool {
        matches!(self.locate(x), Some((l, _)) if l == line)
    }
}

/// Everything needed to place the cover on an orthogonal surface.
#[derive(Clone, Debug)]
pub struct Coordinates {
    /// Scale factor multiplying the region counts.
    pub scale: i64,
    /// Region vector of every vertex in copy (0, 0).
    pub points: Vec<Point3>,
    /// Region vector change when moving one copy up.
    pub s: Point3,
    /// Region vector change when moving one copy right.
    pub s_prime: Point3,
    /// Crossings of the cycles of each colour with the vertical side,
    /// counted right to left.
    pub c: [i64; 3],
    /// Crossings with the horizontal side, counted bottom to top.
    pub c_prime: [i64; 3],
    /// Crossing number of the cycles of the two other colours.
    pub gamma: [i64; 3],
    pub faces: i64,
    pub wood_type: WoodType,
    pub lines: [ColorLines; 3],
}

impl Coordinates {
    /// Region vector change between copy `(0,0)` and copy `at`.
    pub fn translation(&self, at: Offset) -> Point3 {
        let mut t = [0; 3];
        for i in 0..3 {
            t[i] = at.y * self.s[i] + at.x * self.s_prime[i];
        }
        t
    }

    pub fn point(&self, x: Lift) -> Point3 {
        let t = self.translation(x.at);
        let p = self.points[x.v];
        [p[0] + t[0], p[1] + t[1], p[2] + t[2]]
    }

    /// The vectors `Z_0, Z_1, Z_2`: moving a vertex along its own line of
    /// colour `i` to the next copy adds `Z_i`.
    pub fn z_vectors(&self) -> [Point3; 3] {
        let nf = self.scale * self.faces;
        let g = self.gamma;
        let mut z = [[0; 3]; 3];
        for i in 0..3 {
            let (a, b) = ((i + 1) % 3, (i + 2) % 3);
            z[i][i] = (g[a] + g[b]) * nf;
            z[i][a] = -g[a] * nf;
            z[i][b] = -g[b] * nf;
        }
        z
    }

    /// A reduced basis of the lattice generated by `s` and `s_prime`.
    pub fn reduced_basis(&self) -> (Point3, Point3) {
        reduce(self.s, self.s_prime)
    }
}

fn dot(a: Point3, b: Point3) -> i128 {
    (0..3).map(|i| a[i] as i128 * b[i] as i128).sum()
}

/// Lagrange reduction of a rank-two integer lattice in three dimensions.
pub fn reduce(a: Point3, b: Point3) -> (Point3, Point3) {
    let (mut a, mut b) = (a, b);
    if dot(a, a) > dot(b, b) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let aa = dot(a, a);
        if aa == 0 {
            return (a, b);
        }
        let ab = dot(a, b);
        // nearest integer to ab / aa
        let q = (2 * ab + aa).div_euclid(2 * aa) as i64;
        for i in 0..3 {
            b[i] -= q * a[i];
        }
        if dot(b, b) >= dot(a, a) {
            return (a, b);
        }
        std::mem::swap(&mut a, &mut b);
    }
}

/// Follow darts of colour `i` from `x` until a cycle of colour `i` is met.
fn path_to_line(g: &TorusMap, w: &Wood, lines: &ColorLines, x: Lift) -> Result<(Vec<LiftedDart>, Lift)> {
    let mut cur = x;
    let mut path = Vec::new();
    while lines.cycle_of(cur.v).is_none() {
        if path.len() > g.n() {
            return Err(Error::Inconsistent(format!("colour {} path from {} never closes", lines.color, x.v)));
        }
        let d = w
            .out_dart(g, cur.v, lines.color)
            .ok_or_else(|| Error::InconsistentWood(format!("vertex {} lacks colour {}", cur.v, lines.color)))?;
        path.push(LiftedDart { dart: d, at: cur.at });
        cur = Lift { v: g.target(d), at: cur.at + g.offset(d) };
    }
    Ok((path, cur))
}

fn reversed(g: &TorusMap, walk: &[LiftedDart]) -> Vec<LiftedDart> {
    walk.iter().rev().map(|&ld| g.lift_twin(ld)).collect()
}

/// The lines of colours `i-1` and `i+1` through a vertex, and a vertex where
/// they meet. The region counts do not depend on which meeting vertex is
/// taken, since two such lines meet along one path.
fn meeting_point(
    la: &ColorLines,
    line_a: Line,
    lb: &ColorLines,
    line_b: Line,
    from: i64,
) -> Result<i64> {
    let len = lb.cycles[line_b.cycle].vertices.len() as i64;
    let cap = 256 * len * (la.cycles.len() as i64 + 2) * (lb.cycles.len() as i64 + 2);
    for step in 0..cap {
        for p in [from + step, from - step - 1] {
            if la.contains(lb.vertex_at(line_b, p), line_a) {
                return Ok(p);
            }
        }
    }
    Err(Error::WindowTooSmall(format!(
        "lines of colours {} and {} do not meet within {} steps",
        la.color, lb.color, cap
    )))
}

/// Region vector coordinate `i` of a lifted vertex, without the scale term,
/// plus the two lines it depends on.
fn raw_coordinate(
    g: &TorusMap,
    w: &Wood,
    lines: &[ColorLines; 3],
    x: Lift,
    i: Color,
) -> Result<(i64, Line, Line)> {
    let la = &lines[prev_color(i) as usize];
    let lb = &lines[next_color(i) as usize];
    let (pa_path, a) = path_to_line(g, w, la, x)?;
    let (pb_path, b) = path_to_line(g, w, lb, x)?;
    let (line_a, pa) = la.locate(a).unwrap();
    let (line_b, pb) = lb.locate(b).unwrap();
    let pz2 = meeting_point(la, line_a, lb, line_b, pb)?;
    let z = lb.vertex_at(line_b, pz2);
    let (_, pz1) = la.locate(z).unwrap();
    let a_end = pa.max(pz1);
    let b_end = pb.max(pz2);
    let mut walk = Vec::new();
    let mut pv_a = pa_path.clone();
    pv_a.extend(la.darts_between(line_a, pa, a_end));
    walk.extend(reversed(g, &pv_a));
    walk.extend(pb_path);
    walk.extend(lb.darts_between(line_b, pb, b_end));
    walk.extend(reversed(g, &lb.darts_between(line_b, pz2, b_end)));
    walk.extend(la.darts_between(line_a, pz1, a_end));
    let d = if walk.is_empty() { 0 } else { g.enclosed_face_sum(&walk)? };
    Ok((d, line_a, line_b))
}

/// Region vector of a lifted vertex with scale factor `scale`.
pub fn region_vector(
    g: &TorusMap,
    w: &Wood,
    lines: &[ColorLines; 3],
    x: Lift,
    scale: i64,
) -> Result<Point3> {
    let mut out = [0; 3];
    for i in 0..3u8 {
        let (d, line_a, line_b) = raw_coordinate(g, w, lines, x, i)?;
        let la = &lines[prev_color(i) as usize];
        let lb = &lines[next_color(i) as usize];
        out[i as usize] = d + scale * (lb.signed_region(line_b) - la.signed_region(line_a));
    }
    Ok(out)
}

/// Positions of the meeting vertex `z_i` on the lines of colours `i-1` and
/// `i+1` through `x`.
fn meeting(g: &TorusMap, w: &Wood, lines: &[ColorLines; 3], x: Lift, i: Color) -> Result<((Line, i64), (Line, i64))> {
    let la = &lines[prev_color(i) as usize];
    let lb = &lines[next_color(i) as usize];
    let (_, a) = path_to_line(g, w, la, x)?;
    let (_, b) = path_to_line(g, w, lb, x)?;
    let (line_a, _) = la.locate(a).unwrap();
    let (line_b, pb) = lb.locate(b).unwrap();
    let pz2 = meeting_point(la, line_a, lb, line_b, pb)?;
    let (_, pz1) = la.locate(lb.vertex_at(line_b, pz2)).unwrap();
    Ok(((line_a, pz1), (line_b, pz2)))
}

fn along(g: &TorusMap, l: &ColorLines, line: Line, from: i64, to: i64) -> Vec<LiftedDart> {
    if from <= to {
        l.darts_between(line, from, to)
    } else {
        reversed(g, &l.darts_between(line, to, from))
    }
}

/// Closed walk around the triangle cut out by the three lines through `x`.
pub fn triangle_walk(g: &TorusMap, w: &Wood, lines: &[ColorLines; 3], x: Lift) -> Result<Vec<LiftedDart>> {
    // z_i sits on the lines of colours i-1 (first) and i+1 (second)
    let z: Vec<_> = (0..3u8).map(|i| meeting(g, w, lines, x, i)).collect::<Result<_>>()?;
    let mut walk = Vec::new();
    // colour 0 from z_2 to z_1, colour 2 from z_1 to z_0, colour 1 from z_0 to z_2
    let (l0, p0) = z[2].1;
    walk.extend(along(g, &lines[0], l0, p0, z[1].0 .1));
    let (l2, p2) = z[1].1;
    walk.extend(along(g, &lines[2], l2, p2, z[0].0 .1));
    let (l1, p1) = z[0].1;
    walk.extend(along(g, &lines[1], l1, p1, z[2].0 .1));
    Ok(walk)
}

/// Number of faces inside the triangle of the three lines through `x`,
/// found by flooding the cover.
pub fn triangle_size(g: &TorusMap, w: &Wood, lines: &[ColorLines; 3], x: Lift) -> Result<i64> {
    let walk = triangle_walk(g, w, lines, x)?;
    if walk.is_empty() {
        return Ok(0);
    }
    Ok(g.enclosed_components(&walk)?.iter().map(|r| r.size as i64 * r.winding.abs()).sum())
}

/// The part of the region vector that does not depend on the scale: the
/// signed face counts between the vertex and its meeting points.
pub fn local_counts(g: &TorusMap, w: &Wood, lines: &[ColorLines; 3], x: Lift) -> Result<Point3> {
    let mut out = [0; 3];
    for i in 0..3u8 {
        out[i as usize] = raw_coordinate(g, w, lines, x, i)?.0;
    }
    Ok(out)
}

/// Number of maximal common paths of two cycles.
pub fn crossing_components(a: &MonoCycle, b: &MonoCycle) -> usize {
    let in_b: std::collections::HashSet<usize> = b.vertices.iter().copied().collect();
    let b_edges: std::collections::HashSet<usize> = b.darts.iter().map(|&d| edge_of(d)).collect();
    let k = a.vertices.len();
    let shared: Vec<bool> = a.vertices.iter().map(|v| in_b.contains(v)).collect();
    if shared.iter().all(|&s| s) && a.darts.iter().all(|d| b_edges.contains(&edge_of(*d))) {
        return 0;
    }
    // a run continues from position j to j+1 when the dart between them is
    // also an edge of b
    let mut count = 0;
    for j in 0..k {
        if !shared[j] {
            continue;
        }
        let prev = (j + k - 1) % k;
        let joined = shared[prev] && b_edges.contains(&edge_of(a.darts[prev]));
        if !joined {
            count += 1;
        }
    }
    count
}

/// Build the line structures of a wood, with the default origin lines.
pub fn color_lines(g: &TorusMap, w: &Wood) -> Result<[ColorLines; 3]> {
    let cs = all_mono_cycles(g, w)?;
    let [c0, c1, c2] = cs;
    Ok([
        ColorLines::build(g, c0, 0)?,
        ColorLines::build(g, c1, 1)?,
        ColorLines::build(g, c2, 2)?,
    ])
}

/// Region vectors of all vertices of copy (0, 0), with the lattice data.
pub fn coordinates(g: &TorusMap, w: &Wood, scale: i64) -> Result<Coordinates> {
    let lines = color_lines(g, w)?;
    coordinates_with_lines(g, w, scale, lines)
}

/// Like [`coordinates`] with caller-chosen origin lines.
pub fn coordinates_with_lines(
    g: &TorusMap,
    w: &Wood,
    scale: i64,
    lines: [ColorLines; 3],
) -> Result<Coordinates> {
    let wood_type = check_schnyder(g, w)?;
    let faces = g.f() as i64;
    for l in &lines {
        if l.faces_per_period() != faces {
            return Err(Error::Inconsistent(format!(
                "strips of colour {} hold {} faces, map has {}",
                l.color,
                l.faces_per_period(),
                faces
            )));
        }
    }
    let h: [Offset; 3] = [lines[0].class, lines[1].class, lines[2].class];
    let c = [-h[0].x, -h[1].x, -h[2].x];
    let c_prime = [h[0].y, h[1].y, h[2].y];
    let mut s = [0; 3];
    let mut s_prime = [0; 3];
    let mut gamma = [0; 3];
    for i in 0..3 {
        let (a, b) = ((i + 1) % 3, (i + 2) % 3);
        s[i] = scale * (c[a] - c[b]) * faces;
        s_prime[i] = scale * (c_prime[a] - c_prime[b]) * faces;
        gamma[i] = h[b].det(h[a]).abs();
    }
    let mut points = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        points.push(region_vector(g, w, &lines, Lift { v, at: Offset::ZERO }, scale)?);
    }
    Ok(Coordinates { scale, points, s, s_prime, c, c_prime, gamma, faces, wood_type, lines })
}

/// Crossing numbers computed directly from the cycles.
pub fn gamma_by_crossings(lines: &[ColorLines; 3]) -> [i64; 3] {
    let mut out = [0; 3];
    for i in 0..3 {
        let a = &lines[(i + 2) % 3].cycles[0];
        let b = &lines[(i + 1) % 3].cycles[0];
        out[i] = crossing_components(a, b) as i64;
    }
    out
}

/// The scale giving a straight-line drawing: number of vertices plus
/// `(5 min gamma + max gamma) f`.
pub fn straight_line_scale(g: &TorusMap, gamma: [i64; 3]) -> i64 {
    let mn = *gamma.iter().min().unwrap();
    let mx = *gamma.iter().max().unwrap();
    (5 * mn + mx) * g.f() as i64 + g.n() as i64
}

/// A finite window of the cover: all lifts of vertices whose copy lies in
/// `[-radius, radius]^2`.
#[derive(Clone, Debug)]
pub struct CoverWindow {
    pub radius: i64,
    pub vertices: Vec<Lift>,
    /// Lifted edges, each listed once from its `+` dart.
    pub edges: Vec<(Lift, Lift, usize)>,
}

impl CoverWindow {
    pub fn new(g: &TorusMap, radius: i64) -> Result<CoverWindow> {
        if radius < 0 {
            return Err(Error::WindowTooSmall(format!("radius {}", radius)));
        }
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for px in -radius..=radius {
            for py in -radius..=radius {
                let at = Offset::new(px, py);
                for v in 0..g.n() {
                    vertices.push(Lift { v, at });
                }
                for e in 0..g.m() {
                    let d = 2 * e;
                    let to = at + g.offset(d);
                    if to.x.abs() <= radius && to.y.abs() <= radius {
                        edges.push((Lift { v: g.origin(d), at }, Lift { v: g.target(d), at: to }, e));
                    }
                }
            }
        }
        Ok(CoverWindow { radius, vertices, edges })
    }
}

/// Lift of a face: its corners in counterclockwise order, with the first
/// corner in copy `at`.
pub fn lifted_face_corners(g: &TorusMap, face: usize, at: Offset) -> Vec<Lift> {
    g.face(face).iter().map(|&d| Lift { v: g.origin(d), at: at + g.corner_pos(d) }).collect()
}

/// Follow one dart in the cover.
pub fn step(g: &TorusMap, x: Lift, d: usize) -> Lift {
    debug_assert_eq!(g.origin(d), x.v);
    Lift { v: g.target(d), at: x.at + g.offset(d) }
}
