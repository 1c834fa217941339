//! Maps on the flat torus stored as a dart table.
//!
//! Every edge `e` owns two darts, `2e` (the `+` side, leaving the first
//! endpoint) and `2e + 1` (the `-` side). A dart carries the vertex it leaves
//! from and an integer offset telling which copy of the fundamental domain its
//! head lies in, relative to the copy of its tail. Twins have opposite
//! offsets. The rotation at a vertex lists its darts counterclockwise.
//!
//! Faces are walked with the face on the left, so a face walk is
//! counterclockwise around the face. The face to the left of dart `d` is
//! `face_of(d)`, and the successor of `d` on that walk is
//! `prev_ccw(twin(d))`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub type Dart = usize;

/// Copy index in the periodic tiling, or a homotopy class of closed walks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Offset {
    pub x: i64,
    pub y: i64,
}

impl Offset {
    pub const ZERO: Offset = Offset { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Offset { x, y }
    }

    /// `self.x * other.y - self.y * other.x`
    pub fn det(self, other: Offset) -> i64 {
        self.x * other.y - self.y * other.x
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }
}

impl Add for Offset {
    type Output = Offset;
    fn add(self, o: Offset) -> Offset {
        Offset::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Offset {
    fn add_assign(&mut self, o: Offset) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Offset {
    type Output = Offset;
    fn sub(self, o: Offset) -> Offset {
        Offset::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Offset {
    type Output = Offset;
    fn neg(self) -> Offset {
        Offset::new(-self.x, -self.y)
    }
}

impl Mul<Offset> for i64 {
    type Output = Offset;
    fn mul(self, o: Offset) -> Offset {
        Offset::new(self * o.x, self * o.y)
    }
}

impl fmt::Display for Offset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[inline]
pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn edge_of(d: Dart) -> usize {
    d >> 1
}

/// A dart of the universal cover: dart `dart` leaving the copy `at` of its tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LiftedDart {
    pub dart: Dart,
    pub at: Offset,
}

/// Edge list plus rotation system, before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawMap {
    pub n: usize,
    pub edges: Vec<RawEdge>,
    pub rot: Vec<Vec<Dart>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RawEdge {
    pub u: usize,
    pub v: usize,
    pub offset: Offset,
}

/// A validated map on the torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusMap {
    n: usize,
    origin: Vec<usize>,
    offset: Vec<Offset>,
    next: Vec<Dart>,
    prev: Vec<Dart>,
    rot: Vec<Vec<Dart>>,
    face_of: Vec<usize>,
    face_index: Vec<usize>,
    faces: Vec<Vec<Dart>>,
    corner_pos: Vec<Offset>,
}

/// The two maps with three or fewer edges from which every other
/// essentially 3-connected non-basic map can be grown.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseCase {
    ThreeLoops,
    Brick,
}

/// Result of contracting an edge.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub map: TorusMap,
    /// The contracted edge of the original map.
    pub edge: usize,
    /// Tail and head of the contracted edge in the original map.
    pub u: usize,
    pub v: usize,
    /// Index in the new map of each original vertex.
    pub vertex_map: Vec<usize>,
    /// Index in the new map of each original edge, `None` for removed edges.
    pub edge_map: Vec<Option<usize>>,
    /// Edges removed as one side of a facial digon, with the edge kept in
    /// their place.
    pub merged: Vec<(usize, usize)>,
    /// Original edges whose colours may change when the contraction is undone.
    pub affected: Vec<usize>,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl TorusMap {
    /// Validate a raw map and build the dart tables.
    pub fn from_raw(raw: &RawMap) -> Result<TorusMap> {
        let bad = |s: String| Err(Error::InvalidStructure(s));
        let n = raw.n;
        let m = raw.edges.len();
        if n == 0 {
            return bad("map has no vertex".into());
        }
        if m == 0 {
            return bad("map has no edge".into());
        }
        if raw.rot.len() != n {
            return bad(format!("{} rotations for {} vertices", raw.rot.len(), n));
        }
        let mut origin = vec![0; 2 * m];
        let mut offset = vec![Offset::ZERO; 2 * m];
        for (e, ed) in raw.edges.iter().enumerate() {
            if ed.u >= n || ed.v >= n {
                return bad(format!("edge {} has an endpoint out of range", e));
            }
            origin[2 * e] = ed.u;
            origin[2 * e + 1] = ed.v;
            offset[2 * e] = ed.offset;
            offset[2 * e + 1] = -ed.offset;
        }
        let mut seen = vec![false; 2 * m];
        let mut next = vec![usize::MAX; 2 * m];
        let mut prev = vec![usize::MAX; 2 * m];
        for (v, r) in raw.rot.iter().enumerate() {
            if r.is_empty() {
                return bad(format!("vertex {} has no incident dart", v));
            }
            for (k, &d) in r.iter().enumerate() {
                if d >= 2 * m {
                    return bad(format!("rotation of {} names unknown dart {}", v, d));
                }
                if seen[d] {
                    return bad(format!("dart {} appears twice in the rotations", d));
                }
                seen[d] = true;
                if origin[d] != v {
                    return bad(format!("dart {} listed at {} but leaves {}", d, v, origin[d]));
                }
                let nx = r[(k + 1) % r.len()];
                next[d] = nx;
                prev[nx] = d;
            }
        }
        if let Some(d) = seen.iter().position(|s| !s) {
            return bad(format!("dart {} missing from the rotation of {}", d, origin[d]));
        }

        // connectivity
        let mut comp = vec![false; n];
        comp[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &d in &raw.rot[x] {
                let y = origin[twin(d)];
                if !comp[y] {
                    comp[y] = true;
                    stack.push(y);
                }
            }
        }
        if let Some(x) = comp.iter().position(|c| !c) {
            return bad(format!("vertex {} is not connected to vertex 0", x));
        }

        // faces, walked with the face on the left
        let mut face_of = vec![usize::MAX; 2 * m];
        let mut face_index = vec![0; 2 * m];
        let mut corner_pos = vec![Offset::ZERO; 2 * m];
        let mut faces: Vec<Vec<Dart>> = Vec::new();
        for start in 0..2 * m {
            if face_of[start] != usize::MAX {
                continue;
            }
            let f = faces.len();
            let mut walk = Vec::new();
            let mut pos = Offset::ZERO;
            let mut d = start;
            loop {
                face_of[d] = f;
                face_index[d] = walk.len();
                corner_pos[d] = pos;
                walk.push(d);
                pos += offset[d];
                d = prev[twin(d)];
                if d == start {
                    break;
                }
            }
            if !pos.is_zero() {
                return bad(format!("face {} is not contractible: walk offset {}", f, pos));
            }
            faces.push(walk);
        }
        let f = faces.len();
        if n as i64 - m as i64 + f as i64 != 0 {
            return bad(format!(
                "Euler relation fails: n={} m={} f={} (the surface is not a torus)",
                n, m, f
            ));
        }

        // the offsets must identify the cover with the plane
        let mut pos = vec![None; n];
        pos[0] = Some(Offset::ZERO);
        let mut queue = VecDeque::from([0usize]);
        let mut tree = vec![false; m];
        while let Some(x) = queue.pop_front() {
            for &d in &raw.rot[x] {
                let y = origin[twin(d)];
                if pos[y].is_none() {
                    pos[y] = Some(pos[x].unwrap() + offset[d]);
                    tree[edge_of(d)] = true;
                    queue.push_back(y);
                }
            }
        }
        let classes: Vec<Offset> = (0..m)
            .filter(|&e| !tree[e])
            .map(|e| pos[origin[2 * e]].unwrap() + offset[2 * e] - pos[origin[2 * e + 1]].unwrap())
            .filter(|c| !c.is_zero())
            .collect();
        let mut g = 0;
        'outer: for i in 0..classes.len() {
            for j in i + 1..classes.len() {
                g = gcd(g, classes[i].det(classes[j]));
                if g == 1 {
                    break 'outer;
                }
            }
        }
        if g != 1 {
            return bad(format!(
                "edge offsets generate a sublattice of index {} instead of the whole grid",
                g
            ));
        }

        Ok(TorusMap {
            n,
            origin,
            offset,
            next,
            prev,
            rot: raw.rot.clone(),
            face_of,
            face_index,
            faces,
            corner_pos,
        })
    }

    pub fn to_raw(&self) -> RawMap {
        RawMap {
            n: self.n,
            edges: (0..self.m())
                .map(|e| RawEdge {
                    u: self.origin[2 * e],
                    v: self.origin[2 * e + 1],
                    offset: self.offset[2 * e],
                })
                .collect(),
            rot: self.rot.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.origin.len() / 2
    }

    pub fn f(&self) -> usize {
        self.faces.len()
    }

    pub fn darts(&self) -> std::ops::Range<Dart> {
        0..self.origin.len()
    }

    pub fn origin(&self, d: Dart) -> usize {
        self.origin[d]
    }

    pub fn target(&self, d: Dart) -> usize {
        self.origin[twin(d)]
    }

    pub fn offset(&self, d: Dart) -> Offset {
        self.offset[d]
    }

    pub fn next_ccw(&self, d: Dart) -> Dart {
        self.next[d]
    }

    pub fn prev_ccw(&self, d: Dart) -> Dart {
        self.prev[d]
    }

    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rot[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rot[v].len()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.origin[2 * e] == self.origin[2 * e + 1]
    }

    /// Face to the left of `d`.
    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d]
    }

    /// Position of `d` on the walk of its face.
    pub fn face_index(&self, d: Dart) -> usize {
        self.face_index[d]
    }

    /// Successor of `d` on the walk of the face to its left.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.prev[twin(d)]
    }

    pub fn face(&self, f: usize) -> &[Dart] {
        &self.faces[f]
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    /// Copy of the tail of `d` relative to the tail of the first dart of its
    /// face, when the face is lifted as one polygon.
    pub fn corner_pos(&self, d: Dart) -> Offset {
        self.corner_pos[d]
    }

    /// Lifted face containing a lifted dart, named by its face index and the
    /// copy of the tail of its first dart.
    pub fn lifted_face(&self, ld: LiftedDart) -> (usize, Offset) {
        (self.face_of[ld.dart], ld.at - self.corner_pos[ld.dart])
    }

    pub fn lift_twin(&self, ld: LiftedDart) -> LiftedDart {
        LiftedDart { dart: twin(ld.dart), at: ld.at + self.offset[ld.dart] }
    }

    /// Homotopy class of a closed walk given as a dart sequence.
    pub fn walk_class(&self, walk: &[Dart]) -> Result<Offset> {
        if walk.is_empty() {
            return Err(Error::NotACycle("empty walk".into()));
        }
        let mut s = Offset::ZERO;
        for (k, &d) in walk.iter().enumerate() {
            if d >= self.origin.len() {
                return Err(Error::NotACycle(format!("unknown dart {}", d)));
            }
            let nx = walk[(k + 1) % walk.len()];
            if self.target(d) != self.origin(nx) {
                return Err(Error::NotACycle(format!(
                    "dart {} ends at {} but dart {} leaves {}",
                    d,
                    self.target(d),
                    nx,
                    self.origin(nx)
                )));
            }
            s += self.offset[d];
        }
        Ok(s)
    }

    pub fn is_triangulation(&self) -> bool {
        self.faces.iter().all(|f| f.len() == 3)
    }

    /// Reports a contractible loop or a pair of homotopic parallel edges.
    pub fn toroidal_graph_violation(&self) -> Option<String> {
        let mut seen: HashMap<(usize, usize, Offset), usize> = HashMap::new();
        for e in 0..self.m() {
            let (u, v, o) = (self.origin[2 * e], self.origin[2 * e + 1], self.offset[2 * e]);
            if u == v && o.is_zero() {
                return Some(format!("edge {} is a contractible loop", e));
            }
            let key = if (u, o) <= (v, -o) { (u, v, o) } else { (v, u, -o) };
            if let Some(&e2) = seen.get(&key) {
                return Some(format!("edges {} and {} are homotopic", e2, e));
            }
            seen.insert(key, e);
        }
        None
    }

    /// The dual map. Dual dart `d` crosses primal dart `d` from its left
    /// face to its right face; dual vertex `F` is primal face `F`.
    pub fn dual(&self) -> TorusMap {
        let m = self.m();
        let edges = (0..m)
            .map(|e| {
                let d = 2 * e;
                RawEdge {
                    u: self.face_of[d],
                    v: self.face_of[d + 1],
                    offset: self.corner_pos[d] + self.offset[d] - self.corner_pos[d + 1],
                }
            })
            .collect();
        let raw = RawMap { n: self.f(), edges, rot: self.faces.clone() };
        TorusMap::from_raw(&raw).expect("dual of a valid map is valid")
    }

    /// The angle map: primal vertices `0..n`, face vertices `n..n+f`, and an
    /// edge for every corner. Edge `a` joins the tail of `a` to the face on
    /// the left of `a`.
    pub fn angle_map(&self) -> TorusMap {
        let n = self.n;
        let edges = self
            .darts()
            .map(|a| RawEdge {
                u: self.origin[a],
                v: n + self.face_of[a],
                offset: -self.corner_pos[a],
            })
            .collect();
        let mut rot: Vec<Vec<Dart>> =
            self.rot.iter().map(|r| r.iter().map(|&a| 2 * a).collect()).collect();
        for f in &self.faces {
            rot.push(f.iter().map(|&a| 2 * a + 1).collect());
        }
        TorusMap::from_raw(&RawMap { n: n + self.f(), edges, rot })
            .expect("angle map of a valid map is valid")
    }

    /// Signed number of faces enclosed by a closed walk in the universal
    /// cover: every lifted face counts with its winding number.
    pub fn enclosed_face_sum(&self, walk: &[LiftedDart]) -> Result<i64> {
        Ok(self.enclosed_components(walk)?.iter().map(|c| c.size as i64 * c.winding).sum())
    }

    /// Finite regions cut out by a closed lifted walk, with their winding
    /// numbers and sizes.
    pub fn enclosed_components(&self, walk: &[LiftedDart]) -> Result<Vec<Region>> {
        for (k, ld) in walk.iter().enumerate() {
            let nx = walk[(k + 1) % walk.len()];
            if self.target(ld.dart) != self.origin(nx.dart) || ld.at + self.offset[ld.dart] != nx.at {
                return Err(Error::NotACycle(format!("lifted walk breaks after step {}", k)));
            }
        }
        let mut net: HashMap<(usize, Offset), i64> = HashMap::new();
        for ld in walk {
            let e = edge_of(ld.dart);
            if ld.dart % 2 == 0 {
                *net.entry((e, ld.at)).or_insert(0) += 1;
            } else {
                *net.entry((e, ld.at + self.offset[ld.dart])).or_insert(0) -= 1;
            }
        }
        net.retain(|_, k| *k != 0);
        if net.is_empty() {
            return Ok(Vec::new());
        }
        let mut keys: Vec<(usize, Offset)> = net.keys().copied().collect();
        keys.sort();
        type LFace = (usize, Offset);
        let side = |e: usize, c: Offset| -> (LFace, LFace) {
            let l = LiftedDart { dart: 2 * e, at: c };
            (self.lifted_face(l), self.lifted_face(self.lift_twin(l)))
        };
        let seeds: Vec<LFace> = keys.iter().flat_map(|&(e, c)| {
            let (a, b) = side(e, c);
            [a, b]
        }).collect();

        let mut cap = 64 + 8 * self.f();
        loop {
            let mut comp_of: HashMap<LFace, usize> = HashMap::new();
            let mut alias: Vec<usize> = Vec::new();
            let mut finished: Vec<bool> = Vec::new();
            let mut members: Vec<Vec<LFace>> = Vec::new();
            for &s in &seeds {
                if comp_of.contains_key(&s) {
                    continue;
                }
                let id = members.len();
                alias.push(id);
                members.push(vec![s]);
                comp_of.insert(s, id);
                let mut queue = VecDeque::from([s]);
                let mut done = true;
                while let Some((fc, c)) = queue.pop_front() {
                    if members[id].len() > cap {
                        done = false;
                        break;
                    }
                    for &d in &self.faces[fc] {
                        let at = c + self.corner_pos[d];
                        let key = if d % 2 == 0 {
                            (edge_of(d), at)
                        } else {
                            (edge_of(d), at + self.offset[d])
                        };
                        if net.contains_key(&key) {
                            continue;
                        }
                        let nb = self.lifted_face(self.lift_twin(LiftedDart { dart: d, at }));
                        match comp_of.get(&nb) {
                            None => {
                                comp_of.insert(nb, id);
                                members[id].push(nb);
                                queue.push_back(nb);
                            }
                            Some(&other) if other != id => {
                                // only an unfinished search can be met again
                                let mut r = other;
                                while alias[r] != r {
                                    r = alias[r];
                                }
                                alias[id] = r;
                            }
                            _ => {}
                        }
                    }
                }
                finished.push(done);
            }
            let root = |mut r: usize| {
                while alias[r] != r {
                    r = alias[r];
                }
                r
            };
            let mut open: Vec<usize> =
                (0..members.len()).filter(|&i| !finished[i]).map(root).collect();
            open.sort();
            open.dedup();
            if open.is_empty() {
                return Err(Error::Inconsistent("closed walk encloses the whole cover".into()));
            }
            if open.len() > 1 {
                cap *= 4;
                continue;
            }
            let infinite = open[0];
            let comp = |fc: &LFace| root(comp_of[fc]);
            let mut wind: HashMap<usize, i64> = HashMap::new();
            wind.insert(infinite, 0);
            let mut changed = true;
            while changed {
                changed = false;
                for &(e, c) in &keys {
                    let k = net[&(e, c)];
                    let (l, r) = side(e, c);
                    let (cl, cr) = (comp(&l), comp(&r));
                    match (wind.get(&cl).copied(), wind.get(&cr).copied()) {
                        (Some(a), Some(b)) => {
                            if a - b != k {
                                return Err(Error::Inconsistent(
                                    "winding numbers do not agree across the walk".into(),
                                ));
                            }
                        }
                        (Some(a), None) => {
                            wind.insert(cr, a - k);
                            changed = true;
                        }
                        (None, Some(b)) => {
                            wind.insert(cl, b + k);
                            changed = true;
                        }
                        (None, None) => {}
                    }
                }
            }
            let mut out = Vec::new();
            for i in 0..members.len() {
                if root(i) != i || i == infinite {
                    continue;
                }
                let size: usize =
                    (0..members.len()).filter(|&j| root(j) == i).map(|j| members[j].len()).sum();
                let w = *wind.get(&i).ok_or_else(|| {
                    Error::Inconsistent("region without winding number".into())
                })?;
                out.push(Region { size, winding: w, seed: members[i][0] });
            }
            return Ok(out);
        }
    }

    /// First reason found why the map is not essentially 3-connected.
    pub fn essential_3_connectivity_violation(&self) -> Option<String> {
        let a = self.angle_map();
        let n = self.n;
        for x in 0..n {
            let r = a.rotation(x);
            for i in 0..r.len() {
                for j in i + 1..r.len() {
                    if a.target(r[i]) == a.target(r[j]) && a.offset(r[i]) == a.offset(r[j]) {
                        return Some(format!(
                            "vertex {} meets face {} twice in the cover",
                            x,
                            a.target(r[i]) - n
                        ));
                    }
                }
            }
        }
        for x1 in 0..n {
            for &d1 in a.rotation(x1) {
                let f1 = a.target(d1);
                let o1 = a.offset(d1);
                for &d2 in a.rotation(f1) {
                    let x2 = a.target(d2);
                    let o2 = o1 + a.offset(d2);
                    if x2 == x1 && o2.is_zero() {
                        continue;
                    }
                    for &d3 in a.rotation(x2) {
                        let f2 = a.target(d3);
                        let o3 = o2 + a.offset(d3);
                        if f2 == f1 && (a.offset(d2) + a.offset(d3)).is_zero() {
                            continue;
                        }
                        for &d4 in a.rotation(f2) {
                            if a.target(d4) != x1 || !(o3 + a.offset(d4)).is_zero() {
                                continue;
                            }
                            let facial = (a.face_next(d1) == d2
                                && a.face_next(d2) == d3
                                && a.face_next(d3) == d4)
                                || (a.face_next(twin(d4)) == twin(d3)
                                    && a.face_next(twin(d3)) == twin(d2)
                                    && a.face_next(twin(d2)) == twin(d1));
                            if facial {
                                continue;
                            }
                            let walk = [
                                LiftedDart { dart: d1, at: Offset::ZERO },
                                LiftedDart { dart: d2, at: o1 },
                                LiftedDart { dart: d3, at: o2 },
                                LiftedDart { dart: d4, at: o3 },
                            ];
                            let inside = a.enclosed_face_sum(&walk).map(|s| s.abs()).unwrap_or(2);
                            if inside > 1 {
                                return Some(format!(
                                    "vertices {} and {} separate the cover through faces {} and {}",
                                    x1,
                                    x2,
                                    f1 - n,
                                    f2 - n
                                ));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_essentially_3_connected(&self) -> bool {
        self.essential_3_connectivity_violation().is_none()
    }

    /// Which base map this is, if any. Only meaningful for essentially
    /// 3-connected maps.
    pub fn base_case(&self) -> Option<BaseCase> {
        match (self.n, self.m()) {
            (1, 3) => Some(BaseCase::ThreeLoops),
            (2, 3) if !self.is_loop(0) && !self.is_loop(1) && !self.is_loop(2) => Some(BaseCase::Brick),
            _ => None,
        }
    }

    /// Whether the map is an `n`-cycle with one loop at each vertex, all
    /// loops homotopic to each other.
    pub fn is_basic(&self) -> bool {
        let n = self.n;
        if self.m() != 2 * n {
            return false;
        }
        if n == 1 {
            return self.is_loop(0) && self.is_loop(1);
        }
        let mut loop_class: Option<Offset> = None;
        let mut loops = vec![0; n];
        let mut spine = vec![0; n];
        for e in 0..self.m() {
            let (u, v) = (self.origin[2 * e], self.origin[2 * e + 1]);
            if u == v {
                loops[u] += 1;
                let c = self.offset[2 * e];
                match loop_class {
                    None => loop_class = Some(c),
                    Some(k) if k == c || k == -c => {}
                    Some(_) => return false,
                }
            } else {
                spine[u] += 1;
                spine[v] += 1;
            }
        }
        if loops.iter().any(|&k| k != 1) || spine.iter().any(|&k| k != 2) {
            return false;
        }
        // spine edges must form a single cycle through every vertex
        let mut seen = vec![false; n];
        let mut x = 0;
        let mut from = usize::MAX;
        for _ in 0..n {
            seen[x] = true;
            let d = self.rot[x]
                .iter()
                .copied()
                .find(|&d| !self.is_loop(edge_of(d)) && edge_of(d) != from)
                .unwrap();
            from = edge_of(d);
            x = self.target(d);
        }
        x == 0 && seen.iter().all(|&s| s)
    }

    /// Contract the non-loop edge `e`, then remove one edge of every facial
    /// digon this creates. Within a digon the edge met first
    /// counterclockwise after the collapsed corner is kept.
    pub fn contract_edge(&self, e: usize) -> Result<Contraction> {
        if e >= self.m() {
            return Err(Error::InvalidStructure(format!("no edge {}", e)));
        }
        if self.is_loop(e) {
            return Err(Error::ContractLoop(e));
        }
        let d = 2 * e;
        let (u, v) = (self.origin[d], self.target(d));
        let oe = self.offset[d];
        let a1 = self.next[d];
        let ap = self.prev[d];
        let b1 = self.next[twin(d)];
        let bq = self.prev[twin(d)];
        let mut removed = vec![false; self.m()];
        removed[e] = true;
        let mut merged = Vec::new();
        let fl = &self.faces[self.face_of[d]];
        let fr = &self.faces[self.face_of[twin(d)]];
        if fl.len() <= 2 || fr.len() <= 2 {
            return Err(Error::Inconsistent(format!("edge {} lies on a digon", e)));
        }
        if fl.len() == 3 && self.face_of[d] != self.face_of[twin(d)] {
            removed[edge_of(bq)] = true;
            merged.push((edge_of(bq), edge_of(a1)));
        }
        if fr.len() == 3 && self.face_of[d] != self.face_of[twin(d)] {
            removed[edge_of(ap)] = true;
            merged.push((edge_of(ap), edge_of(b1)));
        }
        // a quadrangle walking through both darts of e, as (d, bq, twin d, ap)
        if fl.len() == 4 && self.face_of[d] == self.face_of[twin(d)] && edge_of(bq) != edge_of(ap) {
            removed[edge_of(bq)] = true;
            merged.push((edge_of(bq), edge_of(ap)));
        }
        let vertex_map: Vec<usize> = (0..self.n)
            .map(|x| {
                let x = if x == v { u } else { x };
                if x > v {
                    x - 1
                } else {
                    x
                }
            })
            .collect();
        let mut edge_map = vec![None; self.m()];
        let mut edges = Vec::new();
        for k in 0..self.m() {
            if removed[k] {
                continue;
            }
            edge_map[k] = Some(edges.len());
            let (x, y) = (self.origin[2 * k], self.origin[2 * k + 1]);
            let mut o = self.offset[2 * k];
            if x == v {
                o += oe;
            }
            if y == v {
                o = o - oe;
            }
            edges.push(RawEdge { u: vertex_map[x], v: vertex_map[y], offset: o });
        }
        let map_dart = |x: Dart| edge_map[edge_of(x)].map(|k| 2 * k + (x & 1));
        let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); self.n - 1];
        for x in 0..self.n {
            if x == u || x == v {
                continue;
            }
            rot[vertex_map[x]] = self.rot[x].iter().filter_map(|&a| map_dart(a)).collect();
        }
        let mut merged_rot = Vec::new();
        let mut a = a1;
        while a != d {
            merged_rot.extend(map_dart(a));
            a = self.next[a];
        }
        let mut b = b1;
        while b != twin(d) {
            merged_rot.extend(map_dart(b));
            b = self.next[b];
        }
        rot[vertex_map[u]] = merged_rot;
        let map = TorusMap::from_raw(&RawMap { n: self.n - 1, edges, rot })?;
        let mut affected: Vec<usize> = vec![e, edge_of(a1), edge_of(ap), edge_of(b1), edge_of(bq)];
        affected.sort();
        affected.dedup();
        Ok(Contraction { map, edge: e, u, v, vertex_map, edge_map, merged, affected })
    }

    /// Insert a new vertex inside face `face` joined to each of its corners.
    /// Returns the new map and the index of the new vertex.
    pub fn insert_vertex_in_face(&self, face: usize) -> Result<(TorusMap, usize)> {
        if face >= self.f() {
            return Err(Error::InvalidStructure(format!("no face {}", face)));
        }
        let mut raw = self.to_raw();
        let x = raw.n;
        raw.n += 1;
        raw.rot.push(Vec::new());
        let m0 = raw.edges.len();
        let walk = self.faces[face].clone();
        for (j, &dj) in walk.iter().enumerate() {
            raw.edges.push(RawEdge { u: x, v: self.origin[dj], offset: self.corner_pos[dj] });
            raw.rot[x].push(2 * (m0 + j));
        }
        for (j, &dj) in walk.iter().enumerate() {
            let w = self.origin[dj];
            let p = raw.rot[w].iter().position(|&a| a == dj).unwrap();
            raw.rot[w].insert(p + 1, 2 * (m0 + j) + 1);
        }
        Ok((TorusMap::from_raw(&raw)?, x))
    }

    /// Replace edge `e` by the other diagonal of the two triangles around it.
    /// The new diagonal keeps the index `e`.
    pub fn flip_edge(&self, e: usize) -> Result<TorusMap> {
        let d = 2 * e;
        let (fl, fr) = (self.face_of[d], self.face_of[d + 1]);
        if fl == fr || self.faces[fl].len() != 3 || self.faces[fr].len() != 3 {
            return Err(Error::NotTriangulation(format!("edge {} is not between two triangles", e)));
        }
        let x1 = self.face_next(d);
        let x2 = self.face_next(x1);
        let y1 = self.face_next(d + 1);
        let y2 = self.face_next(y1);
        let (p, q) = (self.origin[x2], self.origin[y2]);
        let pp = self.offset[d] + self.offset[x1];
        let qq = self.offset[y1];
        let mut raw = self.to_raw();
        let (u, v) = (self.origin[d], self.origin[d + 1]);
        raw.rot[u].retain(|&a| a != d && a != d + 1);
        raw.rot[v].retain(|&a| a != d && a != d + 1);
        raw.edges[e] = RawEdge { u: p, v: q, offset: qq - pp };
        let k = raw.rot[p].iter().position(|&a| a == x2).unwrap();
        raw.rot[p].insert(k + 1, d);
        let k = raw.rot[q].iter().position(|&a| a == y2).unwrap();
        raw.rot[q].insert(k + 1, d + 1);
        TorusMap::from_raw(&raw)
    }

    /// Remove edge `e`, merging the two faces on its sides. The last edge
    /// takes the index `e`.
    pub fn delete_edge(&self, e: usize) -> Result<TorusMap> {
        if e >= self.m() {
            return Err(Error::InvalidStructure(format!("no edge {}", e)));
        }
        if self.face_of[2 * e] == self.face_of[2 * e + 1] {
            return Err(Error::InvalidStructure(format!("edge {} has the same face on both sides", e)));
        }
        let mut raw = self.to_raw();
        let last = raw.edges.len() - 1;
        raw.edges.swap_remove(e);
        for r in raw.rot.iter_mut() {
            r.retain(|&a| edge_of(a) != e);
            for a in r.iter_mut() {
                if edge_of(*a) == last {
                    *a = 2 * e + (*a & 1);
                }
            }
        }
        TorusMap::from_raw(&raw)
    }

    /// Star every face of degree more than three. Returns the new map and
    /// the added edges; added vertices and edges come after the old ones.
    pub fn triangulate(&self) -> Result<(TorusMap, Vec<usize>)> {
        let anchors: Vec<Dart> =
            self.faces.iter().filter(|f| f.len() > 3).map(|f| f[0]).collect();
        let mut g = self.clone();
        for a in anchors {
            let f = g.face_of(a);
            g = g.insert_vertex_in_face(f)?.0;
        }
        let added = (self.m()..g.m()).collect();
        Ok((g, added))
    }
}

/// A bounded region cut out by a closed walk in the cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Region {
    pub size: usize,
    pub winding: i64,
    /// One lifted face of the region.
    pub seed: (usize, Offset),
}

/// A plane map given by its rotation system, with three vertices marked on
/// the outer face in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarSuspension {
    pub n: usize,
    /// Edge `e` joins `edges[e].0` to `edges[e].1`; its darts are `2e` and
    /// `2e + 1` as for toroidal maps.
    pub edges: Vec<(usize, usize)>,
    pub rot: Vec<Vec<Dart>>,
    pub roots: [usize; 3],
}

impl TorusMap {
    /// Put a plane map on the torus: add a vertex `v` with three loops,
    /// place the plane map in one of the two triangles of the loops and join
    /// each root to a different corner of `v`, so that no two of the new
    /// edges are consecutive around `v`. The new vertex is the last one; the
    /// loops are the last three edges, preceded by the edges from the roots.
    pub fn from_planar_suspension(p: &PlanarSuspension) -> Result<TorusMap> {
        let bad = |s: String| Err(Error::BadSuspension(s));
        let n = p.n;
        let m = p.edges.len();
        if p.rot.len() != n {
            return bad(format!("{} rotations for {} vertices", p.rot.len(), n));
        }
        let mut origin = vec![usize::MAX; 2 * m];
        for (e, &(u, v)) in p.edges.iter().enumerate() {
            if u >= n || v >= n {
                return bad(format!("edge {} has an endpoint out of range", e));
            }
            origin[2 * e] = u;
            origin[2 * e + 1] = v;
        }
        let mut seen = vec![false; 2 * m];
        let mut next = vec![0; 2 * m];
        let mut prev = vec![0; 2 * m];
        for (v, r) in p.rot.iter().enumerate() {
            for (k, &d) in r.iter().enumerate() {
                if d >= 2 * m || origin[d] != v || seen[d] {
                    return bad(format!("rotation of vertex {} is not a set of its darts", v));
                }
                seen[d] = true;
                next[d] = r[(k + 1) % r.len()];
                prev[next[d]] = d;
            }
        }
        if seen.iter().any(|&s| !s) {
            return bad("some dart is in no rotation".into());
        }
        // faces with the face on the left, as for toroidal maps
        let mut face_of = vec![usize::MAX; 2 * m];
        let mut faces: Vec<Vec<Dart>> = Vec::new();
        for d0 in 0..2 * m {
            if face_of[d0] != usize::MAX {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = d0;
            while face_of[d] == usize::MAX {
                face_of[d] = faces.len();
                walk.push(d);
                d = prev[d ^ 1];
            }
            faces.push(walk);
        }
        if n as i64 - m as i64 + faces.len() as i64 != 2 || n == 0 {
            return bad("rotation system is not a connected plane map".into());
        }
        let [x0, x1, x2] = p.roots;
        if x0 == x1 || x1 == x2 || x0 == x2 || x0.max(x1).max(x2) >= n {
            return bad("roots must be three distinct vertices".into());
        }
        // walked with the face on the left, the outer face meets the roots
        // clockwise
        let cyclic = |w: &Vec<Dart>| -> Option<[Dart; 3]> {
            let pos = |x: usize| w.iter().position(|&d| origin[d] == x);
            let (a, b, c) = (pos(x0)?, pos(x2)?, pos(x1)?);
            let k = w.len();
            let ok = (b + k - a) % k < (c + k - a) % k;
            ok.then(|| [w[a], w[c], w[b]])
        };
        let cands: Vec<[Dart; 3]> = faces.iter().filter_map(cyclic).collect();
        let corners = match cands.len() {
            0 => return bad("roots do not lie clockwise on a common face".into()),
            1 => cands[0],
            _ => return bad("several faces carry the roots".into()),
        };
        let (mut raw, v) = {
            let edges = p
                .edges
                .iter()
                .map(|&(u, v)| RawEdge { u, v, offset: Offset::ZERO })
                .collect();
            (RawMap { n: n + 1, edges, rot: p.rot.clone() }, n)
        };
        // loops a = (1,0), b = (1,1), c = (0,1) at v
        let loops = [Offset::new(1, 0), Offset::new(1, 1), Offset::new(0, 1)];
        let l0 = m + 3;
        let mut vrot: Vec<Dart> = [0, 2, 4, 1, 3, 5].iter().map(|d| d + 2 * l0).collect();
        // corners of the triangle left of a+, in walk order
        let loops_only = TorusMap::from_raw(&RawMap {
            n: 1,
            edges: loops.iter().map(|&o| RawEdge { u: 0, v: 0, offset: o }).collect(),
            rot: vec![vec![0, 2, 4, 1, 3, 5]],
        })?;
        let tri: Vec<(Dart, Offset)> = loops_only
            .face(loops_only.face_of(0))
            .iter()
            .map(|&d| (d + 2 * l0, loops_only.corner_pos(d)))
            .collect();
        for (i, &x) in [x0, x1, x2].iter().enumerate() {
            let e = m + i;
            let (corner, at) = tri[i];
            raw.edges.push(RawEdge { u: x, v, offset: at });
            let r = &mut raw.rot[x];
            let k = r.iter().position(|&d| d == corners[i]).unwrap();
            r.insert(k + 1, 2 * e);
            let k = vrot.iter().position(|&d| d == corner).unwrap();
            vrot.insert(k + 1, 2 * e + 1);
        }
        for &o in &loops {
            raw.edges.push(RawEdge { u: v, v, offset: o });
        }
        raw.rot.push(vrot);
        TorusMap::from_raw(&raw)
    }
}
