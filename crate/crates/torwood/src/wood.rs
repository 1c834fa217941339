//! Orientations and colourings of toroidal maps.
//!
//! A [`Wood`] stores for every dart the colour in which the edge is oriented
//! away from the tail of that dart, or nothing. A uni-directed edge has one
//! coloured dart; a bi-oriented edge has two, with different colours.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::torus_map::{edge_of, twin, Dart, Offset, TorusMap};

pub type Color = u8;

#[inline]
pub fn next_color(i: Color) -> Color {
    (i + 1) % 3
}

#[inline]
pub fn prev_color(i: Color) -> Color {
    (i + 2) % 3
}

/// Orientation and colour of one edge. `Plus` means oriented away from the
/// first endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeState {
    Plus(Color),
    Minus(Color),
    Both { plus: Color, minus: Color },
}

impl EdgeState {
    /// Every state, uni-directed ones first.
    pub fn all() -> Vec<EdgeState> {
        let mut v: Vec<EdgeState> = (0..3).map(EdgeState::Plus).collect();
        v.extend((0..3).map(EdgeState::Minus));
        for plus in 0..3 {
            for minus in 0..3 {
                if plus != minus {
                    v.push(EdgeState::Both { plus, minus });
                }
            }
        }
        v
    }

    pub fn colors(self) -> (Option<Color>, Option<Color>) {
        match self {
            EdgeState::Plus(c) => (Some(c), None),
            EdgeState::Minus(c) => (None, Some(c)),
            EdgeState::Both { plus, minus } => (Some(plus), Some(minus)),
        }
    }

    pub fn is_bi(self) -> bool {
        matches!(self, EdgeState::Both { .. })
    }
}

impl fmt::Display for EdgeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeState::Plus(c) => write!(f, "+{}", c),
            EdgeState::Minus(c) => write!(f, "-{}", c),
            EdgeState::Both { plus, minus } => write!(f, "+{}-{}", plus, minus),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Wood {
    colors: Vec<Option<Color>>,
}

/// Type of a Schnyder wood: either every pair of colours crosses, or the
/// cycles of colours `i-1` and `i+1` are reversals of each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WoodType {
    Type1,
    Type2(Color),
}

impl fmt::Display for WoodType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WoodType::Type1 => write!(f, "1"),
            WoodType::Type2(i) => write!(f, "2.{}", i),
        }
    }
}

/// A directed monochromatic cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoCycle {
    pub color: Color,
    pub darts: Vec<Dart>,
    pub vertices: Vec<usize>,
    pub class: Offset,
}

impl MonoCycle {
    pub fn is_reversal_of(&self, other: &MonoCycle) -> bool {
        if self.darts.len() != other.darts.len() {
            return false;
        }
        let mine: HashSet<Dart> = self.darts.iter().copied().collect();
        other.darts.iter().all(|&d| mine.contains(&twin(d)))
    }

    pub fn meets(&self, other: &MonoCycle) -> bool {
        let mine: HashSet<usize> = self.vertices.iter().copied().collect();
        other.vertices.iter().any(|v| mine.contains(v))
    }
}

impl Wood {
    pub fn empty(m: usize) -> Wood {
        Wood { colors: vec![None; 2 * m] }
    }

    pub fn from_dart_colors(colors: Vec<Option<Color>>) -> Wood {
        Wood { colors }
    }

    pub fn from_states(states: &[EdgeState]) -> Wood {
        let mut w = Wood::empty(states.len());
        for (e, &s) in states.iter().enumerate() {
            w.set_state(e, s);
        }
        w
    }

    pub fn m(&self) -> usize {
        self.colors.len() / 2
    }

    pub fn dart_colors(&self) -> &[Option<Color>] {
        &self.colors
    }

    pub fn color(&self, d: Dart) -> Option<Color> {
        self.colors[d]
    }

    pub fn set_color(&mut self, d: Dart, c: Option<Color>) {
        self.colors[d] = c;
    }

    pub fn set_state(&mut self, e: usize, s: EdgeState) {
        let (p, q) = s.colors();
        self.colors[2 * e] = p;
        self.colors[2 * e + 1] = q;
    }

    pub fn state(&self, e: usize) -> Option<EdgeState> {
        match (self.colors[2 * e], self.colors[2 * e + 1]) {
            (Some(p), None) => Some(EdgeState::Plus(p)),
            (None, Some(q)) => Some(EdgeState::Minus(q)),
            (Some(plus), Some(minus)) if plus != minus => Some(EdgeState::Both { plus, minus }),
            _ => None,
        }
    }

    pub fn states(&self) -> Option<Vec<EdgeState>> {
        (0..self.m()).map(|e| self.state(e)).collect()
    }

    pub fn bi_oriented_count(&self) -> usize {
        (0..self.m()).filter(|&e| self.colors[2 * e].is_some() && self.colors[2 * e + 1].is_some()).count()
    }

    /// The dart leaving `v` in colour `i`, if there is exactly one.
    pub fn out_dart(&self, g: &TorusMap, v: usize, i: Color) -> Option<Dart> {
        let mut it = g.rotation(v).iter().copied().filter(|&d| self.colors[d] == Some(i));
        let d = it.next()?;
        if it.next().is_some() {
            None
        } else {
            Some(d)
        }
    }
}

fn check_len(g: &TorusMap, w: &Wood) -> Result<()> {
    if w.m() != g.m() {
        return Err(Error::InconsistentWood(format!(
            "wood has {} edges, map has {}",
            w.m(),
            g.m()
        )));
    }
    Ok(())
}

/// Local Schnyder condition at one vertex, with the reason it fails.
pub fn vertex_violation(g: &TorusMap, w: &Wood, v: usize) -> Option<String> {
    let rot = g.rotation(v);
    let k = rot.len();
    let mut pos_out = [usize::MAX; 3];
    for (p, &d) in rot.iter().enumerate() {
        let (o, i) = (w.color(d), w.color(twin(d)));
        match (o, i) {
            (None, None) => return Some(format!("edge {} is not oriented", edge_of(d))),
            (Some(a), Some(b)) if a == b => {
                return Some(format!("edge {} is bi-oriented in one colour", edge_of(d)))
            }
            _ => {}
        }
        if let Some(c) = o {
            if pos_out[c as usize] != usize::MAX {
                return Some(format!("vertex {} has two outgoing darts of colour {}", v, c));
            }
            pos_out[c as usize] = p;
        }
    }
    for c in 0..3 {
        if pos_out[c] == usize::MAX {
            return Some(format!("vertex {} has no outgoing dart of colour {}", v, c));
        }
    }
    let gap = |a: usize, b: usize| (b + k - a) % k;
    if gap(pos_out[0], pos_out[1]) >= gap(pos_out[0], pos_out[2]) {
        return Some(format!("outgoing darts at vertex {} are not in order 0,1,2", v));
    }
    for (p, &d) in rot.iter().enumerate() {
        if let Some(i) = w.color(twin(d)) {
            let s = pos_out[next_color(i) as usize];
            let t = pos_out[prev_color(i) as usize];
            if gap(s, p) > gap(s, t) {
                return Some(format!(
                    "edge {} enters vertex {} in colour {} outside its sector",
                    edge_of(d),
                    v,
                    i
                ));
            }
        }
    }
    None
}

/// First vertex where the local Schnyder condition fails.
pub fn t1_violation(g: &TorusMap, w: &Wood) -> Option<String> {
    if w.m() != g.m() {
        return Some("size mismatch".into());
    }
    (0..g.n()).find_map(|v| vertex_violation(g, w, v))
}

pub fn check_t1(g: &TorusMap, w: &Wood) -> Result<()> {
    check_len(g, w)?;
    match t1_violation(g, w) {
        Some(s) => Err(Error::InconsistentWood(s)),
        None => Ok(()),
    }
}

/// Directed cycles of colour `i`. Needs out-degree one in colour `i`.
pub fn mono_cycles(g: &TorusMap, w: &Wood, i: Color) -> Result<Vec<MonoCycle>> {
    let n = g.n();
    let mut succ = vec![0; n];
    let mut out = vec![0; n];
    for v in 0..n {
        let d = w.out_dart(g, v, i).ok_or_else(|| {
            Error::InconsistentWood(format!("vertex {} has no unique dart of colour {}", v, i))
        })?;
        out[v] = d;
        succ[v] = g.target(d);
    }
    let mut state = vec![0u8; n];
    let mut cycles = Vec::new();
    for s in 0..n {
        if state[s] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut x = s;
        while state[x] == 0 {
            state[x] = 1;
            path.push(x);
            x = succ[x];
        }
        if state[x] == 1 {
            let k = path.iter().position(|&y| y == x).unwrap();
            let mut verts: Vec<usize> = path[k..].to_vec();
            let low = (0..verts.len()).min_by_key(|&j| verts[j]).unwrap();
            verts.rotate_left(low);
            let darts: Vec<Dart> = verts.iter().map(|&y| out[y]).collect();
            let class = g.walk_class(&darts)?;
            cycles.push(MonoCycle { color: i, darts, vertices: verts, class });
        }
        for y in path {
            state[y] = 2;
        }
    }
    cycles.sort_by_key(|c| c.vertices[0]);
    Ok(cycles)
}

pub fn all_mono_cycles(g: &TorusMap, w: &Wood) -> Result<[Vec<MonoCycle>; 3]> {
    Ok([mono_cycles(g, w, 0)?, mono_cycles(g, w, 1)?, mono_cycles(g, w, 2)?])
}

/// Every `i`-cycle meets an `(i-1)`-cycle and an `(i+1)`-cycle.
pub fn t2_violation(cycles: &[Vec<MonoCycle>; 3]) -> Option<String> {
    for i in 0..3u8 {
        for c in &cycles[i as usize] {
            for j in [prev_color(i), next_color(i)] {
                if !cycles[j as usize].iter().any(|d| c.meets(d)) {
                    return Some(format!(
                        "{}-cycle through vertex {} meets no {}-cycle",
                        i, c.vertices[0], j
                    ));
                }
            }
        }
    }
    None
}

/// For every pair of colours some pair of cycles meets.
pub fn t2_relaxed_violation(cycles: &[Vec<MonoCycle>; 3]) -> Option<String> {
    for (i, j) in [(0usize, 1usize), (1, 2), (2, 0)] {
        if !cycles[i].iter().any(|c| cycles[j].iter().any(|d| c.meets(d))) {
            return Some(format!("no {}-cycle meets a {}-cycle", i, j));
        }
    }
    None
}

/// No two cycles of different colours are reversals of each other.
pub fn t3_relaxed_violation(cycles: &[Vec<MonoCycle>; 3]) -> Option<String> {
    for (i, j) in [(0usize, 1usize), (1, 2), (2, 0)] {
        for c in &cycles[i] {
            if cycles[j].iter().any(|d| c.is_reversal_of(d)) {
                return Some(format!(
                    "a {}-cycle and a {}-cycle through vertex {} are reversed",
                    i, j, c.vertices[0]
                ));
            }
        }
    }
    None
}

/// Type of a wood whose cycles are known.
pub fn classify(cycles: &[Vec<MonoCycle>; 3]) -> WoodType {
    for i in 0..3u8 {
        let a = &cycles[prev_color(i) as usize];
        let b = &cycles[next_color(i) as usize];
        if a.iter().any(|c| b.iter().any(|d| c.is_reversal_of(d))) {
            return WoodType::Type2(i);
        }
    }
    WoodType::Type1
}

/// Check the full Schnyder conditions and return the type.
pub fn check_schnyder(g: &TorusMap, w: &Wood) -> Result<WoodType> {
    check_t1(g, w)?;
    let cycles = all_mono_cycles(g, w)?;
    if let Some(s) = t2_violation(&cycles) {
        return Err(Error::InconsistentWood(s));
    }
    Ok(classify(&cycles))
}

pub fn is_schnyder(g: &TorusMap, w: &Wood) -> bool {
    check_schnyder(g, w).is_ok()
}

/// Label of every corner. Corner `a` sits between dart `a` and the next dart
/// counterclockwise at the tail of `a`.
pub fn angle_labels(g: &TorusMap, w: &Wood) -> Result<Vec<Color>> {
    check_t1(g, w)?;
    let mut lab = vec![0; 2 * g.m()];
    for v in 0..g.n() {
        let rot = g.rotation(v);
        let k = rot.len();
        let mut p = [0usize; 3];
        for (j, &d) in rot.iter().enumerate() {
            if let Some(c) = w.color(d) {
                p[c as usize] = j;
            }
        }
        for (j, &d) in rot.iter().enumerate() {
            for i in 0..3u8 {
                let s = p[next_color(i) as usize];
                let t = p[prev_color(i) as usize];
                if (j + k - s) % k < (t + k - s) % k {
                    lab[d] = i;
                }
            }
        }
    }
    Ok(lab)
}

/// Number of label changes met when walking once around a face.
pub fn face_label_changes(g: &TorusMap, labels: &[Color], face: usize) -> usize {
    let f = g.face(face);
    (0..f.len()).filter(|&j| labels[f[j]] != labels[f[(j + 1) % f.len()]]).count()
}

/// The dual orientation. Dual dart `d` crosses primal dart `d` from its left
/// face to its right face.
pub fn dual_wood(g: &TorusMap, w: &Wood) -> Result<Wood> {
    check_len(g, w)?;
    let mut out = Wood::empty(g.m());
    for e in 0..g.m() {
        let d = 2 * e;
        match (w.color(d), w.color(d + 1)) {
            (Some(i), None) => {
                out.set_color(d, Some(next_color(i)));
                out.set_color(d + 1, Some(prev_color(i)));
            }
            (None, Some(i)) => {
                out.set_color(d + 1, Some(next_color(i)));
                out.set_color(d, Some(prev_color(i)));
            }
            (Some(a), Some(b)) if a != b => {
                let i = 3 - a - b;
                let x = if a == prev_color(i) { d } else { d + 1 };
                out.set_color(x, Some(i));
            }
            _ => {
                return Err(Error::InconsistentWood(format!("edge {} has no valid state", e)));
            }
        }
    }
    Ok(out)
}

/// Three edge-disjoint, pairwise non-homotopic, non-contractible cycles,
/// one monochromatic cycle of each colour of a Schnyder wood of a
/// triangulation.
pub fn edge_disjoint_triple(g: &TorusMap, w: &Wood) -> Result<[MonoCycle; 3]> {
    if !g.is_triangulation() {
        return Err(Error::NotTriangulation("faces of degree other than three".into()));
    }
    check_schnyder(g, w)?;
    let mut cs = all_mono_cycles(g, w)?;
    let pick = |v: &mut Vec<MonoCycle>| v.swap_remove(0);
    let t = [pick(&mut cs[0]), pick(&mut cs[1]), pick(&mut cs[2])];
    let mut used = HashSet::new();
    for c in &t {
        for &d in &c.darts {
            if !used.insert(edge_of(d)) {
                return Err(Error::Impossible(format!("edge {} is on two cycles", edge_of(d))));
            }
        }
    }
    Ok(t)
}
