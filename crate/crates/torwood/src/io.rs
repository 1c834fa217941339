//! Text formats for maps, woods and plane maps, plus writers for cover
//! windows, coordinates, SVG drawings and OBJ scenes.
//!
//! A `.tmap` file lists the edges with the offset of their `+` dart and the
//! counterclockwise rotation at every vertex:
//!
//! ```text
//! tmap 1
//! vertices 1
//! edge 0 0 0 1 0
//! edge 1 0 0 0 1
//! rot 0 0+ 1+ 0- 1-
//! ```
//!
//! A `.wood` file has one line `w <edge> <spec>` per edge, where the spec is
//! `+i` (oriented from the first endpoint), `-i` (from the second one) or
//! `+i-j` (bi-oriented).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::cover::{Coordinates, CoverWindow, Point3};
use crate::embed::{DualScene, FlatDrawing, GeodesicScene};
use crate::error::{Error, Result};
use crate::torus_map::{Dart, Offset, PlanarSuspension, RawEdge, RawMap, TorusMap};
use crate::wood::{EdgeState, Wood};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(k, l)| {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty()).then_some((k + 1, toks))
    })
}

fn num<T: std::str::FromStr>(line: usize, tok: Option<&&str>, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| perr(line, format!("missing {}", what)))?;
    tok.parse().map_err(|_| perr(line, format!("bad {} '{}'", what, tok)))
}

fn parse_dart(line: usize, tok: &str) -> Result<Dart> {
    let (id, side) = tok.split_at(tok.len().saturating_sub(1));
    let e: usize = id.parse().map_err(|_| perr(line, format!("bad dart '{}'", tok)))?;
    match side {
        "+" => Ok(2 * e),
        "-" => Ok(2 * e + 1),
        _ => Err(perr(line, format!("dart '{}' needs a + or - suffix", tok))),
    }
}

fn dart_name(d: Dart) -> String {
    format!("{}{}", d / 2, if d % 2 == 0 { '+' } else { '-' })
}

fn header(line: usize, toks: &[&str], magic: &str) -> Result<()> {
    if toks.first() != Some(&magic) {
        return Err(perr(line, format!("expected '{} 1' header", magic)));
    }
    if toks.get(1) != Some(&"1") {
        return Err(perr(line, format!("unsupported {} version", magic)));
    }
    Ok(())
}

/// Parse a `.tmap` document into a validated map.
pub fn parse_tmap(text: &str) -> Result<TorusMap> {
    TorusMap::from_raw(&parse_raw_tmap(text)?)
}

/// Parse a `.tmap` document without validating the map.
pub fn parse_raw_tmap(text: &str) -> Result<RawMap> {
    let mut it = lines(text);
    let (l, toks) = it.next().ok_or_else(|| perr(0, "empty input"))?;
    header(l, &toks, "tmap")?;
    let mut n = None;
    let mut edges: BTreeMap<usize, RawEdge> = BTreeMap::new();
    let mut rot: BTreeMap<usize, Vec<Dart>> = BTreeMap::new();
    for (l, toks) in it {
        match toks[0] {
            "vertices" => n = Some(num::<usize>(l, toks.get(1), "vertex count")?),
            "edge" => {
                let e = num(l, toks.get(1), "edge id")?;
                let u = num(l, toks.get(2), "endpoint")?;
                let v = num(l, toks.get(3), "endpoint")?;
                let dx = num(l, toks.get(4), "dx")?;
                let dy = num(l, toks.get(5), "dy")?;
                if toks.len() > 6 {
                    return Err(perr(l, "trailing tokens"));
                }
                if edges.insert(e, RawEdge { u, v, offset: Offset::new(dx, dy) }).is_some() {
                    return Err(perr(l, format!("edge {} listed twice", e)));
                }
            }
            "rot" => {
                let v = num(l, toks.get(1), "vertex")?;
                let darts = toks[2..].iter().map(|t| parse_dart(l, t)).collect::<Result<Vec<_>>>()?;
                if rot.insert(v, darts).is_some() {
                    return Err(perr(l, format!("rotation of vertex {} listed twice", v)));
                }
            }
            other => return Err(perr(l, format!("unknown keyword '{}'", other))),
        }
    }
    let n = n.ok_or_else(|| perr(0, "missing 'vertices' line"))?;
    if edges.keys().enumerate().any(|(k, &e)| k != e) {
        return Err(perr(0, "edge ids must be 0..m"));
    }
    if rot.keys().any(|&v| v >= n) {
        return Err(perr(0, "rotation of a vertex out of range"));
    }
    let rot = (0..n).map(|v| rot.remove(&v).unwrap_or_default()).collect();
    Ok(RawMap { n, edges: edges.into_values().collect(), rot })
}

pub fn write_tmap(g: &TorusMap) -> String {
    let raw = g.to_raw();
    let mut s = format!("tmap 1\nvertices {}\n", raw.n);
    for (e, ed) in raw.edges.iter().enumerate() {
        let _ = writeln!(s, "edge {} {} {} {} {}", e, ed.u, ed.v, ed.offset.x, ed.offset.y);
    }
    for (v, r) in raw.rot.iter().enumerate() {
        let darts: Vec<String> = r.iter().map(|&d| dart_name(d)).collect();
        let _ = writeln!(s, "rot {} {}", v, darts.join(" "));
    }
    s
}

fn parse_state(line: usize, spec: &str) -> Result<EdgeState> {
    let bad = || perr(line, format!("bad wood spec '{}'", spec));
    let color = |c: char| c.to_digit(10).filter(|&d| d < 3).map(|d| d as u8).ok_or_else(bad);
    let ch: Vec<char> = spec.chars().collect();
    match ch.as_slice() {
        ['+', a] => Ok(EdgeState::Plus(color(*a)?)),
        ['-', a] => Ok(EdgeState::Minus(color(*a)?)),
        ['+', a, '-', b] => {
            let (plus, minus) = (color(*a)?, color(*b)?);
            if plus == minus {
                return Err(bad());
            }
            Ok(EdgeState::Both { plus, minus })
        }
        _ => Err(bad()),
    }
}

/// Parse a `.wood` document for a map with `m` edges.
pub fn parse_wood(text: &str, m: usize) -> Result<Wood> {
    let mut states: Vec<Option<EdgeState>> = vec![None; m];
    for (l, toks) in lines(text) {
        if toks[0] != "w" || toks.len() != 3 {
            return Err(perr(l, "expected 'w <edge> <spec>'"));
        }
        let e: usize = num(l, toks.get(1), "edge id")?;
        if e >= m {
            return Err(perr(l, format!("edge {} out of range (map has {})", e, m)));
        }
        if states[e].replace(parse_state(l, toks[2])?).is_some() {
            return Err(perr(l, format!("edge {} listed twice", e)));
        }
    }
    let mut w = Wood::empty(m);
    for (e, s) in states.into_iter().enumerate() {
        let s = s.ok_or_else(|| perr(0, format!("edge {} has no state", e)))?;
        w.set_state(e, s);
    }
    Ok(w)
}

/// Serialise a wood; edges without a valid state are an error.
pub fn write_wood(w: &Wood) -> Result<String> {
    let mut s = String::new();
    for e in 0..w.m() {
        let st = w
            .state(e)
            .ok_or_else(|| Error::InconsistentWood(format!("edge {} has no valid state", e)))?;
        let _ = writeln!(s, "w {} {}", e, st);
    }
    Ok(s)
}

/// Parse a `.pmap` plane map with its three roots.
pub fn parse_pmap(text: &str) -> Result<PlanarSuspension> {
    let mut it = lines(text);
    let (l, toks) = it.next().ok_or_else(|| perr(0, "empty input"))?;
    header(l, &toks, "pmap")?;
    let mut n = None;
    let mut edges: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut rot: BTreeMap<usize, Vec<Dart>> = BTreeMap::new();
    let mut roots = None;
    for (l, toks) in it {
        match toks[0] {
            "vertices" => n = Some(num::<usize>(l, toks.get(1), "vertex count")?),
            "edge" => {
                let e = num(l, toks.get(1), "edge id")?;
                let u = num(l, toks.get(2), "endpoint")?;
                let v = num(l, toks.get(3), "endpoint")?;
                if edges.insert(e, (u, v)).is_some() {
                    return Err(perr(l, format!("edge {} listed twice", e)));
                }
            }
            "rot" => {
                let v = num(l, toks.get(1), "vertex")?;
                let darts = toks[2..].iter().map(|t| parse_dart(l, t)).collect::<Result<Vec<_>>>()?;
                rot.insert(v, darts);
            }
            "outer" => {
                roots = Some([
                    num(l, toks.get(1), "root")?,
                    num(l, toks.get(2), "root")?,
                    num(l, toks.get(3), "root")?,
                ])
            }
            other => return Err(perr(l, format!("unknown keyword '{}'", other))),
        }
    }
    let n = n.ok_or_else(|| perr(0, "missing 'vertices' line"))?;
    if edges.keys().enumerate().any(|(k, &e)| k != e) {
        return Err(perr(0, "edge ids must be 0..m"));
    }
    Ok(PlanarSuspension {
        n,
        edges: edges.into_values().collect(),
        rot: (0..n).map(|v| rot.remove(&v).unwrap_or_default()).collect(),
        roots: roots.ok_or_else(|| perr(0, "missing 'outer' line"))?,
    })
}

pub fn write_pmap(p: &PlanarSuspension) -> String {
    let mut s = format!("pmap 1\nvertices {}\n", p.n);
    for (e, &(u, v)) in p.edges.iter().enumerate() {
        let _ = writeln!(s, "edge {} {} {}", e, u, v);
    }
    for (v, r) in p.rot.iter().enumerate() {
        let darts: Vec<String> = r.iter().map(|&d| dart_name(d)).collect();
        let _ = writeln!(s, "rot {} {}", v, darts.join(" "));
    }
    let _ = writeln!(s, "outer {} {} {}", p.roots[0], p.roots[1], p.roots[2]);
    s
}

/// The window as text: every lifted vertex with its copy, and every lifted
/// edge whose ends both lie in the window.
pub fn write_cover(w: &CoverWindow) -> String {
    let mut s = format!("cover 1\nradius {}\n", w.radius);
    for x in &w.vertices {
        let _ = writeln!(s, "vertex {} {} {}", x.v, x.at.x, x.at.y);
    }
    for (a, b, e) in &w.edges {
        let _ = writeln!(s, "edge {} {} {} {} {} {} {}", e, a.v, a.at.x, a.at.y, b.v, b.at.x, b.at.y);
    }
    s
}

fn triple(p: Point3) -> String {
    format!("{} {} {}", p[0], p[1], p[2])
}

/// Region vectors of the window `[-radius, radius]^2` as `v p q x y z`
/// lines after a header recording everything they depend on.
pub fn write_coords(g: &TorusMap, c: &Coordinates, radius: i64) -> String {
    let mut s = String::from("# region vectors\n");
    let _ = writeln!(s, "scale {}", c.scale);
    let _ = writeln!(s, "faces {}", c.faces);
    let _ = writeln!(s, "type {}", c.wood_type);
    let _ = writeln!(s, "S {}", triple(c.s));
    let _ = writeln!(s, "Sprime {}", triple(c.s_prime));
    let _ = writeln!(s, "c {}", triple(c.c));
    let _ = writeln!(s, "cprime {}", triple(c.c_prime));
    let _ = writeln!(s, "gamma {}", triple(c.gamma));
    for (i, l) in c.lines.iter().enumerate() {
        let first = l.cycles[l.origin.cycle].vertices.iter().min().copied().unwrap_or(0);
        let _ = writeln!(
            s,
            "origin {} cycle {} period {} vertex {}",
            i, l.origin.cycle, l.origin.period, first
        );
    }
    for px in -radius..=radius {
        for py in -radius..=radius {
            for v in 0..g.n() {
                let at = Offset::new(px, py);
                let p = c.point(crate::cover::Lift { v, at });
                let _ = writeln!(s, "v {} {} {} {}", v, px, py, triple(p));
            }
        }
    }
    s
}

/// Vertices as points and elbows as polylines.
pub fn write_obj(scene: &GeodesicScene, dual: Option<&DualScene>) -> String {
    let mut index: BTreeMap<Point3, usize> = BTreeMap::new();
    let mut order: Vec<Point3> = Vec::new();
    let mut id = |p: Point3, order: &mut Vec<Point3>| -> usize {
        *index.entry(p).or_insert_with(|| {
            order.push(p);
            order.len()
        })
    };
    let mut body = String::new();
    let mut pts = Vec::new();
    for (_, p) in &scene.vertices {
        pts.push(id(*p, &mut order));
    }
    let _ = writeln!(body, "o primal");
    for k in &pts {
        let _ = writeln!(body, "p {}", k);
    }
    for el in &scene.elbows {
        let ids: Vec<String> = el.points.iter().map(|&p| id(p, &mut order).to_string()).collect();
        let _ = writeln!(body, "l {}", ids.join(" "));
    }
    if let Some(d) = dual {
        let _ = writeln!(body, "o dual");
        for el in &d.elbows {
            let ids: Vec<String> = el.points.iter().map(|&p| id(p, &mut order).to_string()).collect();
            let _ = writeln!(body, "l {}", ids.join(" "));
        }
    }
    let mut s = String::from("# orthogonal surface scene\n");
    for p in &order {
        let _ = writeln!(s, "v {}", triple(*p));
    }
    s + &body
}

/// Options for [`write_svg`].
#[derive(Clone, Debug)]
pub struct SvgOptions {
    /// Copies drawn in each direction.
    pub window: (i64, i64),
    pub dual: bool,
    pub bends: bool,
    /// Edges left out of the picture, such as those added to triangulate.
    pub hidden: Vec<usize>,
    /// Only vertices below this index are drawn.
    pub vertex_limit: Option<usize>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { window: (2, 2), dual: false, bends: false, hidden: Vec::new(), vertex_limit: None }
    }
}

/// Screen coordinates of a projected point, in an orthonormal basis of the
/// plane orthogonal to `normal`.
fn screen(p: [i64; 2], normal: Point3) -> (f64, f64) {
    let n = [normal[0] as f64, normal[1] as f64, normal[2] as f64];
    let (a, b) = (p[0] as f64, p[1] as f64);
    // rebuild the full cross product from the two stored components
    let q = if normal[2] != 0 {
        [a, b, -(a * n[0] + b * n[1]) / n[2]]
    } else if normal[0] != 0 {
        [-(a * n[1] + b * n[2]) / n[0], a, b]
    } else {
        [b, -(a * n[2] + b * n[0]) / n[1], a]
    };
    let len = |v: [f64; 3]| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let cross = |u: [f64; 3], v: [f64; 3]| {
        [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
    };
    let nl = len(n);
    let nh = [n[0] / nl, n[1] / nl, n[2] / nl];
    let axis = if nh[2].abs() < 0.9 { [0.0, 0.0, 1.0] } else { [1.0, 0.0, 0.0] };
    let mut e1 = cross(axis, nh);
    let l1 = len(e1);
    e1 = [e1[0] / l1, e1[1] / l1, e1[2] / l1];
    let e2 = cross(nh, e1);
    let dot = |u: [f64; 3], v: [f64; 3]| u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    // q is the point turned a quarter around the normal and scaled by |n|
    (dot(q, e1) / nl, -dot(q, e2) / nl)
}

const STYLES: [(&str, Option<(f64, f64)>); 3] =
    [("#d62728", None), ("#2ca02c", Some((12.0, 6.0))), ("#1f77b4", Some((4.0, 6.0)))];

fn stroke(color: Option<u8>, u: f64) -> String {
    match color {
        Some(c) => {
            let (col, dash) = STYLES[c as usize];
            match dash {
                None => format!("stroke=\"{}\"", col),
                Some((a, b)) => format!("stroke=\"{}\" stroke-dasharray=\"{:.3} {:.3}\"", col, a * u, b * u),
            }
        }
        None => "stroke=\"#555\"".into(),
    }
}

/// Render a drawing. Colours 0, 1, 2 use solid, dashed and dotted strokes;
/// a bi-oriented edge is drawn in two halves, each in the colour of the
/// dart leaving that end.
pub fn write_svg(d: &FlatDrawing, wood: Option<&Wood>, opts: &SvgOptions) -> String {
    let nrm = d.normal;
    let (pw, qw) = opts.window;
    let mut shapes: Vec<String> = Vec::new();
    let mut xs: Vec<(f64, f64)> = Vec::new();
    let pt = |p: [i64; 2], xs: &mut Vec<(f64, f64)>| {
        let s = screen(p, nrm);
        xs.push(s);
        s
    };
    let shift = |p: [i64; 2], at: Offset| {
        let [s, t] = d.periods;
        [p[0] + at.y * s[0] + at.x * t[0], p[1] + at.y * s[1] + at.x * t[1]]
    };
    // sizes follow the extent of the vertex positions
    let mut ext = (f64::MAX, f64::MIN);
    for px in 0..pw {
        for py in 0..qw {
            for v in 0..d.points.len() {
                let (x, y) = screen(d.position(v, Offset::new(px, py)), nrm);
                ext = (ext.0.min(x.min(y)), ext.1.max(x.max(y)));
            }
        }
    }
    let u = ((ext.1 - ext.0) / 400.0).max(1e-3);
    // fundamental parallelogram
    let o = [0, 0];
    let corners = [o, d.periods[1], shift(o, Offset::new(1, 1)), d.periods[0]];
    let poly: Vec<String> = corners
        .iter()
        .map(|&c| {
            let (x, y) = pt(c, &mut xs);
            format!("{:.3},{:.3}", x, y)
        })
        .collect();
    shapes.push(format!(
        "<polygon points=\"{}\" fill=\"#f4f4f4\" stroke=\"#999\" stroke-width=\"{:.3}\"/>",
        poly.join(" "),
        u
    ));
    for px in 0..pw {
        for py in 0..qw {
            let at = Offset::new(px, py);
            if opts.dual {
                for de in &d.dual_edges {
                    let a = d.dual_position(de.from, at);
                    let b = d.dual_position(de.to, at + de.to_at);
                    let mut path = vec![pt(a, &mut xs)];
                    if let Some(m) = de.bend {
                        path.push(pt(shift(m, at), &mut xs));
                    }
                    path.push(pt(b, &mut xs));
                    shapes.push(polyline(&path, "stroke=\"#aaa\"", 0.8 * u));
                }
                for f in 0..d.dual_points.len() {
                    let (x, y) = pt(d.dual_position(f, at), &mut xs);
                    shapes.push(format!(
                        "<rect x=\"{:.3}\" y=\"{:.3}\" width=\"{:.3}\" height=\"{:.3}\" fill=\"#888\"/>",
                        x - 2.0 * u,
                        y - 2.0 * u,
                        4.0 * u,
                        4.0 * u
                    ));
                }
            }
            for de in &d.edges {
                if opts.hidden.contains(&de.edge) {
                    continue;
                }
                let a = d.position(de.from, at);
                let b = d.position(de.to, at + de.to_at);
                let mid = de.bend.map(|m| shift(m, at));
                let mut path = vec![pt(a, &mut xs)];
                if let Some(m) = mid {
                    path.push(pt(m, &mut xs));
                }
                path.push(pt(b, &mut xs));
                let (cp, cm) = wood
                    .and_then(|w| w.state(de.edge))
                    .map(|s| s.colors())
                    .unwrap_or((None, None));
                match (cp, cm) {
                    (Some(_), Some(_)) => {
                        let (h1, h2) = halves(&path);
                        shapes.push(polyline(&h1, &stroke(cp, u), 2.0 * u));
                        shapes.push(polyline(&h2, &stroke(cm, u), 2.0 * u));
                    }
                    (c, None) | (None, c) => shapes.push(polyline(&path, &stroke(c, u), 2.0 * u)),
                }
                if opts.bends {
                    if let Some(m) = mid {
                        let (x, y) = pt(m, &mut xs);
                        shapes.push(format!(
                            "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{:.3}\" fill=\"#bbb\"/>",
                            x,
                            y,
                            2.0 * u
                        ));
                    }
                }
            }
            for v in 0..d.points.len().min(opts.vertex_limit.unwrap_or(usize::MAX)) {
                let (x, y) = pt(d.position(v, at), &mut xs);
                shapes.push(format!(
                    "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{:.3}\" fill=\"black\"/>",
                    x,
                    y,
                    4.0 * u
                ));
            }
        }
    }
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in &xs {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let pad = 0.05 * (x1 - x0).max(y1 - y0).max(1.0);
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.3} {:.3} {:.3} {:.3}\">\n",
        x0 - pad,
        y0 - pad,
        x1 - x0 + 2.0 * pad,
        y1 - y0 + 2.0 * pad
    );
    for sh in shapes {
        s.push_str(&sh);
        s.push('\n');
    }
    s.push_str("</svg>\n");
    s
}

fn polyline(path: &[(f64, f64)], style: &str, width: f64) -> String {
    let pts: Vec<String> = path.iter().map(|(x, y)| format!("{:.3},{:.3}", x, y)).collect();
    format!(
        "<polyline points=\"{}\" fill=\"none\" {} stroke-width=\"{:.3}\"/>",
        pts.join(" "),
        style,
        width
    )
}

/// Split a polyline at half its length.
fn halves(path: &[(f64, f64)]) -> (Vec<(f64, f64)>, Vec<(f64, f64)>) {
    let seg = |a: (f64, f64), b: (f64, f64)| ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt();
    let total: f64 = path.windows(2).map(|w| seg(w[0], w[1])).sum();
    let mut left = total / 2.0;
    let mut first = vec![path[0]];
    for k in 1..path.len() {
        let l = seg(path[k - 1], path[k]);
        if l >= left && l > 0.0 {
            let t = left / l;
            let m = (
                path[k - 1].0 + t * (path[k].0 - path[k - 1].0),
                path[k - 1].1 + t * (path[k].1 - path[k - 1].1),
            );
            first.push(m);
            let mut second = vec![m];
            second.extend_from_slice(&path[k..]);
            return (first, second);
        }
        left -= l;
        first.push(path[k]);
    }
    (first, vec![*path.last().unwrap()])
}
