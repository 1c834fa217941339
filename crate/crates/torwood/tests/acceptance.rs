//! Acceptance criteria. Every test prints one `PASS` or `FAIL` line and
//! then asserts it. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use torwood::cover::{self, Lift, Point3};
use torwood::embed;
use torwood::torus_map::{edge_of, twin};
use torwood::wood::{self, EdgeState, MonoCycle};
use torwood::{fixtures, wood_builder, Offset, TorusMap, Wood, WoodType};

fn verdict(id: u32, name: &str, ok: bool, detail: &str) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("{} criterion {:>2} ({}): {}", tag, id, name, detail);
}

fn within(id: u32, elapsed: Duration, limit: Duration) -> bool {
    let ok = elapsed < limit;
    verdict(id, "runtime", ok, &format!("{:.3?} (limit {:?})", elapsed, limit));
    ok
}

/// Named maps, each with a wood: the stored one when the fixture has it,
/// otherwise the computed one.
fn fixture_set() -> Vec<(String, TorusMap, Wood)> {
    let mut out = vec![
        ("3loops".to_string(), fixtures::three_loops(), Some(fixtures::three_loops_wood())),
        ("2loops".to_string(), fixtures::two_loops(), Some(fixtures::two_loops_wood())),
        ("brick".to_string(), fixtures::brick(), Some(fixtures::brick_wood())),
        ("example3".to_string(), fixtures::example3(), Some(fixtures::example3_wood())),
        ("no-crossing".to_string(), fixtures::no_crossing(), None),
        ("relaxed".to_string(), fixtures::relaxed(), None),
        ("grid3x3".to_string(), fixtures::grid_triangulation(3, 3).unwrap(), None),
        ("grid4x2".to_string(), fixtures::grid_triangulation(4, 2).unwrap(), None),
    ];
    for k in 2..=4 {
        out.push((format!("basic{}", k), fixtures::basic(k).unwrap(), None));
    }
    out.into_iter()
        .map(|(name, g, w)| {
            let w = w.unwrap_or_else(|| wood_builder::compute_wood(&g).unwrap());
            (name, g, w)
        })
        .collect()
}

fn random_triangulations(count: u64, max_n: usize, salt: u64) -> Vec<TorusMap> {
    (0..count)
        .map(|k| {
            let n = 1 + (k as usize * 7 + salt as usize) % max_n;
            fixtures::random_triangulation(n, salt * 1000 + k).unwrap()
        })
        .collect()
}

fn sum(p: Point3) -> i64 {
    p.iter().sum()
}

#[test]
fn c01_exact_coordinates() {
    let t = Instant::now();
    let g = fixtures::example3();
    let w = fixtures::example3_wood();
    let c = cover::coordinates(&g, &w, 3).unwrap();
    let elapsed = t.elapsed();
    let got: BTreeSet<Point3> = c.points.iter().copied().collect();
    let want: BTreeSet<Point3> = [[0, 0, 0], [0, 12, -11], [6, 12, -18]].into_iter().collect();
    let ok = got == want
        && c.s == [-12, 24, -12]
        && c.s_prime == [12, 24, -36]
        && c.c == [-1, 0, 1]
        && c.c_prime == [-2, 1, 0];
    verdict(
        1,
        "exact coordinates",
        ok,
        &format!("points {:?} S {:?} S' {:?} c {:?} c' {:?}", c.points, c.s, c.s_prime, c.c, c.c_prime),
    );
    let fast = within(1, elapsed, Duration::from_secs(1));
    assert!(ok && fast);
}

#[test]
fn c02_plane_split() {
    let c = cover::coordinates(&fixtures::example3(), &fixtures::example3_wood(), 3).unwrap();
    let sums: BTreeSet<i64> = c.points.iter().map(|&p| sum(p)).collect();
    let ok = sums == [0, 1].into_iter().collect();
    verdict(2, "plane split", ok, &format!("coordinate sums {:?}", sums));
    assert!(ok);
}

#[test]
fn c03_sum_rule() {
    let mut maps: Vec<(TorusMap, Wood)> = fixture_set().into_iter().map(|(_, g, w)| (g, w)).collect();
    for g in random_triangulations(200, 20, 3) {
        let w = wood_builder::compute_wood(&g).unwrap();
        maps.push((g, w));
    }
    let mut checked = 0;
    let mut bad = Vec::new();
    for (k, (g, w)) in maps.iter().enumerate() {
        let c = cover::coordinates(g, w, g.n() as i64).unwrap();
        for v in 0..g.n() {
            for at in [Offset::ZERO, Offset::new(1, -1)] {
                let x = Lift { v, at };
                let p = c.point(x);
                let want = match c.wood_type {
                    WoodType::Type1 => cover::triangle_size(g, w, &c.lines, x).unwrap(),
                    WoodType::Type2(_) => 0,
                };
                checked += 1;
                if sum(p) != want {
                    bad.push((k, v, at, sum(p), want));
                }
            }
        }
    }
    let ok = bad.is_empty();
    verdict(
        3,
        "sum rule",
        ok,
        &format!("{} maps, {} lifted vertices, mismatches {:?}", maps.len(), checked, &bad[..bad.len().min(3)]),
    );
    assert!(ok);
}

#[test]
fn c04_existence() {
    let t = Instant::now();
    let mut failures = Vec::new();
    let mut type2 = 0;
    for (name, g, _) in fixture_set() {
        let want_basic = g.is_basic();
        match wood_builder::compute_wood(&g).and_then(|w| wood::check_schnyder(&g, &w)) {
            Ok(WoodType::Type2(_)) if want_basic => type2 += 1,
            Ok(WoodType::Type1) if !want_basic => {}
            other => failures.push(format!("{}: {:?}", name, other)),
        }
    }
    let maps = random_triangulations(500, 30, 4);
    for (k, g) in maps.iter().enumerate() {
        match wood_builder::compute_wood(g).and_then(|w| wood::check_schnyder(g, &w)) {
            Ok(WoodType::Type1) => {}
            other => failures.push(format!("random {}: {:?}", k, other)),
        }
    }
    let elapsed = t.elapsed();
    let ok = failures.is_empty();
    verdict(
        4,
        "existence",
        ok,
        &format!("fixtures + {} random maps, {} basic maps of Type 2, failures {:?}", maps.len(), type2, failures),
    );
    let fast = within(4, elapsed, Duration::from_secs(60));
    assert!(ok && fast);
}

#[test]
fn c05_axiom_discrimination() {
    let (g, w) = (fixtures::no_crossing(), fixtures::no_crossing_wood());
    let a_t1 = wood::t1_violation(&g, &w).is_none();
    let a_t2 = wood::check_schnyder(&g, &w).is_ok();

    let (g, w) = (fixtures::relaxed(), fixtures::relaxed_wood());
    let cs = wood::all_mono_cycles(&g, &w).unwrap();
    let b_t1 = wood::t1_violation(&g, &w).is_none();
    let b_t2r = wood::t2_relaxed_violation(&cs).is_none();
    let b_t2 = wood::t2_violation(&cs).is_none();

    let c_t1 = wood::t1_violation(&fixtures::three_loops(), &fixtures::three_loops_bad_orientation()).is_none();

    let ok = a_t1 && !a_t2 && b_t1 && b_t2r && !b_t2 && !c_t1;
    verdict(
        5,
        "axiom discrimination",
        ok,
        &format!(
            "no-crossing T1={} T2={}; relaxed T1'={} T2'={} T2={}; bad orientation T1={}",
            a_t1, a_t2, b_t1, b_t2r, b_t2, c_t1
        ),
    );
    assert!(ok);
}

/// A vertex potential `t` with `b(d) = a(d) + t(head) - t(tail)`, if one
/// exists.
fn offsets_differ_by_potential(h: &TorusMap, a: impl Fn(usize) -> Offset) -> bool {
    let mut t = vec![None; h.n()];
    t[0] = Some(Offset::ZERO);
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for &d in h.rotation(x) {
            let y = h.target(d);
            let ty = t[x].unwrap() + h.offset(d) - a(d);
            match t[y] {
                None => {
                    t[y] = Some(ty);
                    stack.push(y);
                }
                Some(s) if s != ty => return false,
                _ => {}
            }
        }
    }
    true
}

fn same_up_to_rotation(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && (0..a.len()).any(|s| (0..a.len()).all(|k| a[(s + k) % a.len()] == b[k]))
}

#[test]
fn c06_duality() {
    let mut problems = Vec::new();
    let fixtures = fixture_set();
    for (name, g, w) in &fixtures {
        let ty = wood::check_schnyder(g, w).unwrap();
        let gd = g.dual();
        let wd = wood::dual_wood(g, w).unwrap();
        match wood::check_schnyder(&gd, &wd) {
            Ok(t) if t == ty => {}
            other => problems.push(format!("{}: dual wood {:?}, primal {:?}", name, other, ty)),
        }
        // dual of the dual: dart d of the double dual is dart twin(d), and
        // vertex v is the double dual vertex where the darts entering v leave
        let gdd = gd.dual();
        let wdd = wood::dual_wood(&gd, &wd).unwrap();
        let mut phi = vec![None; g.n()];
        let mut darts_match = gdd.n() == g.n() && gdd.m() == g.m();
        for d in g.darts() {
            match phi[g.target(d)] {
                None => phi[g.target(d)] = Some(gdd.origin(d)),
                Some(x) => darts_match &= x == gdd.origin(d),
            }
            darts_match &= wdd.color(d) == w.color(twin(d));
        }
        let image: HashSet<usize> = phi.iter().flatten().copied().collect();
        darts_match &= image.len() == g.n();
        let rot_match = darts_match
            && (0..g.n()).all(|v| {
                let r: Vec<usize> = gdd.rotation(phi[v].unwrap()).iter().map(|&d| twin(d)).collect();
                same_up_to_rotation(&r, g.rotation(v))
            });
        let offsets_match = offsets_differ_by_potential(&gdd, |d| g.offset(twin(d)));
        if !(darts_match && rot_match && offsets_match) {
            problems.push(format!(
                "{}: double dual darts {} rotations {} offsets {}",
                name, darts_match, rot_match, offsets_match
            ));
        }
        // dual cycles are the primal cycles reversed
        for i in 0..3u8 {
            let mut p: Vec<Offset> = wood::mono_cycles(g, w, i).unwrap().iter().map(|c| -c.class).collect();
            let mut q: Vec<Offset> = wood::mono_cycles(&gd, &wd, i).unwrap().iter().map(|c| c.class).collect();
            p.sort_by_key(|o| (o.x, o.y));
            p.dedup();
            q.sort_by_key(|o| (o.x, o.y));
            q.dedup();
            if p != q {
                problems.push(format!("{}: colour {} dual classes {:?}, reversed primal {:?}", name, i, q, p));
            }
        }
    }
    let ok = problems.is_empty();
    verdict(6, "duality", ok, &format!("{} fixtures, problems {:?}", fixtures.len(), problems));
    assert!(ok);
}

#[test]
fn c07_geodesic_embedding() {
    let mut maps: Vec<(String, TorusMap, Wood)> = fixture_set();
    for (k, g) in random_triangulations(50, 15, 7).into_iter().enumerate() {
        let w = wood_builder::compute_wood(&g).unwrap();
        maps.push((format!("random{}", k), g, w));
    }
    let mut problems = Vec::new();
    let (mut arcs, mut overruns, mut edges) = (0, 0, 0);
    for (name, g, w) in &maps {
        let c = cover::coordinates(g, w, g.n() as i64).unwrap();
        let scene = embed::geodesic_scene(g, &c, 1).unwrap();
        match embed::check_geodesic(g, w, &c, &scene) {
            Ok(r) => {
                arcs += r.arcs;
                overruns += r.overrunning;
            }
            Err(e) => problems.push(format!("{} primal: {}", name, e)),
        }
        let dual = embed::dual_scene(g, w, &scene).unwrap();
        match embed::check_dual(g, &c, &scene, &dual, true) {
            Ok(r) => {
                arcs += r.arcs;
                overruns += r.overrunning;
            }
            Err(e) => problems.push(format!("{} dual: {}", name, e)),
        }
        let bound = 2 * c.scale * c.faces;
        for el in &scene.elbows {
            edges += 1;
            let (u, v) = (c.point(el.ends[0]), c.point(el.ends[1]));
            if (0..3).any(|i| (v[i] - u[i]).abs() > bound) {
                problems.push(format!("{}: edge {} exceeds 2Nf = {}", name, el.edge, bound));
            }
        }
    }
    let ok = problems.is_empty();
    verdict(
        7,
        "geodesic embedding",
        ok,
        &format!(
            "{} maps on a 3x3 window, {} lifted edges within 2Nf, {} arcs of which {} run past their elbow segment, problems {:?}",
            maps.len(),
            edges,
            arcs,
            overruns,
            &problems[..problems.len().min(3)]
        ),
    );
    assert!(ok);
}

fn orient(a: [i64; 2], b: [i64; 2], c: [i64; 2]) -> i128 {
    let (ax, ay) = (a[0] as i128, a[1] as i128);
    let (bx, by) = (b[0] as i128, b[1] as i128);
    let (cx, cy) = (c[0] as i128, c[1] as i128);
    (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
}

fn on_segment(p: [i64; 2], a: [i64; 2], b: [i64; 2]) -> bool {
    orient(a, b, p) == 0
        && p[0] >= a[0].min(b[0])
        && p[0] <= a[0].max(b[0])
        && p[1] >= a[1].min(b[1])
        && p[1] <= a[1].max(b[1])
}

/// Two closed segments meet anywhere other than at a common endpoint.
fn bad_meeting(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> bool {
    let shared: Vec<[i64; 2]> = a.iter().filter(|p| b.contains(p)).copied().collect();
    let (o1, o2) = (orient(a[0], a[1], b[0]), orient(a[0], a[1], b[1]));
    let (o3, o4) = (orient(b[0], b[1], a[0]), orient(b[0], b[1], a[1]));
    if o1 == 0 && o2 == 0 {
        // collinear: overlap beyond one shared point is bad
        let key = |p: [i64; 2]| (p[0], p[1]);
        let (a0, a1) = (key(a[0]).min(key(a[1])), key(a[0]).max(key(a[1])));
        let (b0, b1) = (key(b[0]).min(key(b[1])), key(b[0]).max(key(b[1])));
        let lo = a0.max(b0);
        let hi = a1.min(b1);
        return lo < hi || (lo == hi && shared.is_empty());
    }
    if (o1 > 0 && o2 < 0 || o1 < 0 && o2 > 0) && (o3 > 0 && o4 < 0 || o3 < 0 && o4 > 0) {
        return true;
    }
    // touching: an endpoint of one lies on the other
    for p in [a[0], a[1]] {
        if !shared.contains(&p) && on_segment(p, b[0], b[1]) {
            return true;
        }
    }
    for p in [b[0], b[1]] {
        if !shared.contains(&p) && on_segment(p, a[0], a[1]) {
            return true;
        }
    }
    false
}

#[test]
fn c08_straight_line() {
    let t = Instant::now();
    let mut maps: Vec<(String, TorusMap)> = fixture_set().into_iter().map(|(n, g, _)| (n, g)).collect();
    for (k, g) in random_triangulations(50, 15, 8).into_iter().enumerate() {
        maps.push((format!("random{}", k), g));
    }
    let mut problems = Vec::new();
    let (mut faces, mut pairs, mut starred) = (0usize, 0usize, 0usize);
    for (name, g0) in &maps {
        // faces of degree four or more are starred first
        let g = if g0.is_triangulation() {
            g0.clone()
        } else {
            starred += 1;
            g0.triangulate().unwrap().0
        };
        let w = wood_builder::compute_wood(&g).unwrap();
        let c0 = cover::coordinates(&g, &w, g.n() as i64).unwrap();
        let scale = cover::straight_line_scale(&g, c0.gamma);
        let c = cover::coordinates(&g, &w, scale).unwrap();
        for px in -1..=1 {
            for py in -1..=1 {
                for f in 0..g.f() {
                    let p: Vec<Point3> = cover::lifted_face_corners(&g, f, Offset::new(px, py))
                        .into_iter()
                        .map(|x| c.point(x))
                        .collect();
                    let (a, b) = (embed_sub(p[1], p[0]), embed_sub(p[2], p[0]));
                    let n = [
                        a[1] as i128 * b[2] as i128 - a[2] as i128 * b[1] as i128,
                        a[2] as i128 * b[0] as i128 - a[0] as i128 * b[2] as i128,
                        a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128,
                    ];
                    faces += 1;
                    if n.iter().any(|&x| x <= 0) {
                        problems.push(format!("{}: face {} at ({}, {}) has cross product {:?}", name, f, px, py, n));
                    }
                }
            }
        }
        let d = match embed::straight_line_drawing(&g, &w, [1, 1, 1], 1) {
            Ok(d) => d,
            Err(e) => {
                problems.push(format!("{}: {}", name, e));
                continue;
            }
        };
        let mut segs = Vec::new();
        let mut points = Vec::new();
        for px in -1..=1 {
            for py in -1..=1 {
                let at = Offset::new(px, py);
                for v in 0..g.n() {
                    points.push(d.position(v, at));
                }
                for e in 0..g.m() {
                    let to = at + g.offset(2 * e);
                    segs.push((e, [d.position(g.origin(2 * e), at), d.position(g.target(2 * e), to)]));
                }
            }
        }
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                pairs += 1;
                if bad_meeting(segs[i].1, segs[j].1) {
                    problems.push(format!("{}: edges {} and {} cross", name, segs[i].0, segs[j].0));
                }
            }
            for &p in &points {
                let s = segs[i].1;
                if p != s[0] && p != s[1] && on_segment(p, s[0], s[1]) {
                    problems.push(format!("{}: a vertex lies on edge {}", name, segs[i].0));
                }
            }
        }
    }
    let elapsed = t.elapsed();
    let ok = problems.is_empty();
    verdict(
        8,
        "straight-line drawing",
        ok,
        &format!(
            "{} maps ({} starred first), {} window faces positive, {} segment pairs scanned, problems {:?}",
            maps.len(),
            starred,
            faces,
            pairs,
            &problems[..problems.len().min(3)]
        ),
    );
    let fast = within(8, elapsed, Duration::from_secs(120));
    assert!(ok && fast);
}

fn embed_sub(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[test]
fn c09_grid_bound() {
    let mut worst: f64 = 0.0;
    let mut excess = Vec::new();
    let mut notes = Vec::new();
    for n in [5usize, 10, 15, 20] {
        for seed in 0..5u64 {
            let g = match fixtures::random_simple_triangulation(n, seed) {
                Ok(g) => g,
                Err(_) => {
                    if seed == 0 {
                        notes.push(format!("n={} has no simple triangulation, used loops and multi-edges", n));
                    }
                    fixtures::random_triangulation(n, seed).unwrap()
                }
            };
            let w = wood_builder::compute_wood(&g).unwrap();
            let c0 = cover::coordinates(&g, &w, g.n() as i64).unwrap();
            let scale = cover::straight_line_scale(&g, c0.gamma);
            let c = cover::coordinates(&g, &w, scale).unwrap();
            let m = embed::grid_metrics(&g, &c);
            let limit = 8.0 * m.gamma as f64 * m.scale as f64 * m.f as f64;
            let ratio = m.y_len.max(m.y_prime_len) / limit;
            worst = worst.max(ratio);
            if ratio > 1.0 {
                excess.push(format!("n={} seed={} |Y|={:.0} |Y'|={:.0} bound={:.0}", n, seed, m.y_len, m.y_prime_len, limit));
            }
        }
    }
    let ok = excess.is_empty();
    verdict(
        9,
        "grid bound",
        ok,
        &format!("max(|Y|,|Y'|)/(8 gamma N f) peaks at {:.4}; excess {:?}; {}", worst, excess, notes.join("; ")),
    );
    assert!(ok);
}

fn all_woods(m: usize) -> Vec<Wood> {
    let states = EdgeState::all();
    let mut out = Vec::new();
    let mut idx = vec![0usize; m];
    loop {
        out.push(Wood::from_states(&idx.iter().map(|&k| states[k]).collect::<Vec<_>>()));
        let mut k = 0;
        while k < m {
            idx[k] += 1;
            if idx[k] < states.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == m {
            return out;
        }
    }
}

fn dart_key(c: &MonoCycle) -> Vec<usize> {
    let mut v = c.darts.clone();
    v.sort();
    v
}

fn shares_vertex(a: &MonoCycle, b: &MonoCycle) -> bool {
    let s: HashSet<usize> = a.vertices.iter().copied().collect();
    b.vertices.iter().any(|v| s.contains(v))
}

/// Type read off the definition: colours `i-1` and `i+1` have the same
/// cycles up to reversal, or every two cycles of different colours have
/// independent classes.
fn definitional_type(cs: &[Vec<MonoCycle>; 3]) -> Option<WoodType> {
    for i in 0..3u8 {
        let a = &cs[((i + 2) % 3) as usize];
        let b = &cs[((i + 1) % 3) as usize];
        let mut ka: Vec<Vec<usize>> = a.iter().map(dart_key).collect();
        let mut kb: Vec<Vec<usize>> = b
            .iter()
            .map(|c| {
                let mut v: Vec<usize> = c.darts.iter().map(|&d| twin(d)).collect();
                v.sort();
                v
            })
            .collect();
        ka.sort();
        kb.sort();
        if ka == kb {
            return Some(WoodType::Type2(i));
        }
    }
    let crossing = (0..3).all(|i| {
        let j = (i + 1) % 3;
        cs[i].iter().all(|c| cs[j].iter().all(|d| c.class.det(d.class) != 0))
    });
    crossing.then_some(WoodType::Type1)
}

/// Orientation of every vertex is right, and for some `i` the cycles of
/// colours `i-1` and `i+1` are reversals with every cycle meeting a cycle
/// of each other colour.
fn type2_direct(g: &TorusMap, w: &Wood) -> bool {
    if wood::t1_violation(g, w).is_some() {
        return false;
    }
    let cs = wood::all_mono_cycles(g, w).unwrap();
    (0..3u8).any(|i| {
        matches!(definitional_type(&cs), Some(WoodType::Type2(k)) if k == i)
            && (0..3).all(|a| {
                cs[a].iter().all(|c| (0..3).filter(|&b| b != a).all(|b| cs[b].iter().any(|d| shares_vertex(c, d))))
            })
    })
}

#[test]
fn c10_brute_force() {
    let mut problems = Vec::new();
    let mut lines = Vec::new();
    for (name, g) in [("3loops", fixtures::three_loops()), ("2loops", fixtures::two_loops())] {
        let woods = all_woods(g.m());
        let (mut schnyder, mut relaxed, mut direct) = (0, 0, 0);
        for w in &woods {
            let full = wood::check_schnyder(&g, w);
            let t1 = wood::t1_violation(&g, w).is_none();
            let rel = t1 && {
                let cs = wood::all_mono_cycles(&g, w).unwrap();
                wood::t2_relaxed_violation(&cs).is_none() && wood::t3_relaxed_violation(&cs).is_none()
            };
            let d2 = type2_direct(&g, w);
            schnyder += full.is_ok() as usize;
            relaxed += rel as usize;
            direct += d2 as usize;
            if full.is_ok() != (rel || d2) {
                problems.push(format!("{} {:?}: T1&T2 {:?} relaxed {} type-2 {}", name, w.states(), full, rel, d2));
            }
            if rel != matches!(full, Ok(WoodType::Type1)) {
                problems.push(format!("{} {:?}: relaxed {} but {:?}", name, w.states(), rel, full));
            }
            if let Ok(ty) = full {
                let cs = wood::all_mono_cycles(&g, w).unwrap();
                if definitional_type(&cs) != Some(ty) {
                    problems.push(format!("{} {:?}: classified {:?}, definition {:?}", name, w.states(), ty, definitional_type(&cs)));
                }
            }
        }
        lines.push(format!(
            "{}: {} colourings, {} Schnyder, {} relaxed, {} Type 2 by direct check",
            name,
            woods.len(),
            schnyder,
            relaxed,
            direct
        ));
    }
    let ok = problems.is_empty();
    verdict(10, "brute force", ok, &format!("{}; problems {:?}", lines.join("; "), &problems[..problems.len().min(3)]));
    assert!(ok);
}

#[test]
fn c11_edge_disjoint_triple() {
    let mut problems = Vec::new();
    let maps = random_triangulations(100, 20, 11);
    for (k, g) in maps.iter().enumerate() {
        let w = wood_builder::compute_wood(g).unwrap();
        let t = match wood::edge_disjoint_triple(g, &w) {
            Ok(t) => t,
            Err(e) => {
                problems.push(format!("map {}: {}", k, e));
                continue;
            }
        };
        let mut classes = Vec::new();
        let mut used = HashSet::new();
        for c in &t {
            // closed walk, summed class
            let mut class = Offset::ZERO;
            for (j, &d) in c.darts.iter().enumerate() {
                let nx = c.darts[(j + 1) % c.darts.len()];
                if g.target(d) != g.origin(nx) {
                    problems.push(format!("map {}: colour {} cycle breaks", k, c.color));
                }
                class += g.offset(d);
                if !used.insert(edge_of(d)) {
                    problems.push(format!("map {}: edge {} used twice", k, edge_of(d)));
                }
            }
            if class != c.class || class.is_zero() {
                problems.push(format!("map {}: colour {} class {:?}", k, c.color, class));
            }
            classes.push(class);
        }
        for i in 0..3 {
            for j in i + 1..3 {
                if classes[i] == classes[j] || classes[i] == -classes[j] {
                    problems.push(format!("map {}: classes {:?} and {:?} agree", k, classes[i], classes[j]));
                }
            }
        }
    }
    let ok = problems.is_empty();
    verdict(11, "edge-disjoint triple", ok, &format!("{} maps, problems {:?}", maps.len(), &problems[..problems.len().min(3)]));
    assert!(ok);
}
