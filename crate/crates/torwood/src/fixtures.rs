//! Small named maps and random triangulations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::torus_map::{Offset, RawEdge, RawMap, TorusMap};
use crate::wood::{EdgeState, Wood};

fn build(n: usize, edges: &[(usize, usize, i64, i64)], rot: Vec<Vec<usize>>) -> TorusMap {
    let raw = RawMap {
        n,
        edges: edges
            .iter()
            .map(|&(u, v, x, y)| RawEdge { u, v, offset: Offset::new(x, y) })
            .collect(),
        rot,
    };
    TorusMap::from_raw(&raw).expect("fixture is a valid map")
}

/// One vertex with three loops of classes (1,0), (1,1) and (0,1): the
/// smallest toroidal triangulation.
pub fn three_loops() -> TorusMap {
    build(1, &[(0, 0, 1, 0), (0, 0, 1, 1), (0, 0, 0, 1)], vec![vec![0, 2, 4, 1, 3, 5]])
}

/// One vertex with two loops and a single quadrangular face.
pub fn two_loops() -> TorusMap {
    build(1, &[(0, 0, 1, 0), (0, 0, 0, 1)], vec![vec![0, 2, 1, 3]])
}

/// Two vertices joined by three edges, with a single hexagonal face.
pub fn brick() -> TorusMap {
    build(
        2,
        &[(0, 1, 0, 0), (0, 1, -1, 0), (0, 1, 0, -1)],
        vec![vec![0, 2, 4], vec![5, 1, 3]],
    )
}

/// An `n`-cycle winding once horizontally, with a vertical loop at each
/// vertex.
pub fn basic(n: usize) -> Result<TorusMap> {
    if n == 0 {
        return Err(Error::InvalidStructure("basic map needs a vertex".into()));
    }
    if n == 1 {
        return Ok(two_loops());
    }
    // edge k: spine from k to k+1; edge n+k: loop at k
    let mut edges = Vec::new();
    for k in 0..n {
        let dx = if k + 1 == n { 1 } else { 0 };
        edges.push((k, (k + 1) % n, dx, 0));
    }
    for k in 0..n {
        edges.push((k, k, 0, 1));
    }
    let rot = (0..n)
        .map(|k| {
            let back = (k + n - 1) % n;
            vec![2 * k, 2 * (n + k), 2 * back + 1, 2 * (n + k) + 1]
        })
        .collect();
    Ok(build(n, &edges, rot))
}

/// Three vertices, seven edges and four faces. The cycles of colour 1 of
/// [`example3_wood`] are a loop at vertex 2 and the cycle through vertices
/// 0 and 1; edges 0 and 2 are bi-oriented. With scale 3 and the default
/// origin lines its region vectors are (0,0,0), (0,12,-11) and (6,12,-18).
pub fn example3() -> TorusMap {
    build(
        3,
        &[
            (1, 2, 0, 0),
            (2, 0, 1, 0),
            (1, 0, 0, 0),
            (2, 2, 0, 1),
            (0, 1, 0, -1),
            (2, 0, 0, 1),
            (2, 0, 1, -1),
        ],
        vec![vec![13, 3, 8, 11, 5], vec![0, 9, 4], vec![6, 10, 1, 7, 12, 2]],
    )
}

pub fn example3_wood() -> Wood {
    use EdgeState::*;
    Wood::from_states(&[
        Both { plus: 0, minus: 2 },
        Minus(2),
        Both { plus: 2, minus: 1 },
        Plus(1),
        Minus(1),
        Minus(0),
        Plus(0),
    ])
}

/// A Type 1 wood of [`three_loops`].
pub fn three_loops_wood() -> Wood {
    use EdgeState::*;
    Wood::from_states(&[Plus(0), Minus(2), Plus(1)])
}

/// An orientation of [`three_loops`] with three consecutive outgoing darts
/// at the vertex. It gives out-degree three but no Schnyder wood.
pub fn three_loops_bad_orientation() -> Wood {
    use EdgeState::*;
    Wood::from_states(&[Plus(0), Plus(1), Plus(2)])
}

/// The Type 2 wood of [`two_loops`]: one loop bi-oriented in colours 0
/// and 2, the other in colour 1.
pub fn two_loops_wood() -> Wood {
    use EdgeState::*;
    Wood::from_states(&[Both { plus: 0, minus: 2 }, Plus(1)])
}

/// A Type 1 wood of [`brick`] with every edge bi-oriented.
pub fn brick_wood() -> Wood {
    use EdgeState::*;
    Wood::from_states(&[
        Both { plus: 0, minus: 1 },
        Both { plus: 1, minus: 2 },
        Both { plus: 2, minus: 0 },
    ])
}

/// A triangulation on four vertices.
pub fn no_crossing() -> TorusMap {
    build(
        4,
        &[
            (1, 0, 0, 0),
            (0, 0, 1, 1),
            (0, 1, -1, -1),
            (2, 1, 0, 0),
            (1, 1, -1, -1),
            (0, 3, 0, 0),
            (0, 2, 0, -1),
            (2, 2, 1, 1),
            (2, 1, 1, 1),
            (0, 3, 1, 1),
            (2, 3, 1, 2),
            (3, 2, 0, -1),
        ],
        vec![
            vec![2, 1, 4, 3, 10, 12, 18],
            vec![5, 9, 7, 17, 8, 0],
            vec![23, 15, 6, 16, 14, 20, 13],
            vec![22, 11, 19, 21],
        ],
    )
}

/// A colouring of [`no_crossing`] where every vertex has the local
/// Schnyder property but no two monochromatic cycles of different colours
/// meet.
pub fn no_crossing_wood() -> Wood {
    use EdgeState::*;
    Wood::from_states(&[
        Minus(1),
        Plus(0),
        Minus(0),
        Plus(0),
        Minus(1),
        Plus(2),
        Minus(1),
        Minus(2),
        Minus(2),
        Minus(1),
        Minus(2),
        Plus(0),
    ])
}

/// Two vertices, five edges, three faces.
pub fn relaxed() -> TorusMap {
    build(
        2,
        &[(0, 1, 0, 0), (0, 0, 0, 1), (1, 0, 0, -1), (1, 0, -1, -4), (1, 1, 0, -1)],
        vec![vec![7, 2, 5, 0, 3], vec![9, 6, 8, 4, 1]],
    )
}

/// A colouring of [`relaxed`] where each pair of colours has meeting
/// cycles, yet one of the two cycles of colour 1 meets no cycle of
/// colour 2.
pub fn relaxed_wood() -> Wood {
    use EdgeState::*;
    Wood::from_states(&[Plus(2), Plus(1), Plus(0), Minus(0), Both { plus: 2, minus: 1 }])
}

/// A triangulated `a` by `b` grid: every vertex is joined to its east,
/// north and north-east neighbours.
pub fn grid_triangulation(a: usize, b: usize) -> Result<TorusMap> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidStructure("grid needs positive sides".into()));
    }
    let id = |x: usize, y: usize| (y % b) * a + (x % a);
    let mut edges = Vec::new();
    for y in 0..b {
        for x in 0..a {
            let wrap = |k: usize, s: usize| if k + 1 == s { 1 } else { 0 };
            edges.push((id(x, y), id(x + 1, y), wrap(x, a), 0));
            edges.push((id(x, y), id(x + 1, y + 1), wrap(x, a), wrap(y, b)));
            edges.push((id(x, y), id(x, y + 1), 0, wrap(y, b)));
        }
    }
    // darts at a vertex, counterclockwise: E, NE, N, W, SW, S
    let mut rot = vec![Vec::new(); a * b];
    for y in 0..b {
        for x in 0..a {
            let v = id(x, y);
            let e = |xx: usize, yy: usize, k: usize| 3 * id(xx, yy) + k;
            rot[v] = vec![
                2 * e(x, y, 0),
                2 * e(x, y, 1),
                2 * e(x, y, 2),
                2 * e(x + a - 1, y, 0) + 1,
                2 * e(x + a - 1, y + b - 1, 1) + 1,
                2 * e(x, y + b - 1, 2) + 1,
            ];
        }
    }
    Ok(build(a * b, &edges, rot))
}

/// A random essentially 3-connected toroidal triangulation with `n`
/// vertices: grow the three-loops map by splitting random faces, then apply
/// random edge flips that keep the map essentially 3-connected.
pub fn random_triangulation(n: usize, seed: u64) -> Result<TorusMap> {
    if n == 0 {
        return Err(Error::InvalidStructure("triangulation needs a vertex".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = three_loops();
    while g.n() < n {
        let f = rng.gen_range(0..g.f());
        g = g.insert_vertex_in_face(f)?.0;
    }
    for _ in 0..3 * g.m() {
        let e = rng.gen_range(0..g.m());
        if let Ok(h) = g.flip_edge(e) {
            if h.is_essentially_3_connected() {
                g = h;
            }
        }
    }
    Ok(g)
}

/// A random essentially 3-connected toroidal map with `n` vertices that is
/// usually not a triangulation: start from a random triangulation and
/// delete random edges while the map stays essentially 3-connected.
pub fn random_map(n: usize, seed: u64) -> Result<TorusMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xdead);
    let mut g = random_triangulation(n, seed)?;
    let deletions = rng.gen_range(0..=g.m() / 2);
    for _ in 0..deletions {
        let e = rng.gen_range(0..g.m());
        if let Ok(h) = g.delete_edge(e) {
            if h.is_essentially_3_connected() {
                g = h;
            }
        }
    }
    Ok(g)
}

/// Number of loops and parallel edges.
pub fn multiplicity_defect(g: &TorusMap) -> usize {
    let mut pairs = std::collections::HashMap::new();
    let mut bad = 0;
    for e in 0..g.m() {
        let (u, v) = (g.origin(2 * e), g.target(2 * e));
        if u == v {
            bad += 1;
            continue;
        }
        let c = pairs.entry((u.min(v), u.max(v))).or_insert(0);
        *c += 1;
        if *c > 1 {
            bad += 1;
        }
    }
    bad
}

/// A random triangulation without loops or multiple edges. Such maps need
/// at least seven vertices.
pub fn random_simple_triangulation(n: usize, seed: u64) -> Result<TorusMap> {
    if n < 7 {
        return Err(Error::Impossible(format!("no simple toroidal triangulation has {} vertices", n)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut g = random_triangulation(n, seed)?;
    let mut defect = multiplicity_defect(&g);
    let mut tries = 0;
    while defect > 0 {
        tries += 1;
        if tries > 200 * g.m() {
            return Err(Error::Impossible("flip search did not reach a simple map".into()));
        }
        let e = rng.gen_range(0..g.m());
        if let Ok(h) = g.flip_edge(e) {
            let d = multiplicity_defect(&h);
            if d <= defect && h.is_essentially_3_connected() {
                g = h;
                defect = d;
            }
        }
    }
    Ok(g)
}
