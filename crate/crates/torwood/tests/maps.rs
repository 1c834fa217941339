use proptest::prelude::*;
use torwood::torus_map::{twin, PlanarSuspension, RawEdge, RawMap};
use torwood::{fixtures, Error, Offset, TorusMap};

fn raw(n: usize, edges: &[(usize, usize, i64, i64)], rot: Vec<Vec<usize>>) -> RawMap {
    RawMap {
        n,
        edges: edges.iter().map(|&(u, v, x, y)| RawEdge { u, v, offset: Offset::new(x, y) }).collect(),
        rot,
    }
}

fn basic_invariants(g: &TorusMap) {
    assert_eq!(g.n() as i64 - g.m() as i64 + g.f() as i64, 0);
    let mut total = Offset::ZERO;
    for d in g.darts() {
        assert_eq!(twin(twin(d)), d);
        assert_eq!(g.offset(twin(d)), -g.offset(d));
        total += g.offset(d);
    }
    assert!(total.is_zero());
    for f in 0..g.f() {
        assert_eq!(g.walk_class(g.face(f)).unwrap(), Offset::ZERO);
    }
}

#[test]
fn fixture_counts() {
    let cases = [
        (fixtures::three_loops(), 1, 3, 2),
        (fixtures::two_loops(), 1, 2, 1),
        (fixtures::brick(), 2, 3, 1),
        (fixtures::example3(), 3, 7, 4),
        (fixtures::grid_triangulation(3, 3).unwrap(), 9, 27, 18),
    ];
    for (g, n, m, f) in cases {
        assert_eq!((g.n(), g.m(), g.f()), (n, m, f));
        basic_invariants(&g);
        assert!(g.toroidal_graph_violation().is_none());
    }
}

#[test]
fn contractible_loop_is_flagged() {
    let g = TorusMap::from_raw(&raw(
        1,
        &[(0, 0, 1, 0), (0, 0, 1, 1), (0, 0, 0, 1), (0, 0, 0, 0)],
        vec![vec![0, 6, 7, 2, 4, 1, 3, 5]],
    ))
    .unwrap();
    assert!(g.toroidal_graph_violation().unwrap().contains("contractible loop"));
}

#[test]
fn homotopic_edges_are_flagged() {
    let g = TorusMap::from_raw(&raw(
        1,
        &[(0, 0, 1, 0), (0, 0, 0, 1), (0, 0, 1, 0)],
        vec![vec![0, 4, 2, 5, 1, 3]],
    ))
    .unwrap();
    assert!(g.toroidal_graph_violation().unwrap().contains("homotopic"));
}

#[test]
fn structural_errors() {
    let cases = vec![
        raw(1, &[(0, 0, 1, 0)], vec![vec![0, 1]]),
        raw(1, &[(0, 0, 1, 0), (0, 0, 0, 1)], vec![vec![0, 2, 1]]),
        raw(1, &[(0, 0, 1, 0), (0, 0, 0, 1)], vec![vec![0, 0, 2, 1, 3]]),
        raw(1, &[(0, 0, 2, 0), (0, 0, 0, 1)], vec![vec![0, 2, 1, 3]]),
        raw(2, &[(0, 0, 1, 0), (0, 0, 0, 1)], vec![vec![0, 2, 1, 3], vec![]]),
        raw(1, &[(0, 3, 1, 0), (0, 0, 0, 1)], vec![vec![0, 2, 1, 3]]),
    ];
    for r in cases {
        match TorusMap::from_raw(&r) {
            Err(Error::InvalidStructure(_)) => {}
            other => panic!("expected a structure error, got {:?}", other.map(|g| g.m())),
        }
    }
}

#[test]
fn homotopy_classes() {
    let g = fixtures::three_loops();
    assert_eq!(g.walk_class(&[0]).unwrap(), Offset::new(1, 0));
    assert_eq!(g.walk_class(&[0, 1]).unwrap(), Offset::ZERO);
    assert_eq!(g.walk_class(&[0, 2, 5]).unwrap(), Offset::new(2, 0));
    let b = fixtures::brick();
    assert!(matches!(b.walk_class(&[0, 2]), Err(Error::NotACycle(_))));
    assert!(matches!(b.walk_class(&[]), Err(Error::NotACycle(_))));
}

#[test]
fn dual_counts() {
    let d = fixtures::three_loops().dual();
    assert_eq!((d.n(), d.m(), d.f()), (2, 3, 1));
    let d = fixtures::example3().dual();
    assert_eq!((d.n(), d.m(), d.f()), (4, 7, 3));
    basic_invariants(&d);
    assert!(d.toroidal_graph_violation().is_none());
}

#[test]
fn angle_map_structure() {
    for g in [fixtures::three_loops(), fixtures::example3(), fixtures::brick(), fixtures::basic(3).unwrap()] {
        let a = g.angle_map();
        assert_eq!(a.n(), g.n() + g.f());
        assert_eq!(a.m(), 2 * g.m());
        assert!(a.faces().iter().all(|f| f.len() == 4));
        for d in a.darts() {
            assert!((a.origin(d) < g.n()) != (a.target(d) < g.n()), "angle map is bipartite");
        }
        for f in g.n()..a.n() {
            assert!(a.degree(f) >= 3);
        }
    }
    let a = fixtures::three_loops().angle_map();
    assert_eq!((a.n(), a.m()), (3, 6));
}

#[test]
fn essential_connectivity() {
    for g in [
        fixtures::three_loops(),
        fixtures::two_loops(),
        fixtures::brick(),
        fixtures::example3(),
        fixtures::relaxed(),
        fixtures::no_crossing(),
    ] {
        assert!(g.is_essentially_3_connected());
    }
    // a vertex of degree two: its two neighbours separate the cover
    let (g, x) = fixtures::three_loops().insert_vertex_in_face(0).unwrap();
    let e = g.rotation(x)[0] / 2;
    let thin = g.delete_edge(e).unwrap();
    assert!(!thin.is_essentially_3_connected());
    assert!(thin.essential_3_connectivity_violation().is_some());
}

#[test]
fn brick_contracts_to_two_loops() {
    let b = fixtures::brick();
    for e in 0..b.m() {
        let c = b.contract_edge(e).unwrap();
        assert_eq!((c.map.n(), c.map.m()), (1, 2));
        assert!(c.map.is_basic());
    }
}

#[test]
fn contract_loop_fails() {
    assert_eq!(fixtures::three_loops().contract_edge(0).unwrap_err(), Error::ContractLoop(0));
}

#[test]
fn contracting_example3_edges() {
    let g = fixtures::example3();
    for e in (0..g.m()).filter(|&e| !g.is_loop(e)) {
        let c = g.contract_edge(e).unwrap();
        assert_eq!(c.map.n(), 2);
        basic_invariants(&c.map);
    }
}

#[test]
fn contracting_triangulations_keeps_them() {
    for seed in 0..20 {
        let g = fixtures::random_triangulation(6, seed).unwrap();
        for e in (0..g.m()).filter(|&e| !g.is_loop(e)) {
            if let Ok(c) = g.contract_edge(e) {
                if c.map.toroidal_graph_violation().is_none() {
                    assert_eq!(c.map.m(), 3 * c.map.n());
                    assert!(c.map.is_triangulation());
                }
            }
        }
    }
}

#[test]
fn quadrangle_through_both_sides_collapses() {
    // edge 3 appears twice on one quadrangle; contracting it leaves the
    // 3-loops
    let g = fixtures::relaxed();
    let c = g.contract_edge(3).unwrap();
    assert_eq!((c.map.n(), c.map.m()), (1, 3));
    assert!(c.map.is_essentially_3_connected());
}

#[test]
fn surviving_cycles_keep_classes() {
    let g = fixtures::example3();
    let c = g.contract_edge(2).unwrap();
    // the loop at vertex 2 avoids the contracted edge
    let k = c.edge_map[3].unwrap();
    assert_eq!(c.map.walk_class(&[2 * k]).unwrap(), g.walk_class(&[6]).unwrap());
}

fn triangle() -> PlanarSuspension {
    PlanarSuspension { n: 3, edges: vec![(0, 1), (1, 2), (2, 0)], rot: vec![vec![0, 5], vec![2, 1], vec![4, 3]], roots: [0, 1, 2] }
}

#[test]
fn suspension_of_a_triangle() {
    let p = triangle();
    let g = TorusMap::from_planar_suspension(&p).unwrap();
    assert_eq!((g.n(), g.m()), (4, 9));
    basic_invariants(&g);
    assert!(g.is_essentially_3_connected());
    let mut bad = p.clone();
    bad.roots = [0, 0, 1];
    assert!(matches!(TorusMap::from_planar_suspension(&bad), Err(Error::BadSuspension(_))));
}

#[test]
fn flips_and_insertions_stay_valid() {
    let mut g = fixtures::three_loops();
    for f in [0, 1, 2] {
        g = g.insert_vertex_in_face(f).unwrap().0;
        basic_invariants(&g);
    }
    for e in 0..g.m() {
        if let Ok(h) = g.flip_edge(e) {
            basic_invariants(&h);
            assert!(h.is_triangulation());
        }
    }
}

#[test]
fn triangulate_stars_large_faces() {
    let g = fixtures::basic(3).unwrap();
    let (t, added) = g.triangulate().unwrap();
    assert!(t.is_triangulation());
    assert_eq!(added, (g.m()..t.m()).collect::<Vec<_>>());
    assert_eq!(t.n(), g.n() + g.faces().iter().filter(|f| f.len() > 3).count());
}

proptest! {
    #[test]
    fn random_triangulations_are_valid(n in 1usize..25, seed in 0u64..10_000) {
        let g = fixtures::random_triangulation(n, seed).unwrap();
        prop_assert_eq!(g.n(), n);
        prop_assert!(g.is_triangulation());
        basic_invariants(&g);
        prop_assert!(g.is_essentially_3_connected());
    }

    #[test]
    fn random_maps_are_valid(n in 1usize..15, seed in 0u64..10_000) {
        let g = fixtures::random_map(n, seed).unwrap();
        basic_invariants(&g);
        prop_assert!(g.toroidal_graph_violation().is_none());
        prop_assert!(g.is_essentially_3_connected());
    }

    #[test]
    fn double_dual_has_the_same_counts(n in 1usize..12, seed in 0u64..1000) {
        let g = fixtures::random_map(n, seed).unwrap();
        let dd = g.dual().dual();
        prop_assert_eq!((dd.n(), dd.m(), dd.f()), (g.n(), g.m(), g.f()));
        for d in g.darts() {
            prop_assert_eq!(dd.degree(dd.origin(d)), g.degree(g.target(d)));
        }
    }
}
