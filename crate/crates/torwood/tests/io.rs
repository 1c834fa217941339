use proptest::prelude::*;
use torwood::cover::{self, CoverWindow};
use torwood::embed;
use torwood::io::{self, SvgOptions};
use torwood::torus_map::PlanarSuspension;
use torwood::{fixtures, wood_builder, Error};

#[test]
fn all_fixtures_round_trip() {
    let maps = vec![
        fixtures::three_loops(),
        fixtures::two_loops(),
        fixtures::brick(),
        fixtures::example3(),
        fixtures::no_crossing(),
        fixtures::relaxed(),
        fixtures::basic(4).unwrap(),
        fixtures::grid_triangulation(3, 2).unwrap(),
    ];
    for g in maps {
        let text = io::write_tmap(&g);
        assert_eq!(io::parse_tmap(&text).unwrap(), g);
        let w = wood_builder::compute_wood(&g).unwrap();
        assert_eq!(io::parse_wood(&io::write_wood(&w).unwrap(), g.m()).unwrap(), w);
    }
}

#[test]
fn wood_needs_every_edge() {
    let text = io::write_wood(&fixtures::three_loops_wood()).unwrap();
    assert!(matches!(io::parse_wood(&text, 4), Err(Error::Parse { .. })));
    assert!(io::parse_wood(&text, 3).is_ok());
}

#[test]
fn tmap_errors() {
    let bad = [
        "",
        "tmap 2\nvertices 1\n",
        "wood 1\n",
        "tmap 1\nvertices x\n",
        "tmap 1\nvertices 1\nedge 0 0 0 1 0\nrot 0 0+ 0*\n",
        "tmap 1\nvertices 1\nedge 0 0 0 1 0\nbogus 1\n",
    ];
    for t in bad {
        assert!(io::parse_tmap(t).is_err(), "{:?}", t);
    }
    // a well-formed document describing an invalid map
    let t = "tmap 1\nvertices 1\nedge 0 0 0 1 0\nrot 0 0+ 0-\n";
    assert!(matches!(io::parse_tmap(t), Err(Error::InvalidStructure(_))));
}

#[test]
fn pmap_round_trip() {
    let p = PlanarSuspension {
        n: 3,
        edges: vec![(0, 1), (1, 2), (2, 0)],
        rot: vec![vec![0, 5], vec![2, 1], vec![4, 3]],
        roots: [0, 1, 2],
    };
    let text = io::write_pmap(&p);
    assert_eq!(io::parse_pmap(&text).unwrap(), p);
    assert!(io::parse_pmap("pmap 1\nvertices 3\n").is_err());
}

#[test]
fn coords_header_and_rows() {
    let g = fixtures::example3();
    let c = cover::coordinates(&g, &fixtures::example3_wood(), 3).unwrap();
    let text = io::write_coords(&g, &c, 1);
    assert!(text.contains("scale 3\n"));
    assert!(text.contains("S -12 24 -12\n"));
    assert!(text.contains("Sprime 12 24 -36\n"));
    assert!(text.contains("c -1 0 1\n"));
    assert!(text.contains("cprime -2 1 0\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("origin ")).count(), 3);
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 9 * 3);
    let mut home: Vec<String> = text
        .lines()
        .filter_map(|l| l.strip_prefix("v "))
        .filter_map(|l| {
            let t: Vec<&str> = l.split_whitespace().collect();
            (t[1] == "0" && t[2] == "0").then(|| t[3..].join(" "))
        })
        .collect();
    home.sort();
    assert_eq!(home, vec!["0 0 0", "0 12 -11", "6 12 -18"]);
}

#[test]
fn cover_text() {
    let w = CoverWindow::new(&fixtures::three_loops(), 1).unwrap();
    let text = io::write_cover(&w);
    assert!(text.starts_with("cover 1\nradius 1\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("vertex ")).count(), 9);
    assert_eq!(text.lines().filter(|l| l.starts_with("edge ")).count(), w.edges.len());
}

#[test]
fn svg_is_deterministic() {
    let g = fixtures::example3();
    let w = fixtures::example3_wood();
    let (d, _) = embed::one_bend_drawing(&g, &w, 3, [1, 1, 1], 1).unwrap();
    let opts = SvgOptions { dual: true, bends: true, ..SvgOptions::default() };
    let a = io::write_svg(&d, Some(&w), &opts);
    let b = io::write_svg(&d, Some(&w), &opts);
    assert_eq!(a, b);
    assert!(a.starts_with("<svg") || a.starts_with("<?xml"));
    assert!(a.trim_end().ends_with("</svg>"));
    let plain = io::write_svg(&d, None, &SvgOptions::default());
    assert_ne!(a, plain);
}

#[test]
fn obj_lists_points_and_polylines() {
    let g = fixtures::three_loops();
    let w = fixtures::three_loops_wood();
    let c = cover::coordinates(&g, &w, 1).unwrap();
    let scene = embed::geodesic_scene(&g, &c, 1).unwrap();
    let dual = embed::dual_scene(&g, &w, &scene).unwrap();
    let text = io::write_obj(&scene, Some(&dual));
    let vs = text.lines().filter(|l| l.starts_with("v ")).count();
    let ls: Vec<&str> = text.lines().filter(|l| l.starts_with("l ")).collect();
    assert!(vs >= scene.vertices.len());
    assert_eq!(ls.len(), scene.elbows.len() + dual.elbows.len());
    for l in ls {
        for idx in l.split_whitespace().skip(1) {
            let k: usize = idx.parse().unwrap();
            assert!(k >= 1 && k <= vs);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_maps_round_trip(n in 1usize..20, seed in 0u64..100_000) {
        let g = fixtures::random_map(n, seed).unwrap();
        let back = io::parse_tmap(&io::write_tmap(&g)).unwrap();
        prop_assert_eq!(&back, &g);
        let w = wood_builder::compute_wood(&g).unwrap();
        prop_assert_eq!(io::parse_wood(&io::write_wood(&w).unwrap(), g.m()).unwrap(), w);
    }
}
