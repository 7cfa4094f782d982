use geonet::construct::overlay_trees;
use geonet::irreducible::witness_net;
use geonet::{
    build_default_overlay_net, build_overlay_net, find_proper_subnet, is_geodesic_subnet,
    is_irreducible, verify_with, DegreeRule, Net, OverlayTerminals, Point, Segment,
};

/// Edges of `net` lying on some segment of `tree`.
fn covered_by(net: &Net, tree: &Net) -> Vec<usize> {
    (0..net.edge_count())
        .filter(|&e| {
            let [p, q] = net.segment(e).endpoints();
            tree.edges().iter().enumerate().any(|(f, _)| {
                let s: Segment = tree.segment(f);
                [p, q].iter().all(|&r| {
                    let t = s.project(r);
                    s.line_distance(r) < 1e-9 && t > -1e-9 && t < 1.0 + 1e-9
                })
            })
        })
        .collect()
}

#[test]
fn default_overlay_is_valid_and_reducible() {
    let net = build_default_overlay_net().unwrap();
    let report = geonet::verify(&net, 1e-9);
    assert!(report.passed, "{report:?}");
    assert!(report.out_of_balance_ids().is_empty());
    let pinned: Vec<&str> = net
        .vertices()
        .iter()
        .filter(|v| !v.is_balanced())
        .map(|v| v.id.as_str())
        .collect();
    assert_eq!(pinned, ["A", "C", "X", "Z"]);
    assert!(!is_irreducible(&net, 1e-9).unwrap());
}

#[test]
fn fixed_points_of_the_symmetric_overlay() {
    let net = build_default_overlay_net().unwrap();
    let at = |id: &str| net.pos(net.index_of(id).unwrap());
    assert!(at("B2").distance(Point::new(0.0, 9.0)) < 1e-9);
    assert!(at("Y2").distance(Point::new(0.0, 3.0)) < 1e-9);
    // L and N mirror each other.
    assert!((at("L").x + at("N").x).abs() < 1e-9 && (at("L").y - at("N").y).abs() < 1e-9);
    // AZ and CX cross on the axis, on the segment B2 Y2.
    assert!(net
        .vertices()
        .iter()
        .any(|v| v.pos.distance(Point::new(0.0, 5.0)) < 1e-9));
}

#[test]
fn every_tree_is_a_subnet() {
    let t = OverlayTerminals::default();
    let net = build_default_overlay_net().unwrap();
    let trees = overlay_trees(&t).unwrap();
    assert_eq!(trees.len(), 7);
    for tree in &trees {
        let edges = covered_by(&net, tree);
        assert!(!edges.is_empty() && edges.len() < net.edge_count());
        let seg_len: f64 = (0..tree.edge_count())
            .map(|f| tree.segment(f).length())
            .sum();
        let cov_len: f64 = edges.iter().map(|&e| net.segment(e).length()).sum();
        assert!((seg_len - cov_len).abs() < 1e-9);
        assert!(is_geodesic_subnet(&net, &edges, 1e-9));
    }
}

#[test]
fn witness_is_one_of_the_trees() {
    let t = OverlayTerminals::default();
    let net = build_default_overlay_net().unwrap();
    let cert = find_proper_subnet(&net, 1e-9).unwrap();
    let mut witness = cert.witness().expect("reducible").to_vec();
    witness.sort_unstable();
    assert!(is_geodesic_subnet(&net, &witness, 1e-9));
    let trees: Vec<Vec<usize>> = overlay_trees(&t)
        .unwrap()
        .iter()
        .map(|tree| covered_by(&net, tree))
        .collect();
    assert!(trees.contains(&witness), "{witness:?}");
    let w = witness_net(&net, &witness, 1e-9);
    assert!(verify_with(&w, 1e-9, DegreeRule::Relaxed).passed);
}

#[test]
fn skewed_terminals_still_build() {
    let t = OverlayTerminals::default();
    let net = build_overlay_net(
        Point::new(t.a.x - 0.3, t.a.y + 0.2),
        t.c,
        Point::new(t.x.x, t.x.y - 0.1),
        t.z,
    )
    .unwrap();
    assert!(geonet::verify(&net, 1e-9).passed);
}
