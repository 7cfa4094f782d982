mod common;

use common::{fd_gradient, random_net};
use geonet::{
    build_fermat_tripod, build_paper_net, fermat_point, length_gradient, relax, total_length,
    verify, Net, Point, RelaxParams, Topology, Triangle, Vec2, Vertex,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn gradient_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let net = random_net(&mut rng, 10, 6, 0.1);
        let g = length_gradient(&net).unwrap();
        for v in 0..net.vertex_count() {
            let Some(gv) = g.get(v) else {
                assert!(!net.vertex(v).is_balanced());
                continue;
            };
            let (fx, fy) = fd_gradient(&net, v, 1e-6);
            let err = Vec2::new(fx - gv.x, fy - gv.y).norm() / gv.norm().max(1.0);
            assert!(err < 1e-6, "{} err {err:e}", net.id(v));
            assert!(gv.norm() <= net.degree(v) as f64 + 1e-12);
        }
    }
}

#[test]
fn paper_net_is_critical() {
    let net = build_paper_net().unwrap();
    let g = length_gradient(&net).unwrap();
    assert!(g.max_norm() < 1e-9);
    let r = relax(&Topology::new(net.clone()), RelaxParams::default()).unwrap();
    assert_eq!(r.iterations, 0);
    assert!(r.converged);
    assert_eq!(r.net, net);
}

#[test]
fn tripod_relaxes_to_fermat_point() {
    let (a, b, c) = (
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(0.0, 1.0),
    );
    let centroid = Point::new(1.0 / 3.0, 1.0 / 3.0);
    let net = Net::from_id_edges(
        vec![
            Vertex::unbalanced("p1", a),
            Vertex::unbalanced("p2", b),
            Vertex::unbalanced("p3", c),
            Vertex::balanced("f", centroid),
        ],
        &[("f", "p1"), ("f", "p2"), ("f", "p3")],
    )
    .unwrap();
    let r = relax(&Topology::new(net), RelaxParams::default()).unwrap();
    assert!(r.converged);
    let f = fermat_point(&Triangle::new(a, b, c).unwrap()).unwrap();
    assert!(r.net.pos(3).distance(f) < 1e-6);
    let fixture = build_fermat_tripod(&Triangle::new(a, b, c).unwrap()).unwrap();
    assert!((total_length(&r.net) - total_length(&fixture)).abs() < 1e-9);
}

#[test]
fn free_vertex_lands_on_segment() {
    let net = Net::from_id_edges(
        vec![
            Vertex::unbalanced("a", Point::new(-1.0, 0.5)),
            Vertex::balanced("m", Point::new(0.2, 1.4)),
            Vertex::unbalanced("b", Point::new(2.0, -0.5)),
        ],
        &[("a", "m"), ("m", "b")],
    )
    .unwrap();
    let r = relax(&Topology::new(net), RelaxParams::default()).unwrap();
    assert!(r.final_residual < 1e-9);
    let (a, m, b) = (r.net.pos(0), r.net.pos(1), r.net.pos(2));
    let cross = (m - a).cross(b - a) / (b - a).norm();
    assert!(cross.abs() < 1e-6);
}

#[test]
fn perturbed_paper_net_relaxes() {
    let net = build_paper_net().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..3 {
        let pos: Vec<Point> = net
            .vertices()
            .iter()
            .map(|v| {
                if v.is_balanced() {
                    Point::new(
                        v.pos.x + rng.gen_range(-0.02..0.02),
                        v.pos.y + rng.gen_range(-0.02..0.02),
                    )
                } else {
                    v.pos
                }
            })
            .collect();
        let start = net.with_positions(&pos).unwrap();
        let r = relax(&Topology::new(start.clone()), RelaxParams::default()).unwrap();
        assert!(
            r.final_residual < 1e-9,
            "{} after {}",
            r.final_residual,
            r.iterations
        );
        assert!(r.converged);
        assert!(r.length_trace.windows(2).all(|w| w[1] <= w[0] + 1e-12));
        assert!(total_length(&r.net) <= total_length(&start) + 1e-12);
        // The pinned vertices stay put.
        for v in net.vertices().iter().filter(|v| !v.is_balanced()) {
            assert_eq!(r.net.pos(r.net.index_of(&v.id).unwrap()), v.pos);
        }
    }
}

#[test]
fn verify_agrees_with_gradient() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..20 {
        let net = random_net(&mut rng, 6, 3, 0.1);
        let report = verify(&net, 1e-9);
        let g = length_gradient(&net).unwrap();
        for (v, gv) in g.iter() {
            assert!((report.residuals[net.id(v)] - gv.norm()).abs() < 1e-15);
        }
    }
}
