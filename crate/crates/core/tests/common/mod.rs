//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use geonet::{planarize, Net, Point, Vertex, DEFAULT_MERGE_EPS};
use rand::Rng;

/// Geometric median of three points by plain Weiszfeld iteration.
pub fn weiszfeld(corners: [Point; 3]) -> Point {
    let mut p = Point::new(
        (corners[0].x + corners[1].x + corners[2].x) / 3.0,
        (corners[0].y + corners[1].y + corners[2].y) / 3.0,
    );
    for _ in 0..100_000 {
        let (mut nx, mut ny, mut den) = (0.0, 0.0, 0.0);
        for c in corners {
            let d = ((p.x - c.x).powi(2) + (p.y - c.y).powi(2)).sqrt();
            nx += c.x / d;
            ny += c.y / d;
            den += 1.0 / d;
        }
        let next = Point::new(nx / den, ny / den);
        let step = ((next.x - p.x).powi(2) + (next.y - p.y).powi(2)).sqrt();
        p = next;
        if step < 1e-15 {
            break;
        }
    }
    p
}

/// Interior angle at `b` in degrees, from the law of cosines.
pub fn angle_deg(b: Point, a: Point, c: Point) -> f64 {
    let (ux, uy, vx, vy) = (a.x - b.x, a.y - b.y, c.x - b.x, c.y - b.y);
    let cos = (ux * vx + uy * vy) / ((ux * ux + uy * uy).sqrt() * (vx * vx + vy * vy).sqrt());
    cos.clamp(-1.0, 1.0).acos().to_degrees()
}

pub fn length_at(net: &Net, pos: &[Point]) -> f64 {
    net.edges()
        .iter()
        .map(|e| {
            let (p, q) = (pos[e.a()], pos[e.b()]);
            ((p.x - q.x).powi(2) + (p.y - q.y).powi(2)).sqrt()
        })
        .sum()
}

/// Central finite-difference gradient of total length at vertex `v`.
pub fn fd_gradient(net: &Net, v: usize, h: f64) -> (f64, f64) {
    let base = net.positions();
    let eval = |dx: f64, dy: f64| {
        let mut pos = base.clone();
        pos[v] = Point::new(pos[v].x + dx, pos[v].y + dy);
        length_at(net, &pos)
    };
    (
        (eval(h, 0.0) - eval(-h, 0.0)) / (2.0 * h),
        (eval(0.0, h) - eval(0.0, -h)) / (2.0 * h),
    )
}

/// A random connected net on `n` vertices in `[-2, 2]^2` whose adjacent
/// vertices are more than `min_sep` apart.
pub fn random_net(rng: &mut impl Rng, n: usize, extra_edges: usize, min_sep: f64) -> Net {
    loop {
        let pts: Vec<Point> = (0..n)
            .map(|_| Point::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
            .collect();
        let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        for _ in 0..extra_edges {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v
                && !edges
                    .iter()
                    .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
            {
                edges.push((u, v));
            }
        }
        if edges
            .iter()
            .any(|&(u, v)| pts[u].distance(pts[v]) <= min_sep)
        {
            continue;
        }
        let vertices = pts
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                if rng.gen_bool(0.3) {
                    Vertex::unbalanced(format!("u{i}"), p)
                } else {
                    Vertex::balanced(format!("v{i}"), p)
                }
            })
            .collect();
        return Net::new(vertices, edges).unwrap();
    }
}

/// Union of nets, identifying vertices with equal ids, then planarized.
pub fn union(parts: &[&Net]) -> Net {
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    for net in parts {
        for v in net.vertices() {
            if !vertices.iter().any(|w| w.id == v.id) {
                vertices.push(v.clone());
            }
        }
        for e in net.edges() {
            let pair = (net.id(e.a()).to_owned(), net.id(e.b()).to_owned());
            if !edges
                .iter()
                .any(|(a, b)| (a, b) == (&pair.0, &pair.1) || (a, b) == (&pair.1, &pair.0))
            {
                edges.push(pair);
            }
        }
    }
    planarize(
        &Net::from_id_edges(vertices, &edges).unwrap(),
        DEFAULT_MERGE_EPS,
    )
    .unwrap()
}

/// Every proper non-empty edge subset (as a bitmask) that is a geodesic
/// subnet: balanced vertices it touches are balanced by the chosen edges, and
/// no run of straight pass-through points joins two unbalanced vertices.
pub fn exhaustive_subnets(net: &Net, tol: f64) -> Vec<u64> {
    let m = net.edge_count();
    assert!(m <= 20, "exhaustive oracle is for small nets");
    let full = (1u64 << m) - 1;
    (1..full)
        .filter(|&mask| subnet_ok(net, mask, tol))
        .collect()
}

fn subnet_ok(net: &Net, mask: u64, tol: f64) -> bool {
    let on = |e: usize| mask >> e & 1 == 1;
    let n = net.vertex_count();
    let mut chosen_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in 0..net.edge_count() {
        if on(e) {
            let ed = net.edge(e);
            chosen_at[ed.a()].push(e);
            chosen_at[ed.b()].push(e);
        }
    }
    for (v, chosen) in chosen_at.iter().enumerate() {
        if !net.vertex(v).is_balanced() || chosen.is_empty() {
            continue;
        }
        let p = net.pos(v);
        let (mut sx, mut sy) = (0.0, 0.0);
        for &e in chosen {
            let q = net.pos(net.edge(e).other(v));
            let d = ((q.x - p.x).powi(2) + (q.y - p.y).powi(2)).sqrt();
            sx += (q.x - p.x) / d;
            sy += (q.y - p.y) / d;
        }
        if (sx * sx + sy * sy).sqrt() > tol {
            return false;
        }
    }
    // Group chosen edges into chains glued at balanced degree-2 points and
    // reject chains whose two ends are both unbalanced.
    let m = net.edge_count();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for (v, chosen) in chosen_at.iter().enumerate() {
        if net.vertex(v).is_balanced() && chosen.len() == 2 {
            let (a, b) = (find(&mut parent, chosen[0]), find(&mut parent, chosen[1]));
            parent[a] = b;
        }
    }
    let mut ends: std::collections::HashMap<usize, (usize, usize)> = Default::default();
    for (v, chosen) in chosen_at.iter().enumerate() {
        let chain_end = !net.vertex(v).is_balanced() || chosen.len() != 2;
        if !chain_end {
            continue;
        }
        for &e in chosen {
            let root = find(&mut parent, e);
            let entry = ends.entry(root).or_default();
            entry.0 += 1;
            if !net.vertex(v).is_balanced() {
                entry.1 += 1;
            }
        }
    }
    ends.values().all(|&(_, unbalanced)| unbalanced < 2)
}

pub fn mask_of(edges: &[usize]) -> u64 {
    edges.iter().fold(0, |m, &e| m | 1 << e)
}
