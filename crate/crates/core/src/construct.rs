//! Exact constructions: Fermat points, the 16-balanced-vertex irreducible net
//! on four boundary points, and a reducible overlay of seven trees.
//!
//! Angles are derived from `cos 75°`/`sin 75°` at run time; no rounded decimal
//! constants enter a construction.

use crate::error::{Error, Result};
use crate::geom::{angle_at, rotate, unit_vector, Point, Vec2};
use crate::net::{planarize, Net, Vertex, DEFAULT_MERGE_EPS};

/// Area below which a triangle is considered degenerate.
const MIN_TRIANGLE_AREA: f64 = 1e-12;

/// Angular slack (degrees) below 120° required for a Fermat point.
const WIDE_ANGLE_SLACK: f64 = 1e-9;

/// Derived constants of the octagon construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaperConstants {
    pub cos75: f64,
    pub sin75: f64,
    /// `cos(alpha) = 1/2 - cos 75°`.
    pub cos_alpha: f64,
    pub sin_alpha: f64,
    /// The angle at `a2` of the triangle `a2 O c1`, in degrees.
    pub alpha: f64,
    pub octagon_a_angle: f64,
    pub octagon_b_angle: f64,
    pub a_radius: f64,
}

impl PaperConstants {
    pub fn new() -> Self {
        let (sin75, cos75) = 75f64.to_radians().sin_cos();
        let cos_alpha = 0.5 - cos75;
        let sin_alpha = (1.0 - cos_alpha * cos_alpha).sqrt();
        PaperConstants {
            cos75,
            sin75,
            cos_alpha,
            sin_alpha,
            alpha: sin_alpha.atan2(cos_alpha).to_degrees(),
            octagon_a_angle: 150.0,
            octagon_b_angle: 120.0,
            a_radius: 1.0,
        }
    }

    pub fn tan_alpha(&self) -> f64 {
        self.sin_alpha / self.cos_alpha
    }
}

impl Default for PaperConstants {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triangle {
    pub a: Point,
    pub b: Point,
    pub c: Point,
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        let t = Triangle { a, b, c };
        if t.area() <= MIN_TRIANGLE_AREA {
            return Err(Error::DegenerateTriangle(a, b, c));
        }
        Ok(t)
    }

    pub fn corners(&self) -> [Point; 3] {
        [self.a, self.b, self.c]
    }

    pub fn area(&self) -> f64 {
        0.5 * (self.b - self.a).cross(self.c - self.a).abs()
    }

    /// Interior angles in degrees at `a`, `b`, `c`.
    pub fn angles(&self) -> Result<[f64; 3]> {
        Ok([
            angle_at(self.a, self.b, self.c)?,
            angle_at(self.b, self.c, self.a)?,
            angle_at(self.c, self.a, self.b)?,
        ])
    }
}

/// Apex of the equilateral triangle erected on `p q`, on the side away from
/// `away`.
fn equilateral_apex(p: Point, q: Point, away: Point) -> Point {
    let d = q - p;
    let mid = Point::new(0.5 * (p.x + q.x), 0.5 * (p.y + q.y));
    let h = Vec2::new(-d.y, d.x) * (3f64.sqrt() / 2.0);
    let side = d.cross(away - p);
    if side > 0.0 {
        mid - h
    } else {
        mid + h
    }
}

fn line_intersection(p1: Point, d1: Vec2, p2: Point, d2: Vec2) -> Point {
    let t = (p2 - p1).cross(d2) / d1.cross(d2);
    p1 + d1 * t
}

fn weiszfeld_refine(corners: [Point; 3], start: Point) -> Point {
    let residual = |p: Point| -> f64 {
        let mut s = Vec2::ZERO;
        for &c in &corners {
            match unit_vector(p, c) {
                Ok(u) => s += u.as_vec(),
                Err(_) => return f64::INFINITY,
            }
        }
        s.norm()
    };
    let mut best = start;
    let mut best_r = residual(start);
    let mut p = start;
    for _ in 0..64 {
        if best_r < 1e-12 {
            break;
        }
        let mut num = Vec2::ZERO;
        let mut den = 0.0;
        for &c in &corners {
            let d = p.distance(c);
            if d < 1e-15 {
                return best;
            }
            num += c.to_vec() * (1.0 / d);
            den += 1.0 / d;
        }
        p = Point::new(num.x / den, num.y / den);
        let r = residual(p);
        if r < best_r {
            best = p;
            best_r = r;
        }
    }
    best
}

/// The interior point seeing every pair of corners at 120°.
pub fn fermat_point(t: &Triangle) -> Result<Point> {
    if t.area() <= MIN_TRIANGLE_AREA {
        return Err(Error::DegenerateTriangle(t.a, t.b, t.c));
    }
    let corners = t.corners();
    let angles = t.angles()?;
    for (corner, angle) in corners.into_iter().zip(angles) {
        if angle >= 120.0 - WIDE_ANGLE_SLACK {
            return Err(Error::WideAngleTriangle { corner, angle });
        }
    }
    // Each corner, the Fermat point and the apex erected on the opposite side
    // are collinear; any two of these lines meet at 60° in the Fermat point.
    let apex = |i: usize| {
        let (p, q, r) = (corners[i], corners[(i + 1) % 3], corners[(i + 2) % 3]);
        (p, equilateral_apex(q, r, p))
    };
    let (p1, e1) = apex(0);
    let (p2, e2) = apex(1);
    let closed = line_intersection(p1, e1 - p1, p2, e2 - p2);
    Ok(weiszfeld_refine(corners, closed))
}

/// Octagon vertices `a1..a4` (unit circle, axis directions) and `b1..b4` (on
/// the diagonals), with interior angles 150° at the `a` and 120° at the `b`.
pub fn build_octagon() -> ([Point; 4], [Point; 4]) {
    let k = PaperConstants::new();
    // The ray from a2 at 75° to the inward radial meets the 45° diagonal here.
    let s = k.sin75 / (k.sin75 + k.cos75);
    let a1 = Point::new(k.a_radius, 0.0);
    let b1 = Point::new(s, s);
    (
        [0, 1, 2, 3].map(|i| rotate(a1, i)),
        [0, 1, 2, 3].map(|i| rotate(b1, i)),
    )
}

/// The four unbalanced vertices `c1..c4` at distance `tan(alpha)` on the axes.
pub fn place_boundary() -> [Point; 4] {
    let c1 = Point::new(PaperConstants::new().tan_alpha(), 0.0);
    [0, 1, 2, 3].map(|i| rotate(c1, i))
}

/// All named points of the irreducible net before planarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PaperPoints {
    pub a: [Point; 4],
    pub b: [Point; 4],
    pub c: [Point; 4],
    pub d: [Point; 4],
}

pub fn paper_points() -> Result<PaperPoints> {
    let (a, b) = build_octagon();
    let c = place_boundary();
    let d1 = fermat_point(&Triangle::new(b[0], c[0], c[1])?)?;
    Ok(PaperPoints {
        a,
        b,
        c,
        d: [0, 1, 2, 3].map(|i| rotate(d1, i)),
    })
}

/// The 16 vertices and 32 edges of the irreducible net, before the four
/// triple crossings are turned into vertices.
pub fn build_paper_pre_net() -> Result<Net> {
    let pts = paper_points()?;
    let mut vertices = Vec::with_capacity(16);
    for (name, group, balanced) in [
        ("a", pts.a, true),
        ("b", pts.b, true),
        ("c", pts.c, false),
        ("d", pts.d, true),
    ] {
        for (i, &p) in group.iter().enumerate() {
            let id = format!("{name}{}", i + 1);
            let v = if balanced {
                Vertex::balanced(id.clone(), p)
            } else {
                Vertex::unbalanced(id.clone(), p)
            };
            vertices.push(v.with_label(id));
        }
    }
    let mut edges = Vec::with_capacity(32);
    for i in 1..=4 {
        let j = i % 4 + 1;
        edges.push((format!("a{i}"), format!("b{i}")));
        edges.push((format!("a{j}"), format!("b{i}")));
        edges.push((format!("a{i}"), format!("c{i}")));
        edges.push((format!("a{i}"), format!("c{j}")));
        edges.push((format!("a{j}"), format!("c{i}")));
        edges.push((format!("d{i}"), format!("b{i}")));
        edges.push((format!("d{i}"), format!("c{i}")));
        edges.push((format!("d{i}"), format!("c{j}")));
    }
    Net::from_id_edges(vertices, &edges)
}

/// The irreducible net: 4 unbalanced, 16 balanced vertices, 44 edges. The
/// crossing vertices are named `x1..x4` after the diagonal they sit on.
pub fn build_paper_net() -> Result<Net> {
    let pre = build_paper_pre_net()?;
    let mut net = planarize(&pre, DEFAULT_MERGE_EPS)?;
    let fresh: Vec<usize> = (pre.vertex_count()..net.vertex_count()).collect();
    if fresh.len() != 4 {
        return Err(Error::InvariantViolation(format!(
            "expected 4 crossing vertices, found {}",
            fresh.len()
        )));
    }
    for &v in &fresh {
        net.rename_vertex(v, &format!("tmp{v}"), None)?;
    }
    for &v in &fresh {
        let p = net.pos(v);
        // Quadrant of the diagonal through the crossing: 45°, 135°, 225°, 315°.
        let q = match (p.x > 0.0, p.y > 0.0) {
            (true, true) => 1,
            (false, true) => 2,
            (false, false) => 3,
            (true, false) => 4,
        };
        let id = format!("x{q}");
        net.rename_vertex(v, &id, Some(&id))?;
    }
    Ok(net)
}

/// Net with the three corners unbalanced and the Fermat point as the single
/// balanced vertex.
pub fn build_fermat_tripod(t: &Triangle) -> Result<Net> {
    let f = fermat_point(t)?;
    Net::from_id_edges(
        vec![
            Vertex::unbalanced("p1", t.a).with_label("p1"),
            Vertex::unbalanced("p2", t.b).with_label("p2"),
            Vertex::unbalanced("p3", t.c).with_label("p3"),
            Vertex::balanced("f", f).with_label("f"),
        ],
        &[("f", "p1"), ("f", "p2"), ("f", "p3")],
    )
}

/// Terminals of the overlay net.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlayTerminals {
    pub a: Point,
    pub c: Point,
    pub x: Point,
    pub z: Point,
}

impl Default for OverlayTerminals {
    /// `A`, `C` on rays at 210° and 330° from `(0, 15)` at distance 6; `X`, `Z`
    /// at 150° and 30° on the circle of radius 3 about the origin.
    fn default() -> Self {
        let top = Point::new(0.0, 15.0);
        OverlayTerminals {
            a: top.polar_offset(6.0, 210.0),
            c: top.polar_offset(6.0, 330.0),
            x: Point::ORIGIN.polar_offset(3.0, 150.0),
            z: Point::ORIGIN.polar_offset(3.0, 30.0),
        }
    }
}

/// Balanced points of the full Steiner tree in which `s` joins `p1, p2` and
/// `t` joins `q1, q2`, with the edge `s t` between them.
pub fn double_tripod(p1: Point, p2: Point, q1: Point, q2: Point) -> Result<(Point, Point)> {
    let mid = |u: Point, v: Point| Point::new(0.5 * (u.x + v.x), 0.5 * (u.y + v.y));
    let apex_p = equilateral_apex(p1, p2, mid(q1, q2));
    let apex_q = equilateral_apex(q1, q2, mid(p1, p2));
    let s = fermat_point(&Triangle::new(p1, p2, apex_q)?)?;
    let t = fermat_point(&Triangle::new(q1, q2, apex_p)?)?;
    let consistent = || -> Result<bool> {
        let st = unit_vector(s, t)?.as_vec();
        let ts = unit_vector(t, s)?.as_vec();
        Ok((st - unit_vector(s, apex_q)?.as_vec()).norm() < 1e-9
            && (ts - unit_vector(t, apex_p)?.as_vec()).norm() < 1e-9)
    };
    match consistent() {
        Ok(true) => Ok((s, t)),
        _ => Err(Error::DegenerateTerminals(format!(
            "no full Steiner tree pairing {p1},{p2} against {q1},{q2}"
        ))),
    }
}

struct OverlayParts {
    vertices: Vec<Vertex>,
    trees: Vec<Vec<(&'static str, &'static str)>>,
}

fn overlay_parts(t: &OverlayTerminals) -> Result<OverlayParts> {
    let tri = |p, q, r| Triangle::new(p, q, r).and_then(|x| fermat_point(&x));
    let b1 = tri(t.a, t.c, t.x)?;
    let b3 = tri(t.a, t.c, t.z)?;
    let y1 = tri(t.x, t.z, t.a)?;
    let y3 = tri(t.x, t.z, t.c)?;
    let (b2, y2) = double_tripod(t.a, t.c, t.x, t.z)?;
    let (l, n) = double_tripod(t.a, t.x, t.c, t.z)?;

    let u = |id: &str, p| Vertex::unbalanced(id, p).with_label(id);
    let b = |id: &str, p| Vertex::balanced(id, p).with_label(id);
    let vertices = vec![
        u("A", t.a),
        u("C", t.c),
        u("X", t.x),
        u("Z", t.z),
        b("B1", b1),
        b("B2", b2),
        b("B3", b3),
        b("Y1", y1),
        b("Y2", y2),
        b("Y3", y3),
        b("L", l),
        b("N", n),
    ];
    let trees = vec![
        vec![("A", "B1"), ("C", "B1"), ("X", "B1")],
        vec![("A", "B3"), ("C", "B3"), ("Z", "B3")],
        vec![("X", "Y1"), ("Z", "Y1"), ("A", "Y1")],
        vec![("X", "Y3"), ("Z", "Y3"), ("C", "Y3")],
        vec![
            ("A", "B2"),
            ("C", "B2"),
            ("B2", "Y2"),
            ("X", "Y2"),
            ("Z", "Y2"),
        ],
        vec![("A", "L"), ("X", "L"), ("L", "N"), ("C", "N"), ("Z", "N")],
        vec![("A", "Z"), ("C", "X")],
    ];
    Ok(OverlayParts { vertices, trees })
}

/// The seven component trees of the overlay net, each as a standalone
/// (planarized) net.
pub fn overlay_trees(t: &OverlayTerminals) -> Result<Vec<Net>> {
    let parts = overlay_parts(t)?;
    parts
        .trees
        .iter()
        .map(|edges| {
            let used: Vec<Vertex> = parts
                .vertices
                .iter()
                .filter(|v| edges.iter().any(|&(p, q)| p == v.id || q == v.id))
                .cloned()
                .collect();
            planarize(&Net::from_id_edges(used, edges)?, DEFAULT_MERGE_EPS)
        })
        .collect()
}

/// Union of the seven trees on the given terminals, planarized.
pub fn build_overlay_net(a: Point, c: Point, x: Point, z: Point) -> Result<Net> {
    let parts = overlay_parts(&OverlayTerminals { a, c, x, z })?;
    let edges: Vec<(&str, &str)> = parts.trees.concat();
    let net = Net::from_id_edges(parts.vertices, &edges)?;
    planarize(&net, DEFAULT_MERGE_EPS)
}

pub fn build_default_overlay_net() -> Result<Net> {
    let t = OverlayTerminals::default();
    build_overlay_net(t.a, t.c, t.x, t.z)
}
