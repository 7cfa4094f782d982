//! Planar primitives: points, vectors, unit directions, angles and
//! segment/segment classification.
//!
//! Everything here is a plain `Copy` value and every function is pure.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Two points closer than this are the same point.
pub const DEGENERACY_EPS: f64 = 1e-9;

/// Parametric band at either end of a segment that counts as "at the endpoint"
/// rather than "in the interior".
pub const PARAM_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

/// A free vector in the plane (a displacement, residual or gradient).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(self, other: Point) -> f64 {
        (other - self).norm()
    }

    pub fn coincides(self, other: Point) -> bool {
        self.distance(other) < DEGENERACY_EPS
    }

    pub fn to_vec(self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }

    /// Point on the ray from `self` with the given polar angle (degrees).
    pub fn polar_offset(self, radius: f64, degrees: f64) -> Point {
        let (s, c) = degrees.to_radians().sin_cos();
        Point::new(self.x + radius * c, self.y + radius * s)
    }

    /// Lexicographic comparison on (x, y), total for finite points.
    pub fn lex_cmp(&self, other: &Point) -> std::cmp::Ordering {
        self.x.total_cmp(&other.x).then(self.y.total_cmp(&other.y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, rhs: Vec2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl SubAssign for Vec2 {
    fn sub_assign(&mut self, rhs: Vec2) {
        self.x -= rhs.x;
        self.y -= rhs.y;
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl Sub for Point {
    type Output = Vec2;
    fn sub(self, rhs: Point) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Add<Vec2> for Point {
    type Output = Point;
    fn add(self, rhs: Vec2) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub<Vec2> for Point {
    type Output = Point;
    fn sub(self, rhs: Vec2) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

/// A direction of length one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVec(Vec2);

impl UnitVec {
    pub fn dx(self) -> f64 {
        self.0.x
    }

    pub fn dy(self) -> f64 {
        self.0.y
    }

    pub fn as_vec(self) -> Vec2 {
        self.0
    }
}

impl Neg for UnitVec {
    type Output = UnitVec;
    fn neg(self) -> UnitVec {
        UnitVec(-self.0)
    }
}

/// Direction from `from` towards `to`.
pub fn unit_vector(from: Point, to: Point) -> Result<UnitVec> {
    let d = to - from;
    let len = d.norm();
    if len.is_nan() || len < DEGENERACY_EPS {
        return Err(Error::DegenerateSegment { from, to });
    }
    Ok(UnitVec(Vec2::new(d.x / len, d.y / len)))
}

/// Unsigned angle at `b` between the rays towards `a` and `c`, in degrees,
/// within `[0, 180]`.
pub fn angle_at(b: Point, a: Point, c: Point) -> Result<f64> {
    let u = unit_vector(b, a)?.as_vec();
    let v = unit_vector(b, c)?.as_vec();
    Ok(u.cross(v).abs().atan2(u.dot(v)).to_degrees())
}

/// Rotate about the origin by `quarter_turns * 90` degrees using only swaps and
/// sign flips.
pub fn rotate(p: Point, quarter_turns: i32) -> Point {
    match quarter_turns.rem_euclid(4) {
        0 => p,
        1 => Point::new(-p.y, p.x),
        2 => Point::new(-p.x, -p.y),
        _ => Point::new(p.y, -p.x),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub p: Point,
    pub q: Point,
}

impl Segment {
    pub fn new(p: Point, q: Point) -> Result<Self> {
        if p.coincides(q) {
            return Err(Error::DegenerateSegment { from: p, to: q });
        }
        Ok(Segment { p, q })
    }

    pub fn length(&self) -> f64 {
        self.p.distance(self.q)
    }

    pub fn direction(&self) -> Vec2 {
        self.q - self.p
    }

    pub fn at(&self, t: f64) -> Point {
        self.p + self.direction() * t
    }

    /// Perpendicular distance from `r` to the supporting line.
    pub fn line_distance(&self, r: Point) -> f64 {
        let d = self.direction();
        (d.cross(r - self.p) / d.norm()).abs()
    }

    /// Parameter of the orthogonal projection of `r` onto the supporting line.
    pub fn project(&self, r: Point) -> f64 {
        let d = self.direction();
        d.dot(r - self.p) / d.norm_sq()
    }

    pub fn endpoints(&self) -> [Point; 2] {
        [self.p, self.q]
    }
}

/// How two segments meet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "at", rename_all = "snake_case")]
pub enum IntersectionKind {
    Disjoint,
    AtSharedEndpoint(Point),
    ProperCrossing(Point),
    /// An endpoint of one segment lies in the interior of the other.
    EndpointOnInterior(Point),
    CollinearOverlap(Segment),
}

impl IntersectionKind {
    /// True for contacts that planarization has to turn into a vertex.
    pub fn is_interior_contact(&self) -> bool {
        matches!(
            self,
            IntersectionKind::ProperCrossing(_) | IntersectionKind::EndpointOnInterior(_)
        )
    }

    pub fn point(&self) -> Option<Point> {
        match *self {
            IntersectionKind::Disjoint | IntersectionKind::CollinearOverlap(_) => None,
            IntersectionKind::AtSharedEndpoint(p)
            | IntersectionKind::ProperCrossing(p)
            | IntersectionKind::EndpointOnInterior(p) => Some(p),
        }
    }
}

enum Band {
    Outside,
    Start,
    End,
    Interior,
}

fn band(t: f64) -> Band {
    if !(-PARAM_EPS..=1.0 + PARAM_EPS).contains(&t) {
        Band::Outside
    } else if t < PARAM_EPS {
        Band::Start
    } else if t > 1.0 - PARAM_EPS {
        Band::End
    } else {
        Band::Interior
    }
}

fn collinear(s1: &Segment, s2: &Segment) -> bool {
    (s1.line_distance(s2.p) < DEGENERACY_EPS && s1.line_distance(s2.q) < DEGENERACY_EPS)
        || (s2.line_distance(s1.p) < DEGENERACY_EPS && s2.line_distance(s1.q) < DEGENERACY_EPS)
}

fn collinear_overlap(s1: &Segment, s2: &Segment) -> Option<Segment> {
    // Sort the four endpoints along a canonical direction of the common line.
    let longer = if s1.length() >= s2.length() { s1 } else { s2 };
    let mut axis = longer.direction();
    let flip = if axis.x.abs() >= axis.y.abs() {
        axis.x < 0.0
    } else {
        axis.y < 0.0
    };
    if flip {
        axis = -axis;
    }
    let mut pts = [s1.p, s1.q, s2.p, s2.q];
    pts.sort_by(|a, b| axis.dot(a.to_vec()).total_cmp(&axis.dot(b.to_vec())));
    // Both segments must contain the middle pair for the overlap to be real.
    let (lo, hi) = (pts[1], pts[2]);
    if lo.distance(hi) < DEGENERACY_EPS {
        return None;
    }
    let contains = |s: &Segment, r: Point| {
        let t = s.project(r);
        (-PARAM_EPS..=1.0 + PARAM_EPS).contains(&t)
    };
    let mid = Point::new(0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y));
    if contains(s1, mid) && contains(s2, mid) {
        Some(Segment { p: lo, q: hi })
    } else {
        None
    }
}

/// Classify how two non-degenerate segments meet. The result does not depend
/// on argument order (overlap segments and endpoint contacts are reported in a
/// canonical orientation).
pub fn intersect(s1: &Segment, s2: &Segment) -> IntersectionKind {
    let shared = s1
        .endpoints()
        .into_iter()
        .find(|a| s2.endpoints().into_iter().any(|b| a.coincides(b)));

    if collinear(s1, s2) {
        if let Some(overlap) = collinear_overlap(s1, s2) {
            return IntersectionKind::CollinearOverlap(overlap);
        }
        return match shared {
            Some(p) => IntersectionKind::AtSharedEndpoint(canonical_shared(s1, s2, p)),
            None => IntersectionKind::Disjoint,
        };
    }
    if let Some(p) = shared {
        return IntersectionKind::AtSharedEndpoint(canonical_shared(s1, s2, p));
    }

    let d1 = s1.direction();
    let d2 = s2.direction();
    let denom = d1.cross(d2);
    if denom == 0.0 {
        return IntersectionKind::Disjoint;
    }
    let w = s2.p - s1.p;
    let t = w.cross(d2) / denom;
    let u = w.cross(d1) / denom;

    match (band(t), band(u)) {
        (Band::Outside, _) | (_, Band::Outside) => IntersectionKind::Disjoint,
        (Band::Interior, Band::Interior) => {
            IntersectionKind::ProperCrossing(crossing_point(s1, t, s2, u))
        }
        (Band::Interior, Band::Start) => IntersectionKind::EndpointOnInterior(s2.p),
        (Band::Interior, Band::End) => IntersectionKind::EndpointOnInterior(s2.q),
        (Band::Start, Band::Interior) => IntersectionKind::EndpointOnInterior(s1.p),
        (Band::End, Band::Interior) => IntersectionKind::EndpointOnInterior(s1.q),
        (tb, _) => {
            // Two endpoints within the parametric band of each other but not
            // closer than the degeneracy epsilon: endpoint contact.
            let a = if matches!(tb, Band::Start) {
                s1.p
            } else {
                s1.q
            };
            IntersectionKind::AtSharedEndpoint(a)
        }
    }
}

fn canonical_shared(s1: &Segment, s2: &Segment, p: Point) -> Point {
    // The coinciding endpoints may differ below the epsilon; report the
    // lexicographically smaller one so that the answer is order independent.
    s1.endpoints()
        .into_iter()
        .chain(s2.endpoints())
        .filter(|r| r.coincides(p))
        .min_by(Point::lex_cmp)
        .unwrap_or(p)
}

fn crossing_point(s1: &Segment, t: f64, s2: &Segment, u: f64) -> Point {
    // Average of both parametrizations: symmetric in argument order.
    let a = s1.at(t);
    let b = s2.at(u);
    Point::new(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))
}
