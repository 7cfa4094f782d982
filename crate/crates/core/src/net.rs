//! The net data model, balance residuals, validity checks and planarization.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{intersect, rotate, unit_vector, IntersectionKind, Point, Segment, Vec2};

/// Default tolerance on the balance residual.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Crossing points closer than this are merged into one vertex.
pub const DEFAULT_MERGE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Unbalanced,
    Balanced,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub id: String,
    pub pos: Point,
    pub kind: VertexKind,
    pub label: Option<String>,
}

impl Vertex {
    pub fn new(id: impl Into<String>, pos: Point, kind: VertexKind) -> Self {
        Vertex {
            id: id.into(),
            pos,
            kind,
            label: None,
        }
    }

    pub fn balanced(id: impl Into<String>, pos: Point) -> Self {
        Self::new(id, pos, VertexKind::Balanced)
    }

    pub fn unbalanced(id: impl Into<String>, pos: Point) -> Self {
        Self::new(id, pos, VertexKind::Unbalanced)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn is_balanced(&self) -> bool {
        self.kind == VertexKind::Balanced
    }
}

/// An undirected edge between two vertex indices, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    a: usize,
    b: usize,
}

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        Edge {
            a: u.min(v),
            b: u.max(v),
        }
    }

    pub fn a(self) -> usize {
        self.a
    }

    pub fn b(self) -> usize {
        self.b
    }

    pub fn endpoints(self) -> [usize; 2] {
        [self.a, self.b]
    }

    pub fn other(self, v: usize) -> usize {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }

    pub fn touches(self, v: usize) -> bool {
        self.a == v || self.b == v
    }
}

/// A straight-line net. Vertices are addressed by index internally and by
/// string id externally; edge indices are positions in [`Net::edges`].
#[derive(Debug, Clone, PartialEq)]
pub struct Net {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    index: HashMap<String, usize>,
    incident: Vec<Vec<usize>>,
}

impl Net {
    /// Build a net, checking every structural invariant.
    pub fn new(
        vertices: Vec<Vertex>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if !v.pos.is_finite() {
                return Err(Error::InvariantViolation(format!(
                    "non-finite position for vertex `{}`",
                    v.id
                )));
            }
            if index.insert(v.id.clone(), i).is_some() {
                return Err(Error::InvariantViolation(format!(
                    "duplicate vertex id `{}`",
                    v.id
                )));
            }
        }
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if vertices[i].pos.coincides(vertices[j].pos) {
                    return Err(Error::InvariantViolation(format!(
                        "coincident vertices `{}` and `{}`",
                        vertices[i].id, vertices[j].id
                    )));
                }
            }
        }

        let mut seen = BTreeSet::new();
        let mut list = Vec::new();
        let mut incident = vec![Vec::new(); vertices.len()];
        for (u, v) in edges {
            if u >= vertices.len() || v >= vertices.len() {
                return Err(Error::InvariantViolation(format!(
                    "edge endpoint {} out of range",
                    u.max(v)
                )));
            }
            if u == v {
                return Err(Error::InvariantViolation(format!(
                    "self-loop at `{}`",
                    vertices[u].id
                )));
            }
            let e = Edge::new(u, v);
            if !seen.insert(e) {
                return Err(Error::InvariantViolation(format!(
                    "duplicate edge {}-{}",
                    vertices[e.a].id, vertices[e.b].id
                )));
            }
            incident[e.a].push(list.len());
            incident[e.b].push(list.len());
            list.push(e);
        }
        Ok(Net {
            vertices,
            edges: list,
            index,
            incident,
        })
    }

    /// Build a net from string-id edge pairs.
    pub fn from_id_edges<S: AsRef<str>>(vertices: Vec<Vertex>, edges: &[(S, S)]) -> Result<Self> {
        let lookup: HashMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id.as_str(), i))
            .collect();
        let mut pairs = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            let find = |s: &str| {
                lookup.get(s).copied().ok_or_else(|| {
                    Error::InvariantViolation(format!("edge references unknown vertex `{s}`"))
                })
            };
            pairs.push((find(u.as_ref())?, find(v.as_ref())?));
        }
        Net::new(vertices, pairs)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Edge {
        self.edges[e]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn require(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownVertex(id.to_owned()))
    }

    pub fn pos(&self, v: usize) -> Point {
        self.vertices[v].pos
    }

    pub fn positions(&self) -> Vec<Point> {
        self.vertices.iter().map(|v| v.pos).collect()
    }

    /// Indices of the edges incident to `v`, in increasing order.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    /// Index of the edge joining `u` and `v`, if any.
    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        let target = Edge::new(u, v);
        self.incident[u]
            .iter()
            .copied()
            .find(|&e| self.edges[e] == target)
    }

    pub fn find_edge_by_ids(&self, u: &str, v: &str) -> Option<usize> {
        self.find_edge(self.index_of(u)?, self.index_of(v)?)
    }

    pub fn segment(&self, e: usize) -> Segment {
        let Edge { a, b } = self.edges[e];
        Segment {
            p: self.vertices[a].pos,
            q: self.vertices[b].pos,
        }
    }

    /// Endpoint ids of edge `e`, lexicographically ordered.
    pub fn edge_ids(&self, e: usize) -> [String; 2] {
        let Edge { a, b } = self.edges[e];
        let (x, y) = (&self.vertices[a].id, &self.vertices[b].id);
        if x <= y {
            [x.clone(), y.clone()]
        } else {
            [y.clone(), x.clone()]
        }
    }

    pub fn edge_name(&self, e: usize) -> String {
        let [x, y] = self.edge_ids(e);
        format!("{x}-{y}")
    }

    /// Vertex ids (not indices) for display, e.g. in traces.
    pub fn id(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.incident[v] {
                let w = self.edges[e].other(v);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Same structure, new positions (revalidated).
    pub fn with_positions(&self, positions: &[Point]) -> Result<Net> {
        assert_eq!(positions.len(), self.vertices.len());
        let vertices = self
            .vertices
            .iter()
            .zip(positions)
            .map(|(v, &pos)| Vertex { pos, ..v.clone() })
            .collect();
        Net::new(vertices, self.edges.iter().map(|e| (e.a, e.b)))
    }

    /// Same positions and structure, with vertex `v` moved by `delta`.
    pub fn with_displaced(&self, v: usize, delta: Vec2) -> Result<Net> {
        let mut pos = self.positions();
        pos[v] = pos[v] + delta;
        self.with_positions(&pos)
    }

    /// The net with edge `e` deleted (vertices kept).
    pub fn without_edge(&self, e: usize) -> Net {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, x)| (x.a, x.b));
        Net::new(self.vertices.clone(), edges).expect("removing an edge keeps invariants")
    }

    /// The subnet spanned by the given edge indices: vertices touching no
    /// chosen edge are dropped, everything else keeps its id, kind and position.
    pub fn edge_subnet(&self, edges: &[usize]) -> Net {
        let chosen: BTreeSet<usize> = edges.iter().copied().collect();
        let mut keep = vec![false; self.vertices.len()];
        for &e in &chosen {
            keep[self.edges[e].a] = true;
            keep[self.edges[e].b] = true;
        }
        let mut remap = vec![usize::MAX; self.vertices.len()];
        let mut vertices = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if keep[i] {
                remap[i] = vertices.len();
                vertices.push(v.clone());
            }
        }
        let pairs = chosen
            .iter()
            .map(|&e| (remap[self.edges[e].a], remap[self.edges[e].b]));
        Net::new(vertices, pairs).expect("subnet of a valid net is valid")
    }

    /// Rename the vertex at index `v`; fails if the new id is taken.
    pub fn rename_vertex(&mut self, v: usize, id: &str, label: Option<&str>) -> Result<()> {
        if let Some(&other) = self.index.get(id) {
            if other != v {
                return Err(Error::InvariantViolation(format!(
                    "duplicate vertex id `{id}`"
                )));
            }
        }
        let old = std::mem::replace(&mut self.vertices[v].id, id.to_owned());
        self.index.remove(&old);
        self.index.insert(id.to_owned(), v);
        self.vertices[v].label = label.map(str::to_owned);
        Ok(())
    }

    /// Sum of unit vectors from `v` along its incident edges. Zero vector for
    /// isolated vertices.
    pub fn residual_at(&self, v: usize) -> Vec2 {
        residual_with(self, &self.positions(), v)
    }

    /// Remove balanced degree-2 vertices whose two edges continue straight
    /// through them, merging each such pair of edges into one.
    pub fn suppress_pass_through(&self, tol: f64) -> Net {
        let n = self.vertices.len();
        let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for e in &self.edges {
            adj[e.a].insert(e.b);
            adj[e.b].insert(e.a);
        }
        let mut alive = vec![true; n];
        let mut changed = true;
        while changed {
            changed = false;
            for v in 0..n {
                if !alive[v] || !self.vertices[v].is_balanced() || adj[v].len() != 2 {
                    continue;
                }
                let mut it = adj[v].iter().copied();
                let (u, w) = (it.next().unwrap(), it.next().unwrap());
                if adj[u].contains(&w) {
                    continue;
                }
                let pv = self.vertices[v].pos;
                let (Ok(du), Ok(dw)) = (
                    unit_vector(pv, self.vertices[u].pos),
                    unit_vector(pv, self.vertices[w].pos),
                ) else {
                    continue;
                };
                if (du.as_vec() + dw.as_vec()).norm() > tol {
                    continue;
                }
                adj[u].remove(&v);
                adj[w].remove(&v);
                adj[u].insert(w);
                adj[w].insert(u);
                adj[v].clear();
                alive[v] = false;
                changed = true;
            }
        }
        let mut remap = vec![usize::MAX; n];
        let mut vertices = Vec::new();
        for v in 0..n {
            if alive[v] {
                remap[v] = vertices.len();
                vertices.push(self.vertices[v].clone());
            }
        }
        let mut pairs = Vec::new();
        for u in 0..n {
            for &w in &adj[u] {
                if u < w {
                    pairs.push((remap[u], remap[w]));
                }
            }
        }
        Net::new(vertices, pairs).expect("suppression keeps invariants")
    }
}

pub(crate) fn residual_with(net: &Net, positions: &[Point], v: usize) -> Vec2 {
    let p = positions[v];
    let mut sum = Vec2::ZERO;
    for &e in net.incident(v) {
        let q = positions[net.edges[e].other(v)];
        let d = q - p;
        sum += d * (1.0 / d.norm());
    }
    sum
}

/// Unit-vector sum at the vertex with the given id.
pub fn balance_residual(net: &Net, vertex_id: &str) -> Result<Vec2> {
    let v = net.require(vertex_id)?;
    if net.degree(v) == 0 {
        return Err(Error::IsolatedVertex(vertex_id.to_owned()));
    }
    Ok(net.residual_at(v))
}

/// Which minimum-degree convention `verify` applies to balanced vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DegreeRule {
    /// Balanced vertices need degree at least three.
    #[default]
    TopLevel,
    /// Any degree is accepted (subnets may keep straight pass-through points).
    Relaxed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairFinding {
    pub first: [String; 2],
    pub second: [String; 2],
    pub kind: IntersectionKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossingFinding {
    pub first: [String; 2],
    pub second: [String; 2],
    pub at: Point,
}

/// Outcome of [`verify`]. Findings are listed in edge-index order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub tolerance: f64,
    /// Residual magnitude per balanced vertex id.
    pub residuals: BTreeMap<String, f64>,
    pub max_residual: f64,
    pub degree_violations: Vec<(String, usize)>,
    pub overlay_findings: Vec<PairFinding>,
    pub unplanarized_crossings: Vec<CrossingFinding>,
    pub unbalanced_to_unbalanced_edges: Vec<[String; 2]>,
    pub connected: bool,
    pub passed: bool,
}

impl VerifyReport {
    /// Balanced vertices whose residual exceeds the tolerance, by id.
    pub fn out_of_balance_ids(&self) -> Vec<&str> {
        self.residuals
            .iter()
            .filter(|(_, &r)| r > self.tolerance)
            .map(|(id, _)| id.as_str())
            .collect()
    }
}

/// Check that `net` is a valid geodesic net at tolerance `tol`.
pub fn verify(net: &Net, tol: f64) -> VerifyReport {
    verify_with(net, tol, DegreeRule::TopLevel)
}

pub fn verify_with(net: &Net, tol: f64, rule: DegreeRule) -> VerifyReport {
    let mut residuals = BTreeMap::new();
    let mut max_residual: f64 = 0.0;
    let mut degree_violations = Vec::new();
    for (v, vx) in net.vertices().iter().enumerate() {
        if !vx.is_balanced() {
            continue;
        }
        let r = net.residual_at(v).norm();
        max_residual = max_residual.max(r);
        residuals.insert(vx.id.clone(), r);
        if rule == DegreeRule::TopLevel && net.degree(v) < 3 {
            degree_violations.push((vx.id.clone(), net.degree(v)));
        }
    }

    let mut overlay_findings = Vec::new();
    let mut unplanarized_crossings = Vec::new();
    for i in 0..net.edge_count() {
        let si = net.segment(i);
        for j in i + 1..net.edge_count() {
            let kind = intersect(&si, &net.segment(j));
            match kind {
                IntersectionKind::CollinearOverlap(_) => overlay_findings.push(PairFinding {
                    first: net.edge_ids(i),
                    second: net.edge_ids(j),
                    kind,
                }),
                IntersectionKind::ProperCrossing(at) | IntersectionKind::EndpointOnInterior(at) => {
                    unplanarized_crossings.push(CrossingFinding {
                        first: net.edge_ids(i),
                        second: net.edge_ids(j),
                        at,
                    })
                }
                IntersectionKind::Disjoint | IntersectionKind::AtSharedEndpoint(_) => {}
            }
        }
    }

    let unbalanced_to_unbalanced_edges: Vec<[String; 2]> = (0..net.edge_count())
        .filter(|&e| {
            net.edge(e)
                .endpoints()
                .iter()
                .all(|&v| !net.vertex(v).is_balanced())
        })
        .map(|e| net.edge_ids(e))
        .collect();

    let connected = net.is_connected();
    let passed = max_residual <= tol
        && degree_violations.is_empty()
        && overlay_findings.is_empty()
        && unplanarized_crossings.is_empty()
        && unbalanced_to_unbalanced_edges.is_empty()
        && connected;

    VerifyReport {
        tolerance: tol,
        residuals,
        max_residual,
        degree_violations,
        overlay_findings,
        unplanarized_crossings,
        unbalanced_to_unbalanced_edges,
        connected,
        passed,
    }
}

fn fresh_id(taken: &HashMap<String, usize>, next: &mut usize) -> String {
    loop {
        let id = format!("x{}", *next);
        *next += 1;
        if !taken.contains_key(&id) {
            return id;
        }
    }
}

/// Turn every interior edge contact into a balanced vertex and split the
/// affected edges there. Crossing points within `eps` of each other (or of an
/// existing vertex) become a single vertex. Edge pairs are processed in the
/// lexicographic order of their endpoint ids, so the output is deterministic.
pub fn planarize(net: &Net, eps: f64) -> Result<Net> {
    let m = net.edge_count();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_cached_key(|&e| net.edge_ids(e));

    let mut vertices: Vec<Vertex> = net.vertices().to_vec();
    let mut taken = net.index.clone();
    let mut next_id = 1;
    // Per edge: (parameter along the edge, vertex index) of interior splits.
    let mut splits: Vec<Vec<(f64, usize)>> = vec![Vec::new(); m];

    for (oi, &i) in order.iter().enumerate() {
        let si = net.segment(i);
        for &j in &order[oi + 1..] {
            let sj = net.segment(j);
            let at = match intersect(&si, &sj) {
                IntersectionKind::CollinearOverlap(_) => {
                    return Err(Error::OverlayEdges(net.edge_name(i), net.edge_name(j)))
                }
                k if k.is_interior_contact() => k.point().expect("contact has a point"),
                _ => continue,
            };
            let v = match vertices.iter().position(|x| x.pos.distance(at) < eps) {
                Some(v) => v,
                None => {
                    let id = fresh_id(&taken, &mut next_id);
                    taken.insert(id.clone(), vertices.len());
                    vertices.push(Vertex::balanced(id.clone(), at).with_label(id));
                    vertices.len() - 1
                }
            };
            for (e, s) in [(i, &si), (j, &sj)] {
                if !net.edge(e).touches(v) {
                    splits[e].push((s.project(vertices[v].pos), v));
                }
            }
        }
    }

    let mut pairs = Vec::new();
    let mut seen = BTreeSet::new();
    for (e, mut cuts) in splits.into_iter().enumerate() {
        let edge = net.edge(e);
        cuts.sort_by(|x, y| x.0.total_cmp(&y.0));
        cuts.dedup_by_key(|c| c.1);
        let mut prev = edge.a();
        for v in cuts
            .into_iter()
            .map(|c| c.1)
            .chain(std::iter::once(edge.b()))
        {
            if !seen.insert(Edge::new(prev, v)) {
                return Err(Error::OverlayEdges(
                    net.edge_name(e),
                    format!("{}-{}", vertices[prev].id, vertices[v].id),
                ));
            }
            pairs.push((prev, v));
            prev = v;
        }
    }
    Net::new(vertices, pairs)
}

/// Whether a quarter turn about the origin maps the net onto itself, matching
/// vertices by position (within `tol`) and kind, and edges by adjacency.
pub fn is_symmetric_under_quarter_turn(net: &Net, tol: f64) -> bool {
    let n = net.vertex_count();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for (v, vx) in net.vertices().iter().enumerate() {
        let target = rotate(vx.pos, 1);
        let hit = net
            .vertices()
            .iter()
            .enumerate()
            .find(|(w, wx)| !used[*w] && wx.kind == vx.kind && wx.pos.distance(target) <= tol);
        match hit {
            Some((w, _)) => {
                image[v] = w;
                used[w] = true;
            }
            None => return false,
        }
    }
    net.edges()
        .iter()
        .all(|e| net.find_edge(image[e.a()], image[e.b()]).is_some())
}

/// True if two edges of the net overlap or cross away from shared endpoints.
pub fn has_interior_contacts(net: &Net) -> bool {
    (0..net.edge_count()).any(|i| {
        (i + 1..net.edge_count()).any(|j| {
            let k = intersect(&net.segment(i), &net.segment(j));
            k.is_interior_contact() || matches!(k, IntersectionKind::CollinearOverlap(_))
        })
    })
}

/// Shortest edge length; `f64::INFINITY` for an edgeless net.
pub fn min_edge_length(net: &Net) -> f64 {
    (0..net.edge_count())
        .map(|e| net.segment(e).length())
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn cross_net() -> Net {
        Net::from_id_edges(
            vec![
                Vertex::unbalanced("w", p(-1.0, 0.0)),
                Vertex::unbalanced("e", p(1.0, 0.0)),
                Vertex::unbalanced("s", p(0.0, -1.0)),
                Vertex::unbalanced("n", p(0.0, 1.0)),
            ],
            &[("w", "e"), ("s", "n")],
        )
        .unwrap()
    }

    #[test]
    fn duplicate_edges_and_loops_rejected() {
        let vs = vec![
            Vertex::balanced("a", p(0.0, 0.0)),
            Vertex::balanced("b", p(1.0, 0.0)),
        ];
        let dup = Net::from_id_edges(vs.clone(), &[("a", "b"), ("b", "a")]);
        assert!(matches!(dup, Err(Error::InvariantViolation(m)) if m.contains("duplicate edge")));
        let lp = Net::from_id_edges(vs.clone(), &[("a", "a")]);
        assert!(matches!(lp, Err(Error::InvariantViolation(m)) if m.contains("self-loop")));
        let unknown = Net::from_id_edges(vs, &[("a", "z")]);
        assert!(unknown.is_err());
    }

    #[test]
    fn coincident_positions_rejected() {
        let vs = vec![
            Vertex::balanced("a", p(0.0, 0.0)),
            Vertex::balanced("b", p(1e-12, 0.0)),
        ];
        assert!(Net::new(vs, []).is_err());
    }

    #[test]
    fn straight_vertex_has_zero_residual() {
        let net = Net::from_id_edges(
            vec![
                Vertex::unbalanced("l", p(-2.0, 0.0)),
                Vertex::balanced("m", p(0.0, 0.0)),
                Vertex::unbalanced("r", p(3.0, 0.0)),
            ],
            &[("l", "m"), ("m", "r")],
        )
        .unwrap();
        assert!(balance_residual(&net, "m").unwrap().norm() < 1e-12);
        assert!(matches!(
            balance_residual(&net, "q"),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn isolated_vertex_residual_is_an_error() {
        let net = Net::new(vec![Vertex::balanced("a", p(0.0, 0.0))], []).unwrap();
        assert!(matches!(
            balance_residual(&net, "a"),
            Err(Error::IsolatedVertex(_))
        ));
    }

    #[test]
    fn unbalanced_pair_fails_verify() {
        let net = Net::from_id_edges(
            vec![
                Vertex::unbalanced("a", p(0.0, 0.0)),
                Vertex::unbalanced("b", p(1.0, 0.0)),
            ],
            &[("a", "b")],
        )
        .unwrap();
        let r = verify(&net, DEFAULT_TOL);
        assert!(!r.passed);
        assert_eq!(
            r.unbalanced_to_unbalanced_edges,
            vec![["a".to_owned(), "b".to_owned()]]
        );
    }

    #[test]
    fn single_crossing_planarizes_to_degree_four() {
        let net = cross_net();
        assert!(!verify(&net, DEFAULT_TOL).unplanarized_crossings.is_empty());
        let out = planarize(&net, DEFAULT_MERGE_EPS).unwrap();
        assert_eq!(out.vertex_count(), 5);
        assert_eq!(out.edge_count(), 4);
        let x = out.index_of("x1").unwrap();
        assert_eq!(out.degree(x), 4);
        assert!(out.pos(x).distance(Point::ORIGIN) < 1e-15);
        let r = verify(&out, DEFAULT_TOL);
        assert!(r.unplanarized_crossings.is_empty());
        assert!(r.max_residual < 1e-15);
    }

    #[test]
    fn planarize_without_crossings_is_identity() {
        let net = Net::from_id_edges(
            vec![
                Vertex::unbalanced("a", p(0.0, 0.0)),
                Vertex::balanced("b", p(1.0, 0.0)),
                Vertex::unbalanced("c", p(1.0, 1.0)),
            ],
            &[("a", "b"), ("b", "c")],
        )
        .unwrap();
        assert_eq!(planarize(&net, DEFAULT_MERGE_EPS).unwrap(), net);
    }

    #[test]
    fn planarize_rejects_overlay() {
        let net = Net::from_id_edges(
            vec![
                Vertex::unbalanced("a", p(0.0, 0.0)),
                Vertex::unbalanced("b", p(2.0, 0.0)),
                Vertex::unbalanced("c", p(1.0, 0.0)),
                Vertex::unbalanced("d", p(3.0, 0.0)),
            ],
            &[("a", "b"), ("c", "d")],
        )
        .unwrap();
        assert!(matches!(
            planarize(&net, DEFAULT_MERGE_EPS),
            Err(Error::OverlayEdges(..))
        ));
        assert_eq!(verify(&net, DEFAULT_TOL).overlay_findings.len(), 1);
    }

    #[test]
    fn t_junction_splits_at_existing_vertex() {
        let net = Net::from_id_edges(
            vec![
                Vertex::unbalanced("a", p(-1.0, 0.0)),
                Vertex::unbalanced("b", p(1.0, 0.0)),
                Vertex::balanced("m", p(0.0, 0.0)),
                Vertex::unbalanced("n", p(0.0, 1.0)),
            ],
            &[("a", "b"), ("m", "n")],
        )
        .unwrap();
        let out = planarize(&net, DEFAULT_MERGE_EPS).unwrap();
        assert_eq!(out.vertex_count(), 4);
        assert_eq!(out.edge_count(), 3);
        assert_eq!(out.degree(out.index_of("m").unwrap()), 3);
    }

    #[test]
    fn pass_through_suppression() {
        let out = planarize(&cross_net(), DEFAULT_MERGE_EPS).unwrap();
        // The crossing has degree four: nothing to suppress.
        assert_eq!(out.suppress_pass_through(DEFAULT_TOL).vertex_count(), 5);
        let w = out.index_of("w").unwrap();
        let x = out.index_of("x1").unwrap();
        let e = out.index_of("e").unwrap();
        let half = out.edge_subnet(&[out.find_edge(w, x).unwrap(), out.find_edge(x, e).unwrap()]);
        let merged = half.suppress_pass_through(DEFAULT_TOL);
        assert_eq!(merged.vertex_count(), 2);
        assert_eq!(merged.edge_count(), 1);
    }

    #[test]
    fn cross_is_quarter_turn_symmetric() {
        assert!(is_symmetric_under_quarter_turn(&cross_net(), 1e-12));
        let moved = cross_net().with_displaced(0, Vec2::new(0.01, 0.0)).unwrap();
        assert!(!is_symmetric_under_quarter_turn(&moved, 1e-9));
    }
}
