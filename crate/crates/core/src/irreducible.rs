//! Proper-subnet search.
//!
//! A subnet is a set of edges of the parent net; vertices touching none of the
//! chosen edges are dropped. It is geodesic when
//!
//! * every balanced vertex it keeps is balanced by its chosen edges (a vertex
//!   whose chosen edges continue straight through it counts as balanced), and
//! * no chain of such straight pass-through vertices joins two unbalanced
//!   vertices (that chain is just a segment between boundary points).
//!
//! The search is a constraint satisfaction problem: each balanced vertex picks
//! one of its balanced edge subsets, and an edge is in the subnet iff both
//! endpoints pick it. Unit propagation plus smallest-domain-first branching
//! decides it; for irreducible nets the propagation from a single seed edge
//! already forces every edge, and that propagation is reported as the
//! certificate.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{unit_vector, Vec2};
use crate::net::{verify, Net, DEFAULT_TOL};

/// Largest degree for which all incident subsets are enumerated.
pub const MAX_SUBSET_DEGREE: usize = 24;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Subsets whose residual is within this factor above the tolerance are
/// reported as near misses.
const NEAR_MISS_FACTOR: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub tol: f64,
    pub node_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            tol: DEFAULT_TOL,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl SearchOptions {
    pub fn with_tol(tol: f64) -> Self {
        SearchOptions {
            tol,
            ..Self::default()
        }
    }
}

/// One unit-propagation step: the subsets left at `vertex` all agree on
/// `forced_in` being present and `forced_out` being absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub vertex: String,
    pub forced_in: Vec<[String; 2]>,
    pub forced_out: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum SubnetCertificate {
    /// Every seed edge forces the whole net. `trace` is the propagation from
    /// `seed`, the first edge in index order.
    Irreducible {
        seed: [String; 2],
        trace: Vec<TraceStep>,
        seeds_checked: usize,
    },
    /// A minimal proper geodesic subnet, as sorted edge indices of the parent.
    Reducible { witness: Vec<usize> },
}

impl SubnetCertificate {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, SubnetCertificate::Irreducible { .. })
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            SubnetCertificate::Reducible { witness } => Some(witness),
            SubnetCertificate::Irreducible { .. } => None,
        }
    }
}

/// A certificate plus search statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct SubnetSearch {
    pub certificate: SubnetCertificate,
    pub nodes: u64,
    /// Incident subsets whose residual falls just above the tolerance.
    pub warnings: Vec<String>,
}

fn unit_dirs(net: &Net, v: usize) -> Vec<Vec2> {
    let p = net.pos(v);
    net.incident(v)
        .iter()
        .map(|&e| {
            unit_vector(p, net.pos(net.edge(e).other(v)))
                .expect("net vertices are distinct")
                .as_vec()
        })
        .collect()
}

fn mask_sum(dirs: &[Vec2], mask: u32) -> Vec2 {
    let mut s = Vec2::ZERO;
    for (i, d) in dirs.iter().enumerate() {
        if mask & (1 << i) != 0 {
            s += *d;
        }
    }
    s
}

/// Near-miss subset masks with their residuals.
type NearMisses = Vec<(u32, f64)>;

/// Balanced incident subsets of `v` as bitmasks over `net.incident(v)`, in
/// increasing mask order, plus near-miss masks.
fn subset_masks(net: &Net, v: usize, tol: f64) -> Result<(Vec<u32>, NearMisses)> {
    let deg = net.degree(v);
    if deg > MAX_SUBSET_DEGREE {
        return Err(Error::DegreeTooLarge {
            id: net.id(v).to_owned(),
            degree: deg,
            limit: MAX_SUBSET_DEGREE,
        });
    }
    let dirs = unit_dirs(net, v);
    let mut ok = Vec::new();
    let mut near = Vec::new();
    for mask in 0..(1u32 << deg) {
        let r = mask_sum(&dirs, mask).norm();
        if r <= tol {
            ok.push(mask);
        } else if r <= tol * NEAR_MISS_FACTOR {
            near.push((mask, r));
        }
    }
    Ok((ok, near))
}

/// All subsets of the edges at `vertex_id` (including the empty one) whose unit
/// vectors sum to at most `tol`, as lists of edge indices in canonical order.
pub fn balanced_edge_subsets(net: &Net, vertex_id: &str, tol: f64) -> Result<Vec<Vec<usize>>> {
    let v = net.require(vertex_id)?;
    let (masks, _) = subset_masks(net, v, tol)?;
    let inc = net.incident(v);
    Ok(masks
        .into_iter()
        .map(|m| {
            (0..inc.len())
                .filter(|i| m & (1 << i) != 0)
                .map(|i| inc[i])
                .collect()
        })
        .collect())
}

/// True if `edges` (indices into `net`) form a geodesic subnet in the sense of
/// the module docs. The empty set is not a subnet.
pub fn is_geodesic_subnet(net: &Net, edges: &[usize], tol: f64) -> bool {
    if edges.is_empty() {
        return false;
    }
    let mut chosen = vec![false; net.edge_count()];
    for &e in edges {
        chosen[e] = true;
    }
    for v in 0..net.vertex_count() {
        if !net.vertex(v).is_balanced() {
            continue;
        }
        let dirs = unit_dirs(net, v);
        let mut sum = Vec2::ZERO;
        for (i, &e) in net.incident(v).iter().enumerate() {
            if chosen[e] {
                sum += dirs[i];
            }
        }
        if sum.norm() > tol {
            return false;
        }
    }
    chains_ok(net, &chosen)
}

/// Reject subnets containing a straight chain between two unbalanced vertices.
fn chains_ok(net: &Net, chosen: &[bool]) -> bool {
    let picked = |v: usize| -> Vec<usize> {
        net.incident(v)
            .iter()
            .copied()
            .filter(|&e| chosen[e])
            .collect()
    };
    for u in 0..net.vertex_count() {
        if net.vertex(u).is_balanced() {
            continue;
        }
        for e0 in picked(u) {
            let (mut prev, mut edge) = (u, e0);
            loop {
                let w = net.edge(edge).other(prev);
                if !net.vertex(w).is_balanced() {
                    return false;
                }
                let here = picked(w);
                // Balanced with two chosen edges means straight pass-through.
                if here.len() != 2 {
                    break;
                }
                let next = if here[0] == edge { here[1] } else { here[0] };
                prev = w;
                edge = next;
            }
        }
    }
    true
}

/// The witness as a standalone net with straight pass-through points removed.
pub fn witness_net(net: &Net, witness: &[usize], tol: f64) -> Net {
    net.edge_subnet(witness).suppress_pass_through(tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Unknown,
    In,
    Out,
}

struct Csp<'a> {
    net: &'a Net,
    /// Balanced subsets per vertex; `None` for unbalanced vertices.
    domains: Vec<Option<Vec<u32>>>,
    nodes: u64,
    budget: u64,
}

enum Outcome {
    Found(Vec<Status>),
    Exhausted,
}

impl<'a> Csp<'a> {
    fn live(&self, state: &[Status], v: usize) -> Vec<u32> {
        let Some(domain) = &self.domains[v] else {
            return Vec::new();
        };
        let inc = self.net.incident(v);
        let (mut must, mut must_not) = (0u32, 0u32);
        for (i, &e) in inc.iter().enumerate() {
            match state[e] {
                Status::In => must |= 1 << i,
                Status::Out => must_not |= 1 << i,
                Status::Unknown => {}
            }
        }
        domain
            .iter()
            .copied()
            .filter(|m| m & must == must && m & must_not == 0)
            .collect()
    }

    /// Propagate from the endpoints of the given edges. Returns false on a
    /// wiped-out domain.
    fn propagate(
        &self,
        state: &mut [Status],
        start: impl IntoIterator<Item = usize>,
        mut trace: Option<&mut Vec<TraceStep>>,
    ) -> bool {
        let mut queue: VecDeque<usize> = VecDeque::new();
        let mut queued = vec![false; self.net.vertex_count()];
        for e in start {
            for v in self.net.edge(e).endpoints() {
                if !queued[v] {
                    queued[v] = true;
                    queue.push_back(v);
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            queued[v] = false;
            if self.domains[v].is_none() {
                continue;
            }
            let live = self.live(state, v);
            if live.is_empty() {
                return false;
            }
            let all = live.iter().fold(u32::MAX, |acc, m| acc & m);
            let any = live.iter().fold(0u32, |acc, m| acc | m);
            let mut step = TraceStep {
                vertex: self.net.id(v).to_owned(),
                forced_in: Vec::new(),
                forced_out: Vec::new(),
            };
            for (i, &e) in self.net.incident(v).iter().enumerate() {
                if state[e] != Status::Unknown {
                    continue;
                }
                let forced = if all & (1 << i) != 0 {
                    step.forced_in.push(self.net.edge_ids(e));
                    Status::In
                } else if any & (1 << i) == 0 {
                    step.forced_out.push(self.net.edge_ids(e));
                    Status::Out
                } else {
                    continue;
                };
                state[e] = forced;
                let w = self.net.edge(e).other(v);
                if !queued[w] {
                    queued[w] = true;
                    queue.push_back(w);
                }
            }
            if let Some(t) = trace.as_deref_mut() {
                if !step.forced_in.is_empty() || !step.forced_out.is_empty() {
                    t.push(step);
                }
            }
        }
        true
    }

    fn search(
        &mut self,
        state: Vec<Status>,
        accept: &dyn Fn(&[Status]) -> bool,
    ) -> Result<Outcome> {
        // Smallest live domain among balanced vertices with undecided edges.
        let mut pick: Option<(usize, Vec<u32>)> = None;
        for v in 0..self.net.vertex_count() {
            if self.domains[v].is_none()
                || self
                    .net
                    .incident(v)
                    .iter()
                    .all(|&e| state[e] != Status::Unknown)
            {
                continue;
            }
            let live = self.live(&state, v);
            if pick.as_ref().is_none_or(|(_, l)| live.len() < l.len()) {
                pick = Some((v, live));
            }
        }
        let Some((v, mut values)) = pick else {
            return Ok(if accept(&state) {
                Outcome::Found(state)
            } else {
                Outcome::Exhausted
            });
        };
        values.sort_by_key(|m| (m.count_ones(), *m));
        let inc = self.net.incident(v).to_vec();
        for mask in values {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SearchBudgetExceeded(self.budget));
            }
            let mut next = state.clone();
            let mut touched = Vec::new();
            for (i, &e) in inc.iter().enumerate() {
                if next[e] == Status::Unknown {
                    next[e] = if mask & (1 << i) != 0 {
                        Status::In
                    } else {
                        Status::Out
                    };
                    touched.push(e);
                }
            }
            if !self.propagate(&mut next, touched, None) {
                continue;
            }
            if let Outcome::Found(s) = self.search(next, accept)? {
                return Ok(Outcome::Found(s));
            }
        }
        Ok(Outcome::Exhausted)
    }

    /// Search for an accepted solution with `seed` present and every edge in
    /// `absent` excluded.
    fn solve_seeded(
        &mut self,
        seed: usize,
        absent: &[usize],
        accept: &dyn Fn(&[Status]) -> bool,
        trace: Option<&mut Vec<TraceStep>>,
    ) -> Result<Outcome> {
        let mut state = vec![Status::Unknown; self.net.edge_count()];
        for &e in absent {
            state[e] = Status::Out;
        }
        if state[seed] == Status::Out {
            return Ok(Outcome::Exhausted);
        }
        state[seed] = Status::In;
        let start: Vec<usize> = std::iter::once(seed)
            .chain(absent.iter().copied())
            .collect();
        if !self.propagate(&mut state, start, trace) {
            return Ok(Outcome::Exhausted);
        }
        self.search(state, accept)
    }
}

fn selected(state: &[Status]) -> Vec<usize> {
    (0..state.len())
        .filter(|&e| state[e] == Status::In)
        .collect()
}

/// Shrink a witness until no geodesic subnet is a strict subset of it.
fn minimize(csp: &mut Csp<'_>, mut witness: Vec<usize>) -> Result<Vec<usize>> {
    let net = csp.net;
    loop {
        let mut inside = vec![false; net.edge_count()];
        for &e in &witness {
            inside[e] = true;
        }
        let mut absent: Vec<usize> = (0..net.edge_count()).filter(|&e| !inside[e]).collect();
        let size = witness.len();
        let accept = |s: &[Status]| {
            let chosen: Vec<bool> = s.iter().map(|&x| x == Status::In).collect();
            chosen.iter().filter(|&&c| c).count() < size && chains_ok(net, &chosen)
        };
        let mut smaller = None;
        for &seed in &witness {
            match csp.solve_seeded(seed, &absent, &accept, None)? {
                Outcome::Found(s) => {
                    smaller = Some(selected(&s));
                    break;
                }
                // No smaller subnet keeps `seed`.
                Outcome::Exhausted => absent.push(seed),
            }
        }
        match smaller {
            Some(w) => witness = w,
            None => return Ok(witness),
        }
    }
}

fn build_csp<'a>(net: &'a Net, opts: &SearchOptions) -> Result<(Csp<'a>, Vec<String>)> {
    let mut domains = Vec::with_capacity(net.vertex_count());
    let mut warnings = Vec::new();
    for v in 0..net.vertex_count() {
        if !net.vertex(v).is_balanced() {
            domains.push(None);
            continue;
        }
        let (ok, near) = subset_masks(net, v, opts.tol)?;
        for (mask, r) in near {
            warnings.push(format!(
                "subset {mask:#b} at `{}` misses balance by {r:.3e} (tolerance {:.1e})",
                net.id(v),
                opts.tol
            ));
        }
        domains.push(Some(ok));
    }
    Ok((
        Csp {
            net,
            domains,
            nodes: 0,
            budget: opts.node_budget,
        },
        warnings,
    ))
}

fn check_parent(net: &Net, tol: f64) -> Result<()> {
    let report = verify(net, tol);
    if report.passed {
        return Ok(());
    }
    let reason = if !report.connected {
        "not connected".to_owned()
    } else if report.max_residual > tol {
        format!("max residual {:.3e} above tolerance", report.max_residual)
    } else if !report.degree_violations.is_empty() {
        "balanced vertex of degree below 3".to_owned()
    } else if !report.unbalanced_to_unbalanced_edges.is_empty() {
        "edge between unbalanced vertices".to_owned()
    } else {
        "edges overlap or cross away from vertices".to_owned()
    };
    Err(Error::InvariantViolation(format!(
        "not a valid geodesic net: {reason}"
    )))
}

/// Search for a proper geodesic subnet of a valid net, with statistics.
pub fn find_proper_subnet_with(net: &Net, opts: &SearchOptions) -> Result<SubnetSearch> {
    check_parent(net, opts.tol)?;
    let (mut csp, warnings) = build_csp(net, opts)?;
    let m = net.edge_count();
    let accept = |s: &[Status]| {
        let chosen: Vec<bool> = s.iter().map(|&x| x == Status::In).collect();
        chosen.iter().any(|&c| !c) && chains_ok(net, &chosen)
    };

    let mut trace = Vec::new();
    let mut absent = Vec::new();
    for seed in 0..m {
        let t = (seed == 0).then_some(&mut trace);
        match csp.solve_seeded(seed, &absent, &accept, t)? {
            Outcome::Found(s) => {
                let witness = minimize(&mut csp, selected(&s))?;
                return Ok(SubnetSearch {
                    certificate: SubnetCertificate::Reducible { witness },
                    nodes: csp.nodes,
                    warnings,
                });
            }
            // No proper subnet contains `seed`; later seeds may assume it absent.
            Outcome::Exhausted => absent.push(seed),
        }
    }
    let seed = if m > 0 {
        net.edge_ids(0)
    } else {
        [String::new(), String::new()]
    };
    Ok(SubnetSearch {
        certificate: SubnetCertificate::Irreducible {
            seed,
            trace,
            seeds_checked: m,
        },
        nodes: csp.nodes,
        warnings,
    })
}

pub fn find_proper_subnet(net: &Net, tol: f64) -> Result<SubnetCertificate> {
    find_proper_subnet_with(net, &SearchOptions::with_tol(tol)).map(|s| s.certificate)
}

pub fn is_irreducible(net: &Net, tol: f64) -> Result<bool> {
    find_proper_subnet(net, tol).map(|c| c.is_irreducible())
}

/// Distinct minimal witnesses reachable by seeding the search at each edge in
/// turn, in discovery order, up to `limit`.
pub fn minimal_witnesses(net: &Net, opts: &SearchOptions, limit: usize) -> Result<Vec<Vec<usize>>> {
    check_parent(net, opts.tol)?;
    let (mut csp, _) = build_csp(net, opts)?;
    let accept = |s: &[Status]| {
        let chosen: Vec<bool> = s.iter().map(|&x| x == Status::In).collect();
        chosen.iter().any(|&c| !c) && chains_ok(net, &chosen)
    };
    let mut found: Vec<Vec<usize>> = Vec::new();
    for seed in 0..net.edge_count() {
        if found.len() >= limit {
            break;
        }
        if found.iter().any(|w| w.contains(&seed)) {
            continue;
        }
        if let Outcome::Found(s) = csp.solve_seeded(seed, &[], &accept, None)? {
            let w = minimize(&mut csp, selected(&s))?;
            if !found.contains(&w) {
                found.push(w);
            }
        }
    }
    Ok(found)
}
