//! Total length, its gradient, and relaxation to critical points with the
//! unbalanced vertices pinned.
//!
//! The gradient of total length with respect to a free vertex is the negated
//! balance residual there, so a net is critical exactly when every balanced
//! vertex is balanced.

use crate::error::{Error, Result};
use crate::geom::{Point, Vec2, DEGENERACY_EPS};
use crate::net::{residual_with, Net};

pub fn total_length(net: &Net) -> f64 {
    length_with(net, &net.positions())
}

fn length_with(net: &Net, pos: &[Point]) -> f64 {
    net.edges()
        .iter()
        .map(|e| pos[e.a()].distance(pos[e.b()]))
        .sum()
}

/// Gradient of total length per vertex index; `None` for unbalanced vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradient {
    entries: Vec<Option<Vec2>>,
}

impl Gradient {
    pub fn get(&self, v: usize) -> Option<Vec2> {
        self.entries[v]
    }

    pub fn by_id(&self, net: &Net, id: &str) -> Option<Vec2> {
        net.index_of(id).and_then(|v| self.entries[v])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Vec2)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(v, g)| g.map(|g| (v, g)))
    }

    pub fn max_norm(&self) -> f64 {
        self.iter().map(|(_, g)| g.norm()).fold(0.0, f64::max)
    }
}

/// Change in total length when moving from `pos` to `next`, summed per edge as
/// `(d' - d).(d' + d) / (|d'| + |d|)` so that tiny changes are not lost to
/// cancellation against the total.
fn length_change(net: &Net, pos: &[Point], next: &[Point]) -> f64 {
    net.edges()
        .iter()
        .map(|e| {
            let d = pos[e.b()] - pos[e.a()];
            let dn = next[e.b()] - next[e.a()];
            let delta = (next[e.b()] - pos[e.b()]) - (next[e.a()] - pos[e.a()]);
            delta.dot(dn + d) / (dn.norm() + d.norm())
        })
        .sum()
}

fn check_edges(net: &Net, pos: &[Point]) -> Result<()> {
    for e in net.edges() {
        if pos[e.a()].distance(pos[e.b()]) < DEGENERACY_EPS {
            return Err(Error::DegenerateSegment {
                from: pos[e.a()],
                to: pos[e.b()],
            });
        }
    }
    Ok(())
}

fn gradient_with(net: &Net, pos: &[Point]) -> Gradient {
    let entries = net
        .vertices()
        .iter()
        .enumerate()
        .map(|(v, vx)| vx.is_balanced().then(|| -residual_with(net, pos, v)))
        .collect();
    Gradient { entries }
}

pub fn length_gradient(net: &Net) -> Result<Gradient> {
    let pos = net.positions();
    check_edges(net, &pos)?;
    Ok(gradient_with(net, &pos))
}

/// A net structure together with starting positions. Unbalanced vertices keep
/// their positions; balanced ones are free.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    net: Net,
}

impl Topology {
    pub fn new(net: Net) -> Self {
        Topology { net }
    }

    pub fn net(&self) -> &Net {
        &self.net
    }
}

impl From<Net> for Topology {
    fn from(net: Net) -> Self {
        Topology::new(net)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxParams {
    /// Initial trial step of every backtracking line search.
    pub step: f64,
    pub max_iter: usize,
    /// Stop once the largest residual at a balanced vertex is below this.
    pub tol: f64,
}

impl Default for RelaxParams {
    fn default() -> Self {
        RelaxParams {
            step: 0.1,
            max_iter: 100_000,
            tol: 1e-9,
        }
    }
}

/// Sufficient-decrease constant of the Armijo condition.
const ARMIJO_C: f64 = 1e-4;

/// Line searches that shrink the step below this give up.
const MIN_STEP: f64 = 1e-20;

#[derive(Debug, Clone, PartialEq)]
pub struct RelaxResult {
    pub net: Net,
    pub final_residual: f64,
    /// Accepted descent steps.
    pub iterations: usize,
    pub converged: bool,
    /// Total length before the first step and after every accepted step.
    pub length_trace: Vec<f64>,
}

fn collision(net: &Net, pos: &[Point]) -> Option<(usize, usize)> {
    net.edges()
        .iter()
        .find(|e| pos[e.a()].distance(pos[e.b()]) < DEGENERACY_EPS)
        .map(|e| (e.a(), e.b()))
}

/// Gradient descent on total length over the balanced vertices with an Armijo
/// backtracking line search (halving). The first trial step is `params.step`;
/// later ones are the Barzilai-Borwein step `s.s / s.y` of the previous move,
/// falling back to `params.step` when that is not positive.
pub fn relax(topo: &Topology, params: RelaxParams) -> Result<RelaxResult> {
    if params.step.is_nan() || params.step <= 0.0 {
        return Err(Error::InvariantViolation(
            "relaxation step must be positive".into(),
        ));
    }
    let net = &topo.net;
    let mut pos = net.positions();
    if let Some((u, v)) = collision(net, &pos) {
        return Err(Error::VertexCollision(net.id(u).into(), net.id(v).into()));
    }
    let mut length = length_with(net, &pos);
    let mut trace = vec![length];
    let mut iterations = 0;
    let mut grad = gradient_with(net, &pos);
    let mut residual = grad.max_norm();

    let mut trial_step = params.step;
    while residual >= params.tol && iterations < params.max_iter {
        let g_sq: f64 = grad.iter().map(|(_, g)| g.norm_sq()).sum();
        let mut step = trial_step;
        let accepted = loop {
            let mut trial = pos.clone();
            for (v, g) in grad.iter() {
                trial[v] = pos[v] - g * step;
            }
            if length_change(net, &pos, &trial) <= -ARMIJO_C * step * g_sq {
                let l = length_with(net, &trial);
                break Some((trial, l));
            }
            step *= 0.5;
            if step < MIN_STEP {
                break None;
            }
        };
        let Some((next, l)) = accepted else {
            // Numerical floor: no step decreases length any further.
            break;
        };
        if let Some((u, v)) = collision(net, &next) {
            return Err(Error::VertexCollision(net.id(u).into(), net.id(v).into()));
        }
        let next_grad = gradient_with(net, &next);
        let (mut ss, mut sy) = (0.0, 0.0);
        for (v, g) in next_grad.iter() {
            let s = next[v] - pos[v];
            ss += s.norm_sq();
            sy += s.dot(g - grad.get(v).unwrap_or(Vec2::ZERO));
        }
        trial_step = if sy > 0.0 && ss > 0.0 {
            ss / sy
        } else {
            params.step
        };
        pos = next;
        length = l;
        trace.push(length);
        iterations += 1;
        grad = next_grad;
        residual = grad.max_norm();
    }

    for u in 0..pos.len() {
        if let Some(v) = (u + 1..pos.len()).find(|&v| pos[u].coincides(pos[v])) {
            return Err(Error::VertexCollision(net.id(u).into(), net.id(v).into()));
        }
    }
    let relaxed = net.with_positions(&pos)?;
    Ok(RelaxResult {
        net: relaxed,
        final_residual: residual,
        iterations,
        converged: residual < params.tol,
        length_trace: trace,
    })
}
