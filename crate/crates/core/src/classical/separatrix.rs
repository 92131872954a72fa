//! Energy contour through the hyperbolic point(s), traced with marching
//! squares on a `(Q, P)` lattice covering the disk.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::disk::{hamiltonian_gradient, hamiltonian_unchecked, PhasePoint, DISK_RADIUS_SQ};
use super::lyapunov::primary_hyperbolic_point;
use crate::numerics::linspace;
use crate::{Error, ModelParams, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub points: Vec<PhasePoint>,
    pub closed: bool,
}

/// Level set `H_cl = H_cl(Q_hyp, 0)` on a `resolution × resolution` lattice
/// over `[−2, 2]²`. Returns no polylines when there is no hyperbolic point.
pub fn separatrix(params: &ModelParams, resolution: usize) -> Result<Vec<Polyline>> {
    if resolution < 3 {
        return Err(Error::Config(format!(
            "separatrix resolution must be at least 3, got {resolution}"
        )));
    }
    let fp = match primary_hyperbolic_point(params) {
        Ok(fp) => fp,
        Err(Error::NoHyperbolicPoint { .. }) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let level = hamiltonian_unchecked(fp.q(), 0.0, params);
    let spacing = 4.0 / (resolution - 1) as f64;
    let mut lines = contour(params, level, resolution);
    for line in &mut lines {
        for pt in &mut line.points {
            *pt = project_onto_level(*pt, params, level, 0.5 * spacing);
        }
    }
    Ok(lines)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum EdgeId {
    /// `(i, j) – (i + 1, j)`
    Horizontal(usize, usize),
    /// `(i, j) – (i, j + 1)`
    Vertical(usize, usize),
}

fn contour(params: &ModelParams, level: f64, n: usize) -> Vec<Polyline> {
    let axis = linspace(-2.0, 2.0, n);
    let inside = |i: usize, j: usize| axis[i] * axis[i] + axis[j] * axis[j] <= DISK_RADIUS_SQ;
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            values[i * n + j] = hamiltonian_unchecked(axis[i], axis[j], params) - level;
        }
    }
    let f = |i: usize, j: usize| values[i * n + j];
    let crossing = |e: EdgeId| -> PhasePoint {
        let ((i0, j0), (i1, j1)) = match e {
            EdgeId::Horizontal(i, j) => ((i, j), (i + 1, j)),
            EdgeId::Vertical(i, j) => ((i, j), (i, j + 1)),
        };
        let (a, b) = (f(i0, j0), f(i1, j1));
        let t = if a == b { 0.5 } else { a / (a - b) };
        PhasePoint::new(
            axis[i0] + t * (axis[i1] - axis[i0]),
            axis[j0] + t * (axis[j1] - axis[j0]),
        )
    };

    let mut segments: Vec<(EdgeId, EdgeId)> = Vec::new();
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            if !(inside(i, j) && inside(i + 1, j) && inside(i, j + 1) && inside(i + 1, j + 1)) {
                continue;
            }
            let corners = [f(i, j), f(i + 1, j), f(i + 1, j + 1), f(i, j + 1)];
            let edges = [
                EdgeId::Horizontal(i, j),
                EdgeId::Vertical(i + 1, j),
                EdgeId::Horizontal(i, j + 1),
                EdgeId::Vertical(i, j),
            ];
            let above: Vec<bool> = corners.iter().map(|&v| v >= 0.0).collect();
            let cut: Vec<EdgeId> = (0..4)
                .filter(|&e| above[e] != above[(e + 1) % 4])
                .map(|e| edges[e])
                .collect();
            match cut.len() {
                2 => segments.push((cut[0], cut[1])),
                4 => {
                    let centre = 0.25 * corners.iter().sum::<f64>();
                    if (centre >= 0.0) == above[0] {
                        segments.push((edges[0], edges[1]));
                        segments.push((edges[2], edges[3]));
                    } else {
                        segments.push((edges[3], edges[0]));
                        segments.push((edges[1], edges[2]));
                    }
                }
                _ => {}
            }
        }
    }
    join_segments(&segments)
        .into_iter()
        .map(|(ids, closed)| Polyline {
            points: ids.into_iter().map(crossing).collect(),
            closed,
        })
        .collect()
}

/// Chains segments sharing an edge crossing into polylines, deterministically
/// in segment order.
fn join_segments(segments: &[(EdgeId, EdgeId)]) -> Vec<(Vec<EdgeId>, bool)> {
    let mut incident: HashMap<EdgeId, Vec<usize>> = HashMap::new();
    for (s, (a, b)) in segments.iter().enumerate() {
        incident.entry(*a).or_default().push(s);
        incident.entry(*b).or_default().push(s);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();

    let walk = |start_seg: usize, start_edge: EdgeId, used: &mut Vec<bool>| -> Vec<EdgeId> {
        let mut chain = vec![start_edge];
        let mut seg = start_seg;
        let mut at = start_edge;
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            let next = if a == at { b } else { a };
            chain.push(next);
            at = next;
            match incident[&at].iter().find(|&&s| !used[s]) {
                Some(&s) => seg = s,
                None => break,
            }
        }
        chain
    };

    // open chains start at crossings touched by a single segment
    for s in 0..segments.len() {
        if used[s] {
            continue;
        }
        let (a, b) = segments[s];
        let start = if incident[&a].len() == 1 {
            Some(a)
        } else if incident[&b].len() == 1 {
            Some(b)
        } else {
            None
        };
        if let Some(edge) = start {
            out.push((walk(s, edge, &mut used), false));
        }
    }
    for s in 0..segments.len() {
        if !used[s] {
            let chain = walk(s, segments[s].0, &mut used);
            let closed = chain.first() == chain.last();
            out.push((chain, closed));
        }
    }
    out
}

/// Newton steps along the gradient onto `H = level`, each limited to
/// `max_step`; the original point is kept if the residual does not improve.
fn project_onto_level(pt: PhasePoint, params: &ModelParams, level: f64, max_step: f64) -> PhasePoint {
    let residual = |p: &PhasePoint| hamiltonian_unchecked(p.q, p.p, params) - level;
    let mut best = pt;
    let mut best_r = residual(&pt).abs();
    let mut cur = pt;
    for _ in 0..4 {
        let r = residual(&cur);
        let g = hamiltonian_gradient(&cur, params);
        let g2 = g[0] * g[0] + g[1] * g[1];
        if g2 < 1e-24 {
            break;
        }
        let mut dq = -r * g[0] / g2;
        let mut dp = -r * g[1] / g2;
        let len = (dq * dq + dp * dp).sqrt();
        if len > max_step {
            dq *= max_step / len;
            dp *= max_step / len;
        }
        cur = PhasePoint::new(cur.q + dq, cur.p + dp);
        let rc = residual(&cur).abs();
        if rc < best_r {
            best = cur;
            best_r = rc;
        }
    }
    best
}
