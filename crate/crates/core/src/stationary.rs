//! Stationary distributions of hypergraph walks.
//!
//! The main route writes the stationary distribution as
//! `π_v = Σ_{e∈E(v)} ρ_e ω(e) γ_e(v)` with one positive constant per edge.
//! After scaling every edge to `δ(e) = 1`, the vector `ρ` is the Perron
//! eigenvector (eigenvalue 1) of the `|E| × |E|` matrix
//!
//! ```text
//! A(e,f) = Σ_{v∈e∩f} ω(f) γ_f(v) / d(v)
//! ```
//!
//! normalized so that `Σ_e ρ_e ω(e) = 1`. The direct linear solve of
//! `πP = π` is kept as an independent check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::linalg::{solve, Matrix};
use crate::walk::{transition_matrix, TransitionMatrix};

const POWER_TOL: f64 = 1e-12;
const POWER_MAX_ITERS: usize = 1_000_000;
/// Power iteration is abandoned when the step size has not reached a new
/// minimum for this many iterations.
const POWER_STALL_WINDOW: usize = 10_000;
/// Largest `max|πP − π|` accepted from the ρ route.
pub const RHO_RESIDUAL_TOL: f64 = 1e-9;
/// Relative tolerance for detecting edge-independent vertex weights.
pub const EDGE_INDEPENDENCE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StationaryMethod {
    RhoEigenvector,
    DirectSolve,
    ClosedFormEdgeIndependent,
    ClosedFormTrivial,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StationaryResult {
    pub pi: Vec<f64>,
    /// Per-edge constants for `δ(e) = 1`-normalized weights; only set by the ρ route.
    pub rho: Option<Vec<f64>>,
    pub method: StationaryMethod,
    /// `max_v |(πP)_v − π_v|`.
    pub residual: f64,
}

/// `max_v |(πP)_v − π_v|`.
pub fn stationarity_residual(p: &TransitionMatrix, pi: &[f64]) -> f64 {
    p.matrix()
        .left_mul(pi)
        .iter()
        .zip(pi)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// The `|E| × |E|` matrix `A` for a hypergraph whose edges already satisfy `δ(e) = 1`.
pub fn rho_matrix(normalized: &Hypergraph) -> Matrix {
    let m = normalized.n_edges();
    let d = normalized.vertex_degrees();
    let mut a = Matrix::zeros(m, m);
    for v in 0..normalized.n_vertices() {
        let incident = normalized.incident_edges(v);
        for &f in incident {
            let edge = normalized.edge(f);
            let contrib = edge.weight() * edge.gamma(v) / d[v];
            for &e in incident {
                a[(e, f)] += contrib;
            }
        }
    }
    a
}

fn normalize_rho(rho: &mut [f64], weights: &[f64]) {
    let s: f64 = rho.iter().zip(weights).map(|(r, w)| r * w).sum();
    for r in rho.iter_mut() {
        *r /= s;
    }
}

/// Power iteration on `A`. `None` when it stalls or hits the cap.
fn rho_power_iteration(a: &Matrix, weights: &[f64]) -> Option<Vec<f64>> {
    let total: f64 = weights.iter().sum();
    let mut rho = vec![1.0 / total; weights.len()];
    let mut best = f64::INFINITY;
    let mut since_best = 0;
    let mut prev_diff = f64::INFINITY;
    for _ in 0..POWER_MAX_ITERS {
        let mut next = a.mul_vec(&rho);
        normalize_rho(&mut next, weights);
        let diff = next
            .iter()
            .zip(&rho)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        rho = next;
        // distance to the fixed point is about diff / (1 - r) for contraction rate r
        let rate = (diff / prev_diff).min(1.0 - 1e-6);
        prev_diff = diff;
        if diff == 0.0 || diff / (1.0 - rate) < POWER_TOL {
            return Some(rho);
        }
        if diff < best {
            best = diff;
            since_best = 0;
        } else {
            since_best += 1;
            if since_best >= POWER_STALL_WINDOW {
                return None;
            }
        }
    }
    None
}

/// Solve `(A − I) ρ = 0` with the last equation replaced by `Σ ω ρ = 1`.
fn rho_null_space(a: &Matrix, weights: &[f64]) -> Result<Vec<f64>> {
    let m = weights.len();
    let mut sys = a.sub(&Matrix::identity(m));
    sys.row_mut(m - 1).copy_from_slice(weights);
    let mut rhs = vec![0.0; m];
    rhs[m - 1] = 1.0;
    solve(&sys, &rhs)
}

/// Stationary distribution through the per-edge constants `ρ_e`.
pub fn stationary_rho(h: &Hypergraph) -> Result<StationaryResult> {
    h.ensure_connected()?;
    h.ensure_dense_size()?;
    let normalized = h.normalize_edge_degrees();
    let weights: Vec<f64> = h.edges().iter().map(|e| e.weight()).collect();
    let a = rho_matrix(&normalized);
    let p = transition_matrix(h)?;

    let assemble = |rho: Vec<f64>| -> StationaryResult {
        let mut pi = vec![0.0; h.n_vertices()];
        for (e, edge) in normalized.edges().iter().enumerate() {
            for &(v, g) in edge.members() {
                pi[v] += rho[e] * edge.weight() * g;
            }
        }
        let residual = stationarity_residual(&p, &pi);
        StationaryResult {
            pi,
            rho: Some(rho),
            method: StationaryMethod::RhoEigenvector,
            residual,
        }
    };

    if let Some(rho) = rho_power_iteration(&a, &weights) {
        let result = assemble(rho);
        if result.residual <= RHO_RESIDUAL_TOL {
            return Ok(result);
        }
    }
    let rho = rho_null_space(&a, &weights)
        .map_err(|e| Error::ConvergenceFailure(format!("rho eigenvector ({e})")))?;
    if rho.iter().any(|&r| r <= 0.0) {
        return Err(Error::ConvergenceFailure(
            "rho eigenvector has non-positive entries".into(),
        ));
    }
    let result = assemble(rho);
    if result.residual > RHO_RESIDUAL_TOL {
        return Err(Error::ConvergenceFailure(format!(
            "rho eigenvector (residual {:e})",
            result.residual
        )));
    }
    Ok(result)
}

/// Solve `πP = π, Σπ = 1` directly: the last equation of `(Pᵀ − I)π = 0`
/// is replaced by the normalization.
pub fn stationary_direct(p: &TransitionMatrix) -> Result<StationaryResult> {
    let n = p.n();
    let mut sys = p.matrix().transpose().sub(&Matrix::identity(n));
    sys.row_mut(n - 1).fill(1.0);
    let mut rhs = vec![0.0; n];
    rhs[n - 1] = 1.0;
    let pi = solve(&sys, &rhs)?;
    let residual = stationarity_residual(p, &pi);
    Ok(StationaryResult {
        pi,
        rho: None,
        method: StationaryMethod::DirectSolve,
        residual,
    })
}

/// Closed form `π_v ∝ d(v) γ(v)` for edge-independent vertex weights.
pub fn stationary_edge_independent(h: &Hypergraph) -> Result<StationaryResult> {
    let gamma = h.check_edge_independent(EDGE_INDEPENDENCE_TOL)?;
    let d = h.vertex_degrees();
    let mass: Vec<f64> = d.iter().zip(&gamma).map(|(d, g)| d * g).collect();
    let total: f64 = mass.iter().sum();
    let pi: Vec<f64> = mass.iter().map(|m| m / total).collect();
    let residual = stationarity_residual(&transition_matrix(h)?, &pi);
    let method = if h.has_trivial_weights() {
        StationaryMethod::ClosedFormTrivial
    } else {
        StationaryMethod::ClosedFormEdgeIndependent
    };
    Ok(StationaryResult {
        pi,
        rho: None,
        method,
        residual,
    })
}

/// The degree-ratio vector `d(v) / Σ_u d(u)`.
///
/// This ignores vertex weights entirely and is generally *not* stationary
/// once the weights are edge-dependent; it exists as a counterexample
/// generator.
pub fn naive_stationary(h: &Hypergraph) -> Vec<f64> {
    let d = h.vertex_degrees();
    let total: f64 = d.iter().sum();
    d.iter().map(|x| x / total).collect()
}

/// ρ route, falling back to the direct solve if the eigenvector fails.
pub fn stationary_auto(h: &Hypergraph) -> Result<StationaryResult> {
    match stationary_rho(h) {
        Ok(r) => Ok(r),
        Err(Error::ConvergenceFailure(_)) => stationary_direct(&transition_matrix(h)?),
        Err(e) => Err(e),
    }
}

/// Rescale vertex weights so that `ρ_e = 1` for every edge, i.e.
/// `γ'_e(v) = ρ_e γ_e(v) / δ(e)`, giving `π_v = Σ_{e∈E(v)} ω(e) γ'_e(v)`.
pub fn rho_normalized(h: &Hypergraph) -> Result<(Hypergraph, StationaryResult)> {
    let stat = stationary_rho(h)?;
    let rho = stat.rho.as_ref().expect("rho route sets rho");
    let factors: Vec<f64> = h
        .edges()
        .iter()
        .zip(rho)
        .map(|(e, r)| r / e.delta())
        .collect();
    Ok((h.scale_edge_vertex_weights(&factors)?, stat))
}
