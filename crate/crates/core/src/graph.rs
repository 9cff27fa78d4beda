use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Undirected weighted graph on a dense vertex set. The diagonal holds
/// self-loop weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedGraph {
    vertices: Vec<String>,
    weights: Matrix,
}

impl WeightedGraph {
    pub fn new(vertices: Vec<String>, weights: Matrix) -> Result<Self> {
        let n = vertices.len();
        if weights.rows() != n || weights.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{n} vertices but a {}x{} weight matrix",
                weights.rows(),
                weights.cols()
            )));
        }
        let asym = weights.asymmetry();
        if asym > 1e-12 {
            return Err(Error::NotSymmetric(asym));
        }
        for i in 0..n {
            for j in 0..n {
                let w = weights[(i, j)];
                if !w.is_finite() || w < 0.0 {
                    return Err(Error::NonPositiveWeight {
                        what: format!("graph weight ({}, {})", vertices[i], vertices[j]),
                        value: w,
                    });
                }
            }
        }
        Ok(WeightedGraph { vertices, weights })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn weights(&self) -> &Matrix {
        &self.weights
    }

    pub fn weight(&self, u: usize, v: usize) -> f64 {
        self.weights[(u, v)]
    }

    /// Weighted degree `Σ_v w(u,v)` (self-loop counted once).
    pub fn degrees(&self) -> Vec<f64> {
        self.weights.row_sums()
    }

    /// Unordered pairs `(u, v)` with `u <= v` and positive weight.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let n = self.n_vertices();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u..n {
                let w = self.weights[(u, v)];
                if w > 0.0 {
                    out.push((u, v, w));
                }
            }
        }
        out
    }

    pub fn has_self_loops(&self) -> bool {
        (0..self.n_vertices()).any(|v| self.weights[(v, v)] > 0.0)
    }
}
