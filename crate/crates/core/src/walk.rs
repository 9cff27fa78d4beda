//! Random walks on hypergraphs.
//!
//! The lazy walk from `v` picks an incident edge `e` with probability
//! `ω(e)/d(v)`, then a member `w` of `e` with probability `γ_e(w)/δ(e)`:
//!
//! ```text
//! p(v,w) = Σ_{e∈E(v)} (ω(e)/d(v)) (γ_e(w)/δ(e))       P = D_V⁻¹ W D_E⁻¹ R
//! ```
//!
//! The non-lazy walk excludes `v` itself in the second step.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::hypergraph::Hypergraph;
use crate::linalg::Matrix;

/// Row-stochastic tolerance for every matrix produced here.
pub const STOCHASTIC_TOL: f64 = 1e-12;

/// Row-stochastic transition matrix over a named vertex set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransitionMatrix {
    vertices: Vec<String>,
    p: Matrix,
}

impl TransitionMatrix {
    /// Wrap a matrix after checking entries lie in `[0,1]` and rows sum to 1.
    pub fn new(vertices: Vec<String>, p: Matrix) -> Result<Self> {
        let n = vertices.len();
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{n} vertices but a {}x{} matrix",
                p.rows(),
                p.cols()
            )));
        }
        for i in 0..n {
            let row = p.row(i);
            if let Some(x) = row.iter().find(|x| !(-STOCHASTIC_TOL..=1.0 + STOCHASTIC_TOL).contains(*x)) {
                return Err(Error::BadDistribution(format!(
                    "row {} has entry {x} outside [0,1]",
                    vertices[i]
                )));
            }
            let s: f64 = row.iter().sum();
            if (s - 1.0).abs() > STOCHASTIC_TOL {
                return Err(Error::BadDistribution(format!(
                    "row {} sums to {s}",
                    vertices[i]
                )));
            }
        }
        Ok(TransitionMatrix { vertices, p })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.p
    }

    pub fn get(&self, from: usize, to: usize) -> f64 {
        self.p[(from, to)]
    }

    pub fn row(&self, v: usize) -> &[f64] {
        self.p.row(v)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// CSV with a header row of vertex names and a leading label column.
    pub fn to_csv(&self) -> String {
        let mut out = format!("vertex,{}\n", self.vertices.join(","));
        for i in 0..self.n() {
            let row: Vec<String> = self.row(i).iter().map(f64::to_string).collect();
            out.push_str(&self.vertices[i]);
            out.push(',');
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Where a restarting walker jumps.
#[derive(Debug, Clone, PartialEq)]
pub enum RestartTarget {
    Uniform,
    Vertex(usize),
    Distribution(Vec<f64>),
}

impl RestartTarget {
    pub fn distribution(&self, n: usize) -> Result<Vec<f64>> {
        match self {
            RestartTarget::Uniform => Ok(vec![1.0 / n as f64; n]),
            RestartTarget::Vertex(v) => {
                if *v >= n {
                    return Err(Error::UnknownVertex(format!("index {v}")));
                }
                let mut r = vec![0.0; n];
                r[*v] = 1.0;
                Ok(r)
            }
            RestartTarget::Distribution(r) => {
                check_distribution(r, n)?;
                Ok(r.clone())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum WalkKind {
    Lazy,
    NonLazy,
    /// Lazy walk mixed with a restart: `(1-β) P + β 1 rᵀ`.
    Restart { beta: f64, target: RestartTarget },
}

pub(crate) fn check_distribution(r: &[f64], n: usize) -> Result<()> {
    if r.len() != n {
        return Err(Error::BadDistribution(format!(
            "length {} for {n} vertices",
            r.len()
        )));
    }
    if r.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::BadDistribution("negative or non-finite entry".into()));
    }
    let s: f64 = r.iter().sum();
    if (s - 1.0).abs() > 1e-9 {
        return Err(Error::BadDistribution(format!("sums to {s}")));
    }
    Ok(())
}

/// Lazy-walk transition matrix, evaluated from the summation form.
pub fn transition_matrix(h: &Hypergraph) -> Result<TransitionMatrix> {
    h.ensure_dense_size()?;
    let n = h.n_vertices();
    let d = h.vertex_degrees();
    let mut p = Matrix::zeros(n, n);
    for edge in h.edges() {
        let delta = edge.delta();
        for &(v, _) in edge.members() {
            let pick_edge = edge.weight() / d[v];
            for &(w, gamma) in edge.members() {
                p[(v, w)] += pick_edge * gamma / delta;
            }
        }
    }
    Ok(TransitionMatrix {
        vertices: h.vertices().to_vec(),
        p,
    })
}

/// `(1-β) P + β 1 rᵀ`.
pub fn restart_matrix(p: &TransitionMatrix, beta: f64, target: &RestartTarget) -> Result<TransitionMatrix> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::BadBeta(beta));
    }
    let n = p.n();
    let r = target.distribution(n)?;
    let mut out = p.p.scale(1.0 - beta);
    for i in 0..n {
        for (x, &rj) in out.row_mut(i).iter_mut().zip(&r) {
            *x += beta * rj;
        }
    }
    Ok(TransitionMatrix {
        vertices: p.vertices.clone(),
        p: out,
    })
}

/// Non-lazy walk: `p(v,w) = Σ_{e∈E(v)} (ω(e)/d(v)) γ_e(w) / (δ(e) - γ_e(v))`
/// for `w ≠ v`; zero diagonal.
pub fn nonlazy_transition_matrix(h: &Hypergraph) -> Result<TransitionMatrix> {
    h.ensure_dense_size()?;
    if let Some(e) = h.edges().iter().position(|e| e.len() < 2) {
        return Err(Error::SingletonEdge(e));
    }
    let n = h.n_vertices();
    let d = h.vertex_degrees();
    let mut p = Matrix::zeros(n, n);
    for edge in h.edges() {
        let delta = edge.delta();
        for &(v, gv) in edge.members() {
            let pick_edge = edge.weight() / d[v];
            let rest = delta - gv;
            for &(w, gw) in edge.members() {
                if w != v {
                    p[(v, w)] += pick_edge * gw / rest;
                }
            }
        }
    }
    Ok(TransitionMatrix {
        vertices: h.vertices().to_vec(),
        p,
    })
}

/// Transition matrix for any [`WalkKind`].
pub fn walk_matrix(h: &Hypergraph, kind: &WalkKind) -> Result<TransitionMatrix> {
    match kind {
        WalkKind::Lazy => transition_matrix(h),
        WalkKind::NonLazy => nonlazy_transition_matrix(h),
        WalkKind::Restart { beta, target } => restart_matrix(&transition_matrix(h)?, *beta, target),
    }
}

/// Walk on an undirected weighted graph: `p(x,y) = w(x,y) / Σ_z w(x,z)`.
pub fn graph_random_walk(g: &WeightedGraph) -> Result<TransitionMatrix> {
    let n = g.n_vertices();
    let degrees = g.degrees();
    let mut p = g.weights().clone();
    for (x, &dx) in degrees.iter().enumerate() {
        if dx <= 0.0 {
            return Err(Error::IsolatedVertex(x));
        }
        for y in 0..n {
            p[(x, y)] /= dx;
        }
    }
    Ok(TransitionMatrix {
        vertices: g.vertices().to_vec(),
        p,
    })
}

fn sample_index<R: Rng>(rng: &mut R, weights: impl Iterator<Item = f64> + Clone) -> usize {
    let total: f64 = weights.clone().sum();
    let target = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    let mut last = 0;
    for (i, w) in weights.enumerate() {
        if w > 0.0 {
            last = i;
            acc += w;
            if target < acc {
                return i;
            }
        }
    }
    last
}

/// Simulate `steps` moves of the chain from `start`. The trajectory has
/// `steps + 1` entries and depends only on `(P, start, steps, seed)`.
pub fn simulate(p: &TransitionMatrix, start: &str, steps: usize, seed: u64) -> Result<Vec<usize>> {
    let mut v = p.index_of(start)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(steps + 1);
    out.push(v);
    for _ in 0..steps {
        v = sample_index(&mut rng, p.row(v).iter().copied());
        out.push(v);
    }
    Ok(out)
}

/// Simulate the lazy walk directly on `H` with the edge-then-vertex rule,
/// without forming `P`.
pub fn simulate_hypergraph(h: &Hypergraph, start: &str, steps: usize, seed: u64) -> Result<Vec<usize>> {
    let mut v = h.index_of(start)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(steps + 1);
    out.push(v);
    for _ in 0..steps {
        let incident = h.incident_edges(v);
        let e = incident[sample_index(&mut rng, incident.iter().map(|&e| h.edge(e).weight()))];
        let members = h.edge(e).members();
        v = members[sample_index(&mut rng, members.iter().map(|&(_, g)| g))].0;
        out.push(v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::random::{random_hypergraph, RandomHypergraphConfig};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::Rng;

    fn factored(h: &Hypergraph) -> Matrix {
        let m = h.incidence_matrices();
        let inv = |d: &Matrix| {
            let diag: Vec<f64> = (0..d.rows()).map(|i| 1.0 / d[(i, i)]).collect();
            Matrix::from_diagonal(&diag)
        };
        inv(&m.d_v).matmul(&m.w).matmul(&inv(&m.d_e)).matmul(&m.r)
    }

    #[test]
    fn h3_rows() {
        let p = transition_matrix(&fixtures::h3()).unwrap();
        assert_eq!(p.get(1, 0), 0.5);
        let expect = [
            [5.0 / 12.0, 1.0 / 8.0, 7.0 / 24.0, 1.0 / 6.0],
            [1.0 / 2.0, 1.0 / 4.0, 1.0 / 4.0, 0.0],
            [5.0 / 12.0, 1.0 / 8.0, 7.0 / 24.0, 1.0 / 6.0],
            [1.0 / 3.0, 0.0, 1.0 / 3.0, 1.0 / 3.0],
        ];
        for (i, row) in expect.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_abs_diff_eq!(p.get(i, j), x, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn single_edge_is_uniform() {
        let p = transition_matrix(&fixtures::trivial_edge(3)).unwrap();
        assert!(p.matrix().to_rows().iter().flatten().all(|&x| (x - 1.0 / 3.0).abs() < 1e-15));
    }

    #[test]
    fn restart_arithmetic_and_bounds() {
        let p = transition_matrix(&fixtures::h3()).unwrap();
        let r = restart_matrix(&p, 0.4, &RestartTarget::Uniform).unwrap();
        assert_abs_diff_eq!(r.get(1, 0), 0.4, epsilon = 1e-15);
        assert_eq!(restart_matrix(&p, 0.0, &RestartTarget::Uniform), Err(Error::BadBeta(0.0)));
        assert_eq!(restart_matrix(&p, 1.0, &RestartTarget::Uniform), Err(Error::BadBeta(1.0)));
        let near = restart_matrix(&p, 1.0 - 1e-9, &RestartTarget::Uniform).unwrap();
        assert!(near.matrix().to_rows().iter().flatten().all(|&x| (x - 0.25).abs() < 1e-8));
        let seeded = restart_matrix(&p, 0.5, &RestartTarget::Vertex(3)).unwrap();
        assert_abs_diff_eq!(seeded.get(1, 3), 0.5, epsilon = 1e-15);
        assert!(restart_matrix(&p, 0.5, &RestartTarget::Distribution(vec![0.5, 0.6, 0.0, 0.0])).is_err());
    }

    #[test]
    fn nonlazy_cases() {
        let p = nonlazy_transition_matrix(&fixtures::trivial_edge(3)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p.get(i, j), if i == j { 0.0 } else { 0.5 });
            }
        }
        let p = nonlazy_transition_matrix(&fixtures::h3()).unwrap();
        assert_abs_diff_eq!(p.get(1, 0), 2.0 / 3.0, epsilon = 1e-15);
        assert_eq!(nonlazy_transition_matrix(&fixtures::trivial_edge(1)), Err(Error::SingletonEdge(0)));
    }

    #[test]
    fn graph_walks() {
        let mut w = Matrix::zeros(3, 3);
        for (u, v) in [(0, 1), (1, 2), (0, 2)] {
            w[(u, v)] = 1.0;
            w[(v, u)] = 1.0;
        }
        let names: Vec<String> = ["a", "b", "c"].map(String::from).to_vec();
        let p = graph_random_walk(&WeightedGraph::new(names.clone(), w).unwrap()).unwrap();
        assert_eq!(p.get(0, 1), 0.5);
        assert_eq!(p.get(0, 0), 0.0);

        let mut star = Matrix::zeros(3, 3);
        for leaf in [1, 2] {
            star[(0, leaf)] = 1.0;
            star[(leaf, 0)] = 1.0;
        }
        let p = graph_random_walk(&WeightedGraph::new(names.clone(), star).unwrap()).unwrap();
        assert_eq!(p.row(0), &[0.0, 0.5, 0.5]);
        assert_eq!(p.row(2), &[1.0, 0.0, 0.0]);

        let lonely = WeightedGraph::new(names, Matrix::zeros(3, 3)).unwrap();
        assert_eq!(graph_random_walk(&lonely), Err(Error::IsolatedVertex(0)));
    }

    #[test]
    fn simulation_basics() {
        let p = transition_matrix(&fixtures::trivial_edge(3)).unwrap();
        assert_eq!(simulate(&p, "b", 0, 1).unwrap(), vec![1]);
        assert_eq!(simulate(&p, "zz", 3, 1), Err(Error::UnknownVertex("zz".into())));
        let a = simulate(&p, "a", 1000, 9).unwrap();
        assert_eq!(a, simulate(&p, "a", 1000, 9).unwrap());
        assert_ne!(a, simulate(&p, "a", 1000, 10).unwrap());

        let long = simulate(&p, "a", 100_000, 5).unwrap();
        for v in 0..3 {
            let f = long.iter().filter(|&&x| x == v).count() as f64 / long.len() as f64;
            assert!((f - 1.0 / 3.0).abs() < 0.02);
        }
    }

    #[test]
    fn h3_visit_frequencies() {
        let p = transition_matrix(&fixtures::h3()).unwrap();
        let traj = simulate(&p, "v2", 100_000, 17).unwrap();
        let expect = [7.0, 2.0, 5.0, 3.0].map(|x| x / 17.0);
        for (v, &pi) in expect.iter().enumerate() {
            let f = traj.iter().filter(|&&x| x == v).count() as f64 / traj.len() as f64;
            assert!((f - pi).abs() < 0.02, "vertex {v}: {f} vs {pi}");
        }
    }

    #[test]
    fn edge_then_vertex_walker_matches_rows() {
        let h = fixtures::h3();
        let p = transition_matrix(&h).unwrap();
        let traj = simulate_hypergraph(&h, "v1", 100_000, 3).unwrap();
        let n = h.n_vertices();
        let mut counts = vec![vec![0usize; n]; n];
        for w in traj.windows(2) {
            counts[w[0]][w[1]] += 1;
        }
        for i in 0..n {
            let total: usize = counts[i].iter().sum();
            for j in 0..n {
                let f = counts[i][j] as f64 / total as f64;
                assert!((f - p.get(i, j)).abs() < 0.02, "({i},{j}) {f} vs {}", p.get(i, j));
            }
        }
    }

    proptest! {
        #[test]
        fn summation_equals_factored_form(seed in any::<u64>()) {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let h = random_hypergraph(&mut rng, &RandomHypergraphConfig::default());
            let p = transition_matrix(&h).unwrap();
            prop_assert!(p.matrix().max_abs_diff(&factored(&h)) <= 1e-12);
            for (i, s) in p.matrix().row_sums().iter().enumerate() {
                prop_assert!((s - 1.0).abs() <= STOCHASTIC_TOL);
                prop_assert!(p.get(i, i) > 0.0);
            }
            // P(v,w) > 0 only for co-members
            let skeleton = h.clique_graph(true);
            for i in 0..h.n_vertices() {
                for j in 0..h.n_vertices() {
                    prop_assert!(p.get(i, j) == 0.0 || skeleton.weight(i, j) > 0.0);
                }
            }
        }

        #[test]
        fn per_edge_rescaling_leaves_walk_unchanged(seed in any::<u64>(), c in 0.01f64..100.0) {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let h = random_hypergraph(&mut rng, &RandomHypergraphConfig::default());
            let e = rng.gen_range(0..h.n_edges());
            let mut factors = vec![1.0; h.n_edges()];
            factors[e] = c;
            let scaled = h.scale_edge_vertex_weights(&factors).unwrap();
            let a = transition_matrix(&h).unwrap();
            let b = transition_matrix(&scaled).unwrap();
            prop_assert!(a.matrix().max_abs_diff(b.matrix()) <= 1e-12);
            prop_assert_eq!(h.vertex_degrees(), scaled.vertex_degrees());
            prop_assert_eq!(h.clique_graph(true), scaled.clique_graph(true));
        }

        #[test]
        fn nonlazy_has_zero_diagonal(seed in any::<u64>()) {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let h = random_hypergraph(&mut rng, &RandomHypergraphConfig::default().with_min_edge_size(2));
            let p = nonlazy_transition_matrix(&h).unwrap();
            for i in 0..h.n_vertices() {
                prop_assert_eq!(p.get(i, i), 0.0);
                prop_assert!((p.row(i).iter().sum::<f64>() - 1.0).abs() <= STOCHASTIC_TOL);
            }
        }

        #[test]
        fn degree_double_counting(seed in any::<u64>()) {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let h = random_hypergraph(&mut rng, &RandomHypergraphConfig::default());
            let lhs: f64 = h.vertex_degrees().iter().sum();
            let rhs: f64 = h.edges().iter().map(|e| e.weight() * e.len() as f64).sum();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
        }
    }
}
