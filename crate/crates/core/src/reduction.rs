//! When is a hypergraph walk a graph walk?
//!
//! A chain is a random walk on some undirected graph iff it is
//! time-reversible (`π_u p(u,v) = π_v p(v,u)`). Edge-independent vertex
//! weights always give a reversible walk, reproduced exactly by the clique
//! graph with weights `w(u,v) = Σ_{e∋u,v} ω(e) γ(u) γ(v) / δ(e)`.
//! Edge-dependent weights generally do not. For those, the same formula with
//! `γ_e` (after rescaling to `ρ_e = 1`) yields a clique graph whose
//! Laplacian spectral gap is within a factor `c(H)` of the hypergraph's.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::linalg::Matrix;
use crate::spectral::{laplacian_from_walk, spectral_gap};
use crate::stationary::{rho_normalized, stationarity_residual, stationary_direct};
use crate::walk::{nonlazy_transition_matrix, transition_matrix, TransitionMatrix};

pub use crate::graph::WeightedGraph;
pub use crate::walk::graph_random_walk;

/// Detailed-balance violations at or below this are treated as zero.
pub const REVERSIBILITY_TOL: f64 = 1e-10;
/// Largest stationarity residual accepted by [`reversibility`].
pub const STATIONARY_INPUT_TOL: f64 = 1e-9;
/// Relative tolerance when comparing Kolmogorov cycle products.
pub const KOLMOGOROV_REL_TOL: f64 = 1e-9;
pub const MAX_KOLMOGOROV_VERTICES: usize = 12;
pub const MAX_KOLMOGOROV_CYCLE: usize = 6;
/// Slack on both sides of the eigenvalue sandwich.
pub const SANDWICH_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReversibilityVerdict {
    pub reversible: bool,
    pub worst_pair: (usize, usize),
    /// `max_{u,v} |π_u p(u,v) − π_v p(v,u)|`.
    pub violation: f64,
    /// Every pair `u < v` whose violation exceeds the tolerance.
    pub violating_pairs: Vec<(usize, usize, f64)>,
}

impl ReversibilityVerdict {
    pub fn pair_violation(&self, u: usize, v: usize) -> f64 {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.violating_pairs
            .iter()
            .find(|&&(x, y, _)| (x, y) == (a, b))
            .map_or(0.0, |&(_, _, g)| g)
    }
}

/// Detailed-balance check of `P` against its stationary distribution `π`.
/// Ties for the worst pair go to the first pair in row-major order.
pub fn reversibility(p: &TransitionMatrix, pi: &[f64]) -> Result<ReversibilityVerdict> {
    if pi.len() != p.n() {
        return Err(Error::DimensionMismatch(format!(
            "distribution of length {} for {} states",
            pi.len(),
            p.n()
        )));
    }
    let residual = stationarity_residual(p, pi);
    if residual > STATIONARY_INPUT_TOL {
        return Err(Error::NotStationary(residual));
    }
    let n = p.n();
    let mut worst_pair = (0, 0);
    let mut violation = 0.0;
    let mut violating_pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let gap = (pi[u] * p.get(u, v) - pi[v] * p.get(v, u)).abs();
            if gap > violation {
                violation = gap;
                worst_pair = (u, v);
            }
            if gap > REVERSIBILITY_TOL {
                violating_pairs.push((u, v, gap));
            }
        }
    }
    Ok(ReversibilityVerdict {
        reversible: violation <= REVERSIBILITY_TOL,
        worst_pair,
        violation,
        violating_pairs,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KolmogorovVerdict {
    pub holds: bool,
    /// First violating cycle `v1 → v2 → … → v1`.
    pub witness_cycle: Option<Vec<usize>>,
    pub cycles_checked: usize,
}

/// Compare `p(v1,v2)⋯p(vk,v1)` with the reverse product over all simple
/// cycles of length `3..=max_cycle_len` in the support of `P`. Two-cycles
/// are skipped: both directions multiply the same two numbers.
pub fn kolmogorov_check(p: &TransitionMatrix, max_cycle_len: usize) -> Result<KolmogorovVerdict> {
    let n = p.n();
    if n > MAX_KOLMOGOROV_VERTICES {
        return Err(Error::SizeLimit {
            what: "Kolmogorov cycle enumeration (vertices)",
            size: n,
            limit: MAX_KOLMOGOROV_VERTICES,
        });
    }
    if max_cycle_len > MAX_KOLMOGOROV_CYCLE {
        return Err(Error::SizeLimit {
            what: "Kolmogorov cycle length",
            size: max_cycle_len,
            limit: MAX_KOLMOGOROV_CYCLE,
        });
    }
    let adjacent = |u: usize, v: usize| u != v && (p.get(u, v) > 0.0 || p.get(v, u) > 0.0);

    struct Search<'a> {
        p: &'a TransitionMatrix,
        max_len: usize,
        checked: usize,
        witness: Option<Vec<usize>>,
    }

    impl Search<'_> {
        fn close(&mut self, path: &[usize]) {
            self.checked += 1;
            let k = path.len();
            let forward: f64 = (0..k).map(|i| self.p.get(path[i], path[(i + 1) % k])).product();
            let backward: f64 = (0..k).map(|i| self.p.get(path[(i + 1) % k], path[i])).product();
            if (forward - backward).abs() > KOLMOGOROV_REL_TOL * forward.max(backward) {
                let mut cycle = path.to_vec();
                cycle.push(path[0]);
                self.witness = Some(cycle);
            }
        }
    }

    let mut search = Search {
        p,
        max_len: max_cycle_len,
        checked: 0,
        witness: None,
    };

    fn extend(
        search: &mut Search<'_>,
        path: &mut Vec<usize>,
        adjacent: &dyn Fn(usize, usize) -> bool,
        n: usize,
    ) {
        if search.witness.is_some() {
            return;
        }
        let start = path[0];
        let last = *path.last().expect("non-empty path");
        // Each undirected cycle once: smallest vertex first, second < last.
        if path.len() >= 3 && path[1] < last && adjacent(last, start) {
            search.close(path);
            if search.witness.is_some() {
                return;
            }
        }
        if path.len() == search.max_len {
            return;
        }
        for next in start + 1..n {
            if !path.contains(&next) && adjacent(last, next) {
                path.push(next);
                extend(search, path, adjacent, n);
                path.pop();
            }
        }
    }

    if max_cycle_len >= 3 {
        for start in 0..n {
            let mut path = vec![start];
            extend(&mut search, &mut path, &adjacent, n);
            if search.witness.is_some() {
                break;
            }
        }
    }
    Ok(KolmogorovVerdict {
        holds: search.witness.is_none(),
        witness_cycle: search.witness,
        cycles_checked: search.checked,
    })
}

/// `w(u,v) = Σ_{e∋u,v} ω(e) γ_e(u) γ_e(v) / δ(e)`, self-loops included,
/// evaluated on the weights of `h` as given.
pub fn clique_weights(h: &Hypergraph) -> WeightedGraph {
    let n = h.n_vertices();
    let mut w = Matrix::zeros(n, n);
    for edge in h.edges() {
        let scale = edge.weight() / edge.delta();
        for &(u, gu) in edge.members() {
            for &(v, gv) in edge.members() {
                w[(u, v)] += scale * gu * gv;
            }
        }
    }
    WeightedGraph::new(h.vertices().to_vec(), w).expect("clique weights are symmetric")
}

/// The clique graph whose walk equals the walk on an edge-independent `h`.
pub fn edge_independent_to_graph(h: &Hypergraph) -> Result<WeightedGraph> {
    h.check_edge_independent(crate::stationary::EDGE_INDEPENDENCE_TOL)?;
    Ok(clique_weights(h))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonLazyEquivalence {
    pub graph: WeightedGraph,
    /// `max |P_nonlazy(H) − P(graph)|`.
    pub max_dev: f64,
}

/// For trivial vertex weights, the non-lazy walk equals the walk on the
/// loop-free clique graph with `w(u,v) = Σ_{e∋u,v} ω(e) / (|e| − 1)`.
pub fn nonlazy_trivial_equivalence(h: &Hypergraph) -> Result<NonLazyEquivalence> {
    h.check_trivial_weights()?;
    let p_h = nonlazy_transition_matrix(h)?;
    let n = h.n_vertices();
    let mut w = Matrix::zeros(n, n);
    for edge in h.edges() {
        let share = edge.weight() / (edge.len() - 1) as f64;
        for &(u, _) in edge.members() {
            for &(v, _) in edge.members() {
                if u != v {
                    w[(u, v)] += share;
                }
            }
        }
    }
    let graph = WeightedGraph::new(h.vertices().to_vec(), w)?;
    let p_g = graph_random_walk(&graph)?;
    Ok(NonLazyEquivalence {
        max_dev: p_h.matrix().max_abs_diff(p_g.matrix()),
        graph,
    })
}

/// Clique graph with `γ_e`-product weights after rescaling so `ρ_e = 1`.
/// Its walk has the same stationary distribution as the walk on `h`.
pub fn sandwich_weights(h: &Hypergraph) -> Result<WeightedGraph> {
    let (normalized, _) = rho_normalized(h)?;
    Ok(clique_weights(&normalized))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichCheck {
    pub lambda1_h: f64,
    pub lambda1_g: f64,
    /// `max_v max_{e∋v} γ_e(v) / min_{e∋v} γ_e(v)` on the `ρ_e = 1` weights.
    pub c: f64,
    /// The same spread on the weights as given, reported only.
    pub c_raw: f64,
    /// `max_v |π^G_v − π^H_v|`.
    pub stationary_gap: f64,
    pub holds: bool,
}

/// Check `λ₁^H / c ≤ λ₁^G ≤ c λ₁^H` for the [`sandwich_weights`] graph, where
/// `λ₁` is the second-smallest eigenvalue of each random-walk Laplacian.
pub fn sandwich_check(h: &Hypergraph) -> Result<SandwichCheck> {
    let (normalized, stat) = rho_normalized(h)?;
    let graph = clique_weights(&normalized);
    let p_h = transition_matrix(h)?;
    let lap_h = laplacian_from_walk(&p_h, &stat.pi);
    let p_g = graph_random_walk(&graph)?;
    let pi_g = stationary_direct(&p_g)?.pi;
    let lap_g = laplacian_from_walk(&p_g, &pi_g);
    let lambda1_h = spectral_gap(&lap_h.eigenvalues()?);
    let lambda1_g = spectral_gap(&lap_g.eigenvalues()?);
    let c = normalized.gamma_spread();
    let stationary_gap = pi_g
        .iter()
        .zip(&stat.pi)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(SandwichCheck {
        holds: lambda1_h / c - SANDWICH_TOL <= lambda1_g && lambda1_g <= c * lambda1_h + SANDWICH_TOL,
        lambda1_h,
        lambda1_g,
        c,
        c_raw: h.gamma_spread(),
        stationary_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::random::{random_hypergraph, RandomHypergraphConfig, WeightKind};
    use crate::stationary::stationary_rho;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn h3_verdict() -> ReversibilityVerdict {
        let h = fixtures::h3();
        let p = transition_matrix(&h).unwrap();
        let pi = stationary_rho(&h).unwrap().pi;
        reversibility(&p, &pi).unwrap()
    }

    #[test]
    fn h3_is_irreversible() {
        let v = h3_verdict();
        assert!(!v.reversible);
        assert_abs_diff_eq!(v.pair_violation(0, 1), 1.0 / 136.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v.pair_violation(1, 2), 1.0 / 136.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v.pair_violation(0, 2), 1.0 / 408.0, epsilon = 1e-12);
        // the largest imbalance sits on the pairs through v4
        assert_eq!(v.worst_pair, (0, 3));
        assert_abs_diff_eq!(v.violation, 1.0 / 102.0, epsilon = 1e-12);
    }

    #[test]
    fn h3_kolmogorov_witness() {
        let p = transition_matrix(&fixtures::h3()).unwrap();
        let k = kolmogorov_check(&p, 5).unwrap();
        assert!(!k.holds);
        assert_eq!(k.witness_cycle.as_ref().unwrap().len(), 4);
    }

    #[test]
    fn reversible_small_chains() {
        let p = transition_matrix(&fixtures::trivial_edge(2)).unwrap();
        assert!(reversibility(&p, &[0.5, 0.5]).unwrap().reversible);
        assert!(matches!(reversibility(&p, &[0.9, 0.1]), Err(Error::NotStationary(_))));
        let k = kolmogorov_check(&p, 6).unwrap();
        assert!(k.holds);
        assert_eq!(k.cycles_checked, 0);
        assert!(kolmogorov_check(&p, 7).is_err());
    }

    #[test]
    fn single_edge_graph_weights() {
        let g = edge_independent_to_graph(&fixtures::trivial_edge(3)).unwrap();
        for u in 0..3 {
            for v in 0..3 {
                assert_abs_diff_eq!(g.weight(u, v), 1.0 / 3.0, epsilon = 1e-15);
            }
        }
        let pg = graph_random_walk(&g).unwrap();
        assert!(pg.matrix().to_rows().iter().flatten().all(|&x| (x - 1.0 / 3.0).abs() < 1e-15));
        assert!(matches!(edge_independent_to_graph(&fixtures::h3()), Err(Error::NotEdgeIndependent(_))));

        let sw = sandwich_weights(&fixtures::trivial_edge(3)).unwrap();
        let pw = graph_random_walk(&sw).unwrap();
        assert!(pw.matrix().max_abs_diff(pg.matrix()) < 1e-12);
    }

    #[test]
    fn doubled_weights_give_the_same_walk() {
        let h = fixtures::h3().with_all_gammas(2.0);
        let g = edge_independent_to_graph(&h).unwrap();
        let trivial = edge_independent_to_graph(&fixtures::h3().with_all_gammas(1.0)).unwrap();
        let a = graph_random_walk(&g).unwrap();
        let b = graph_random_walk(&trivial).unwrap();
        assert!(a.matrix().max_abs_diff(b.matrix()) <= 1e-12);
        assert!(a.matrix().max_abs_diff(transition_matrix(&h).unwrap().matrix()) <= 1e-12);
    }

    #[test]
    fn nonlazy_single_edge() {
        let eq = nonlazy_trivial_equivalence(&fixtures::trivial_edge(3)).unwrap();
        assert_eq!(eq.graph.weight(0, 1), 0.5);
        assert_eq!(eq.graph.weight(0, 0), 0.0);
        assert!(eq.max_dev <= 1e-12);
        assert!(matches!(
            nonlazy_trivial_equivalence(&fixtures::h3()),
            Err(Error::NotTrivialWeights { edge: 0, .. })
        ));
        assert_eq!(
            nonlazy_trivial_equivalence(&fixtures::trivial_edge(1)).map(|_| ()),
            Err(Error::SingletonEdge(0))
        );
    }

    #[test]
    fn h3_sandwich() {
        let h = fixtures::h3();
        let s = sandwich_check(&h).unwrap();
        assert_eq!(s.c_raw, 2.0);
        // ρ carries the power-iteration tolerance
        assert_abs_diff_eq!(s.c, 1.5, epsilon = 1e-9);
        assert!(s.holds, "{s:?}");
        assert!(s.stationary_gap <= 1e-9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn edge_independent_walks_are_graph_walks(seed in any::<u64>()) {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let h = random_hypergraph(&mut rng, &RandomHypergraphConfig::default().with_kind(WeightKind::EdgeIndependent));
            let g = edge_independent_to_graph(&h).unwrap();
            let ph = transition_matrix(&h).unwrap();
            prop_assert!(ph.matrix().max_abs_diff(graph_random_walk(&g).unwrap().matrix()) <= 1e-12);
            let s = sandwich_check(&h).unwrap();
            prop_assert!((s.c - 1.0).abs() <= 1e-9, "{:?} {:?}", s, h);
            prop_assert!((s.lambda1_g - s.lambda1_h).abs() <= 1e-9);
        }

        #[test]
        fn reversibility_and_kolmogorov_agree(seed in any::<u64>()) {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let h = random_hypergraph(&mut rng, &RandomHypergraphConfig::default());
            let p = transition_matrix(&h).unwrap();
            let pi = stationary_rho(&h).unwrap().pi;
            let rev = reversibility(&p, &pi).unwrap();
            let kol = kolmogorov_check(&p, 6).unwrap();
            // Kolmogorov needs all cycles; up to length 6 on ≤ 8 vertices it can
            // miss only violations carried by 7- and 8-cycles.
            if kol.holds != rev.reversible {
                prop_assert!(h.n_vertices() > 6 && kol.holds);
            }
        }

        #[test]
        fn nonlazy_trivial_weights_are_graph_walks(seed in any::<u64>()) {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let cfg = RandomHypergraphConfig::default().with_kind(WeightKind::Trivial).with_min_edge_size(2);
            let h = random_hypergraph(&mut rng, &cfg);
            prop_assert!(nonlazy_trivial_equivalence(&h).unwrap().max_dev <= 1e-12);
        }

        #[test]
        fn sandwich_holds_and_keeps_pi(seed in any::<u64>()) {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let h = random_hypergraph(&mut rng, &RandomHypergraphConfig::default());
            let s = sandwich_check(&h).unwrap();
            prop_assert!(s.holds, "{:?}", s);
            prop_assert!(s.stationary_gap <= 1e-9);
        }
    }
}
