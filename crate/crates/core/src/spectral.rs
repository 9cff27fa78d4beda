//! The random-walk Laplacian `L = Π − (ΠP + PᵀΠ)/2`, its spectrum, the
//! Cheeger constant of the walk and mixing-time bounds.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::linalg::{eigenvalues_symmetric, Matrix};
use crate::par::Exec;
use crate::stationary::{rho_normalized, stationary_rho};
use crate::walk::{transition_matrix, TransitionMatrix};

/// Largest vertex count for exhaustive subset enumeration.
pub const MAX_CHEEGER_VERTICES: usize = 24;
/// Slack on the `π(S) ≤ 1/2` admissibility test.
pub const HALF_MASS_TOL: f64 = 1e-12;
/// Slack on both sides of the Cheeger inequality.
pub const CHEEGER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypergraphLaplacian {
    pub l: Matrix,
    pub pi: Vec<f64>,
    /// `Π^{-1/2} L Π^{-1/2}`.
    pub normalized: Matrix,
}

impl HypergraphLaplacian {
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        eigenvalues_symmetric(&self.l)
    }

    pub fn normalized_eigenvalues(&self) -> Result<Vec<f64>> {
        eigenvalues_symmetric(&self.normalized)
    }
}

/// Laplacian of an arbitrary chain with stationary distribution `pi`.
pub fn laplacian_from_walk(p: &TransitionMatrix, pi: &[f64]) -> HypergraphLaplacian {
    let n = p.n();
    let mut l = Matrix::zeros(n, n);
    for u in 0..n {
        for v in 0..n {
            let flow = 0.5 * (pi[u] * p.get(u, v) + pi[v] * p.get(v, u));
            l[(u, v)] = if u == v { pi[u] - flow } else { -flow };
        }
    }
    let inv_sqrt: Vec<f64> = pi.iter().map(|x| 1.0 / x.sqrt()).collect();
    let mut normalized = Matrix::zeros(n, n);
    for u in 0..n {
        for v in 0..n {
            normalized[(u, v)] = inv_sqrt[u] * l[(u, v)] * inv_sqrt[v];
        }
    }
    HypergraphLaplacian {
        l,
        pi: pi.to_vec(),
        normalized,
    }
}

/// Laplacian of the lazy walk on `h`, using the ρ-route stationary distribution.
pub fn laplacian(h: &Hypergraph) -> Result<HypergraphLaplacian> {
    let stat = stationary_rho(h)?;
    Ok(laplacian_from_walk(&transition_matrix(h)?, &stat.pi))
}

/// Second-smallest eigenvalue: the smallest non-zero one for a connected chain.
pub fn spectral_gap(eigenvalues: &[f64]) -> f64 {
    eigenvalues.get(1).copied().unwrap_or(0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheegerResult {
    pub phi: f64,
    /// Vertex indices of a minimizing set, ascending.
    pub subset: Vec<usize>,
}

/// `a` precedes `b` when their sorted index lists compare lexicographically.
fn mask_lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let d = diff.trailing_zeros();
    let above = if d >= 63 { 0 } else { !((1u64 << (d + 1)) - 1) };
    if a & (1 << d) != 0 {
        b & above != 0
    } else {
        a & above == 0
    }
}

fn better(cand: (f64, u64), best: (f64, u64)) -> bool {
    cand.0 < best.0 || (cand.0 == best.0 && mask_lex_less(cand.1, best.1))
}

/// Ratio for one subset, or `None` when `π(S) > 1/2`. Sums run over `x`
/// ascending, then `y` ascending.
fn subset_ratio(mask: u64, p: &TransitionMatrix, pi: &[f64]) -> Option<f64> {
    let n = pi.len();
    let mass: f64 = (0..n).filter(|&x| mask >> x & 1 == 1).map(|x| pi[x]).sum();
    if mass > 0.5 + HALF_MASS_TOL || mass <= 0.0 {
        return None;
    }
    let mut flow = 0.0;
    for x in (0..n).filter(|&x| mask >> x & 1 == 1) {
        for y in (0..n).filter(|&y| mask >> y & 1 == 0) {
            flow += pi[x] * p.get(x, y);
        }
    }
    Some(flow / mass)
}

/// `Φ = min_{0 < π(S) ≤ 1/2} Σ_{x∈S, y∉S} π_x p(x,y) / π(S)` by enumerating
/// every subset. Ties go to the lexicographically smallest index list.
pub fn cheeger_from_walk(p: &TransitionMatrix, pi: &[f64], exec: Exec) -> Result<CheegerResult> {
    let n = p.n();
    if n > MAX_CHEEGER_VERTICES {
        return Err(Error::SizeLimit {
            what: "exhaustive Cheeger enumeration",
            size: n,
            limit: MAX_CHEEGER_VERTICES,
        });
    }
    if n < 2 {
        return Err(Error::InvalidParameter(
            "Cheeger constant needs at least two vertices".into(),
        ));
    }
    let total: u64 = 1 << n;
    const CHUNK: u64 = 1 << 12;
    let chunks = total.div_ceil(CHUNK) as usize;
    let partial = exec.map_range(chunks, |c| {
        let start = (c as u64 * CHUNK).max(1);
        let end = ((c as u64 + 1) * CHUNK).min(total - 1);
        let mut best: Option<(f64, u64)> = None;
        for mask in start..end {
            if let Some(r) = subset_ratio(mask, p, pi) {
                if best.map_or(true, |b| better((r, mask), b)) {
                    best = Some((r, mask));
                }
            }
        }
        best
    });
    let (phi, mask) = partial
        .into_iter()
        .flatten()
        .reduce(|a, b| if better(b, a) { b } else { a })
        .ok_or_else(|| Error::InvalidParameter("no subset with π(S) ≤ 1/2".into()))?;
    Ok(CheegerResult {
        phi,
        subset: (0..n).filter(|&x| mask >> x & 1 == 1).collect(),
    })
}

pub fn cheeger_constant(h: &Hypergraph) -> Result<CheegerResult> {
    check_cheeger_size(h)?;
    let stat = stationary_rho(h)?;
    cheeger_from_walk(&transition_matrix(h)?, &stat.pi, Exec::default())
}

fn check_cheeger_size(h: &Hypergraph) -> Result<()> {
    if h.n_vertices() > MAX_CHEEGER_VERTICES {
        return Err(Error::SizeLimit {
            what: "exhaustive Cheeger enumeration",
            size: h.n_vertices(),
            limit: MAX_CHEEGER_VERTICES,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheegerCheck {
    /// Spectral gap of the normalized Laplacian; this is the λ tested.
    pub lambda: f64,
    /// Spectral gap of `L` itself, reported only.
    pub lambda_unnormalized: f64,
    pub phi: f64,
    pub holds: bool,
}

/// Evaluate `Φ²/2 ≤ λ ≤ 2Φ` with `λ` from the normalized Laplacian.
pub fn check_cheeger(h: &Hypergraph) -> Result<CheegerCheck> {
    check_cheeger_size(h)?;
    let stat = stationary_rho(h)?;
    let p = transition_matrix(h)?;
    let lap = laplacian_from_walk(&p, &stat.pi);
    let phi = cheeger_from_walk(&p, &stat.pi, Exec::default())?.phi;
    let lambda = spectral_gap(&lap.normalized_eigenvalues()?);
    let lambda_unnormalized = spectral_gap(&lap.eigenvalues()?);
    Ok(CheegerCheck {
        lambda,
        lambda_unnormalized,
        phi,
        holds: cheeger_inequality_holds(phi, lambda),
    })
}

pub fn cheeger_inequality_holds(phi: f64, lambda: f64) -> bool {
    phi * phi / 2.0 - CHEEGER_TOL <= lambda && lambda <= 2.0 * phi + CHEEGER_TOL
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixingBound {
    /// `⌈(8β₁/Φ²) ln(1 / (2ε √(d_min β₂)))⌉`, or 0 when vacuous.
    pub bound: u64,
    /// The logarithm is non-positive, so the bound carries no information.
    pub vacuous: bool,
    pub epsilon: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub d_min: f64,
    pub phi: f64,
    pub log_term: f64,
}

/// Theoretical mixing-time bound, evaluated after rescaling each edge's
/// vertex weights by its `ρ_e` (so that `ρ_e = 1`).
pub fn mixing_time_bound(h: &Hypergraph, epsilon: f64) -> Result<MixingBound> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, 1/2), got {epsilon}"
        )));
    }
    check_cheeger_size(h)?;
    let (hn, stat) = rho_normalized(h)?;
    let mut beta1 = f64::INFINITY;
    let mut beta2 = f64::INFINITY;
    for edge in hn.edges() {
        let delta = edge.delta();
        for &(_, g) in edge.members() {
            beta1 = beta1.min(g / delta);
            beta2 = beta2.min(g);
        }
    }
    let d_min = hn.vertex_degrees().into_iter().fold(f64::INFINITY, f64::min);
    let phi = cheeger_from_walk(&transition_matrix(&hn)?, &stat.pi, Exec::default())?.phi;
    Ok(evaluate_mixing_bound(epsilon, beta1, beta2, d_min, phi))
}

pub fn evaluate_mixing_bound(epsilon: f64, beta1: f64, beta2: f64, d_min: f64, phi: f64) -> MixingBound {
    let log_term = (1.0 / (2.0 * epsilon * (d_min * beta2).sqrt())).ln();
    let (bound, vacuous) = if log_term <= 0.0 {
        (0, true)
    } else {
        ((8.0 * beta1 / (phi * phi) * log_term).ceil() as u64, false)
    };
    MixingBound {
        bound,
        vacuous,
        epsilon,
        beta1,
        beta2,
        d_min,
        phi,
        log_term,
    }
}

/// Total-variation distance, half the L1 distance.
pub fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

/// Smallest `t ≤ cap` with `max_s ‖P^t(s,·) − π‖_TV ≤ ε`.
pub fn empirical_mixing_time(p: &TransitionMatrix, pi: &[f64], epsilon: f64, cap: usize) -> Result<usize> {
    let n = p.n();
    if pi.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "distribution of length {} for {n} states",
            pi.len()
        )));
    }
    let worst = |m: &Matrix| (0..n).map(|s| total_variation(m.row(s), pi)).fold(0.0, f64::max);
    let mut power = Matrix::identity(n);
    for t in 0..=cap {
        if worst(&power) <= epsilon {
            return Ok(t);
        }
        if t < cap {
            power = power.matmul(p.matrix());
        }
    }
    Err(Error::Unmixed(cap))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    /// Ascending eigenvalues of `L`.
    pub eigenvalues: Vec<f64>,
    /// Smallest non-zero eigenvalue of `L`.
    pub lambda: f64,
    pub normalized_eigenvalues: Vec<f64>,
    pub lambda_normalized: f64,
    pub cheeger: f64,
    pub cheeger_subset: Vec<String>,
    pub mixing_bound: u64,
    pub mixing_bound_vacuous: bool,
    pub epsilon: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub d_min: f64,
}

pub fn spectral_report(h: &Hypergraph, epsilon: f64) -> Result<SpectralReport> {
    let lap = laplacian(h)?;
    let eigenvalues = lap.eigenvalues()?;
    let normalized_eigenvalues = lap.normalized_eigenvalues()?;
    let cheeger = cheeger_constant(h)?;
    let mix = mixing_time_bound(h, epsilon)?;
    Ok(SpectralReport {
        lambda: spectral_gap(&eigenvalues),
        lambda_normalized: spectral_gap(&normalized_eigenvalues),
        eigenvalues,
        normalized_eigenvalues,
        cheeger: cheeger.phi,
        cheeger_subset: cheeger
            .subset
            .iter()
            .map(|&v| h.vertex_name(v).to_string())
            .collect(),
        mixing_bound: mix.bound,
        mixing_bound_vacuous: mix.vacuous,
        epsilon,
        beta1: mix.beta1,
        beta2: mix.beta2,
        d_min: mix.d_min,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::random::{random_hypergraph, RandomHypergraphConfig};
    use crate::stationary::stationary_direct;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    /// Recursive subset enumeration, independent of the bitmask path.
    fn brute_force_phi(p: &TransitionMatrix, pi: &[f64]) -> (f64, Vec<usize>) {
        fn rec(i: usize, cur: &mut Vec<usize>, p: &TransitionMatrix, pi: &[f64], best: &mut Option<(f64, Vec<usize>)>) {
            let n = pi.len();
            if i == n {
                if cur.is_empty() || cur.len() == n {
                    return;
                }
                let inside = |x: usize| cur.contains(&x);
                let mass: f64 = cur.iter().map(|&x| pi[x]).sum();
                if mass > 0.5 + HALF_MASS_TOL {
                    return;
                }
                let mut flow = 0.0;
                for &x in cur.iter() {
                    for y in 0..n {
                        if !inside(y) {
                            flow += pi[x] * p.get(x, y);
                        }
                    }
                }
                let r = flow / mass;
                let replace = match best {
                    None => true,
                    Some((b, s)) => r < *b || (r == *b && *cur < *s),
                };
                if replace {
                    *best = Some((r, cur.clone()));
                }
                return;
            }
            cur.push(i);
            rec(i + 1, cur, p, pi, best);
            cur.pop();
            rec(i + 1, cur, p, pi, best);
        }
        let mut best = None;
        rec(0, &mut Vec::new(), p, pi, &mut best);
        best.unwrap()
    }

    #[test]
    fn lex_order_on_masks() {
        // {0,2} < {1}; {0} < {0,1}; {1,2} < {2}
        assert!(mask_lex_less(0b101, 0b010));
        assert!(mask_lex_less(0b001, 0b011));
        assert!(!mask_lex_less(0b011, 0b001));
        assert!(mask_lex_less(0b110, 0b100));
        assert!(!mask_lex_less(0b100, 0b100));
    }

    #[test]
    fn single_edge_laplacian() {
        let lap = laplacian(&fixtures::trivial_edge(3)).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 / 3.0 } else { 0.0 } - 1.0 / 9.0;
                assert_abs_diff_eq!(lap.l[(i, j)], expect, epsilon = 1e-15);
            }
        }
        let ev = lap.eigenvalues().unwrap();
        assert_abs_diff_eq!(ev[0], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(ev[1], 1.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn h3_laplacian_entry() {
        let lap = laplacian(&fixtures::h3()).unwrap();
        assert_abs_diff_eq!(lap.l[(1, 0)], -15.0 / 272.0, epsilon = 1e-12);
        assert!(lap.l.asymmetry() <= 1e-12);
        for s in lap.l.row_sums() {
            assert!(s.abs() <= 1e-10);
        }
        assert_abs_diff_eq!(lap.eigenvalues().unwrap()[0], 0.0, epsilon = 1e-10);
    }

    #[test]
    fn two_vertex_edge() {
        let h = fixtures::trivial_edge(2);
        let c = cheeger_constant(&h).unwrap();
        assert_eq!(c.phi, 0.5);
        assert_eq!(c.subset, vec![0]);
        assert!(check_cheeger(&h).unwrap().holds);

        let mix = mixing_time_bound(&h, 0.25).unwrap();
        let p = transition_matrix(&h).unwrap();
        let t = empirical_mixing_time(&p, &[0.5, 0.5], 0.25, 100).unwrap();
        assert_eq!(t, 1);
        assert!(mix.bound >= t as u64 && !mix.vacuous);
    }

    #[test]
    fn h3_cheeger_matches_brute_force() {
        let h = fixtures::h3();
        let p = transition_matrix(&h).unwrap();
        let pi = stationary_direct(&p).unwrap().pi;
        let fast = cheeger_from_walk(&p, &pi, Exec::Parallel).unwrap();
        let (phi, subset) = brute_force_phi(&p, &pi);
        assert_eq!(fast.phi, phi);
        assert_eq!(fast.subset, subset);
        assert_eq!(cheeger_from_walk(&p, &pi, Exec::Sequential).unwrap(), fast);
        assert!(check_cheeger(&fixtures::trivial_edge(3)).unwrap().holds);
    }

    #[test]
    fn beta1_is_scale_free() {
        let mix = mixing_time_bound(&fixtures::h3(), 0.25).unwrap();
        assert_abs_diff_eq!(mix.beta1, 0.25, epsilon = 1e-15);
        let h3 = fixtures::h3();
        let p = transition_matrix(&h3).unwrap();
        let pi = stationary_direct(&p).unwrap().pi;
        let t = empirical_mixing_time(&p, &pi, 0.25, 1000).unwrap();
        assert!(t as u64 <= mix.bound, "t_mix {t} vs bound {}", mix.bound);
    }

    #[test]
    fn vacuous_bound_near_half() {
        // 2ε√(d_min β₂) ≥ 1
        let b = evaluate_mixing_bound(0.49, 0.5, 4.0, 1.0, 0.5);
        assert!(b.vacuous);
        assert_eq!(b.bound, 0);
        assert!(mixing_time_bound(&fixtures::h3(), 0.5).is_err());
    }

    #[test]
    fn uniform_chain_mixes_in_one_step() {
        let p = transition_matrix(&fixtures::trivial_edge(3)).unwrap();
        assert_eq!(empirical_mixing_time(&p, &[1.0 / 3.0; 3], 0.25, 10), Ok(1));
        let still = TransitionMatrix::new(vec!["a".into(), "b".into()], Matrix::identity(2)).unwrap();
        assert_eq!(empirical_mixing_time(&still, &[0.5, 0.5], 0.4, 50), Err(Error::Unmixed(50)));
    }

    #[test]
    fn size_limit() {
        let h = fixtures::trivial_edge(25);
        assert!(matches!(cheeger_constant(&h), Err(Error::SizeLimit { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn laplacian_is_psd_with_ones_in_kernel(seed in any::<u64>()) {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let h = random_hypergraph(&mut rng, &RandomHypergraphConfig::default());
            let lap = laplacian(&h).unwrap();
            prop_assert!(lap.l.asymmetry() <= 1e-12);
            prop_assert!(lap.l.row_sums().iter().all(|s| s.abs() <= 1e-10));
            prop_assert!(lap.eigenvalues().unwrap()[0] >= -1e-10);
        }

        #[test]
        fn cheeger_enumerations_agree(seed in any::<u64>()) {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let h = random_hypergraph(&mut rng, &RandomHypergraphConfig::default());
            let p = transition_matrix(&h).unwrap();
            let pi = stationary_rho(&h).unwrap().pi;
            let fast = cheeger_from_walk(&p, &pi, Exec::default()).unwrap();
            let (phi, subset) = brute_force_phi(&p, &pi);
            prop_assert_eq!(fast.phi, phi);
            prop_assert_eq!(fast.subset, subset);
            prop_assert!(phi > 0.0 && phi <= 1.0);
        }
    }
}
