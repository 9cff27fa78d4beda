//! Seeded random hypergraphs for property sweeps and benchmarks.

use rand::seq::index::sample;
use rand::Rng;

use crate::hypergraph::{Connectivity, Hypergraph};
use crate::io::{EdgeSpec, HypergraphSpec};

/// Identifier of the PRNG used throughout the crate (recorded in run manifests).
pub const PRNG_ALGORITHM: &str = "ChaCha20Rng (rand_chacha 0.3, seed_from_u64)";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    /// Independent `γ_e(v)` per (edge, vertex) pair.
    EdgeDependent,
    /// One `γ(v)` per vertex, shared by all its edges.
    EdgeIndependent,
    /// All `γ = 1`.
    Trivial,
}

#[derive(Debug, Clone)]
pub struct RandomHypergraphConfig {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub min_edges: usize,
    pub max_edges: usize,
    pub min_edge_size: usize,
    pub weight_range: (f64, f64),
    pub kind: WeightKind,
}

impl Default for RandomHypergraphConfig {
    fn default() -> Self {
        RandomHypergraphConfig {
            min_vertices: 2,
            max_vertices: 8,
            min_edges: 1,
            max_edges: 6,
            min_edge_size: 1,
            weight_range: (0.1, 10.0),
            kind: WeightKind::EdgeDependent,
        }
    }
}

impl RandomHypergraphConfig {
    pub fn with_kind(mut self, kind: WeightKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn with_min_edge_size(mut self, k: usize) -> Self {
        self.min_edge_size = k;
        self
    }
}

/// Draw until the result is connected. Vertex names are `v1..vn`.
pub fn random_hypergraph<R: Rng + ?Sized>(rng: &mut R, cfg: &RandomHypergraphConfig) -> Hypergraph {
    assert!(cfg.min_vertices >= cfg.min_edge_size.max(1));
    assert!(cfg.min_vertices <= cfg.max_vertices && cfg.min_edges <= cfg.max_edges);
    let (lo, hi) = cfg.weight_range;
    loop {
        let n = rng.gen_range(cfg.min_vertices..=cfg.max_vertices);
        let m = rng.gen_range(cfg.min_edges.max(1)..=cfg.max_edges);
        let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let vertex_gamma: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
        let edges = (0..m)
            .map(|_| {
                let size = rng.gen_range(cfg.min_edge_size.max(1)..=n);
                let mut members: Vec<usize> = sample(rng, n, size).into_vec();
                members.sort_unstable();
                EdgeSpec {
                    weight: rng.gen_range(lo..=hi),
                    members: members
                        .into_iter()
                        .map(|v| {
                            let g = match cfg.kind {
                                WeightKind::EdgeDependent => rng.gen_range(lo..=hi),
                                WeightKind::EdgeIndependent => vertex_gamma[v],
                                WeightKind::Trivial => 1.0,
                            };
                            (names[v].clone(), g)
                        })
                        .collect(),
                }
            })
            .collect();
        let spec = HypergraphSpec {
            vertices: names,
            edges,
        };
        if let Ok(h) = Hypergraph::from_spec(&spec, Connectivity::Require) {
            return h;
        }
    }
}

/// `count` hypergraphs from one seed, deterministic in `(seed, cfg)`.
pub fn sweep(seed: u64, count: usize, cfg: &RandomHypergraphConfig) -> Vec<Hypergraph> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(seed);
    (0..count).map(|_| random_hypergraph(&mut rng, cfg)).collect()
}
