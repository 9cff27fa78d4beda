use serde::Serialize;

use super::data::MatchData;
use crate::error::{Error, Result};
use crate::hypergraph::{Connectivity, Hypergraph};
use crate::io::{EdgeSpec, HypergraphSpec};
use crate::linalg::Matrix;
use crate::reduction::clique_weights;
use crate::stationary::stationary_direct;
use crate::walk::{graph_random_walk, restart_matrix, transition_matrix, RestartTarget, TransitionMatrix};

pub const DEFAULT_BETA: f64 = 0.4;
/// `exp` of anything larger overflows or loses all precision.
pub const MAX_ABS_SCORE: f64 = 700.0;
pub const TIE_RULE: &str = "descending stationary mass, ties by ascending player id";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    #[serde(rename = "hypergraph")]
    HypergraphRwr,
    #[serde(rename = "clique")]
    CliqueRwr,
    #[serde(rename = "mc3")]
    Mc3,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::HypergraphRwr, Method::CliqueRwr, Method::Mc3];

    pub fn tag(self) -> &'static str {
        match self {
            Method::HypergraphRwr => "hypergraph",
            Method::CliqueRwr => "clique",
            Method::Mc3 => "mc3",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankingResult {
    pub method: Method,
    /// Stationary mass of player `i` at index `i - 1`.
    pub scores: Vec<f64>,
    /// Player ids, best first.
    pub order: Vec<usize>,
    pub tie_rule: &'static str,
    pub residual: f64,
}

/// One edge per match: `ω(e) = 1 + std(scores)` (population form) and
/// `γ_e(v) = exp(score of v)`. Vertices are named `"1"`, …, `"n"`.
pub fn match_hypergraph(data: &MatchData) -> Result<Hypergraph> {
    data.validate()?;
    let mut edges = Vec::with_capacity(data.k());
    for game in &data.matches {
        if let Some(i) = game.scores.iter().position(|s| s.abs() > MAX_ABS_SCORE) {
            return Err(Error::ScoreOverflow {
                player: game.participants[i],
                score: game.scores[i],
            });
        }
        let k = game.scores.len() as f64;
        let mean = game.scores.iter().sum::<f64>() / k;
        let var = game.scores.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / k;
        edges.push(EdgeSpec {
            weight: 1.0 + var.sqrt(),
            members: game
                .participants
                .iter()
                .zip(&game.scores)
                .map(|(p, s)| (p.to_string(), s.exp()))
                .collect(),
        });
    }
    let spec = HypergraphSpec {
        vertices: (1..=data.n).map(|i| i.to_string()).collect(),
        edges,
    };
    Hypergraph::from_spec(&spec, Connectivity::AllowDisconnected)
}

fn finish(method: Method, p: &TransitionMatrix, beta: f64) -> Result<RankingResult> {
    let walk = restart_matrix(p, beta, &RestartTarget::Uniform)?;
    let stat = stationary_direct(&walk)?;
    let mut order: Vec<usize> = (1..=stat.pi.len()).collect();
    order.sort_by(|&a, &b| stat.pi[b - 1].total_cmp(&stat.pi[a - 1]).then(a.cmp(&b)));
    Ok(RankingResult {
        method,
        scores: stat.pi,
        order,
        tie_rule: TIE_RULE,
        residual: stat.residual,
    })
}

/// Restart walk on the match hypergraph.
pub fn rank_hypergraph(data: &MatchData, beta: f64) -> Result<RankingResult> {
    let h = match_hypergraph(data)?;
    finish(Method::HypergraphRwr, &transition_matrix(&h)?, beta)
}

/// Restart walk on the clique graph with `γ_e`-product weights, after
/// rescaling every edge to `δ(e) = 1`.
pub fn rank_clique(data: &MatchData, beta: f64) -> Result<RankingResult> {
    let h = match_hypergraph(data)?.normalize_edge_degrees();
    let g = clique_weights(&h);
    finish(Method::CliqueRwr, &graph_random_walk(&g)?, beta)
}

/// MC3: from player `i`, pick one of `i`'s matches uniformly, then a
/// participant `j` of it uniformly; move to `j` if `j` scored strictly
/// more than `i` there, otherwise stay.
pub fn rank_mc3(data: &MatchData, beta: f64) -> Result<RankingResult> {
    data.validate()?;
    let n = data.n;
    let mut played = vec![0usize; n];
    for game in &data.matches {
        for &i in &game.participants {
            played[i - 1] += 1;
        }
    }
    let mut p = Matrix::zeros(n, n);
    for game in &data.matches {
        let share = 1.0 / game.participants.len() as f64;
        for (&i, &si) in game.participants.iter().zip(&game.scores) {
            let pick = share / played[i - 1] as f64;
            for (&j, &sj) in game.participants.iter().zip(&game.scores) {
                let to = if sj > si { j } else { i };
                p[(i - 1, to - 1)] += pick;
            }
        }
    }
    let names = (1..=n).map(|i| i.to_string()).collect();
    finish(Method::Mc3, &TransitionMatrix::new(names, p)?, beta)
}

pub fn rank(method: Method, data: &MatchData, beta: f64) -> Result<RankingResult> {
    match method {
        Method::HypergraphRwr => rank_hypergraph(data, beta),
        Method::CliqueRwr => rank_clique(data, beta),
        Method::Mc3 => rank_mc3(data, beta),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rankagg::data::{generate, Match};
    use proptest::prelude::*;

    fn data(n: usize, matches: Vec<(Vec<usize>, Vec<f64>)>) -> MatchData {
        MatchData {
            n,
            matches: matches
                .into_iter()
                .map(|(participants, scores)| Match { participants, scores })
                .collect(),
            generator: None,
        }
    }

    fn population_std(xs: &[f64]) -> f64 {
        let m = xs.iter().sum::<f64>() / xs.len() as f64;
        (xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / xs.len() as f64).sqrt()
    }

    #[test]
    fn match_weights() {
        let ln2 = 2f64.ln();
        let h = match_hypergraph(&data(2, vec![(vec![1, 2], vec![0.0, ln2])])).unwrap();
        let e = h.edge(0);
        assert!((e.gamma(0) - 1.0).abs() < 1e-15);
        assert!((e.gamma(1) - 2.0).abs() < 1e-15);
        assert!((e.weight() - (1.0 + population_std(&[0.0, ln2]))).abs() < 1e-15);
        assert!((e.weight() - (1.0 + ln2 / 2.0)).abs() < 1e-15);

        let same = match_hypergraph(&data(3, vec![(vec![1, 2, 3], vec![1.5; 3])])).unwrap();
        assert_eq!(same.edge(0).weight(), 1.0);
        assert!(same.edge(0).members().iter().all(|&(_, g)| g == 1.5f64.exp()));
    }

    #[test]
    fn huge_scores_are_rejected() {
        let d = data(2, vec![(vec![1, 2], vec![0.0, 701.0])]);
        assert_eq!(
            match_hypergraph(&d).unwrap_err(),
            Error::ScoreOverflow { player: 2, score: 701.0 }
        );
    }

    #[test]
    fn winner_of_a_single_match_ranks_first() {
        let d = data(2, vec![(vec![1, 2], vec![0.0, 1.0])]);
        for method in Method::ALL {
            let r = rank(method, &d, DEFAULT_BETA).unwrap();
            assert_eq!(r.order, vec![2, 1], "{method:?}");
            assert!(r.residual < 1e-12);
        }
        // 2-state hypergraph walk: both rows are (1, e)/(1+e), mixed with uniform restart
        let e = std::f64::consts::E;
        let r = rank_hypergraph(&d, DEFAULT_BETA).unwrap();
        let expected = 0.6 * e / (1.0 + e) + 0.2;
        assert!((r.scores[1] - expected).abs() < 1e-12);
    }

    #[test]
    fn mc3_ties_keep_the_incumbent() {
        let d = data(2, vec![(vec![1, 2], vec![1.0, 1.0])]);
        let r = rank_mc3(&d, DEFAULT_BETA).unwrap();
        assert!(r.scores.iter().all(|x| (x - 0.5).abs() < 1e-15));
        assert_eq!(r.order, vec![1, 2]);
    }

    #[test]
    fn one_match_clique_equals_hypergraph() {
        let d = data(3, vec![(vec![1, 2, 3], vec![0.3, -1.0, 2.0])]);
        let a = rank_hypergraph(&d, DEFAULT_BETA).unwrap();
        let b = rank_clique(&d, DEFAULT_BETA).unwrap();
        assert_eq!(a.order, b.order);
        assert!(a.scores.iter().zip(&b.scores).all(|(x, y)| (x - y).abs() < 1e-12));
    }

    #[test]
    fn equal_scores_rank_by_appearances() {
        let d = data(
            3,
            vec![(vec![1, 2], vec![0.0, 0.0]), (vec![2, 3], vec![0.0, 0.0])],
        );
        let r = rank_hypergraph(&d, DEFAULT_BETA).unwrap();
        assert_eq!(r.order, vec![2, 1, 3]);
        assert!((r.scores[0] - r.scores[2]).abs() < 1e-15);
    }

    #[test]
    fn generated_data_ranks_cleanly() {
        let d = generate(100, 1.0, 0.05, 7).unwrap();
        for method in Method::ALL {
            let r = rank(method, &d, DEFAULT_BETA).unwrap();
            let mut sorted = r.order.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (1..=100).collect::<Vec<_>>());
            assert!(r.residual < 1e-9, "{method:?} residual {}", r.residual);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn score_shift_keeps_hypergraph_order(seed in 0u64..1000, shift in -5.0f64..5.0) {
            let d = generate(12, 1.0, 0.3, seed).unwrap();
            let mut shifted = d.clone();
            for game in &mut shifted.matches {
                for s in &mut game.scores {
                    *s += shift;
                }
            }
            let a = rank_hypergraph(&d, DEFAULT_BETA).unwrap();
            let b = rank_hypergraph(&shifted, DEFAULT_BETA).unwrap();
            // ω uses the std, which a shift leaves alone; γ scales by e^shift per edge
            prop_assert!(a.scores.iter().zip(&b.scores).all(|(x, y)| (x - y).abs() < 1e-9));
        }
    }
}
