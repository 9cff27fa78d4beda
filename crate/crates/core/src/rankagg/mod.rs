//! Synthetic rank aggregation: noisy multiplayer matches, three Markov-chain
//! rankers, and Kendall τ scoring against the planted order.
//!
//! Players are numbered `1..=n`; player `i` has mean score `0.2·i`, so the
//! true order is `n, n-1, …, 1`.

mod data;
mod experiment;
mod kendall;
mod rank;

pub use data::{generate, GeneratorParams, Match, MatchData, SCALE_RANGE};
pub use experiment::{experiment, ExperimentParams, ExperimentResult, MethodSummary, TrialRow};
pub use kendall::kendall_tau;
pub use rank::{
    match_hypergraph, rank, rank_clique, rank_hypergraph, rank_mc3, Method, RankingResult, DEFAULT_BETA,
    MAX_ABS_SCORE, TIE_RULE,
};

/// `n, n-1, …, 1`: players by descending mean score.
pub fn true_order(n: usize) -> Vec<usize> {
    (1..=n).rev().collect()
}
