use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-match score multiplier is drawn uniformly from this range.
pub const SCALE_RANGE: (f64, f64) = (1.0 / 3.0, 3.0);

/// One match: who played and what each scored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Match {
    pub participants: Vec<usize>,
    pub scores: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub sigma: f64,
    pub p: f64,
    pub seed: u64,
    pub scale_range: (f64, f64),
}

/// A set of matches over players `1..=n`.
///
/// JSON form:
///
/// ```json
/// { "n": 3,
///   "matches": [ { "participants": [1, 3], "scores": [0.4, 1.7] } ],
///   "generator": { "sigma": 1.0, "p": 0.05, "seed": 7, "scale_range": [0.333, 3.0] } }
/// ```
///
/// `generator` is optional and only describes how synthetic data was made.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchData {
    pub n: usize,
    pub matches: Vec<Match>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorParams>,
}

impl MatchData {
    /// Number of matches, `k`.
    pub fn k(&self) -> usize {
        self.matches.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParameter(format!("need at least 2 players, got {}", self.n)));
        }
        let mut covered = vec![false; self.n];
        for (m, game) in self.matches.iter().enumerate() {
            if game.participants.len() != game.scores.len() {
                return Err(Error::InvalidParameter(format!(
                    "match {m}: {} participants but {} scores",
                    game.participants.len(),
                    game.scores.len()
                )));
            }
            if game.participants.len() < 2 {
                return Err(Error::InvalidParameter(format!("match {m} has fewer than 2 participants")));
            }
            for (i, &player) in game.participants.iter().enumerate() {
                if player == 0 || player > self.n {
                    return Err(Error::InvalidParameter(format!(
                        "match {m}: player {player} outside 1..={}",
                        self.n
                    )));
                }
                if game.participants[..i].contains(&player) {
                    return Err(Error::InvalidParameter(format!("match {m}: player {player} listed twice")));
                }
                covered[player - 1] = true;
            }
            if let Some(s) = game.scores.iter().find(|s| !s.is_finite()) {
                return Err(Error::InvalidParameter(format!("match {m}: non-finite score {s}")));
            }
        }
        if let Some(missing) = covered.iter().position(|c| !c) {
            return Err(Error::InvalidParameter(format!("player {} plays no match", missing + 1)));
        }
        Ok(())
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let data: MatchData = serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
        data.validate()?;
        Ok(data)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("match data serializes")
    }
}

/// Draw matches until every player has played at least once.
///
/// Each match includes every player independently with probability `p`;
/// draws with fewer than two players are discarded. A match gets a scale
/// `c ~ U[1/3, 3]` and player `i` scores `c · N(0.2 i, σ)`.
pub fn generate(n: usize, sigma: f64, p: f64, seed: u64) -> Result<MatchData> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be at least 2, got {n}")));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter(format!("p must lie in (0, 1), got {p}")));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, sigma).expect("sigma checked");
    let mut covered = vec![false; n];
    let mut remaining = n;
    let mut matches = Vec::new();
    while remaining > 0 {
        let participants: Vec<usize> = (1..=n).filter(|_| rng.gen_bool(p)).collect();
        if participants.len() < 2 {
            continue;
        }
        let c = rng.gen_range(SCALE_RANGE.0..=SCALE_RANGE.1);
        let scores = participants
            .iter()
            .map(|&i| c * (0.2 * i as f64 + noise.sample(&mut rng)))
            .collect();
        for &i in &participants {
            if !covered[i - 1] {
                covered[i - 1] = true;
                remaining -= 1;
            }
        }
        matches.push(Match { participants, scores });
    }
    Ok(MatchData {
        n,
        matches,
        generator: Some(GeneratorParams {
            sigma,
            p,
            seed,
            scale_range: SCALE_RANGE,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covers_everyone_with_experiment_sized_matches() {
        let data = generate(100, 1.0, 0.05, 7).unwrap();
        data.validate().unwrap();
        let sizes: usize = data.matches.iter().map(|m| m.participants.len()).sum();
        let mean = sizes as f64 / data.k() as f64;
        assert!((4.0..7.0).contains(&mean), "mean match size {mean}");
    }

    #[test]
    fn two_players_always_meet_in_pairs() {
        let data = generate(2, 1.0, 0.01, 3).unwrap();
        assert_eq!(data.k(), 1);
        assert_eq!(data.matches[0].participants, vec![1, 2]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(generate(10, 0.0, 0.1, 1).is_err());
        assert!(generate(1, 1.0, 0.1, 1).is_err());
        assert!(generate(10, 1.0, 1.0, 1).is_err());
    }

    #[test]
    fn deterministic_and_round_trips() {
        let a = generate(30, 1.0, 0.1, 11).unwrap();
        let b = generate(30, 1.0, 0.1, 11).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(MatchData::from_json(&a.to_json()).unwrap(), a);
        assert_ne!(generate(30, 1.0, 0.1, 12).unwrap(), a);
    }

    #[test]
    fn validation_catches_malformed_matches() {
        let bad = r#"{"n": 2, "matches": [{"participants": [1, 1], "scores": [0, 1]}]}"#;
        assert!(matches!(MatchData::from_json(bad), Err(Error::InvalidParameter(_))));
        let uncovered = r#"{"n": 3, "matches": [{"participants": [1, 2], "scores": [0, 1]}]}"#;
        assert!(MatchData::from_json(uncovered).is_err());
        assert!(MatchData::from_json("{").is_err());
    }
}
