//! Game documents and seeded random generation.
//!
//! Games travel as JSON with payoffs encoded as decimal strings; Rust's
//! shortest round-trip formatting guarantees that parse(serialize(g))
//! reproduces the payload bit for bit. Profile order is row-major with
//! player 0 as the most significant index, matching the in-memory tensor.

use crate::game::{GameError, NormalFormGame};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::ops::RangeInclusive;
use thiserror::Error;

pub const SCHEMA_GAME: &str = "nonstrat-game/1";
/// Pinned generator identity: ChaCha12 keyed with `seed_from_u64`, payoffs
/// drawn as standard normals in profile-major player order.
pub const GENERATOR_ID: &str = "chacha12-normal/1";
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_BUDGET: u64 = 1000;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed game document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema {got:?}, expected {expected:?}")]
    Schema { got: String, expected: String },
    #[error("players field is {got}, but {expected} action lists are present")]
    PlayerCount { got: usize, expected: usize },
    #[error("payoff {value:?} at {path} does not parse as a decimal number")]
    BadNumber { value: String, path: String },
    #[error("payoff {value:?} at {path} is not finite")]
    NonFinite { value: String, path: String },
    #[error(transparent)]
    Game(#[from] GameError),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GameDocument {
    pub schema: String,
    pub players: usize,
    pub actions: Vec<Vec<String>>,
    /// One tuple per profile, row-major; each payoff a decimal string.
    pub payoffs: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<GameMetadata>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
pub struct GameMetadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
}

impl GameDocument {
    pub fn from_game(game: &NormalFormGame) -> Self {
        GameDocument::from_game_with_metadata(game, None)
    }

    pub fn from_game_with_metadata(
        game: &NormalFormGame,
        metadata: Option<GameMetadata>,
    ) -> Self {
        let payoffs = (0..game.num_profiles())
            .map(|p| {
                game.payoff_tuple(p)
                    .iter()
                    .map(|v| format!("{v}"))
                    .collect()
            })
            .collect();
        GameDocument {
            schema: SCHEMA_GAME.to_string(),
            players: game.num_players(),
            actions: game.all_action_names().to_vec(),
            payoffs,
            metadata,
        }
    }

    pub fn into_game(&self) -> Result<NormalFormGame, DocError> {
        if self.schema != SCHEMA_GAME {
            return Err(DocError::Schema {
                got: self.schema.clone(),
                expected: SCHEMA_GAME.to_string(),
            });
        }
        if self.players != self.actions.len() {
            return Err(DocError::PlayerCount {
                got: self.players,
                expected: self.actions.len(),
            });
        }
        let mut tuples = Vec::with_capacity(self.payoffs.len());
        for (p, tuple) in self.payoffs.iter().enumerate() {
            let mut parsed = Vec::with_capacity(tuple.len());
            for (j, raw) in tuple.iter().enumerate() {
                let path = format!("payoffs[{p}][{j}]");
                let v: f64 = raw.trim().parse().map_err(|_| DocError::BadNumber {
                    value: raw.clone(),
                    path: path.clone(),
                })?;
                if !v.is_finite() {
                    return Err(DocError::NonFinite {
                        value: raw.clone(),
                        path,
                    });
                }
                parsed.push(v);
            }
            tuples.push(parsed);
        }
        Ok(NormalFormGame::new(self.actions.clone(), tuples)?)
    }
}

/// Parse a game document from JSON text.
pub fn parse_game(text: &str) -> Result<NormalFormGame, DocError> {
    let doc: GameDocument = serde_json::from_str(text)?;
    doc.into_game()
}

/// Serialize a game to canonical JSON text.
pub fn serialize_game(game: &NormalFormGame) -> String {
    serialize_document(&GameDocument::from_game(game))
}

pub fn serialize_document(doc: &GameDocument) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("document serializes");
    out.push('\n');
    out
}

/// A game with iid standard-normal payoffs from the pinned deterministic
/// generator; the same (shape, seed) always yields the same game.
pub fn random_game(shape: &[usize], seed: u64) -> NormalFormGame {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let names = default_action_names(shape);
    let profiles: usize = shape.iter().product();
    let tuples = (0..profiles)
        .map(|_| {
            (0..shape.len())
                .map(|_| rng.sample::<f64, _>(StandardNormal))
                .collect()
        })
        .collect();
    NormalFormGame::new(names, tuples).expect("generated game is valid")
}

/// A game with iid integer payoffs drawn from `range`; useful where exact
/// float arithmetic matters.
pub fn random_integer_game(
    shape: &[usize],
    seed: u64,
    range: RangeInclusive<i64>,
) -> NormalFormGame {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let names = default_action_names(shape);
    let profiles: usize = shape.iter().product();
    let tuples = (0..profiles)
        .map(|_| {
            (0..shape.len())
                .map(|_| rng.random_range(range.clone()) as f64)
                .collect()
        })
        .collect();
    NormalFormGame::new(names, tuples).expect("generated game is valid")
}

pub fn default_action_names(shape: &[usize]) -> Vec<Vec<String>> {
    shape
        .iter()
        .map(|&k| (0..k).map(|a| format!("a{a}")).collect())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OutputFormat {
    Table,
    Json,
}

/// Run parameters shared by the probe-driving entry points.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    pub budget: u64,
    pub shapes: Vec<Vec<usize>>,
    pub eps_tie: f64,
    pub eps_diff: f64,
    pub qre_tol: f64,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: DEFAULT_SEED,
            budget: DEFAULT_BUDGET,
            shapes: vec![vec![2, 2], vec![3, 3], vec![4, 4]],
            eps_tie: crate::game::EPS_TIE,
            eps_diff: crate::game::EPS_DIFF,
            qre_tol: 1e-10,
            format: OutputFormat::Table,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::prisoners_dilemma;

    #[test]
    fn parse_a_hand_written_document() {
        let text = r#"{
            "schema": "nonstrat-game/1",
            "players": 2,
            "actions": [["C", "D"], ["C", "D"]],
            "payoffs": [["3", "3"], ["0", "4"], ["4", "0"], ["1", "1"]]
        }"#;
        let g = parse_game(text).unwrap();
        assert_eq!(g, prisoners_dilemma());
    }

    #[test]
    fn round_trip_is_bit_exact() {
        for seed in 0..50u64 {
            let g = random_game(&[3, 2, 2], seed);
            let text = serialize_game(&g);
            let back = parse_game(&text).unwrap();
            assert_eq!(g, back);
            assert_eq!(serialize_game(&back), text);
        }
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(parse_game("not json"), Err(DocError::Json(_))));

        let bad_schema = r#"{"schema":"other/9","players":1,"actions":[["x"]],"payoffs":[["0"]]}"#;
        assert!(matches!(parse_game(bad_schema), Err(DocError::Schema { .. })));

        let inf = r#"{"schema":"nonstrat-game/1","players":1,"actions":[["x","y"]],"payoffs":[["inf"],["0"]]}"#;
        assert!(matches!(parse_game(inf), Err(DocError::NonFinite { .. })));

        let garbled = r#"{"schema":"nonstrat-game/1","players":1,"actions":[["x","y"]],"payoffs":[["zed"],["0"]]}"#;
        match parse_game(garbled) {
            Err(DocError::BadNumber { path, .. }) => assert_eq!(path, "payoffs[0][0]"),
            other => panic!("expected BadNumber, got {other:?}"),
        }

        let short = r#"{"schema":"nonstrat-game/1","players":1,"actions":[["x","y"]],"payoffs":[["0"]]}"#;
        assert!(matches!(
            parse_game(short),
            Err(DocError::Game(GameError::PayoffLength { .. }))
        ));
    }

    #[test]
    fn random_game_is_seed_deterministic() {
        let a = random_game(&[3, 3], 9);
        let b = random_game(&[3, 3], 9);
        assert_eq!(a, b);
        let c = random_game(&[3, 3], 10);
        assert_ne!(a, c);
        assert_eq!(random_game(&[3, 3], 9).num_profiles(), 9);
    }
}
