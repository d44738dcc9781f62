//! Behavioral models for finite normal-form games.
//!
//! The crate has two halves. The first is a model zoo: elementary
//! (level-0) decision rules built from per-outcome potentials — uniform,
//! maxmax, maxmin, minimax regret, max welfare, fair, and soft variants —
//! plus strategic models: quantal best response, level-k, cognitive
//! hierarchy, their quantal variants, and a damped fixed-point QRE solver.
//!
//! The second half is a classification engine that separates strategic
//! from nonstrategic behavior with concrete game-pair witnesses instead of
//! prose. A model is *strategic* when it is both other responsive (some
//! pair of games differing only in opponents' payoffs yields different
//! outputs) and dominance responsive (outputs differ on every pair of
//! games where a strictly dominant action becomes strictly dominated).
//! The engine materializes three demos, mirrored by the CLI:
//!
//! 1. `theorem1` — quantal best response to a responsive belief source is
//!    strategic; the probe constructs the witness pair explicitly.
//! 2. `theorem3` — no potential-scored (elementary) rule is strategic: a
//!    collision of the potential yields a dominance-reversed game pair the
//!    rule cannot tell apart.
//! 3. `aggregation` — mixtures of elementary rules escape the elementary
//!    class yet stay nonstrategic when their potentials jointly collide.
//!
//! Probe batches are data parallel over seeds (rayon, `parallel` feature,
//! on by default); results are merged in seed order, so reports are
//! byte-deterministic either way.

pub mod aggregate;
pub mod classify;
pub mod doc;
pub mod elementary;
pub mod exec;
pub mod game;
pub mod games;
pub mod model;
pub mod modelspec;
pub mod strategic;

pub use aggregate::{aggregation_counterexample, evaluate_aggregation, AggregatedModel};
pub use classify::{
    classify_model, dominance_responsiveness_falsifier, generate_dominance_reversed_pair,
    other_responsiveness_witness, self_responsiveness_construction, theorem3_game_pair,
    ClassificationReport, Verdict, WitnessReport, WitnessVerdict,
};
pub use doc::{parse_game, random_game, serialize_game, GameDocument, RunConfig};
pub use elementary::{
    collision_witness, dictatorship_probe, evaluate_elementary, make_fair, make_max_welfare,
    make_maxmax, make_maxmin, make_minimax_regret, make_soft_variant, make_uniform,
    ElementaryModel, PotentialFunction, PotentialMap,
};
pub use game::{
    compare_behaviors, dominance_reversed_pair, Behavior, BehaviorComparison, BehaviorProfile,
    GameError, JointDistribution, NormalFormGame, EPS_DIFF, EPS_EQ, EPS_TIE,
};
pub use model::{BehavioralModel, ModelError};
pub use modelspec::parse_model;
pub use strategic::{
    cognitive_hierarchy_prediction, level_k_prediction, qre_solve, quantal_best_response,
    quantal_cognitive_hierarchy_prediction, quantal_level_k_prediction, LevelDistribution,
    QbrModel, QreSolution,
};
