//! Executable separation probes: responsiveness witnesses, constructive
//! dominance-reversed game pairs, and an overall strategic/nonstrategic
//! classification. Verdicts are explicitly empirical — absence of a
//! witness within a budget is evidence, not proof — and every stored
//! witness pair re-verifies its defining precondition.

use crate::aggregate::joint_collision_witness;
use crate::doc::random_game;
use crate::elementary::collision_witness;
use crate::exec::{derive_seed, try_find_first_trial};
use crate::game::{
    dominance_reversed_pair, Behavior, GameError, NormalFormGame, EPS_DIFF, EPS_EQ,
};
use crate::model::{BehavioralModel, ModelError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("probe needs at least two players, shape has {got}")]
    NeedsOpponents { got: usize },
    #[error("collision tuples must differ in coordinate {coordinate}")]
    DegenerateCollision { coordinate: usize },
    #[error("no shape in the configuration applies to player {player}")]
    NoApplicableShape { player: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Game(#[from] GameError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessVerdict {
    WitnessFound,
    Refuted,
    NoWitnessWithinBudget,
}

impl fmt::Display for WitnessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessVerdict::WitnessFound => "witness-found",
            WitnessVerdict::Refuted => "refuted",
            WitnessVerdict::NoWitnessWithinBudget => "no-witness-within-budget",
        })
    }
}

/// Result of a responsiveness probe: the verdict plus, when found, the
/// concrete game pair and model outputs that prove it.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    pub verdict: WitnessVerdict,
    pub games: Option<(NormalFormGame, NormalFormGame)>,
    pub outputs: Option<(Behavior, Behavior)>,
    /// Random trials consumed; 0 when a targeted construction hit.
    pub budget_used: u64,
    pub seed: u64,
}

/// A copy of `game` with every payoff of every player except `player`
/// redrawn from the standard normal generator.
pub fn resample_other_payoffs(game: &NormalFormGame, player: usize, seed: u64) -> NormalFormGame {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let n = game.num_players();
    let tuples = (0..game.num_profiles())
        .map(|p| {
            let tuple = game.payoff_tuple(p);
            (0..n)
                .map(|j| {
                    if j == player {
                        tuple[j]
                    } else {
                        rng.sample::<f64, _>(StandardNormal)
                    }
                })
                .collect()
        })
        .collect();
    NormalFormGame::new(game.all_action_names().to_vec(), tuples).expect("valid resample")
}

fn equal_own_payoffs(a: &NormalFormGame, b: &NormalFormGame, player: usize) -> bool {
    a.same_shape(b)
        && (0..a.num_profiles()).all(|p| a.payoff_tuple(p)[player] == b.payoff_tuple(p)[player])
}

/// Search for a pair of games differing only in opponents' payoffs that the
/// model separates. A targeted construction supplied by the model runs
/// before the seeded random search. With no witness found, a declared
/// dictatorial potential upgrades the verdict to refuted.
pub fn other_responsiveness_witness(
    model: &dyn BehavioralModel,
    player: usize,
    shape: &[usize],
    budget: u64,
    seed: u64,
) -> Result<WitnessReport, ClassifyError> {
    if shape.len() < 2 {
        return Err(ClassifyError::NeedsOpponents { got: shape.len() });
    }
    if player >= shape.len() {
        return Err(GameError::PlayerIndex {
            player,
            players: shape.len(),
        }
        .into());
    }

    if let Some((g, g_prime)) = model.targeted_other_witness(player) {
        if equal_own_payoffs(&g, &g_prime, player) {
            let a = model.behavior(&g, player)?;
            let b = model.behavior(&g_prime, player)?;
            if a.max_norm_distance(&b) > EPS_DIFF {
                return Ok(WitnessReport {
                    verdict: WitnessVerdict::WitnessFound,
                    games: Some((g, g_prime)),
                    outputs: Some((a, b)),
                    budget_used: 0,
                    seed,
                });
            }
        }
    }

    let hit = try_find_first_trial(budget, |t| {
        let g = random_game(shape, derive_seed(seed, 20, t));
        let g_prime = resample_other_payoffs(&g, player, derive_seed(seed, 21, t));
        let a = model.behavior(&g, player)?;
        let b = model.behavior(&g_prime, player)?;
        if a.max_norm_distance(&b) > EPS_DIFF {
            Ok(Some((g, g_prime, a, b)))
        } else {
            Ok::<_, ClassifyError>(None)
        }
    })?;

    Ok(match hit {
        Some((t, (g, g_prime, a, b))) => WitnessReport {
            verdict: WitnessVerdict::WitnessFound,
            games: Some((g, g_prime)),
            outputs: Some((a, b)),
            budget_used: t + 1,
            seed,
        },
        None => WitnessReport {
            verdict: if model.declares_dictatorial() {
                WitnessVerdict::Refuted
            } else {
                WitnessVerdict::NoWitnessWithinBudget
            },
            games: None,
            outputs: None,
            budget_used: budget,
            seed,
        },
    })
}

/// Search for a dominance-reversed game pair on which the model's outputs
/// are *equal*, falsifying dominance responsiveness. Potential-collision
/// constructions are tried before random pairs; witness-found means a
/// counterexample, no-witness is consistent with dominance responsiveness.
pub fn dominance_responsiveness_falsifier(
    model: &dyn BehavioralModel,
    player: usize,
    shape: &[usize],
    budget: u64,
    seed: u64,
) -> Result<WitnessReport, ClassifyError> {
    if player >= shape.len() {
        return Err(GameError::PlayerIndex {
            player,
            players: shape.len(),
        }
        .into());
    }
    if shape[player] < 2 {
        return Err(GameError::TooFewActions {
            player,
            got: shape[player],
        }
        .into());
    }

    // targeted route: a collision of the model's potentials yields a pair
    // its outputs provably cannot separate
    let potentials = model.elementary_potentials(player);
    let tuple_len = shape.len().max(potentials.len() + 1).max(2);
    let collision = match potentials.len() {
        0 => None,
        1 if player < tuple_len => collision_witness(&potentials[0], tuple_len, player),
        _ if player < tuple_len => {
            joint_collision_witness(&potentials, tuple_len, player).unwrap_or(None)
        }
        _ => None,
    };
    if let Some((x, x_prime)) = collision {
        let (g1, g2) = theorem3_game_pair(&x, &x_prime, player)?;
        let a = model.behavior(&g1, player)?;
        let b = model.behavior(&g2, player)?;
        if a.max_norm_distance(&b) <= EPS_EQ {
            return Ok(WitnessReport {
                verdict: WitnessVerdict::WitnessFound,
                games: Some((g1, g2)),
                outputs: Some((a, b)),
                budget_used: 0,
                seed,
            });
        }
    }

    let hit = try_find_first_trial(budget, |t| {
        let (g, g_prime) = generate_dominance_reversed_pair(shape, player, derive_seed(seed, 30, t))?;
        let a = model.behavior(&g, player)?;
        let b = model.behavior(&g_prime, player)?;
        if a.max_norm_distance(&b) <= EPS_EQ {
            Ok(Some((g, g_prime, a, b)))
        } else {
            Ok::<_, ClassifyError>(None)
        }
    })?;

    Ok(match hit {
        Some((t, (g, g_prime, a, b))) => WitnessReport {
            verdict: WitnessVerdict::WitnessFound,
            games: Some((g, g_prime)),
            outputs: Some((a, b)),
            budget_used: t + 1,
            seed,
        },
        None => WitnessReport {
            verdict: WitnessVerdict::NoWitnessWithinBudget,
            games: None,
            outputs: None,
            budget_used: budget,
            seed,
        },
    })
}

/// Sample a dominance-reversed pair: in the first game a chosen action is
/// raised a margin above every alternative pointwise; in the second,
/// independently sampled, another action is raised the same way above the
/// first one only. The construction is verified before returning.
pub fn generate_dominance_reversed_pair(
    shape: &[usize],
    player: usize,
    seed: u64,
) -> Result<(NormalFormGame, NormalFormGame), ClassifyError> {
    if shape[player] < 2 {
        return Err(GameError::TooFewActions {
            player,
            got: shape[player],
        }
        .into());
    }
    let k = shape[player];
    let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(seed, 31, 0));
    let dominant = rng.random_range(0..k);
    let mut reversed = rng.random_range(0..k - 1);
    if reversed >= dominant {
        reversed += 1;
    }

    let base = random_game(shape, derive_seed(seed, 32, 0));
    let mut tuples: Vec<Vec<f64>> = (0..base.num_profiles())
        .map(|p| base.payoff_tuple(p).to_vec())
        .collect();
    for mut ctx in crate::game::opposing_profiles(shape, player) {
        let mut best = f64::NEG_INFINITY;
        for b in 0..k {
            if b != dominant {
                ctx[player] = b;
                best = best.max(tuples[base.profile_index(&ctx)][player]);
            }
        }
        ctx[player] = dominant;
        let idx = base.profile_index(&ctx);
        tuples[idx][player] = best + 1.0 + rng.random::<f64>();
    }
    let g = NormalFormGame::new(base.all_action_names().to_vec(), tuples)?;

    let base2 = random_game(shape, derive_seed(seed, 33, 0));
    let mut tuples: Vec<Vec<f64>> = (0..base2.num_profiles())
        .map(|p| base2.payoff_tuple(p).to_vec())
        .collect();
    for mut ctx in crate::game::opposing_profiles(shape, player) {
        ctx[player] = dominant;
        let over = tuples[base2.profile_index(&ctx)][player];
        ctx[player] = reversed;
        let idx = base2.profile_index(&ctx);
        tuples[idx][player] = over + 1.0 + rng.random::<f64>();
    }
    let g_prime = NormalFormGame::new(base2.all_action_names().to_vec(), tuples)?;

    assert_eq!(
        g.strictly_dominant_action(player)?,
        Some(dominant),
        "constructed pair failed dominance verification"
    );
    assert!(
        g_prime.strictly_dominates(player, reversed, dominant)?,
        "constructed pair failed reversal verification"
    );
    debug_assert!(dominance_reversed_pair(&g, &g_prime, player)?.is_some());
    Ok((g, g_prime))
}

/// Outcome of the constructive self-responsiveness probe.
#[derive(Debug, Clone, PartialEq)]
pub struct SelfResponsivenessReport {
    pub report: WitnessReport,
    /// The action of minimal probability in the original game (lowest index
    /// on ties).
    pub argmin_action: usize,
    /// Whether that action carries strictly the greatest probability in the
    /// constructed game.
    pub flipped_to_strict_argmax: bool,
}

/// Build the game that pays the model's least-likely action 1 and every
/// other own action 0, leaving opponents untouched, and report whether the
/// output moves and whether the action flips to strict argmax.
pub fn self_responsiveness_construction(
    model: &dyn BehavioralModel,
    player: usize,
    game: &NormalFormGame,
) -> Result<(NormalFormGame, SelfResponsivenessReport), ClassifyError> {
    let before = model.behavior(game, player)?;
    let low = before.argmin_index();
    let tuples = game
        .profiles()
        .enumerate()
        .map(|(p, assignment)| {
            let mut tuple = game.payoff_tuple(p).to_vec();
            tuple[player] = if assignment[player] == low { 1.0 } else { 0.0 };
            tuple
        })
        .collect();
    let g_prime = NormalFormGame::new(game.all_action_names().to_vec(), tuples)?;
    let after = model.behavior(&g_prime, player)?;
    let moved = before.max_norm_distance(&after) > EPS_DIFF;
    let flipped = after.strict_argmax() == Some(low);
    let report = SelfResponsivenessReport {
        report: WitnessReport {
            verdict: if moved {
                WitnessVerdict::WitnessFound
            } else {
                WitnessVerdict::Refuted
            },
            games: Some((game.clone(), g_prime.clone())),
            outputs: Some((before, after)),
            budget_used: 0,
            seed: 0,
        },
        argmin_action: low,
        flipped_to_strict_argmax: flipped,
    };
    Ok((g_prime, report))
}

/// Build the two-game separation pair from a collision of payoff tuples:
/// one game where the high tuple sits on every profile of the first action
/// (making it strictly dominant), one with the tuples swapped (making it
/// strictly dominated). Every player other than `player` gets two actions.
/// The tuples are reordered if needed so the dominant one is higher for
/// `player`; equal coordinates are an error.
pub fn theorem3_game_pair(
    x: &[f64],
    x_prime: &[f64],
    player: usize,
) -> Result<(NormalFormGame, NormalFormGame), ClassifyError> {
    assert_eq!(x.len(), x_prime.len());
    let n = x.len();
    assert!(n >= 2, "the construction needs at least two players");
    assert!(player < n);
    if x[player] == x_prime[player] {
        return Err(ClassifyError::DegenerateCollision { coordinate: player });
    }
    let (lo, hi) = if x_prime[player] > x[player] {
        (x, x_prime)
    } else {
        (x_prime, x)
    };
    let names: Vec<Vec<String>> = (0..n)
        .map(|j| {
            if j == player {
                vec!["U".to_string(), "D".to_string()]
            } else {
                vec!["L".to_string(), "R".to_string()]
            }
        })
        .collect();
    let shape = vec![2usize; n];
    let build = |up: &[f64], down: &[f64]| -> Result<NormalFormGame, GameError> {
        let tuples = crate::game::profiles(&shape)
            .map(|assignment| {
                if assignment[player] == 0 {
                    up.to_vec()
                } else {
                    down.to_vec()
                }
            })
            .collect();
        NormalFormGame::new(names.clone(), tuples)
    };
    let g1 = build(hi, lo)?;
    let g2 = build(lo, hi)?;
    debug_assert_eq!(g1.strictly_dominant_action(player)?, Some(0));
    debug_assert!(g2.strictly_dominates(player, 1, 0)?);
    Ok((g1, g2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    StrategicWitnessed,
    NonstrategicWitnessed,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::StrategicWitnessed => "STRATEGIC-WITNESSED",
            Verdict::NonstrategicWitnessed => "NONSTRATEGIC-WITNESSED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub model: String,
    pub player: usize,
    pub verdict: Verdict,
    pub other: WitnessReport,
    pub dominance: WitnessReport,
    pub budget_per_shape: u64,
    pub seed: u64,
    pub shapes: Vec<Vec<usize>>,
}

/// Run both responsiveness probes across the given shapes and combine the
/// evidence. A dominance counterexample makes the model nonstrategic
/// outright; an other-responsiveness witness with no counterexample makes
/// it strategic; a declared dictatorial potential with no witness is
/// nonstrategic; anything else is inconclusive.
pub fn classify_model(
    model: &dyn BehavioralModel,
    player: usize,
    shapes: &[Vec<usize>],
    budget: u64,
    seed: u64,
) -> Result<ClassificationReport, ClassifyError> {
    let applicable: Vec<&Vec<usize>> = shapes
        .iter()
        .filter(|s| player < s.len() && s[player] >= 2 && s.len() >= 2)
        .collect();
    if applicable.is_empty() {
        return Err(ClassifyError::NoApplicableShape { player });
    }

    let mut other = None;
    let mut spent = 0;
    for (idx, shape) in applicable.iter().enumerate() {
        let report =
            other_responsiveness_witness(model, player, shape, budget, derive_seed(seed, 1, idx as u64))?;
        spent += report.budget_used;
        let found = report.verdict == WitnessVerdict::WitnessFound;
        other = Some(report);
        if found {
            break;
        }
    }
    let mut other = other.expect("at least one shape");
    other.budget_used = spent;

    let mut dominance = None;
    let mut spent = 0;
    for (idx, shape) in applicable.iter().enumerate() {
        let report = dominance_responsiveness_falsifier(
            model,
            player,
            shape,
            budget,
            derive_seed(seed, 2, idx as u64),
        )?;
        spent += report.budget_used;
        let found = report.verdict == WitnessVerdict::WitnessFound;
        dominance = Some(report);
        if found {
            break;
        }
    }
    let mut dominance = dominance.expect("at least one shape");
    dominance.budget_used = spent;

    let verdict = if dominance.verdict == WitnessVerdict::WitnessFound {
        Verdict::NonstrategicWitnessed
    } else if other.verdict == WitnessVerdict::WitnessFound {
        Verdict::StrategicWitnessed
    } else if model.declares_dictatorial() {
        Verdict::NonstrategicWitnessed
    } else {
        Verdict::Inconclusive
    };

    Ok(ClassificationReport {
        model: model.name(),
        player,
        verdict,
        other,
        dominance,
        budget_per_shape: budget,
        seed,
        shapes: applicable.into_iter().cloned().collect(),
    })
}
