//! Strategic behavioral models: quantal best response, level-k, cognitive
//! hierarchy, their quantal variants, and a damped fixed-point QRE solver.

use crate::game::{Behavior, BehaviorProfile, GameError, NormalFormGame, EPS_EQ};
use crate::model::{BehavioralModel, ModelError};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StrategicError {
    #[error("precision must be finite and nonnegative, got {value}")]
    InvalidPrecision { value: f64 },
    #[error("damping must lie in (0, 1], got {value}")]
    InvalidDamping { value: f64 },
    #[error("level weights must be nonnegative and sum to 1 (sum was {sum})")]
    InvalidLevelWeights { sum: f64 },
    #[error("hierarchical beliefs need positive weight on level 0")]
    LevelZeroWeight,
    #[error("expected {expected} per-level precisions, got {got}")]
    LevelPrecisionCount { got: usize, expected: usize },
    #[error(transparent)]
    Game(#[from] GameError),
}

/// A distribution over reasoning levels `0..=k_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelDistribution {
    weights: Vec<f64>,
}

impl LevelDistribution {
    pub fn new(weights: Vec<f64>) -> Result<Self, StrategicError> {
        if weights.is_empty() {
            return Err(StrategicError::InvalidLevelWeights { sum: 0.0 });
        }
        let mut sum = 0.0;
        for &w in &weights {
            if !w.is_finite() || w < 0.0 {
                return Err(StrategicError::InvalidLevelWeights { sum: w });
            }
            sum += w;
        }
        if (sum - 1.0).abs() > EPS_EQ {
            return Err(StrategicError::InvalidLevelWeights { sum });
        }
        Ok(LevelDistribution { weights })
    }

    pub fn k_max(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weight(&self, level: usize) -> f64 {
        self.weights.get(level).copied().unwrap_or(0.0)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

fn check_precision(lambda: f64) -> Result<(), StrategicError> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(StrategicError::InvalidPrecision { value: lambda });
    }
    Ok(())
}

/// Logit quantal best response: probabilities proportional to
/// `exp(lambda * expected utility)`, computed with max subtraction so that
/// large precisions cannot overflow and a zero precision is exactly
/// uniform.
pub fn quantal_best_response(
    game: &NormalFormGame,
    player: usize,
    opponents: &BehaviorProfile,
    lambda: f64,
) -> Result<Behavior, StrategicError> {
    check_precision(lambda)?;
    let eu = game.action_expected_utilities(player, opponents)?;
    Ok(softmax_scaled(&eu, lambda))
}

fn softmax_scaled(values: &[f64], lambda: f64) -> Behavior {
    let z: Vec<f64> = values.iter().map(|&v| lambda * v).collect();
    let zmax = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = z.iter().map(|&v| (v - zmax).exp()).collect();
    let total: f64 = exps.iter().sum();
    Behavior::new(exps.iter().map(|&e| e / total).collect()).expect("softmax is a distribution")
}

fn uniform_over_best_responses(
    game: &NormalFormGame,
    player: usize,
    opponents: &BehaviorProfile,
) -> Result<Behavior, GameError> {
    let brs = game.best_response_set(player, opponents)?;
    Ok(Behavior::uniform_over(game.num_actions(player), &brs))
}

enum LevelResponse<'a> {
    Hard,
    Quantal(&'a [f64]),
}

impl LevelResponse<'_> {
    fn respond(
        &self,
        game: &NormalFormGame,
        player: usize,
        belief: &BehaviorProfile,
        level: usize,
    ) -> Result<Behavior, StrategicError> {
        match self {
            LevelResponse::Hard => Ok(uniform_over_best_responses(game, player, belief)?),
            LevelResponse::Quantal(lambdas) => {
                quantal_best_response(game, player, belief, lambdas[level - 1])
            }
        }
    }
}

fn check_level_lambdas(lambdas: &[f64], k_max: usize) -> Result<(), StrategicError> {
    if lambdas.len() != k_max {
        return Err(StrategicError::LevelPrecisionCount {
            got: lambdas.len(),
            expected: k_max,
        });
    }
    for &l in lambdas {
        check_precision(l)?;
    }
    Ok(())
}

/// Level-k recursion: each level best responds to the previous level's
/// full profile; the prediction mixes the levels by their frequencies.
fn iterative_prediction(
    game: &NormalFormGame,
    s0: &BehaviorProfile,
    levels: &LevelDistribution,
    response: LevelResponse<'_>,
) -> Result<BehaviorProfile, StrategicError> {
    s0.check_for(game)?;
    let n = game.num_players();
    let mut per_level: Vec<BehaviorProfile> = vec![s0.clone()];
    for k in 1..=levels.k_max() {
        let prev = &per_level[k - 1];
        let behaviors = (0..n)
            .map(|i| response.respond(game, i, prev, k))
            .collect::<Result<Vec<_>, _>>()?;
        per_level.push(BehaviorProfile::new(behaviors)?);
    }
    mix_levels(game, levels.weights(), &per_level)
}

/// Cognitive-hierarchy recursion: level k responds to the renormalized
/// mixture of all lower levels. The prefix weights are normalized before
/// mixing, so a distribution supported on levels 0 and 1 reproduces the
/// level-k computation exactly.
fn hierarchical_prediction(
    game: &NormalFormGame,
    s0: &BehaviorProfile,
    levels: &LevelDistribution,
    response: LevelResponse<'_>,
) -> Result<BehaviorProfile, StrategicError> {
    s0.check_for(game)?;
    if levels.k_max() >= 1 && levels.weight(0) == 0.0 {
        return Err(StrategicError::LevelZeroWeight);
    }
    let n = game.num_players();
    let mut per_level: Vec<BehaviorProfile> = vec![s0.clone()];
    for k in 1..=levels.k_max() {
        let prefix: f64 = (0..k).map(|m| levels.weight(m)).sum();
        let weights: Vec<f64> = (0..k).map(|m| levels.weight(m) / prefix).collect();
        let belief = mix_levels(game, &weights, &per_level[..k])?;
        let behaviors = (0..n)
            .map(|i| response.respond(game, i, &belief, k))
            .collect::<Result<Vec<_>, _>>()?;
        per_level.push(BehaviorProfile::new(behaviors)?);
    }
    mix_levels(game, levels.weights(), &per_level)
}

fn mix_levels(
    game: &NormalFormGame,
    weights: &[f64],
    profiles: &[BehaviorProfile],
) -> Result<BehaviorProfile, StrategicError> {
    let behaviors = (0..game.num_players())
        .map(|i| {
            let parts: Vec<Behavior> = profiles.iter().map(|p| p.get(i).clone()).collect();
            Behavior::mixture(weights, &parts)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BehaviorProfile::new(behaviors)?)
}

/// Level-k prediction with hard best responses and uniform tie-breaking.
pub fn level_k_prediction(
    game: &NormalFormGame,
    s0: &BehaviorProfile,
    levels: &LevelDistribution,
) -> Result<BehaviorProfile, StrategicError> {
    iterative_prediction(game, s0, levels, LevelResponse::Hard)
}

/// Cognitive hierarchy prediction with hard best responses.
pub fn cognitive_hierarchy_prediction(
    game: &NormalFormGame,
    s0: &BehaviorProfile,
    levels: &LevelDistribution,
) -> Result<BehaviorProfile, StrategicError> {
    hierarchical_prediction(game, s0, levels, LevelResponse::Hard)
}

/// Level-k with quantal best responses, one precision per level `1..=k`.
pub fn quantal_level_k_prediction(
    game: &NormalFormGame,
    s0: &BehaviorProfile,
    levels: &LevelDistribution,
    lambdas: &[f64],
) -> Result<BehaviorProfile, StrategicError> {
    check_level_lambdas(lambdas, levels.k_max())?;
    iterative_prediction(game, s0, levels, LevelResponse::Quantal(lambdas))
}

/// Cognitive hierarchy with quantal best responses.
pub fn quantal_cognitive_hierarchy_prediction(
    game: &NormalFormGame,
    s0: &BehaviorProfile,
    levels: &LevelDistribution,
    lambdas: &[f64],
) -> Result<BehaviorProfile, StrategicError> {
    check_level_lambdas(lambdas, levels.k_max())?;
    hierarchical_prediction(game, s0, levels, LevelResponse::Quantal(lambdas))
}

#[derive(Debug, Clone)]
pub struct QreSolution {
    pub profile: BehaviorProfile,
    /// Max-norm of `s - QBR(s)` at the returned profile.
    pub residual: f64,
    pub iterations: u64,
    pub converged: bool,
}

fn qbr_profile(
    game: &NormalFormGame,
    s: &BehaviorProfile,
    lambda: f64,
) -> Result<BehaviorProfile, StrategicError> {
    let behaviors = (0..game.num_players())
        .map(|i| quantal_best_response(game, i, s, lambda))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BehaviorProfile::new(behaviors)?)
}

/// Damped fixed-point iteration for quantal response equilibrium:
/// `s <- (1 - gamma) s + gamma QBR(s)` until the residual drops below
/// `tol` or the iteration budget runs out. Non-convergence is reported in
/// the solution, not thrown; the best iterate seen is returned.
pub fn qre_solve(
    game: &NormalFormGame,
    lambda: f64,
    init: &BehaviorProfile,
    gamma: f64,
    tol: f64,
    max_iter: u64,
) -> Result<QreSolution, StrategicError> {
    check_precision(lambda)?;
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(StrategicError::InvalidDamping { value: gamma });
    }
    init.check_for(game)?;
    let mut s = init.clone();
    let mut best_profile = s.clone();
    let mut best_residual = f64::INFINITY;
    let mut iterations = 0;
    while iterations < max_iter {
        let q = qbr_profile(game, &s, lambda)?;
        iterations += 1;
        let residual = s.max_norm_distance(&q);
        if residual < best_residual {
            best_residual = residual;
            best_profile = s.clone();
        }
        if residual <= tol {
            return Ok(QreSolution {
                profile: s,
                residual,
                iterations,
                converged: true,
            });
        }
        let behaviors = (0..game.num_players())
            .map(|i| {
                let mixed: Vec<f64> = s
                    .get(i)
                    .probs()
                    .iter()
                    .zip(q.get(i).probs())
                    .map(|(&a, &b)| (1.0 - gamma) * a + gamma * b)
                    .collect();
                Behavior::new(mixed)
            })
            .collect::<Result<Vec<_>, _>>()?;
        s = BehaviorProfile::new(behaviors)?;
    }
    Ok(QreSolution {
        profile: best_profile,
        residual: best_residual,
        iterations,
        converged: false,
    })
}

/// Quantal best response to the outputs of a base behavioral model: the
/// belief about each opponent is the base model's prediction for them.
/// This is the depth-one strategic model the classification demos probe.
#[derive(Clone)]
pub struct QbrModel {
    base: Arc<dyn BehavioralModel>,
    lambda: f64,
}

impl QbrModel {
    pub fn new(base: Arc<dyn BehavioralModel>, lambda: f64) -> Result<Self, StrategicError> {
        check_precision(lambda)?;
        Ok(QbrModel { base, lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn base(&self) -> &Arc<dyn BehavioralModel> {
        &self.base
    }

    fn base_profile(&self, game: &NormalFormGame) -> Result<BehaviorProfile, ModelError> {
        let behaviors = (0..game.num_players())
            .map(|j| self.base.behavior(game, j))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BehaviorProfile::new(behaviors).map_err(StrategicError::from)?)
    }
}

impl BehavioralModel for QbrModel {
    fn name(&self) -> String {
        format!("qbr:{}:{}", self.base.name(), self.lambda)
    }

    fn behavior(&self, game: &NormalFormGame, player: usize) -> Result<Behavior, ModelError> {
        let belief = self.base_profile(game)?;
        Ok(quantal_best_response(game, player, &belief, self.lambda)?)
    }

    /// The constructive other-responsiveness probe: start from the matching
    /// game, whose uniform ties leave the belief about the opponent free to
    /// move, then replace the opponent's own payoffs with an indicator on
    /// their least-likely action. A belief source that responds to its own
    /// payoffs shifts, and the quantal response to it shifts with it.
    fn targeted_other_witness(
        &self,
        player: usize,
    ) -> Option<(NormalFormGame, NormalFormGame)> {
        if player > 1 {
            return None;
        }
        let g = crate::games::matching_game_for(player);
        let opponent = 1 - player;
        let base_out = self.base.behavior(&g, opponent).ok()?;
        let low = base_out.argmin_index();
        let mut g_prime = g.clone();
        for assignment in g.profiles() {
            let v = if assignment[opponent] == low { 1.0 } else { 0.0 };
            g_prime = g_prime.with_payoff(&assignment, opponent, v);
        }
        Some((g, g_prime))
    }
}

/// A level-k or cognitive-hierarchy prediction packaged as a behavioral
/// model, with the level-0 profile supplied by a base model.
#[derive(Clone)]
pub struct IterativeModel {
    base: Arc<dyn BehavioralModel>,
    levels: LevelDistribution,
    lambdas: Option<Vec<f64>>,
    hierarchical: bool,
}

impl IterativeModel {
    pub fn level_k(
        base: Arc<dyn BehavioralModel>,
        levels: LevelDistribution,
    ) -> Self {
        IterativeModel {
            base,
            levels,
            lambdas: None,
            hierarchical: false,
        }
    }

    pub fn cognitive_hierarchy(
        base: Arc<dyn BehavioralModel>,
        levels: LevelDistribution,
    ) -> Self {
        IterativeModel {
            base,
            levels,
            lambdas: None,
            hierarchical: true,
        }
    }

    pub fn quantal_level_k(
        base: Arc<dyn BehavioralModel>,
        levels: LevelDistribution,
        lambdas: Vec<f64>,
    ) -> Result<Self, StrategicError> {
        check_level_lambdas(&lambdas, levels.k_max())?;
        Ok(IterativeModel {
            base,
            levels,
            lambdas: Some(lambdas),
            hierarchical: false,
        })
    }

    pub fn quantal_cognitive_hierarchy(
        base: Arc<dyn BehavioralModel>,
        levels: LevelDistribution,
        lambdas: Vec<f64>,
    ) -> Result<Self, StrategicError> {
        check_level_lambdas(&lambdas, levels.k_max())?;
        Ok(IterativeModel {
            base,
            levels,
            lambdas: Some(lambdas),
            hierarchical: true,
        })
    }

    fn prediction(&self, game: &NormalFormGame) -> Result<BehaviorProfile, ModelError> {
        let behaviors = (0..game.num_players())
            .map(|j| self.base.behavior(game, j))
            .collect::<Result<Vec<_>, _>>()?;
        let s0 = BehaviorProfile::new(behaviors).map_err(StrategicError::from)?;
        let out = match (&self.lambdas, self.hierarchical) {
            (None, false) => level_k_prediction(game, &s0, &self.levels)?,
            (None, true) => cognitive_hierarchy_prediction(game, &s0, &self.levels)?,
            (Some(l), false) => quantal_level_k_prediction(game, &s0, &self.levels, l)?,
            (Some(l), true) => {
                quantal_cognitive_hierarchy_prediction(game, &s0, &self.levels, l)?
            }
        };
        Ok(out)
    }
}

impl BehavioralModel for IterativeModel {
    fn name(&self) -> String {
        let kind = match (self.lambdas.is_some(), self.hierarchical) {
            (false, false) => "lk",
            (false, true) => "ch",
            (true, false) => "qlk",
            (true, true) => "qch",
        };
        let d = self
            .levels
            .weights()
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(",");
        match &self.lambdas {
            None => format!("{kind}:{}:{d}", self.base.name()),
            Some(l) => {
                let ls = l
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                format!("{kind}:{}:{d}:{ls}", self.base.name())
            }
        }
    }

    fn behavior(&self, game: &NormalFormGame, player: usize) -> Result<Behavior, ModelError> {
        Ok(self.prediction(game)?.get(player).clone())
    }
}

/// The QRE profile of a game packaged as a behavioral model, solved with
/// default damping and tolerance from a uniform start.
#[derive(Clone)]
pub struct QreModel {
    lambda: f64,
}

pub const QRE_DEFAULT_GAMMA: f64 = 0.5;
pub const QRE_DEFAULT_TOL: f64 = 1e-10;
pub const QRE_DEFAULT_MAX_ITER: u64 = 100_000;

impl QreModel {
    pub fn new(lambda: f64) -> Result<Self, StrategicError> {
        check_precision(lambda)?;
        Ok(QreModel { lambda })
    }
}

impl BehavioralModel for QreModel {
    fn name(&self) -> String {
        format!("qre:{}", self.lambda)
    }

    fn behavior(&self, game: &NormalFormGame, player: usize) -> Result<Behavior, ModelError> {
        let init = BehaviorProfile::uniform(game);
        let solution = qre_solve(
            game,
            self.lambda,
            &init,
            QRE_DEFAULT_GAMMA,
            QRE_DEFAULT_TOL,
            QRE_DEFAULT_MAX_ITER,
        )?;
        Ok(solution.profile.get(player).clone())
    }
}

/// Quantal best response to a fixed base-model profile, as a model
/// constructor. The level-1 building block of the classification demos.
pub fn make_qbr_model(
    base: Arc<dyn BehavioralModel>,
    lambda: f64,
) -> Result<QbrModel, StrategicError> {
    QbrModel::new(base, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elementary::{make_maxmin, make_uniform};
    use crate::games::{matching_game, prisoners_dilemma};

    fn uniform_model() -> Arc<dyn BehavioralModel> {
        Arc::new(make_uniform())
    }

    #[test]
    fn qbr_zero_precision_is_exactly_uniform() {
        let pd = prisoners_dilemma();
        let u = BehaviorProfile::uniform(&pd);
        let out = quantal_best_response(&pd, 0, &u, 0.0).unwrap();
        assert_eq!(out.probs(), &[0.5, 0.5]);
        let wide = crate::doc::random_game(&[5, 3], 3);
        let out = quantal_best_response(&wide, 0, &BehaviorProfile::uniform(&wide), 0.0).unwrap();
        assert_eq!(out.probs(), &[0.2; 5]);
    }

    #[test]
    fn qbr_pd_against_uniform() {
        let pd = prisoners_dilemma();
        let u = BehaviorProfile::uniform(&pd);
        let out = quantal_best_response(&pd, 0, &u, 1.0).unwrap();
        // utilities (1.5, 2.5): (1/(1+e), e/(1+e))
        let e = std::f64::consts::E;
        assert!((out.prob(0) - 1.0 / (1.0 + e)).abs() < 1e-15);
        assert!((out.prob(1) - e / (1.0 + e)).abs() < 1e-15);
    }

    #[test]
    fn qbr_unit_margin_at_high_precision() {
        let g = NormalFormGame::two_player(
            &["U", "D"],
            &["L", "R"],
            &[1.0, 1.0, 0.0, 0.0],
            &[0.0; 4],
        )
        .unwrap();
        let u = BehaviorProfile::uniform(&g);
        let out = quantal_best_response(&g, 0, &u, 10.0).unwrap();
        let expected = (10.0f64).exp() / ((10.0f64).exp() + 1.0);
        assert!((out.prob(0) - expected).abs() < 1e-12);
    }

    #[test]
    fn qbr_constant_shift_invariance_is_exact() {
        // integer payoffs, an integer shift, and a dyadic uniform belief
        // (four opposing actions) keep every float operation exact
        let g = crate::doc::random_integer_game(&[3, 4], 17, -8..=8);
        let u = BehaviorProfile::uniform(&g);
        let before = quantal_best_response(&g, 0, &u, 1.5).unwrap();
        let shifted_tuples: Vec<Vec<f64>> = (0..g.num_profiles())
            .map(|p| {
                let t = g.payoff_tuple(p);
                vec![t[0] + 5.0, t[1]]
            })
            .collect();
        let g2 = NormalFormGame::new(g.all_action_names().to_vec(), shifted_tuples).unwrap();
        let after = quantal_best_response(&g2, 0, &u, 1.5).unwrap();
        assert_eq!(before, after);
    }

    #[test]
    fn qbr_mass_follows_expected_utility() {
        for seed in 0..50u64 {
            let g = crate::doc::random_game(&[4, 3], seed);
            let u = BehaviorProfile::uniform(&g);
            let eu = g.action_expected_utilities(0, &u).unwrap();
            let out = quantal_best_response(&g, 0, &u, 2.0).unwrap();
            for a in 0..4 {
                for b in 0..4 {
                    if eu[a] > eu[b] {
                        assert!(out.prob(a) > out.prob(b));
                    }
                }
            }
        }
    }

    #[test]
    fn qbr_tail_mass_vanishes_at_high_precision() {
        let pd = prisoners_dilemma();
        let u = BehaviorProfile::uniform(&pd);
        let out = quantal_best_response(&pd, 0, &u, 50.0).unwrap();
        assert!(out.prob(0) < 1e-20);
    }

    #[test]
    fn level_k_on_prisoners_dilemma() {
        let pd = prisoners_dilemma();
        let s0 = BehaviorProfile::uniform(&pd);
        let d = LevelDistribution::new(vec![0.5, 0.5]).unwrap();
        let out = level_k_prediction(&pd, &s0, &d).unwrap();
        assert_eq!(out.get(0).probs(), &[0.25, 0.75]);
    }

    #[test]
    fn level_zero_point_mass_returns_s0() {
        let pd = prisoners_dilemma();
        let s0 = BehaviorProfile::new(vec![
            Behavior::new(vec![0.3, 0.7]).unwrap(),
            Behavior::new(vec![0.6, 0.4]).unwrap(),
        ])
        .unwrap();
        let d = LevelDistribution::new(vec![1.0]).unwrap();
        assert_eq!(level_k_prediction(&pd, &s0, &d).unwrap(), s0);
        assert_eq!(cognitive_hierarchy_prediction(&pd, &s0, &d).unwrap(), s0);
    }

    #[test]
    fn level_k_total_ties_stay_uniform() {
        let m = matching_game();
        let s0 = BehaviorProfile::uniform(&m);
        for weights in [vec![0.5, 0.5], vec![0.2, 0.3, 0.5], vec![1.0 / 3.0; 3]] {
            let d = LevelDistribution::new(weights).unwrap();
            let out = level_k_prediction(&m, &s0, &d).unwrap();
            assert_eq!(out, s0);
        }
    }

    #[test]
    fn cognitive_hierarchy_on_prisoners_dilemma() {
        let pd = prisoners_dilemma();
        let s0 = BehaviorProfile::uniform(&pd);
        let d = LevelDistribution::new(vec![0.5, 0.5]).unwrap();
        let out = cognitive_hierarchy_prediction(&pd, &s0, &d).unwrap();
        assert_eq!(out.get(0).probs(), &[0.25, 0.75]);

        let d3 = LevelDistribution::new(vec![1.0 / 3.0; 3]).unwrap();
        let out = cognitive_hierarchy_prediction(&pd, &s0, &d3).unwrap();
        // hand recursion: levels 1 and 2 both defect; mixture (1/6, 5/6)
        assert!((out.get(0).prob(0) - 1.0 / 6.0).abs() < 1e-15);
        assert!((out.get(0).prob(1) - 5.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn cognitive_hierarchy_requires_level_zero_mass() {
        let pd = prisoners_dilemma();
        let s0 = BehaviorProfile::uniform(&pd);
        let d = LevelDistribution::new(vec![0.0, 1.0]).unwrap();
        assert!(matches!(
            cognitive_hierarchy_prediction(&pd, &s0, &d),
            Err(StrategicError::LevelZeroWeight)
        ));
        // the plain level-k recursion has no such constraint
        assert!(level_k_prediction(&pd, &s0, &d).is_ok());
    }

    #[test]
    fn level_k_and_hierarchy_agree_on_two_level_support() {
        for seed in 0..50u64 {
            let g = crate::doc::random_game(&[3, 3], seed);
            let s0 = BehaviorProfile::uniform(&g);
            let d = LevelDistribution::new(vec![0.3, 0.7]).unwrap();
            let lk = level_k_prediction(&g, &s0, &d).unwrap();
            let ch = cognitive_hierarchy_prediction(&g, &s0, &d).unwrap();
            assert_eq!(lk, ch);
        }
    }

    #[test]
    fn quantal_variants() {
        let pd = prisoners_dilemma();
        let s0 = BehaviorProfile::uniform(&pd);

        // all precisions zero: uniform at every level, mixture uniform
        let d = LevelDistribution::new(vec![0.2, 0.5, 0.3]).unwrap();
        let out = quantal_level_k_prediction(&pd, &s0, &d, &[0.0, 0.0]).unwrap();
        assert_eq!(out.get(0).probs(), &[0.5, 0.5]);

        // a single level-1 agent at unit precision reproduces the QBR value
        let d1 = LevelDistribution::new(vec![0.0, 1.0]).unwrap();
        let out = quantal_level_k_prediction(&pd, &s0, &d1, &[1.0]).unwrap();
        let e = std::f64::consts::E;
        assert!((out.get(0).prob(1) - e / (1.0 + e)).abs() < 1e-15);

        // large precision recovers the hard prediction when ties are absent
        let d = LevelDistribution::new(vec![0.5, 0.5]).unwrap();
        let hard = level_k_prediction(&pd, &s0, &d).unwrap();
        let soft = quantal_level_k_prediction(&pd, &s0, &d, &[200.0]).unwrap();
        assert!(hard.max_norm_distance(&soft) < 1e-6);

        // mismatched precision count is rejected
        assert!(matches!(
            quantal_level_k_prediction(&pd, &s0, &d, &[1.0, 1.0]),
            Err(StrategicError::LevelPrecisionCount { .. })
        ));
        assert!(matches!(
            quantal_cognitive_hierarchy_prediction(&pd, &s0, &d1, &[1.0]),
            Err(StrategicError::LevelZeroWeight)
        ));
    }

    #[test]
    fn qre_zero_precision_converges_immediately() {
        let pd = prisoners_dilemma();
        let init = BehaviorProfile::uniform(&pd);
        let sol = qre_solve(&pd, 0.0, &init, 0.5, 1e-10, 1000).unwrap();
        assert!(sol.converged);
        assert_eq!(sol.iterations, 1);
        assert_eq!(sol.residual, 0.0);
        assert_eq!(sol.profile, init);
    }

    #[test]
    fn qre_uniform_is_exact_fixed_point_of_matching_game() {
        let m = matching_game();
        let init = BehaviorProfile::uniform(&m);
        for lambda in [0.5, 1.0, 2.0, 7.0] {
            let sol = qre_solve(&m, lambda, &init, 0.5, 1e-10, 1000).unwrap();
            assert!(sol.converged);
            assert!(sol.residual <= 1e-15);
            assert_eq!(sol.profile, init);
        }
    }

    #[test]
    fn qre_residual_is_reproducible() {
        let pd = prisoners_dilemma();
        let init = BehaviorProfile::uniform(&pd);
        let sol = qre_solve(&pd, 2.0, &init, 0.5, 1e-10, 100_000).unwrap();
        assert!(sol.converged);
        assert!(sol.residual <= 1e-10);
        // recompute the residual independently
        let q = qbr_profile(&pd, &sol.profile, 2.0).unwrap();
        let recomputed = sol.profile.max_norm_distance(&q);
        assert!((recomputed - sol.residual).abs() <= 1e-14);
        // the fixed point is not a Nash equilibrium
        assert!(!pd.verify_nash(&sol.profile, 1e-9).unwrap());
    }

    #[test]
    fn qbr_model_examples() {
        let pd = prisoners_dilemma();
        let e = std::f64::consts::E;

        let q = QbrModel::new(uniform_model(), 1.0).unwrap();
        let out = q.behavior(&pd, 0).unwrap();
        assert!((out.prob(1) - e / (1.0 + e)).abs() < 1e-15);

        let q0 = QbrModel::new(uniform_model(), 0.0).unwrap();
        assert_eq!(q0.behavior(&pd, 0).unwrap().probs(), &[0.5, 0.5]);

        // the opponent's maxmin action is defection, so the belief is a
        // point mass and the utilities are (0, 1)
        let q = QbrModel::new(Arc::new(make_maxmin()), 1.0).unwrap();
        let out = q.behavior(&pd, 0).unwrap();
        assert!((out.prob(1) - e / (1.0 + e)).abs() < 1e-15);
    }

    #[test]
    fn iterative_model_wraps_predictions() {
        let pd = prisoners_dilemma();
        let d = LevelDistribution::new(vec![0.5, 0.5]).unwrap();
        let lk = IterativeModel::level_k(uniform_model(), d.clone());
        assert_eq!(lk.behavior(&pd, 0).unwrap().probs(), &[0.25, 0.75]);
        let qch =
            IterativeModel::quantal_cognitive_hierarchy(uniform_model(), d, vec![1.0]).unwrap();
        let e = std::f64::consts::E;
        let expected = 0.5 * 0.5 + 0.5 * (1.0 / (1.0 + e));
        assert!((qch.behavior(&pd, 0).unwrap().prob(0) - expected).abs() < 1e-15);
    }
}
